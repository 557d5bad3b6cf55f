// Copyright 2026 The Drill Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DRILL_SOURCE_FUNCTION_INDEX_H_
#define DRILL_SOURCE_FUNCTION_INDEX_H_

// Lightweight C/C++ function locator: comment/string aware brace matching, no
// real parsing. Good enough to find definitions and call sites in the code
// the sanitizer points at.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace drill::source {

struct FunctionDefinition {
  std::string name;
  std::filesystem::path file;
  int signature_line = 0;  // Line holding the function name.
  int body_start_line = 0; // Line holding the opening brace.
  int end_line = 0;        // Line holding the closing brace.

  bool Contains(int line) const { return line >= signature_line && line <= end_line; }
};

// "ns::Parser<int>::parse(char const*)" -> "parse".
std::string BareFunctionName(std::string_view decorated);

// Replaces comments and string/char literals with spaces, keeping newlines,
// so line numbers and column offsets are preserved.
std::string StripCommentsAndStrings(std::string_view source);

std::vector<FunctionDefinition> FindFunctionDefinitions(std::string_view source,
                                                        std::string_view name,
                                                        const std::filesystem::path &file);

// Lines (1-based) in [first_line, last_line] containing a call `callee(`.
std::vector<int> FindCallLines(std::string_view source, std::string_view callee,
                               int first_line, int last_line);

bool IsSourceFile(const std::filesystem::path &path);

// Definitions of `name` in every C/C++ source below `root`, sorted by path.
std::vector<FunctionDefinition> SearchFunctionInTree(const std::filesystem::path &root,
                                                     std::string_view name);

// Maps a sanitizer/coverage path onto a file under `repo`: tries the path as
// given, then progressively shorter suffixes. Empty when nothing matches.
std::filesystem::path ResolveInRepo(const std::filesystem::path &repo,
                                    const std::string &reported_path);

}  // namespace drill::source

#endif  // DRILL_SOURCE_FUNCTION_INDEX_H_
