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

#ifndef DRILL_COVERAGE_QUERY_H_
#define DRILL_COVERAGE_QUERY_H_

#include <cstddef>
#include <filesystem>
#include <string>

#include "drill/coverage/coverage_map.h"

namespace drill::coverage {

struct CoverageQuery {
  enum class Kind { kFunction, kFileLines, kUncoveredInFunction };

  Kind kind = Kind::kFunction;
  std::string name;  // Function name or file path.
  int start = 0;     // kFileLines only, inclusive.
  int end = 0;

  static CoverageQuery Function(std::string fn) { return {Kind::kFunction, std::move(fn)}; }
  static CoverageQuery FileLines(std::string path, int start, int end) {
    return {Kind::kFileLines, std::move(path), start, end};
  }
  static CoverageQuery UncoveredInFunction(std::string fn) {
    return {Kind::kUncoveredInFunction, std::move(fn)};
  }
};

// Renders `query` against `map`. Source text is read from `source_root`
// joined with the mapped file name. Rows have the form
// "<line> | <count> | <source>", with "-" as the count of unmapped lines.
// The result never exceeds `limit` characters.
//
// Throws Error(kUnknownFunction), Error(kUnknownFile) or
// Error(kRangeOutOfBounds).
std::string QueryCoverage(const CoverageMap &map, const CoverageQuery &query,
                          const std::filesystem::path &source_root, size_t limit);

// Maps a path the agent typed onto a key of `map.files`: exact key first,
// then the unique key sharing the longest trailing path components.
// Returns empty when nothing matches.
std::string ResolveCoverageFile(const CoverageMap &map, const std::string &path);

}  // namespace drill::coverage

#endif  // DRILL_COVERAGE_QUERY_H_
