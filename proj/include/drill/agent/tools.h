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


#ifndef DRILL_AGENT_TOOLS_H_
#define DRILL_AGENT_TOOLS_H_

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "drill/agent/sandbox.h"
#include "drill/coverage/coverage_map.h"
#include "drill/llm/chat.h"
#include "nlohmann/json.hpp"

namespace drill::agent {

inline constexpr char kReadFile[] = "read_file";
inline constexpr char kWriteFile[] = "write_file";
inline constexpr char kExecuteBash[] = "execute_bash";
inline constexpr char kSearchFunction[] = "ast_grep_search_function";
inline constexpr char kSearchPattern[] = "ast_grep_search_pattern";
inline constexpr char kCoverageQuery[] = "coverage_query";
inline constexpr char kFinish[] = "finish";

struct ToolResult {
  std::string tool;
  bool ok = false;
  std::string output;  // Head+tail truncated to the environment limit.
  int64_t duration_ms = 0;
  std::optional<int> exit_code;  // execute_bash only.
  bool timed_out = false;

  friend bool operator==(const ToolResult &, const ToolResult &) = default;
};

// Text the model sees for a tool result.
std::string RenderToolResult(const ToolResult &result);

// Per-task state the tools operate on.
struct ToolEnvironment {
  Sandbox *sandbox = nullptr;
  size_t output_limit = 8000;
  std::chrono::milliseconds exec_timeout{std::chrono::seconds(60)};
  // Directory (inside the sandbox) searched by the ast_grep tools.
  std::filesystem::path search_root;
  // Latest coverage and the tree its file names are relative to.
  std::function<const coverage::CoverageMap *()> coverage;
  std::filesystem::path coverage_source_root;
  // Structural search executable; empty selects the built-in fallback.
  std::filesystem::path ast_grep;
};

using ToolHandler = std::function<ToolResult(const nlohmann::json &args, ToolEnvironment &env)>;

struct RegisteredTool {
  llm::ToolSchema schema;
  ToolHandler handler;
};

// Immutable after construction; safe to share between tasks.
class ToolRegistry {
 public:
  // read_file, write_file, execute_bash, ast_grep_search_function,
  // ast_grep_search_pattern, coverage_query and finish.
  static ToolRegistry Builtin();

  ToolRegistry &Register(RegisteredTool tool);
  const RegisteredTool *Find(const std::string &name) const;
  bool Contains(const std::string &name) const { return Find(name) != nullptr; }
  // Schemas of `names`, in the given order. Unknown names are skipped.
  std::vector<llm::ToolSchema> Schemas(const std::vector<std::string> &names) const;

 private:
  std::map<std::string, RegisteredTool> tools_;
};

// Runs one tool call and truncates its output. Throws Error(kUnknownTool),
// Error(kToolDenied) when the tool is not in `allowed`, Error(kPrecondition)
// for malformed arguments, and whatever the tool raises (kPathEscape,
// kFileUnreadable, coverage query errors).
ToolResult DispatchTool(const llm::ToolCall &call, const std::vector<std::string> &allowed,
                        const ToolRegistry &registry, ToolEnvironment &env);

// The finish tool's payload as text: strings verbatim, anything else as JSON.
std::string FinishPayload(const nlohmann::json &args);

// Converts an ast-grep style pattern into a line regex: $$$ matches
// anything, $NAME one expression-ish token run, whitespace is optional.
std::string PatternToRegex(const std::string &pattern);

}  // namespace drill::agent

#endif  // DRILL_AGENT_TOOLS_H_
