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


#include "drill/agent/tools.h"

#include <algorithm>
#include <chrono>
#include <regex>

#include "drill/common/error.h"
#include "drill/common/text.h"
#include "drill/coverage/query.h"
#include "drill/source/function_index.h"
#include "fmt/format.h"

namespace drill::agent {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr size_t kMaxPatternMatches = 100;

json StringParam(const std::string &description) {
  return {{"type", "string"}, {"description", description}};
}

json IntParam(const std::string &description) {
  return {{"type", "integer"}, {"description", description}};
}

json ObjectSchema(json properties, std::vector<std::string> required) {
  return {{"type", "object"}, {"properties", std::move(properties)}, {"required", required}};
}

std::string RequireString(const json &args, const std::string &tool, const char *key) {
  if (!args.contains(key) || !args[key].is_string()) {
    throw Error(ErrorCode::kPrecondition,
                fmt::format("{}: missing string argument '{}'", tool, key));
  }
  return args[key].get<std::string>();
}

std::optional<int> OptionalInt(const json &args, const std::string &tool, const char *key) {
  if (!args.contains(key) || args[key].is_null()) return std::nullopt;
  if (!args[key].is_number_integer()) {
    throw Error(ErrorCode::kPrecondition, fmt::format("{}: '{}' must be an integer", tool, key));
  }
  return args[key].get<int>();
}

ToolResult Ok(std::string output) { return {"", true, std::move(output), 0, std::nullopt, false}; }

ToolResult ReadFileTool(const json &args, ToolEnvironment &env) {
  const std::string path = RequireString(args, kReadFile, "path");
  const std::optional<int> start = OptionalInt(args, kReadFile, "start");
  const std::optional<int> end = OptionalInt(args, kReadFile, "end");
  std::string text = env.sandbox->ReadFile(path);
  if (!start && !end) return Ok(std::move(text));

  // Line slice, 1-based and inclusive, keeping the original line endings.
  std::vector<size_t> starts = {0};
  for (size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '\n' && i + 1 < text.size()) starts.push_back(i + 1);
  }
  const int line_count = text.empty() ? 0 : static_cast<int>(starts.size());
  const int first = start.value_or(1);
  const int last = std::min(end.value_or(line_count), line_count);
  if (first < 1 || first > line_count || last < first) {
    throw Error(ErrorCode::kRangeOutOfBounds,
                fmt::format("{}: lines {}-{} outside 1-{}", path, first, end.value_or(line_count),
                            line_count));
  }
  const size_t from = starts[first - 1];
  const size_t to = last < line_count ? starts[last] : text.size();
  return Ok(text.substr(from, to - from));
}

ToolResult WriteFileTool(const json &args, ToolEnvironment &env) {
  const std::string path = RequireString(args, kWriteFile, "path");
  const std::string content = RequireString(args, kWriteFile, "content");
  env.sandbox->WriteFile(path, content);
  return Ok(fmt::format("wrote {} bytes to {}", content.size(),
                        env.sandbox->Display(env.sandbox->Resolve(path))));
}

ToolResult ExecuteBashTool(const json &args, ToolEnvironment &env) {
  const std::string command = RequireString(args, kExecuteBash, "command");
  const ProcessResult run = env.sandbox->Exec(command, env.exec_timeout);
  ToolResult result;
  result.output = run.output;
  result.timed_out = run.timed_out;
  result.ok = !run.timed_out;
  if (!run.timed_out) result.exit_code = run.term_signal != 0 ? 128 + run.term_signal : run.exit_code;
  return result;
}

fs::path SearchRoot(const json &args, const ToolEnvironment &env, const std::string &tool) {
  fs::path root = env.search_root.empty() ? env.sandbox->root() : env.search_root;
  if (args.contains("path")) {
    root = env.sandbox->Resolve(RequireString(args, tool, "path"));
  } else {
    root = env.sandbox->Resolve(root.string());
  }
  return root;
}

ToolResult SearchFunctionTool(const json &args, ToolEnvironment &env) {
  const std::string name = RequireString(args, kSearchFunction, "name");
  const fs::path root = SearchRoot(args, env, kSearchFunction);
  const auto defs = source::SearchFunctionInTree(root, name);
  if (defs.empty()) return Ok(fmt::format("no definition of {} found", name));
  std::string out;
  for (const auto &def : defs) {
    const auto lines = SplitLines(ReadFileOrThrow(def.file));
    out += fmt::format("{}:{}-{}\n", env.sandbox->Display(def.file), def.signature_line,
                       def.end_line);
    for (int line = def.signature_line; line <= def.end_line && line <= (int)lines.size(); ++line) {
      out += fmt::format("{:>5} | {}\n", line, lines[line - 1]);
    }
  }
  return Ok(std::move(out));
}

std::vector<fs::path> SourceFiles(const fs::path &root) {
  std::vector<fs::path> files;
  if (fs::is_regular_file(root)) return {root};
  std::error_code ec;
  for (fs::recursive_directory_iterator it(root, fs::directory_options::skip_permission_denied, ec),
       end;
       it != end; it.increment(ec)) {
    if (ec) break;
    if (it->is_regular_file() && source::IsSourceFile(it->path())) files.push_back(it->path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

ToolResult SearchPatternTool(const json &args, ToolEnvironment &env) {
  const std::string pattern = RequireString(args, kSearchPattern, "pattern");
  const fs::path root = SearchRoot(args, env, kSearchPattern);
  if (!env.ast_grep.empty()) {
    ProcessOptions options;
    options.argv = {env.ast_grep.string(), "run", "--pattern", pattern, "--lang", "c",
                    root.string()};
    options.cwd = env.sandbox->root();
    options.timeout = env.exec_timeout;
    const ProcessResult run = RunProcess(options);
    if (run.ok() || run.exit_code == 1) {
      return Ok(run.output.empty() ? "no matches" : run.output);
    }
    return {"", false, run.output, 0, std::nullopt, run.timed_out};
  }

  std::regex re;
  try {
    re = std::regex(PatternToRegex(pattern));
  } catch (const std::regex_error &e) {
    throw Error(ErrorCode::kPrecondition, fmt::format("{}: bad pattern: {}", kSearchPattern,
                                                      e.what()));
  }
  std::string out;
  size_t matches = 0;
  for (const fs::path &file : SourceFiles(root)) {
    const std::string text = ReadFileOrThrow(file);
    const auto original = SplitLines(text);
    const auto stripped = SplitLines(source::StripCommentsAndStrings(text));
    for (size_t i = 0; i < stripped.size() && i < original.size(); ++i) {
      if (!std::regex_search(stripped[i], re)) continue;
      if (++matches > kMaxPatternMatches) {
        out += "(more matches omitted)\n";
        return Ok(std::move(out));
      }
      out += fmt::format("{}:{}: {}\n", env.sandbox->Display(file), i + 1, Trim(original[i]));
    }
  }
  return Ok(matches == 0 ? "no matches" : std::move(out));
}

ToolResult CoverageQueryTool(const json &args, ToolEnvironment &env) {
  const coverage::CoverageMap *map = env.coverage ? env.coverage() : nullptr;
  if (map == nullptr) {
    return {"", false, "no coverage collected yet; it appears after the first test case runs", 0,
            std::nullopt, false};
  }
  coverage::CoverageQuery query;
  if (args.contains("file")) {
    const std::string file = RequireString(args, kCoverageQuery, "file");
    const std::optional<int> start = OptionalInt(args, kCoverageQuery, "start");
    const std::optional<int> end = OptionalInt(args, kCoverageQuery, "end");
    if (!start || !end) {
      throw Error(ErrorCode::kPrecondition, "coverage_query: file queries need start and end");
    }
    query = coverage::CoverageQuery::FileLines(file, *start, *end);
  } else {
    const std::string fn = RequireString(args, kCoverageQuery, "function");
    const bool uncovered = args.value("uncovered", false);
    query = uncovered ? coverage::CoverageQuery::UncoveredInFunction(fn)
                      : coverage::CoverageQuery::Function(fn);
  }
  return Ok(coverage::QueryCoverage(*map, query, env.coverage_source_root, env.output_limit));
}

ToolResult FinishTool(const json &args, ToolEnvironment &) { return Ok(FinishPayload(args)); }

}  // namespace

std::string FinishPayload(const json &args) {
  if (!args.contains("payload")) return args.dump();
  const json &payload = args["payload"];
  return payload.is_string() ? payload.get<std::string>() : payload.dump();
}

std::string PatternToRegex(const std::string &pattern) {
  std::string out;
  bool in_space = false;
  for (size_t i = 0; i < pattern.size();) {
    const char c = pattern[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!in_space) out += "\\s*";
      in_space = true;
      ++i;
      continue;
    }
    in_space = false;
    if (c == '$') {
      size_t j = i + 1;
      const bool multi = pattern.compare(i, 3, "$$$") == 0;
      if (multi) j = i + 3;
      size_t k = j;
      while (k < pattern.size() &&
             (std::isupper(static_cast<unsigned char>(pattern[k])) || pattern[k] == '_' ||
              (k > j && std::isdigit(static_cast<unsigned char>(pattern[k]))))) {
        ++k;
      }
      if (multi) {
        out += ".*?";
        i = k;
        continue;
      }
      if (k > j) {
        out += "[^;{}]+?";
        i = k;
        continue;
      }
    }
    if (std::string_view("\\^$.|?*+()[]{}").find(c) != std::string_view::npos) out += '\\';
    out += c;
    ++i;
  }
  return out;
}

std::string RenderToolResult(const ToolResult &result) {
  std::string text = result.ok ? result.output : "error: " + result.output;
  if (result.tool == kExecuteBash) {
    if (!text.empty() && text.back() != '\n') text += '\n';
    if (result.timed_out) {
      text += "[timed out; output above is partial]";
    } else if (result.exit_code) {
      text += fmt::format("[exit code {}]", *result.exit_code);
    }
  }
  return text;
}

ToolRegistry ToolRegistry::Builtin() {
  ToolRegistry r;
  r.Register({{kReadFile, "Read a file in the work directory, optionally only lines start..end.",
               ObjectSchema({{"path", StringParam("File path, relative to the work directory")},
                             {"start", IntParam("First line, 1-based")},
                             {"end", IntParam("Last line, inclusive")}},
                            {"path"})},
              ReadFileTool});
  r.Register({{kWriteFile, "Create or overwrite a file inside the work directory.",
               ObjectSchema({{"path", StringParam("File path, relative to the work directory")},
                             {"content", StringParam("Full file content")}},
                            {"path", "content"})},
              WriteFileTool});
  r.Register({{kExecuteBash,
               "Run a shell command in the work directory. Output and exit code are returned.",
               ObjectSchema({{"command", StringParam("Command for /bin/sh -c")}}, {"command"})},
              ExecuteBashTool});
  r.Register({{kSearchFunction, "Find C/C++ function definitions by name.",
               ObjectSchema({{"name", StringParam("Function name")},
                             {"path", StringParam("Directory to search (optional)")}},
                            {"name"})},
              SearchFunctionTool});
  r.Register({{kSearchPattern,
               "Structural code search. $NAME matches one expression, $$$ matches anything.",
               ObjectSchema({{"pattern", StringParam("Pattern, e.g. memcpy($DST, $SRC, $LEN)")},
                             {"path", StringParam("Directory to search (optional)")}},
                            {"pattern"})},
              SearchPatternTool});
  r.Register({{kCoverageQuery,
               "Line coverage of the latest test case. Give either function (optionally with "
               "uncovered=true) or file with start and end lines.",
               ObjectSchema({{"function", StringParam("Function name")},
                             {"uncovered", {{"type", "boolean"}}},
                             {"file", StringParam("Source file")},
                             {"start", IntParam("First line")},
                             {"end", IntParam("Last line")}},
                            {})},
              CoverageQueryTool});
  r.Register({{kFinish, "Finish the current step and hand over the result.",
               ObjectSchema({{"payload", StringParam("Result, in the format the task asks for")}},
                            {"payload"})},
              FinishTool});
  return r;
}

ToolRegistry &ToolRegistry::Register(RegisteredTool tool) {
  const std::string name = tool.schema.name;
  tools_[name] = std::move(tool);
  return *this;
}

const RegisteredTool *ToolRegistry::Find(const std::string &name) const {
  auto it = tools_.find(name);
  return it == tools_.end() ? nullptr : &it->second;
}

std::vector<llm::ToolSchema> ToolRegistry::Schemas(const std::vector<std::string> &names) const {
  std::vector<llm::ToolSchema> schemas;
  for (const std::string &name : names) {
    if (const RegisteredTool *tool = Find(name)) schemas.push_back(tool->schema);
  }
  return schemas;
}

ToolResult DispatchTool(const llm::ToolCall &call, const std::vector<std::string> &allowed,
                        const ToolRegistry &registry, ToolEnvironment &env) {
  const RegisteredTool *tool = registry.Find(call.name);
  if (tool == nullptr) throw Error(ErrorCode::kUnknownTool, call.name);
  if (std::find(allowed.begin(), allowed.end(), call.name) == allowed.end()) {
    throw Error(ErrorCode::kToolDenied, fmt::format("{} is not available in this phase", call.name));
  }
  if (!call.arguments.is_object() || call.arguments.contains("_raw")) {
    throw Error(ErrorCode::kPrecondition, fmt::format("{}: arguments must be a JSON object",
                                                      call.name));
  }
  if (env.sandbox == nullptr) throw Error(ErrorCode::kPrecondition, "tool environment lacks a sandbox");
  const auto started = std::chrono::steady_clock::now();
  ToolResult result = tool->handler(call.arguments, env);
  result.tool = call.name;
  result.duration_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - started)
                           .count();
  result.output = TruncateHeadTail(result.output, env.output_limit);
  return result;
}

}  // namespace drill::agent
