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

#include "drill/coverage/query.h"

#include <algorithm>
#include <vector>

#include <fmt/format.h>

#include "drill/common/error.h"
#include "drill/common/text.h"

namespace drill::coverage {
namespace fs = std::filesystem;
namespace {

std::vector<std::string> Components(const std::string &path) {
  std::vector<std::string> out;
  for (const auto &part : fs::path(path).lexically_normal()) {
    const std::string s = part.string();
    if (!s.empty() && s != "/" && s != ".") out.push_back(s);
  }
  return out;
}

size_t CommonSuffix(const std::vector<std::string> &a, const std::vector<std::string> &b) {
  size_t n = 0;
  while (n < a.size() && n < b.size() && a[a.size() - 1 - n] == b[b.size() - 1 - n]) ++n;
  return n;
}

std::vector<std::string> LoadSource(const fs::path &source_root, const std::string &file) {
  const fs::path p = fs::path(file).is_absolute() ? fs::path(file) : source_root / file;
  std::error_code ec;
  if (!fs::is_regular_file(p, ec)) return {};
  try {
    return SplitLines(ReadFileOrThrow(p));
  } catch (const Error &) {
    return {};
  }
}

std::string SourceLine(const std::vector<std::string> &source, int line) {
  if (line < 1 || static_cast<size_t>(line) > source.size()) return {};
  return source[line - 1];
}

std::string Row(const FileCoverage &file, const std::vector<std::string> &source, int line) {
  auto it = file.line_counts.find(line);
  const std::string count = it == file.line_counts.end() ? "-" : std::to_string(it->second);
  return fmt::format("{} | {} | {}\n", line, count, SourceLine(source, line));
}

const FunctionCoverage &RequireFunction(const CoverageMap &map, const std::string &name) {
  const FunctionLookup found = map.FindFunction(name);
  if (found.function == nullptr) throw Error(ErrorCode::kUnknownFunction, name);
  return *found.function;
}

std::string FunctionHeader(const FunctionCoverage &fn) {
  return fmt::format("function {} ({}:{}-{}): entry count {}, {}/{} lines covered\n", fn.name,
                     fn.file, fn.start_line, fn.end_line, fn.entry_count, fn.covered_lines,
                     fn.total_lines);
}

std::string RenderFunction(const CoverageMap &map, const FunctionCoverage &fn,
                           const fs::path &source_root) {
  std::string out = FunctionHeader(fn);
  if (fn.total_lines > 0 && fn.covered_lines == fn.total_lines) {
    out += fmt::format("all {} lines covered\n", fn.total_lines);
  }
  auto it = map.files.find(fn.file);
  if (it == map.files.end()) return out;
  const auto source = LoadSource(source_root, fn.file);
  for (int line = fn.start_line; line <= fn.end_line; ++line) {
    out += Row(it->second, source, line);
  }
  return out;
}

std::string RenderUncovered(const FunctionCoverage &fn, const fs::path &source_root) {
  std::string out = FunctionHeader(fn);
  if (fn.uncovered_line_ranges.empty()) {
    out += fmt::format("no uncovered lines in {}\n", fn.name);
    return out;
  }
  const auto source = LoadSource(source_root, fn.file);
  for (const LineRange &r : fn.uncovered_line_ranges) {
    const std::string excerpt(Trim(SourceLine(source, r.start)));
    if (r.start == r.end) {
      out += fmt::format("uncovered line {}: {}\n", r.start, excerpt);
    } else {
      out += fmt::format("uncovered lines {}-{}: {}\n", r.start, r.end, excerpt);
    }
  }
  return out;
}

std::string RenderFileLines(const CoverageMap &map, const CoverageQuery &q,
                            const fs::path &source_root) {
  const std::string key = ResolveCoverageFile(map, q.name);
  if (key.empty()) throw Error(ErrorCode::kUnknownFile, q.name);
  const FileCoverage &file = map.files.at(key);
  const auto source = LoadSource(source_root, key);
  int last = static_cast<int>(source.size());
  if (!file.line_counts.empty()) last = std::max(last, file.line_counts.rbegin()->first);
  if (q.start < 1 || q.end < q.start || q.end > last) {
    throw Error(ErrorCode::kRangeOutOfBounds,
                fmt::format("{}:{}-{} (file has {} lines)", key, q.start, q.end, last));
  }
  std::string out = fmt::format("{} lines {}-{} (line | count | source)\n", key, q.start, q.end);
  for (int line = q.start; line <= q.end; ++line) out += Row(file, source, line);
  return out;
}

}  // namespace

std::string ResolveCoverageFile(const CoverageMap &map, const std::string &path) {
  if (map.files.count(path) > 0) return path;
  const auto want = Components(path);
  if (want.empty()) return {};
  std::string best;
  size_t best_len = 0;
  bool tie = false;
  for (const auto &[key, file] : map.files) {
    const size_t n = CommonSuffix(Components(key), want);
    if (n == 0) continue;
    if (n > best_len) {
      best = key;
      best_len = n;
      tie = false;
    } else if (n == best_len) {
      tie = true;
    }
  }
  return tie ? std::string() : best;
}

std::string QueryCoverage(const CoverageMap &map, const CoverageQuery &query,
                          const fs::path &source_root, size_t limit) {
  std::string out;
  switch (query.kind) {
    case CoverageQuery::Kind::kFunction:
      out = RenderFunction(map, RequireFunction(map, query.name), source_root);
      break;
    case CoverageQuery::Kind::kUncoveredInFunction:
      out = RenderUncovered(RequireFunction(map, query.name), source_root);
      break;
    case CoverageQuery::Kind::kFileLines:
      out = RenderFileLines(map, query, source_root);
      break;
  }
  return TruncateToLimit(out, limit);
}

}  // namespace drill::coverage
