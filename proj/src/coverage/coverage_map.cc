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

#include "drill/coverage/coverage_map.h"

#include <cxxabi.h>

#include <algorithm>
#include <cstdlib>
#include <memory>
#include <optional>

#include "drill/common/error.h"
#include "drill/source/function_index.h"

namespace drill::coverage {
namespace {

using nlohmann::json;

constexpr int kCodeRegion = 0;

[[noreturn]] void Malformed(const std::string &detail) {
  throw Error(ErrorCode::kMalformedProfile, detail);
}

bool IsStartOfRegion(const Segment &s) {
  return !s.is_gap && s.has_count && s.is_region_entry;
}

Segment ParseSegment(const json &j) {
  if (!j.is_array() || j.size() < 5) Malformed("segment is not an array of >= 5 items");
  Segment s;
  s.line = j[0].get<int>();
  s.col = j[1].get<int>();
  s.count = j[2].get<uint64_t>();
  s.has_count = j[3].get<bool>();
  s.is_region_entry = j[4].get<bool>();
  s.is_gap = j.size() > 5 ? j[5].get<bool>() : false;
  return s;
}

std::string Demangle(const std::string &name) {
  int status = 0;
  std::unique_ptr<char, decltype(&std::free)> out(
      abi::__cxa_demangle(name.c_str(), nullptr, nullptr, &status), &std::free);
  if (status == 0 && out) return out.get();
  return name;
}

// Strips a "file.c:" local-linkage prefix emitted for static functions.
std::string StripFilePrefix(const std::string &name) {
  const size_t colon = name.find(':');
  if (colon == std::string::npos || colon == 0) return name;
  // "ns::fn" is a scope, not a file prefix.
  if (colon + 1 < name.size() && name[colon + 1] == ':') return name;
  return name.substr(colon + 1);
}

std::vector<LineRange> CollapseRanges(const std::vector<int> &lines) {
  std::vector<LineRange> out;
  for (int line : lines) {
    if (!out.empty() && out.back().end + 1 == line) {
      out.back().end = line;
    } else {
      out.push_back({line, line});
    }
  }
  return out;
}

void ComputeFunctionStats(FunctionCoverage &fn, const FileCoverage *file) {
  fn.covered_lines = 0;
  fn.total_lines = 0;
  std::vector<int> uncovered;
  if (file != nullptr) {
    auto it = file->line_counts.lower_bound(fn.start_line);
    for (; it != file->line_counts.end() && it->first <= fn.end_line; ++it) {
      ++fn.total_lines;
      if (fn.entry_count > 0 && it->second > 0) {
        ++fn.covered_lines;
      } else {
        uncovered.push_back(it->first);
      }
    }
  }
  fn.uncovered_line_ranges = CollapseRanges(uncovered);
}

}  // namespace

std::map<int, uint64_t> LineCountsFromSegments(const std::vector<Segment> &segments) {
  std::map<int, uint64_t> out;
  if (segments.empty()) return out;
  const Segment *wrapped = nullptr;
  size_t next = 0;
  const int first_line = segments.front().line;
  const int last_line = segments.back().line;
  for (int line = first_line; line <= last_line; ++line) {
    size_t begin = next;
    while (next < segments.size() && segments[next].line == line) ++next;
    const size_t end = next;

    bool skipped = false;
    int region_starts = 0;
    if (begin < end) {
      const Segment &first = segments[begin];
      skipped = !first.has_count && first.is_region_entry;
      for (size_t i = begin; i < end; ++i) {
        if (IsStartOfRegion(segments[i])) ++region_starts;
      }
    }
    const bool mapped = !skipped && ((wrapped != nullptr && wrapped->has_count) || region_starts > 0);
    if (mapped) {
      uint64_t count = wrapped != nullptr ? wrapped->count : 0;
      for (size_t i = begin; i < end; ++i) {
        if (IsStartOfRegion(segments[i])) count = std::max(count, segments[i].count);
      }
      out[line] = count;
    }
    if (begin < end) wrapped = &segments[end - 1];
  }
  return out;
}

void RecomputeDerived(CoverageMap &map) {
  for (auto &[path, file] : map.files) {
    if (!file.segments.empty()) file.line_counts = LineCountsFromSegments(file.segments);
  }
  for (auto &[name, fn] : map.functions) {
    auto it = map.files.find(fn.file);
    ComputeFunctionStats(fn, it == map.files.end() ? nullptr : &it->second);
  }
}

CoverageMap ParseLlvmCovExport(std::string_view json_text, std::string binary_id) {
  json doc = json::parse(json_text, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded() || !doc.is_object()) Malformed("export is not a JSON object");
  const std::string type = doc.value("type", "");
  if (type != "llvm.coverage.json.export") Malformed("unexpected export type '" + type + "'");
  const std::string version = doc.value("version", "");
  if (!(version.starts_with("2.") || version.starts_with("3."))) {
    Malformed("unsupported export version '" + version + "'");
  }
  if (!doc.contains("data") || !doc["data"].is_array()) Malformed("missing data array");

  CoverageMap map;
  map.binary_id = std::move(binary_id);
  try {
    for (const json &unit : doc["data"]) {
      for (const json &f : unit.value("files", json::array())) {
        FileCoverage &file = map.files[f.at("filename").get<std::string>()];
        for (const json &s : f.at("segments")) file.segments.push_back(ParseSegment(s));
      }
      for (const json &f : unit.value("functions", json::array())) {
        FunctionCoverage fn;
        fn.name = f.at("name").get<std::string>();
        fn.entry_count = f.at("count").get<uint64_t>();
        const json &names = f.at("filenames");
        if (!names.is_array() || names.empty()) Malformed("function without filenames: " + fn.name);
        fn.file = names[0].get<std::string>();
        int lo = 0, hi = 0;
        for (const json &r : f.at("regions")) {
          if (!r.is_array() || r.size() < 8) Malformed("region is not an array of 8 items");
          if (r[5].get<int>() != 0 || r[7].get<int>() != kCodeRegion) continue;
          const int start = r[0].get<int>();
          const int end = r[2].get<int>();
          lo = lo == 0 ? start : std::min(lo, start);
          hi = std::max(hi, end);
        }
        fn.start_line = lo;
        fn.end_line = hi;
        map.functions[fn.name] = std::move(fn);
      }
    }
  } catch (const json::exception &e) {
    Malformed(std::string("bad export field: ") + e.what());
  }
  // Static functions carry a "<source path>:" prefix; drop it unless two
  // functions would collide.
  std::map<std::string, int> stripped_uses;
  for (const auto &[name, fn] : map.functions) ++stripped_uses[StripFilePrefix(name)];
  std::map<std::string, FunctionCoverage> renamed;
  for (auto &[name, fn] : map.functions) {
    const std::string bare = StripFilePrefix(name);
    if (stripped_uses[bare] == 1) fn.name = bare;
    renamed[fn.name] = std::move(fn);
  }
  map.functions = std::move(renamed);
  RecomputeDerived(map);
  return map;
}

CoverageMap MergeCoverage(const CoverageMap &a, const CoverageMap &b) {
  CoverageMap out = a;
  for (const auto &[path, fb] : b.files) {
    auto it = out.files.find(path);
    if (it == out.files.end()) {
      out.files[path] = fb;
      continue;
    }
    auto &segs = it->second.segments;
    bool aligned = segs.size() == fb.segments.size();
    for (size_t i = 0; aligned && i < segs.size(); ++i) {
      const Segment &x = segs[i];
      const Segment &y = fb.segments[i];
      aligned = x.line == y.line && x.col == y.col && x.has_count == y.has_count &&
                x.is_region_entry == y.is_region_entry && x.is_gap == y.is_gap;
    }
    if (aligned) {
      for (size_t i = 0; i < segs.size(); ++i) segs[i].count += fb.segments[i].count;
    } else {
      // Different segmentation: keep the union of mapped lines, summed.
      std::map<int, uint64_t> lines = it->second.line_counts;
      for (const auto &[line, count] : fb.line_counts) lines[line] += count;
      it->second.segments.clear();
      it->second.line_counts = std::move(lines);
    }
  }
  for (const auto &[name, fb] : b.functions) {
    auto it = out.functions.find(name);
    if (it == out.functions.end()) {
      out.functions[name] = fb;
    } else {
      it->second.entry_count += fb.entry_count;
    }
  }
  for (auto &[path, file] : out.files) {
    if (!file.segments.empty()) file.line_counts = LineCountsFromSegments(file.segments);
  }
  for (auto &[name, fn] : out.functions) {
    auto it = out.files.find(fn.file);
    ComputeFunctionStats(fn, it == out.files.end() ? nullptr : &it->second);
  }
  return out;
}

FunctionLookup CoverageMap::FindFunction(std::string_view name) const {
  const std::string key(name);
  if (auto it = functions.find(key); it != functions.end()) return {&it->second, true};
  for (const auto &[k, fn] : functions) {
    if (StripFilePrefix(k) == key) return {&fn, true};
  }
  const std::string want = source::BareFunctionName(key);
  const FunctionCoverage *best = nullptr;
  size_t best_len = 0;
  for (const auto &[k, fn] : functions) {
    const std::string demangled = Demangle(StripFilePrefix(k));
    if (source::BareFunctionName(demangled) != want) continue;
    const size_t common = static_cast<size_t>(
        std::mismatch(demangled.begin(), demangled.end(), key.begin(), key.end()).first -
        demangled.begin());
    if (best == nullptr || common > best_len) {
      best = &fn;
      best_len = common;
    }
  }
  return {best, false};
}

void RelativizeFiles(CoverageMap &map, const std::filesystem::path &root) {
  if (root.empty()) return;
  const auto base = std::filesystem::weakly_canonical(root);
  auto rewrite = [&](const std::string &file) -> std::string {
    const std::filesystem::path p(file);
    if (!p.is_absolute()) return file;
    const auto rel = p.lexically_normal().lexically_relative(base);
    if (rel.empty() || *rel.begin() == "..") return file;
    return rel.string();
  };
  std::map<std::string, FileCoverage> files;
  for (auto &[path, file] : map.files) files[rewrite(path)] = std::move(file);
  map.files = std::move(files);
  for (auto &[name, fn] : map.functions) fn.file = rewrite(fn.file);
}

nlohmann::json CoverageMapToJson(const CoverageMap &map) {
  json functions = json::object();
  for (const auto &[name, fn] : map.functions) {
    json ranges = json::array();
    for (const auto &r : fn.uncovered_line_ranges) ranges.push_back({r.start, r.end});
    functions[name] = {{"file", fn.file},
                       {"entry_count", fn.entry_count},
                       {"start_line", fn.start_line},
                       {"end_line", fn.end_line},
                       {"covered_lines", fn.covered_lines},
                       {"total_lines", fn.total_lines},
                       {"uncovered_line_ranges", ranges}};
  }
  json files = json::object();
  for (const auto &[path, file] : map.files) {
    json lines = json::object();
    for (const auto &[line, count] : file.line_counts) lines[std::to_string(line)] = count;
    files[path] = {{"line_counts", lines}};
  }
  return {{"binary_id", map.binary_id}, {"functions", functions}, {"files", files}};
}

}  // namespace drill::coverage
