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

#ifndef DRILL_COVERAGE_COVERAGE_MAP_H_
#define DRILL_COVERAGE_COVERAGE_MAP_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "nlohmann/json.hpp"

namespace drill::coverage {

// One entry of the export's "segments" array.
struct Segment {
  int line = 0;
  int col = 0;
  uint64_t count = 0;
  bool has_count = false;
  bool is_region_entry = false;
  bool is_gap = false;

  friend bool operator==(const Segment &, const Segment &) = default;
};

struct LineRange {
  int start = 0;
  int end = 0;

  friend bool operator==(const LineRange &, const LineRange &) = default;
};

struct FileCoverage {
  std::vector<Segment> segments;
  // Mapped (executable) lines only; derived from `segments`.
  std::map<int, uint64_t> line_counts;

  friend bool operator==(const FileCoverage &, const FileCoverage &) = default;
};

struct FunctionCoverage {
  std::string name;
  std::string file;
  uint64_t entry_count = 0;
  int start_line = 0;
  int end_line = 0;
  int covered_lines = 0;
  int total_lines = 0;
  std::vector<LineRange> uncovered_line_ranges;

  friend bool operator==(const FunctionCoverage &, const FunctionCoverage &) = default;
};

struct FunctionLookup {
  const FunctionCoverage *function = nullptr;
  bool exact = false;
};

struct CoverageMap {
  std::map<std::string, FunctionCoverage> functions;
  std::map<std::string, FileCoverage> files;
  std::string binary_id;

  // Exact key first, then the name without a "file:" local-linkage prefix,
  // then a demangled match ignoring scope, template and parameter decoration
  // (longest common prefix with `name` wins).
  FunctionLookup FindFunction(std::string_view name) const;

  friend bool operator==(const CoverageMap &, const CoverageMap &) = default;
};

// Line statistics with the same rules llvm-cov uses for its line view.
std::map<int, uint64_t> LineCountsFromSegments(const std::vector<Segment> &segments);

// Parses `llvm-cov export` JSON (format 2.x and 3.x). Throws
// Error(kMalformedProfile) when the document does not have that shape.
CoverageMap ParseLlvmCovExport(std::string_view json_text, std::string binary_id = {});

// Sums counts of two maps of the same binary. Segment-aligned files are
// summed segment by segment, which equals exporting the merged profile.
CoverageMap MergeCoverage(const CoverageMap &a, const CoverageMap &b);

// Rewrites absolute file names under `root` as root-relative paths, in both
// `files` and each function's `file`.
void RelativizeFiles(CoverageMap &map, const std::filesystem::path &root);

// Recomputes per-line counts and per-function statistics from segments.
void RecomputeDerived(CoverageMap &map);

nlohmann::json CoverageMapToJson(const CoverageMap &map);

}  // namespace drill::coverage

#endif  // DRILL_COVERAGE_COVERAGE_MAP_H_
