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

#ifndef DRILL_COVERAGE_TRACE_COVERAGE_H_
#define DRILL_COVERAGE_TRACE_COVERAGE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "drill/coverage/coverage_map.h"
#include "drill/task/types.h"

namespace drill::coverage {

struct FrameReach {
  StackFrame frame;
  bool reached = false;
  uint64_t entry_count = 0;
  // False when the function has no coverage mapping at all (for example
  // because it was inlined away), as opposed to mapped with count 0.
  bool in_mapping = false;
};

struct TraceCoverageSummary {
  std::vector<FrameReach> frames;  // Same order as the trace, innermost first.
  int deepest_reached_index = -1;
};

TraceCoverageSummary CollectTraceCoverage(const CoverageMap &map, const CrashTrace &trace);

// True iff frames 0, 1 and 2 (all frames for shorter traces) were reached.
bool ReachesVulnFunc(const TraceCoverageSummary &summary, const CrashTrace &trace);

// Compact per-frame listing plus either a "reached the vulnerable function"
// line or an "execution stalled before <fn> at <file>:<line>" line.
std::string RenderTraceFeedback(const TraceCoverageSummary &summary);

}  // namespace drill::coverage

#endif  // DRILL_COVERAGE_TRACE_COVERAGE_H_
