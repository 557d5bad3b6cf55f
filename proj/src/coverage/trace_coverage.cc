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

#include "drill/coverage/trace_coverage.h"

#include <algorithm>

#include <fmt/format.h>

#include "drill/common/error.h"

namespace drill::coverage {

TraceCoverageSummary CollectTraceCoverage(const CoverageMap &map, const CrashTrace &trace) {
  if (trace.frames.empty()) throw Error(ErrorCode::kPrecondition, "empty crash trace");
  TraceCoverageSummary summary;
  for (size_t i = 0; i < trace.frames.size(); ++i) {
    FrameReach reach;
    reach.frame = trace.frames[i];
    const FunctionLookup found = map.FindFunction(reach.frame.function);
    if (found.function != nullptr) {
      reach.in_mapping = true;
      reach.entry_count = found.function->entry_count;
      reach.reached = reach.entry_count > 0;
    }
    if (reach.reached && summary.deepest_reached_index < 0) {
      summary.deepest_reached_index = static_cast<int>(i);
    }
    summary.frames.push_back(std::move(reach));
  }
  return summary;
}

bool ReachesVulnFunc(const TraceCoverageSummary &summary, const CrashTrace &trace) {
  const size_t need = std::min<size_t>(3, trace.frames.size());
  if (need == 0 || summary.frames.size() < need) return false;
  for (size_t i = 0; i < need; ++i) {
    if (!summary.frames[i].reached) return false;
  }
  return true;
}

std::string RenderTraceFeedback(const TraceCoverageSummary &summary) {
  std::string out = "Backtrace coverage (frame 0 = crash site):\n";
  for (size_t i = 0; i < summary.frames.size(); ++i) {
    const FrameReach &f = summary.frames[i];
    std::string status;
    if (f.reached) {
      status = fmt::format("reached, entry count {}", f.entry_count);
    } else if (f.in_mapping) {
      status = "not reached, entry count 0";
    } else {
      status = "not reached, absent from coverage mapping (possibly inlined)";
    }
    out += fmt::format("  #{} {} at {}:{}: {}\n", i, f.frame.function, f.frame.file,
                       f.frame.line, status);
  }
  const int deepest = summary.deepest_reached_index;
  if (deepest == 0) {
    out += "Result: execution reached the vulnerable function " + summary.frames[0].frame.function +
           ".\n";
  } else if (deepest < 0) {
    out += "Result: no backtrace function executed.\n";
  } else {
    const StackFrame &callee = summary.frames[deepest - 1].frame;
    const StackFrame &site = summary.frames[deepest].frame;
    out += fmt::format("Result: execution stalled before {} at {}:{}.\n", callee.function, site.file,
                       site.line);
  }
  return out;
}

}  // namespace drill::coverage
