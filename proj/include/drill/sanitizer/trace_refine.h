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

#ifndef DRILL_SANITIZER_TRACE_REFINE_H_
#define DRILL_SANITIZER_TRACE_REFINE_H_

#include <filesystem>
#include <string>
#include <vector>

#include "drill/task/types.h"

namespace drill::sanitizer {

// Second opinion for frames the text search cannot settle. Implementations
// return a crash trace document (same shape as crash_trace.json) with
// corrected lines.
class TraceRefiner {
 public:
  virtual ~TraceRefiner() = default;
  virtual std::string ProposeRefinedTrace(const CrashTrace &trace,
                                          const std::string &source_context) = 0;
};

struct RefineResult {
  CrashTrace trace;
  std::vector<std::string> warnings;
  int frames_changed = 0;
};

// Makes each caller frame's line point at the call into the next-inner
// frame's function. A frame is only moved to a line inside its own function
// that calls the callee; anything unresolvable keeps its reported line.
// Frame order and every other field are preserved.
//
// Throws Error(kRefinerFailure) when the refiner is consulted and returns
// something that is not a crash trace; callers fall back to the input trace.
RefineResult RefineTraceLines(const CrashTrace &trace, const std::filesystem::path &repo,
                              TraceRefiner *refiner);

}  // namespace drill::sanitizer

#endif  // DRILL_SANITIZER_TRACE_REFINE_H_
