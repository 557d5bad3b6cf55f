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

#ifndef DRILL_SANITIZER_CRASH_MATCH_H_
#define DRILL_SANITIZER_CRASH_MATCH_H_

#include <string_view>

#include "drill/task/task_spec.h"
#include "drill/task/types.h"

namespace drill::sanitizer {

struct MatchWindow {
  int innermost_frames = 3;  // K
  int line_tolerance = 2;    // L
};

// Compares the last min(2, depth) path components of both paths.
bool FileSuffixMatches(std::string_view reported, std::string_view expected);

bool FrameMatchesLocation(const StackFrame &frame, const SourceLocation &location,
                          int line_tolerance);

// Validated iff the kinds agree, the kind is not Other, and one of the K
// innermost frames sits within L lines of the expected location. Every
// other parsed crash is a Variant.
Verdict MatchCrash(const CrashInfo &observed, const VulnSpec &expected,
                   const MatchWindow &window = {});

}  // namespace drill::sanitizer

#endif  // DRILL_SANITIZER_CRASH_MATCH_H_
