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

#ifndef DRILL_SANITIZER_REPORT_PARSER_H_
#define DRILL_SANITIZER_REPORT_PARSER_H_

#include <cstddef>
#include <string_view>

#include "drill/task/types.h"

namespace drill::sanitizer {

// Longest raw excerpt kept in CrashInfo.
inline constexpr size_t kMaxExcerptChars = 4000;

// Parses AddressSanitizer, LeakSanitizer and UndefinedBehaviorSanitizer
// reports. The crash kind comes from the first "ERROR:" line (or the first
// UBSan "runtime error:" line); frames come from the first backtrace after it,
// innermost first, renumbered from 0. Frames without file:line and sanitizer
// or libc runtime frames are dropped. For heap kinds the "allocated by" and
// "freed by" stacks are attached.
//
// Throws Error(kNoReport) when no error line exists and
// Error(kNoSourceFrames) when the backtrace has only raw addresses.
CrashInfo ParseSanitizerReport(std::string_view text);

// True when `text` contains something ParseSanitizerReport would accept.
bool LooksLikeSanitizerReport(std::string_view text);

}  // namespace drill::sanitizer

#endif  // DRILL_SANITIZER_REPORT_PARSER_H_
