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

#include "drill/sanitizer/crash_match.h"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <vector>

namespace drill::sanitizer {
namespace {

std::vector<std::string> Components(std::string_view path) {
  std::vector<std::string> parts;
  for (const auto &p : std::filesystem::path(path).lexically_normal()) {
    const auto s = p.string();
    if (s.empty() || s == "/" || s == ".") continue;
    parts.push_back(s);
  }
  return parts;
}

}  // namespace

bool FileSuffixMatches(std::string_view reported, std::string_view expected) {
  const auto a = Components(reported);
  const auto b = Components(expected);
  const size_t depth = std::min<size_t>({2, a.size(), b.size()});
  if (depth == 0) return false;
  return std::equal(a.end() - static_cast<long>(depth), a.end(),
                    b.end() - static_cast<long>(depth));
}

bool FrameMatchesLocation(const StackFrame &frame, const SourceLocation &location,
                          int line_tolerance) {
  return FileSuffixMatches(frame.file, location.file) &&
         std::abs(frame.line - location.line) <= line_tolerance;
}

Verdict MatchCrash(const CrashInfo &observed, const VulnSpec &expected,
                   const MatchWindow &window) {
  if (observed.kind.is_other() || !(observed.kind == expected.v_effect)) {
    return Verdict::Variant(observed);
  }
  const auto &frames = observed.trace.frames;
  const size_t k = std::min<size_t>(frames.size(),
                                    static_cast<size_t>(std::max(window.innermost_frames, 0)));
  for (size_t i = 0; i < k; ++i) {
    if (FrameMatchesLocation(frames[i], expected.v_location, window.line_tolerance)) {
      return Verdict::Validated(observed);
    }
  }
  return Verdict::Variant(observed);
}

}  // namespace drill::sanitizer
