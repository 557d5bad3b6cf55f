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


#include "drill/pipeline/guidance.h"

#include <algorithm>
#include <cctype>
#include <utility>
#include <vector>

#include "drill/common/error.h"
#include "drill/common/text.h"

namespace drill::pipeline {

namespace {

using Tag = CrashKind::Tag;

constexpr std::string_view kHeapOverflowHint =
    "Heap buffer overflow: make a length, count or size field disagree with the buffer it "
    "describes. Declare a length larger than the allocation, or make the allocation small "
    "and the copied data long. Keep every earlier header field valid so parsing reaches the "
    "copy. Try boundary values (allocation size, size + 1, 0xFFFF, 0x7FFFFFFF) and "
    "off-by-one offsets.";

constexpr std::string_view kUseAfterFreeHint =
    "Use after free: order the input so an object is released before a later step still "
    "uses it. Look for records that free on error, duplicate identifiers that replace an "
    "entry, and cleanup paths followed by further processing. Put the freeing record first "
    "and the record that touches the stale object after it.";

constexpr std::string_view kStackOverflowHint =
    "Stack buffer overflow: find a fixed-size local array filled from input and supply a "
    "field longer than the array. Check how the length is bounded (terminator, count byte, "
    "token length) and exceed it just past the array size, then by a wide margin.";

constexpr std::string_view kNullDerefHint =
    "Null dereference: make the program look up or allocate an object that does not exist. "
    "Reference missing sections, unknown identifiers or empty tables. Omit optional parts "
    "that later code assumes are present. Request sizes that make allocation fail.";

constexpr std::string_view kLeakHint =
    "Memory leak: reach an allocation and then leave through an early-exit path that skips "
    "its release. Make a check after the allocation fail (bad checksum, truncated data, "
    "unexpected tag) so the function returns before freeing.";

constexpr std::string_view kGenericHint =
    "Keep the input well formed up to the vulnerable function, then push the values the "
    "crashing statement depends on to extremes: sizes, counts, offsets and indices at 0, "
    "maximum and just past valid bounds. Vary one field at a time and compare coverage.";

// Longest, most specific phrasing first.
const std::vector<std::pair<std::string_view, Tag>> &Keywords() {
  static const std::vector<std::pair<std::string_view, Tag>> kKeywords = {
      {"stack-use-after-return", Tag::kUseAfterReturn},
      {"use-after-return", Tag::kUseAfterReturn},
      {"use after return", Tag::kUseAfterReturn},
      {"heap-buffer-overflow", Tag::kHeapBufferOverflow},
      {"stack-buffer-overflow", Tag::kStackBufferOverflow},
      {"global-buffer-overflow", Tag::kGlobalBufferOverflow},
      {"heap-use-after-free", Tag::kUseAfterFree},
      {"use-after-free", Tag::kUseAfterFree},
      {"null-dereference", Tag::kNullDereference},
      {"memory-leak", Tag::kMemoryLeak},
      {"heap buffer overflow", Tag::kHeapBufferOverflow},
      {"heap overflow", Tag::kHeapBufferOverflow},
      {"stack buffer overflow", Tag::kStackBufferOverflow},
      {"stack overflow", Tag::kStackBufferOverflow},
      {"global buffer overflow", Tag::kGlobalBufferOverflow},
      {"use after free", Tag::kUseAfterFree},
      {"double free", Tag::kUseAfterFree},
      {"dangling pointer", Tag::kUseAfterFree},
      {"null pointer", Tag::kNullDereference},
      {"null dereference", Tag::kNullDereference},
      {"nullptr dereference", Tag::kNullDereference},
      {"memory leak", Tag::kMemoryLeak},
      {"leaks memory", Tag::kMemoryLeak},
      {"leaked", Tag::kMemoryLeak},
  };
  return kKeywords;
}

std::string Lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

std::string_view GenericGuidanceText() { return kGenericHint; }

std::string_view GuidanceTextFor(const CrashKind &kind) {
  switch (kind.tag()) {
    case Tag::kHeapBufferOverflow: return kHeapOverflowHint;
    case Tag::kUseAfterFree: return kUseAfterFreeHint;
    case Tag::kStackBufferOverflow: return kStackOverflowHint;
    case Tag::kNullDereference: return kNullDerefHint;
    case Tag::kMemoryLeak: return kLeakHint;
    default: return kGenericHint;
  }
}

std::optional<CrashKind> TriageVulnType(std::string_view text) {
  const std::string lower = Lower(text);
  for (const auto &[keyword, tag] : Keywords()) {
    if (lower.find(keyword) != std::string::npos) return CrashKind(tag);
  }
  return std::nullopt;
}

Guidance SampleVulnTypeHints(std::string_view root_cause, const VulnSpec &spec) {
  if (Trim(root_cause).empty()) throw Error(ErrorCode::kPrecondition, "empty root cause");
  CrashKind kind = spec.v_effect;
  if (kind.is_other()) {
    if (auto triaged = TriageVulnType(root_cause)) kind = *triaged;
  }
  return {kind, std::string(GuidanceTextFor(kind))};
}

}  // namespace drill::pipeline
