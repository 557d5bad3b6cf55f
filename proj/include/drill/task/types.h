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

#ifndef DRILL_TASK_TYPES_H_
#define DRILL_TASK_TYPES_H_

// Domain types shared by every stage: vulnerability locations, crash kinds,
// backtraces and verdicts.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace drill {

struct SourceLocation {
  std::string file;  // Repo-relative.
  int line = 0;      // >= 1
  std::optional<std::string> function;

  friend bool operator==(const SourceLocation &, const SourceLocation &) = default;
};

// Sanitizer error class. `Other` keeps the verbatim sanitizer token.
class CrashKind {
 public:
  enum class Tag {
    kStackBufferOverflow,
    kHeapBufferOverflow,
    kUseAfterFree,
    kNullDereference,
    kMemoryLeak,
    kGlobalBufferOverflow,
    kUseAfterReturn,
    kOther,
  };

  CrashKind() = default;
  explicit CrashKind(Tag tag) : tag_(tag) {}
  static CrashKind Other(std::string token);

  // Accepts canonical tokens ("heap-buffer-overflow", "memory-leak", ...) and
  // the verbatim sanitizer phrases ("detected memory leaks", "SEGV on unknown
  // address"). Anything unrecognized becomes Other(token).
  static CrashKind FromToken(std::string_view token);
  // Canonical token; FromToken(kind.token()) == kind.
  std::string token() const;

  Tag tag() const { return tag_; }
  bool is_other() const { return tag_ == Tag::kOther; }
  const std::string &other_token() const { return other_; }
  // Kinds whose reports carry allocation/free stacks.
  bool is_heap_related() const;

  friend bool operator==(const CrashKind &, const CrashKind &) = default;

 private:
  Tag tag_ = Tag::kOther;
  std::string other_;
};

struct StackFrame {
  int index = 0;  // 0 is the crash site.
  std::string function;
  std::string file;
  int line = 0;
  std::optional<int> column;

  friend bool operator==(const StackFrame &, const StackFrame &) = default;
};

// Innermost frame first.
struct CrashTrace {
  std::vector<StackFrame> frames;
  std::optional<std::vector<StackFrame>> alloc_frames;
  std::optional<std::vector<StackFrame>> free_frames;

  friend bool operator==(const CrashTrace &, const CrashTrace &) = default;
};

struct CrashInfo {
  CrashKind kind;
  CrashTrace trace;
  std::string raw_excerpt;
  std::string summary_line;

  friend bool operator==(const CrashInfo &, const CrashInfo &) = default;
};

struct Verdict {
  enum class Kind { kValidated, kVariant, kNoCrash };

  Kind kind = Kind::kNoCrash;
  std::optional<CrashInfo> observed;  // Set for Validated and Variant.
  bool flaky = false;                 // Crashed once but did not reproduce.

  static Verdict Validated(CrashInfo observed);
  static Verdict Variant(CrashInfo observed, bool flaky = false);
  static Verdict NoCrash();

  bool is_crash() const { return kind != Kind::kNoCrash; }
  friend bool operator==(const Verdict &, const Verdict &) = default;
};

std::string_view VerdictName(Verdict::Kind kind);
std::optional<Verdict::Kind> VerdictKindFromName(std::string_view name);

}  // namespace drill

#endif  // DRILL_TASK_TYPES_H_
