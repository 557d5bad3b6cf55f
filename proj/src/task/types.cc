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

#include "drill/task/types.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <utility>

namespace drill {
namespace {

struct TokenEntry {
  CrashKind::Tag tag;
  std::string_view canonical;
};

constexpr std::array<TokenEntry, 7> kCanonical = {{
    {CrashKind::Tag::kStackBufferOverflow, "stack-buffer-overflow"},
    {CrashKind::Tag::kHeapBufferOverflow, "heap-buffer-overflow"},
    {CrashKind::Tag::kUseAfterFree, "heap-use-after-free"},
    {CrashKind::Tag::kNullDereference, "null-dereference"},
    {CrashKind::Tag::kMemoryLeak, "memory-leak"},
    {CrashKind::Tag::kGlobalBufferOverflow, "global-buffer-overflow"},
    {CrashKind::Tag::kUseAfterReturn, "stack-use-after-return"},
}};

// Verbatim sanitizer phrasing and common spellings.
constexpr std::array<TokenEntry, 6> kAliases = {{
    {CrashKind::Tag::kMemoryLeak, "detected memory leaks"},
    {CrashKind::Tag::kMemoryLeak, "leak"},
    {CrashKind::Tag::kNullDereference, "segv on unknown address"},
    {CrashKind::Tag::kNullDereference, "null-pointer-dereference"},
    {CrashKind::Tag::kUseAfterFree, "use-after-free"},
    {CrashKind::Tag::kUseAfterReturn, "use-after-return"},
}};

std::string Lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

CrashKind CrashKind::Other(std::string token) {
  CrashKind kind(Tag::kOther);
  kind.other_ = std::move(token);
  return kind;
}

CrashKind CrashKind::FromToken(std::string_view token) {
  const std::string lowered = Lower(token);
  for (const auto &entry : kCanonical) {
    if (lowered == entry.canonical) return CrashKind(entry.tag);
  }
  for (const auto &entry : kAliases) {
    if (lowered == entry.canonical) return CrashKind(entry.tag);
  }
  return Other(std::string(token));
}

std::string CrashKind::token() const {
  if (tag_ == Tag::kOther) return other_;
  for (const auto &entry : kCanonical) {
    if (entry.tag == tag_) return std::string(entry.canonical);
  }
  return other_;
}

bool CrashKind::is_heap_related() const {
  switch (tag_) {
    case Tag::kHeapBufferOverflow:
    case Tag::kUseAfterFree:
    case Tag::kMemoryLeak:
      return true;
    case Tag::kOther:
      // double-free, bad-free, alloc-dealloc-mismatch ...
      return other_.find("free") != std::string::npos ||
             other_.find("alloc") != std::string::npos;
    default:
      return false;
  }
}

Verdict Verdict::Validated(CrashInfo observed) {
  Verdict v;
  v.kind = Kind::kValidated;
  v.observed = std::move(observed);
  return v;
}

Verdict Verdict::Variant(CrashInfo observed, bool flaky) {
  Verdict v;
  v.kind = Kind::kVariant;
  v.observed = std::move(observed);
  v.flaky = flaky;
  return v;
}

Verdict Verdict::NoCrash() { return Verdict{}; }

std::string_view VerdictName(Verdict::Kind kind) {
  switch (kind) {
    case Verdict::Kind::kValidated: return "Validated";
    case Verdict::Kind::kVariant: return "Variant";
    case Verdict::Kind::kNoCrash: return "NoCrash";
  }
  return "NoCrash";
}

std::optional<Verdict::Kind> VerdictKindFromName(std::string_view name) {
  if (name == "Validated") return Verdict::Kind::kValidated;
  if (name == "Variant") return Verdict::Kind::kVariant;
  if (name == "NoCrash") return Verdict::Kind::kNoCrash;
  return std::nullopt;
}

}  // namespace drill
