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

#include <string>

#include "drill/sanitizer/report_parser.h"
#include "gtest/gtest.h"
#include "support/test_support.h"

namespace drill::sanitizer {
namespace {

using Tag = CrashKind::Tag;

VulnSpec Spec(Tag kind, const std::string &file, int line) {
  VulnSpec spec;
  spec.project_id = "p";
  spec.v_location = {file, line, std::nullopt};
  spec.v_effect = CrashKind(kind);
  return spec;
}

CrashInfo Observed(Tag kind, std::vector<StackFrame> frames) {
  CrashInfo info;
  info.kind = CrashKind(kind);
  info.trace.frames = std::move(frames);
  return info;
}

TEST(CrashMatchTest, ExactMatchIsValidated) {
  const CrashInfo info = ParseSanitizerReport(
      drill::testing::FixtureText("reports/asan_heap_buffer_overflow.txt"));
  const Verdict v = MatchCrash(info, Spec(Tag::kHeapBufferOverflow, "fixture/heap_of.c", 7));
  EXPECT_EQ(v.kind, Verdict::Kind::kValidated);
  ASSERT_TRUE(v.observed.has_value());
}

TEST(CrashMatchTest, WrongKindIsVariant) {
  const CrashInfo info = ParseSanitizerReport(
      drill::testing::FixtureText("reports/asan_heap_buffer_overflow.txt"));
  const Verdict v = MatchCrash(info, Spec(Tag::kMemoryLeak, "fixture/heap_of.c", 7));
  EXPECT_EQ(v.kind, Verdict::Kind::kVariant);
  EXPECT_EQ(v.observed->kind.tag(), Tag::kHeapBufferOverflow);
}

TEST(CrashMatchTest, OtherKindsAreNeverValidated) {
  CrashInfo info = Observed(Tag::kOther, {{0, "f", "a/x.c", 3}});
  info.kind = CrashKind::Other("undefined-behavior");
  VulnSpec spec = Spec(Tag::kOther, "a/x.c", 3);
  spec.v_effect = CrashKind::Other("undefined-behavior");
  EXPECT_EQ(MatchCrash(info, spec).kind, Verdict::Kind::kVariant);
}

TEST(CrashMatchTest, FileSuffixUsesLastTwoComponents) {
  EXPECT_TRUE(FileSuffixMatches("/build/proj/src/parse.c", "src/parse.c"));
  EXPECT_TRUE(FileSuffixMatches("/build/proj/src/parse.c", "parse.c"));
  EXPECT_FALSE(FileSuffixMatches("/build/proj/lib/parse.c", "src/parse.c"));
  EXPECT_FALSE(FileSuffixMatches("/build/proj/src/parse.c", "src/parser.c"));
}

// Brute force over K and L against an independent restatement of the rule.
TEST(CrashMatchTest, BruteForceOverWindow) {
  const std::vector<std::string> files = {"/b/src/a.c", "/b/src/b.c", "/b/lib/a.c"};
  for (int k = 1; k <= 4; ++k) {
    for (int l = 0; l <= 3; ++l) {
      for (int f0 = 0; f0 < 3; ++f0) {
        for (int f1 = 0; f1 < 3; ++f1) {
          for (int d0 = -4; d0 <= 4; d0 += 2) {
            for (int d1 = -3; d1 <= 3; d1 += 3) {
              const CrashInfo info = Observed(
                  Tag::kHeapBufferOverflow,
                  {{0, "x", files[f0], 50 + d0}, {1, "y", files[f1], 50 + d1},
                   {2, "z", "/b/src/a.c", 50}, {3, "main", "/b/src/a.c", 50}});
              const VulnSpec spec = Spec(Tag::kHeapBufferOverflow, "src/a.c", 50);
              bool expected = false;
              const int deltas[] = {d0, d1, 0, 0};
              const int fidx[] = {f0, f1, 0, 0};
              for (int i = 0; i < k && i < 4; ++i) {
                if (fidx[i] == 0 && std::abs(deltas[i]) <= l) expected = true;
              }
              const Verdict v = MatchCrash(info, spec, {k, l});
              ASSERT_EQ(v.kind == Verdict::Kind::kValidated, expected)
                  << "k=" << k << " l=" << l << " f0=" << f0 << " f1=" << f1 << " d0=" << d0
                  << " d1=" << d1;
              // Monotone in L: a stricter window never turns Variant into Validated.
              if (l > 0 && v.kind == Verdict::Kind::kVariant) {
                ASSERT_EQ(MatchCrash(info, spec, {k, l - 1}).kind, Verdict::Kind::kVariant);
              }
            }
          }
        }
      }
    }
  }
}

TEST(CrashMatchTest, InnermostFramesInOtherFilesIsVariant) {
  const CrashInfo info = Observed(Tag::kHeapBufferOverflow, {{0, "a", "/x/one.c", 10},
                                                             {1, "b", "/x/two.c", 10},
                                                             {2, "c", "/x/three.c", 10},
                                                             {3, "d", "/x/target.c", 10}});
  EXPECT_EQ(MatchCrash(info, Spec(Tag::kHeapBufferOverflow, "x/target.c", 10)).kind,
            Verdict::Kind::kVariant);
}

}  // namespace
}  // namespace drill::sanitizer
