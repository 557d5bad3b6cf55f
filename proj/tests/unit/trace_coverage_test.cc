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

#include <string>

#include "drill/common/text.h"
#include "gtest/gtest.h"
#include "support/test_support.h"

namespace drill::coverage {
namespace {

using ::drill::testing::FixtureText;

CrashTrace Chain6Trace() {
  CrashTrace t;
  t.frames = {{0, "copy_bytes", "chain6.c", 6},  {1, "decode_chunk", "chain6.c", 13},
              {2, "parse_body", "chain6.c", 23}, {3, "parse_file", "chain6.c", 31},
              {4, "run", "chain6.c", 40},        {5, "main", "chain6.c", 45}};
  return t;
}

CoverageMap Load(const std::string &name) {
  return ParseLlvmCovExport(FixtureText("coverage/chain6/" + name));
}

TEST(TraceCoverageTest, FullReach) {
  const CrashTrace trace = Chain6Trace();
  const TraceCoverageSummary s = CollectTraceCoverage(Load("good.json"), trace);
  ASSERT_EQ(s.frames.size(), 6u);
  for (const auto &f : s.frames) {
    EXPECT_TRUE(f.reached) << f.frame.function;
    EXPECT_EQ(f.entry_count, 1u);
  }
  EXPECT_EQ(s.deepest_reached_index, 0);
  EXPECT_TRUE(ReachesVulnFunc(s, trace));
}

TEST(TraceCoverageTest, EmptyMap) {
  const CrashTrace trace = Chain6Trace();
  const TraceCoverageSummary s = CollectTraceCoverage(CoverageMap{}, trace);
  for (const auto &f : s.frames) {
    EXPECT_FALSE(f.reached);
    EXPECT_FALSE(f.in_mapping);
  }
  EXPECT_EQ(s.deepest_reached_index, -1);
  EXPECT_FALSE(ReachesVulnFunc(s, trace));
}

TEST(TraceCoverageTest, GuardedEarlyReturnStopsAtFormatCheck) {
  // The bad-magic input returns from parse_file before calling parse_body.
  const CoverageMap bad = Load("bad.json");
  ASSERT_EQ(bad.functions.at("parse_body").entry_count, 0u);  // Export oracle.
  const TraceCoverageSummary s = CollectTraceCoverage(bad, Chain6Trace());
  for (int i = 0; i < 6; ++i) {
    EXPECT_EQ(s.frames[i].reached, i >= 3) << i;
    EXPECT_TRUE(s.frames[i].in_mapping) << "present with count 0 is not absent";
  }
  EXPECT_EQ(s.deepest_reached_index, 3);
}

TEST(TraceCoverageTest, AbsentFunctionFlaggedDistinctly) {
  CrashTrace trace = Chain6Trace();
  trace.frames[1].function = "inlined_helper";
  const TraceCoverageSummary s = CollectTraceCoverage(Load("good.json"), trace);
  EXPECT_FALSE(s.frames[1].reached);
  EXPECT_FALSE(s.frames[1].in_mapping);
  EXPECT_EQ(s.deepest_reached_index, 0);
  EXPECT_FALSE(ReachesVulnFunc(s, trace));
  EXPECT_NE(RenderTraceFeedback(s).find("possibly inlined"), std::string::npos);
}

TEST(TraceCoverageTest, DeepestIsConsistentWithFlags) {
  // Non-monotone reach (recursion or inlining) is allowed.
  CoverageMap map;
  map.functions["a"] = FunctionCoverage{.name = "a", .entry_count = 0};
  map.functions["b"] = FunctionCoverage{.name = "b", .entry_count = 2};
  map.functions["c"] = FunctionCoverage{.name = "c", .entry_count = 0};
  CrashTrace trace;
  trace.frames = {{0, "a", "x.c", 1}, {1, "b", "x.c", 2}, {2, "c", "x.c", 3}};
  const TraceCoverageSummary s = CollectTraceCoverage(map, trace);
  EXPECT_EQ(s.deepest_reached_index, 1);
  EXPECT_EQ(s.frames[1].entry_count, 2u);
}

TEST(TraceCoverageTest, EmptyTraceViolatesPrecondition) {
  EXPECT_TRUE(drill::testing::ThrowsCode(
      [] { CollectTraceCoverage(CoverageMap{}, CrashTrace{}); }, ErrorCode::kPrecondition));
}

// Brute-force truth table over every reach pattern for traces of 1..4 frames.
TEST(ReachesVulnFuncTest, TruthTable) {
  for (int n = 1; n <= 4; ++n) {
    for (int mask = 0; mask < (1 << n); ++mask) {
      CrashTrace trace;
      CoverageMap map;
      for (int i = 0; i < n; ++i) {
        const std::string name = "f" + std::to_string(i);
        trace.frames.push_back({i, name, "t.c", 10 + i});
        map.functions[name] =
            FunctionCoverage{.name = name, .entry_count = (mask >> i) & 1 ? 1u : 0u};
      }
      const TraceCoverageSummary s = CollectTraceCoverage(map, trace);
      const int need = n < 3 ? n : 3;
      const bool expected = (mask & ((1 << need) - 1)) == (1 << need) - 1;
      EXPECT_EQ(ReachesVulnFunc(s, trace), expected) << "n=" << n << " mask=" << mask;
      if (ReachesVulnFunc(s, trace)) EXPECT_TRUE(s.frames[0].reached);
    }
  }
}

TEST(ReachesVulnFuncTest, InnermostGate) {
  CrashTrace trace;
  CoverageMap map;
  for (int i = 0; i < 4; ++i) {
    const std::string name = "g" + std::to_string(i);
    trace.frames.push_back({i, name, "t.c", i + 1});
    map.functions[name] = FunctionCoverage{.name = name, .entry_count = i == 0 ? 0u : 5u};
  }
  EXPECT_FALSE(ReachesVulnFunc(CollectTraceCoverage(map, trace), trace));
}

TEST(RenderTraceFeedbackTest, AllReached) {
  const std::string text =
      RenderTraceFeedback(CollectTraceCoverage(Load("good.json"), Chain6Trace()));
  EXPECT_NE(text.find("reached the vulnerable function"), std::string::npos) << text;
  EXPECT_EQ(text.find("stalled"), std::string::npos) << text;
}

TEST(RenderTraceFeedbackTest, StallLineFromSummaryFields) {
  const TraceCoverageSummary s = CollectTraceCoverage(Load("bad.json"), Chain6Trace());
  ASSERT_EQ(s.deepest_reached_index, 3);
  const StackFrame &callee = s.frames[2].frame;
  const StackFrame &site = s.frames[3].frame;
  const std::string expected = "execution stalled before " + callee.function + " at " +
                               site.file + ":" + std::to_string(site.line);
  const std::string text = RenderTraceFeedback(s);
  EXPECT_NE(text.find(expected), std::string::npos) << text;
  EXPECT_NE(text.find("parse_body"), std::string::npos);
  EXPECT_EQ(text, RenderTraceFeedback(s)) << "rendering must be deterministic";
  // Every frame is named with its status.
  for (const auto &f : s.frames) EXPECT_NE(text.find(f.frame.function), std::string::npos);
}

TEST(RenderTraceFeedbackTest, NothingExecuted) {
  const std::string text = RenderTraceFeedback(CollectTraceCoverage(CoverageMap{}, Chain6Trace()));
  EXPECT_NE(text.find("no backtrace function executed"), std::string::npos) << text;
}

}  // namespace
}  // namespace drill::coverage
