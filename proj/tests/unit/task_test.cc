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

#include <string>

#include "drill/common/text.h"
#include "drill/task/json_io.h"
#include "drill/task/task_report.h"
#include "drill/task/task_spec.h"
#include "drill/task/types.h"
#include "gtest/gtest.h"
#include "support/test_support.h"

namespace drill {
namespace {

using ::drill::testing::TempDir;
using ::drill::testing::ThrowsCode;
using nlohmann::json;

class TaskSpecTest : public ::testing::Test {
 protected:
  void SetUp() override {
    std::filesystem::create_directories(dir_ / "repo");
    WriteFileOrThrow(dir_ / "repo" / "Makefile", "all:\n\tcc -o prog prog.c\n");
  }

  json Minimal() const {
    return {{"project_id", "demo"},
            {"repo_path", "repo"},
            {"v_location", {{"file", "src/prog.c"}, {"line", 7}}},
            {"v_effect", "heap-buffer-overflow"}};
  }

  std::pair<VulnSpec, TaskConfig> Parse(const json &doc) {
    return ParseTaskSpec(doc.dump(), dir_.path());
  }

  TempDir dir_;
};

TEST_F(TaskSpecTest, MinimalDocumentGetsDefaults) {
  const auto [spec, config] = Parse(Minimal());
  EXPECT_EQ(spec.project_id, "demo");
  EXPECT_TRUE(spec.repo_path.is_absolute());
  EXPECT_EQ(spec.v_location, (SourceLocation{"src/prog.c", 7, std::nullopt}));
  EXPECT_EQ(spec.v_effect, CrashKind(CrashKind::Tag::kHeapBufferOverflow));
  EXPECT_EQ(config.n1_max_iterations, 10);
  EXPECT_EQ(config.n2_max_iterations, 10);
  EXPECT_DOUBLE_EQ(config.budget_usd, 1.50);
  EXPECT_EQ(config.tool_output_limit_chars, 8000);
  EXPECT_EQ(config.exec_timeout_secs, 60);
  for (Phase p : kAllPhases) {
    ASSERT_EQ(config.model_assignments.count(p), 1u) << PhaseName(p);
  }
}

TEST_F(TaskSpecTest, PerPhaseTemperatures) {
  const auto [spec, config] = Parse(Minimal());
  EXPECT_DOUBLE_EQ(config.model_for(Phase::kVulnAnalysis).temperature, 0.1);
  EXPECT_DOUBLE_EQ(config.model_for(Phase::kTraceRefinement).temperature, 0.1);
  EXPECT_DOUBLE_EQ(config.model_for(Phase::kInstrumentation).temperature, 0.1);
  EXPECT_DOUBLE_EQ(config.model_for(Phase::kPathExploration).temperature, 0.7);
  EXPECT_DOUBLE_EQ(config.model_for(Phase::kCrashTriggering).temperature, 0.7);
}

TEST_F(TaskSpecTest, BudgetOfOneFifty) {
  json doc = Minimal();
  doc["budget_usd"] = 1.5;
  EXPECT_DOUBLE_EQ(Parse(doc).second.budget_usd, 1.50);
}

TEST_F(TaskSpecTest, MissingLineNamesTheField) {
  json doc = Minimal();
  doc["v_location"].erase("line");
  try {
    Parse(doc);
    FAIL() << "expected InvalidSpec";
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidSpec);
    EXPECT_TRUE(StartsWith(e.detail(), "v_location.line")) << e.detail();
  }
}

TEST_F(TaskSpecTest, InvariantViolations) {
  auto expect_invalid = [&](json doc, const std::string &field) {
    try {
      Parse(doc);
      ADD_FAILURE() << "expected InvalidSpec for " << field;
    } catch (const Error &e) {
      EXPECT_EQ(e.code(), ErrorCode::kInvalidSpec) << e.what();
      EXPECT_TRUE(StartsWith(e.detail(), field)) << e.detail();
    }
  };
  json d = Minimal();
  d["v_location"]["line"] = 0;
  expect_invalid(d, "v_location.line");
  d = Minimal();
  d["v_location"]["file"] = "";
  expect_invalid(d, "v_location.file");
  d = Minimal();
  d["v_location"]["file"] = "/abs/prog.c";
  expect_invalid(d, "v_location.file");
  d = Minimal();
  d["budget_usd"] = 0;
  expect_invalid(d, "budget_usd");
  d = Minimal();
  d["n1"] = 0;
  expect_invalid(d, "n1");
  d = Minimal();
  d["n2"] = -3;
  expect_invalid(d, "n2");
  d = Minimal();
  d["exec_timeout_secs"] = 0;
  expect_invalid(d, "exec_timeout_secs");
  d = Minimal();
  d["repo_path"] = "missing";
  expect_invalid(d, "repo_path");
  d = Minimal();
  d.erase("v_effect");
  expect_invalid(d, "v_effect");
  d = Minimal();
  d["models"] = {{"path_exploration", {{"temperature", 2.5}}}};
  expect_invalid(d, "models.path_exploration.temperature");
  d = Minimal();
  d["models"] = {{"nonsense", json::object()}};
  expect_invalid(d, "models.nonsense");

  std::filesystem::create_directories(dir_ / "empty");
  d = Minimal();
  d["repo_path"] = "empty";
  expect_invalid(d, "repo_path");
}

TEST_F(TaskSpecTest, MalformedDocument) {
  EXPECT_TRUE(ThrowsCode([&] { ParseTaskSpec("{not json", dir_.path()); },
                         ErrorCode::kMalformedSpec));
  EXPECT_TRUE(ThrowsCode([&] { ParseTaskSpec("[1,2]", dir_.path()); }, ErrorCode::kMalformedSpec));
  EXPECT_TRUE(ThrowsCode([&] { LoadTaskSpec(dir_ / "nope.json"); }, ErrorCode::kMalformedSpec));
}

TEST_F(TaskSpecTest, RoundTripThroughJson) {
  json doc = Minimal();
  doc["v_location"]["function"] = "parse";
  doc["sanitizer_report"] = "==1==ERROR: AddressSanitizer: heap-buffer-overflow";
  doc["cve_id"] = "CVE-2099-0001";
  doc["n1"] = 3;
  doc["budget_usd"] = 0.25;
  doc["models"] = {{"crash_triggering", {{"model", "m2"}, {"temperature", 0.9}}}};
  const auto first = Parse(doc);
  const json serialized = TaskSpecToJson(first.first, first.second);
  WriteFileOrThrow(dir_ / "task2.json", serialized.dump(2));
  const auto second = LoadTaskSpec(dir_ / "task2.json");
  EXPECT_EQ(second.first, first.first);
  EXPECT_EQ(second.second, first.second);
  EXPECT_EQ(second.second.model_for(Phase::kCrashTriggering).model_id, "m2");
}

TEST(CrashKindTest, TokensRoundTrip) {
  using Tag = CrashKind::Tag;
  for (Tag t : {Tag::kStackBufferOverflow, Tag::kHeapBufferOverflow, Tag::kUseAfterFree,
                Tag::kNullDereference, Tag::kMemoryLeak, Tag::kGlobalBufferOverflow,
                Tag::kUseAfterReturn}) {
    const CrashKind k(t);
    EXPECT_EQ(CrashKind::FromToken(k.token()), k) << k.token();
  }
  EXPECT_EQ(CrashKind::FromToken("heap-use-after-free").tag(), Tag::kUseAfterFree);
  EXPECT_EQ(CrashKind::FromToken("detected memory leaks").tag(), Tag::kMemoryLeak);
  const CrashKind other = CrashKind::FromToken("alloc-dealloc-mismatch");
  EXPECT_TRUE(other.is_other());
  EXPECT_EQ(other.other_token(), "alloc-dealloc-mismatch");
  EXPECT_EQ(CrashKind::FromToken(other.token()), other);
  EXPECT_TRUE(other.is_heap_related());
  EXPECT_FALSE(CrashKind(Tag::kStackBufferOverflow).is_heap_related());
}

TEST(JsonIoTest, CrashTraceShape) {
  CrashTrace t;
  t.frames = {{0, "read_past_end", "src/heap_of.c", 7, 10}, {1, "main", "src/heap_of.c", 20}};
  t.alloc_frames = std::vector<StackFrame>{{0, "main", "src/heap_of.c", 18}};
  const json j = CrashTraceToJson(t, CrashKind(CrashKind::Tag::kHeapBufferOverflow));
  EXPECT_EQ(j["crash_type"], "heap-buffer-overflow");
  EXPECT_EQ(j["frames"][0]["function"], "read_past_end");
  EXPECT_EQ(j["frames"][0]["line"], 7);
  EXPECT_FALSE(j["frames"][0].contains("column"));
  EXPECT_FALSE(j.contains("free_frames"));
  CrashTrace back = CrashTraceFromJson(j);
  t.frames[0].column.reset();
  EXPECT_EQ(back, t);
  EXPECT_TRUE(ThrowsCode([] { CrashTraceFromJson(json::array()); }, ErrorCode::kMalformedSpec));
}

TEST(JsonIoTest, VerdictRoundTrip) {
  CrashInfo info;
  info.kind = CrashKind(CrashKind::Tag::kUseAfterFree);
  info.trace.frames = {{0, "use", "a.c", 3}};
  info.summary_line = "SUMMARY: AddressSanitizer: heap-use-after-free a.c:3 in use";
  for (const Verdict &v : {Verdict::Validated(info), Verdict::Variant(info, true), Verdict::NoCrash()}) {
    EXPECT_EQ(VerdictFromJson(VerdictToJson(v)), v);
  }
  EXPECT_EQ(VerdictName(Verdict::Kind::kVariant), "Variant");
}

TEST(TaskReportTest, RoundTrip) {
  TaskReport r;
  r.project_id = "demo";
  r.verdict = Verdict::NoCrash();
  r.useful_tc_count = 2;
  r.n1_used = 4;
  r.n2_used = 10;
  r.cost_usd = 1.23;
  r.wall_time_secs = 12.5;
  r.phase_breakdown["vuln_analysis"] = {1.0, 228145, 8147, 0.8067};
  r.failing_phase = "crash_triggering";
  r.failure_reason = "no crash within n2 iterations";
  const json j = TaskReportToJson(r);
  EXPECT_EQ(j["iterations_used"]["n1"], 4);
  EXPECT_EQ(TaskReportFromJson(j), r);
}

}  // namespace
}  // namespace drill
