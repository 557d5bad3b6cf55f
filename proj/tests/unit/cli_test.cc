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


// Drives the `drill` binary as a subprocess.

#include <cstdlib>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "drill/common/subprocess.h"
#include "drill/common/text.h"
#include "drill/report/metrics.h"
#include "drill/report/similarity.h"
#include "drill/task/task_report.h"
#include "gtest/gtest.h"
#include "nlohmann/json.hpp"
#include "support/test_support.h"

namespace drill {
namespace {

namespace fs = std::filesystem;
using ::drill::testing::CoverageToolchainAvailable;
using ::drill::testing::Fixture;
using ::drill::testing::ShimDir;
using ::drill::testing::TempDir;
using nlohmann::json;

ProcessResult Drill(const std::vector<std::string> &args) {
  const char *bin = std::getenv("DRILL_BIN");
  ProcessOptions o;
  o.argv.push_back(bin ? bin : "drill");
  o.argv.insert(o.argv.end(), args.begin(), args.end());
  o.env = {{"DRILL_CC", "clang"},
           {"DRILL_CXX", "clang++"},
           {"DRILL_COV_CC", (ShimDir() / "clang-cov").string()},
           {"DRILL_COV_CXX", (ShimDir() / "clang-cov++").string()},
           {"DRILL_EXTRA_CFLAGS", "-gdwarf-4"}};
  o.timeout = std::chrono::minutes(5);
  return RunProcess(o);
}

void WriteText(const fs::path &path, const std::string &text) {
  fs::create_directories(path.parent_path());
  std::ofstream(path, std::ios::binary) << text;
}

TaskReport Synthetic(const std::string &id, Verdict::Kind kind, double cost, double secs) {
  TaskReport r;
  r.project_id = id;
  CrashInfo crash;
  crash.kind = CrashKind(CrashKind::Tag::kHeapBufferOverflow);
  if (kind == Verdict::Kind::kValidated) r.verdict = Verdict::Validated(crash);
  if (kind == Verdict::Kind::kVariant) r.verdict = Verdict::Variant(crash);
  r.cost_usd = cost;
  r.wall_time_secs = secs;
  return r;
}

TEST(CliTest, MissingTaskFileIsMalformedSpec) {
  const ProcessResult r = Drill({"run", "--task", "/nonexistent/task.json"});
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.output.find("error: MalformedSpec:"), std::string::npos) << r.output;
}

TEST(CliTest, InvalidSpecExitsTwo) {
  TempDir tmp;
  WriteText(tmp / "task.json", R"({"project_id": "x"})");
  const ProcessResult r = Drill({"run", "--task", (tmp / "task.json").string()});
  EXPECT_EQ(r.exit_code, 2) << r.output;
  EXPECT_EQ(r.output.rfind("error: ", 0), 0u) << r.output;
}

TEST(CliTest, UnknownSubcommandIsUsageError) {
  const ProcessResult r = Drill({"frobnicate"});
  EXPECT_EQ(r.exit_code, 2) << r.output;
}

TEST(CliTest, ValidateMissingRunDirFails) {
  const ProcessResult r = Drill({"validate", "/nonexistent/run"});
  EXPECT_EQ(r.exit_code, 1) << r.output;
  EXPECT_NE(r.output.find("error: "), std::string::npos);
}

TEST(CliTest, SimilarityOfIdenticalFilesIsOne) {
  TempDir tmp;
  WriteText(tmp / "a.bin", "MGICR\x28 some payload bytes");
  const ProcessResult r =
      Drill({"similarity", (tmp / "a.bin").string(), (tmp / "a.bin").string(), "--json"});
  ASSERT_EQ(r.exit_code, 0) << r.output;
  const json doc = json::parse(r.output);
  EXPECT_DOUBLE_EQ(doc.at("score").get<double>(), 1.0);
}

TEST(CliTest, SimilarityMatchesLibrary) {
  TempDir tmp;
  const std::string a = "0123456789abcdefXXXXXXXXXXXXXXXX0123";
  const std::string b = "0123456789abcdefYYYYYYYYYYYYYYYY";
  WriteText(tmp / "a.bin", a);
  WriteText(tmp / "b.bin", b);
  const ProcessResult r =
      Drill({"similarity", (tmp / "a.bin").string(), (tmp / "b.bin").string(), "--json"});
  ASSERT_EQ(r.exit_code, 0) << r.output;
  const json doc = json::parse(r.output);
  const report::SimilarityScore want = report::PovSimilarity(a, b);
  EXPECT_NEAR(doc.at("gram_sim").get<double>(), want.gram_sim, 1e-12);
  EXPECT_NEAR(doc.at("chunk_sim").get<double>(), want.chunk_sim, 1e-12);
  EXPECT_NEAR(doc.at("score").get<double>(), want.score, 1e-12);
}

TEST(CliTest, SimilarityRejectsEmptyInput) {
  TempDir tmp;
  WriteText(tmp / "a.bin", "abcd");
  WriteText(tmp / "empty.bin", "");
  const ProcessResult r =
      Drill({"similarity", (tmp / "a.bin").string(), (tmp / "empty.bin").string()});
  EXPECT_NE(r.exit_code, 0);
  EXPECT_NE(r.output.find("EmptyInput"), std::string::npos) << r.output;
}

TEST(CliTest, ReportAggregatesRunDirectories) {
  TempDir tmp;
  const std::vector<TaskReport> reports = {
      Synthetic("a", Verdict::Kind::kValidated, 2.0, 600),
      Synthetic("b", Verdict::Kind::kVariant, 1.5, 300),
      Synthetic("c", Verdict::Kind::kNoCrash, 0.5, 120),
  };
  for (const TaskReport &r : reports) {
    WriteText(tmp / r.project_id / "report.json", TaskReportToJson(r).dump(2));
  }
  fs::create_directories(tmp / "not_a_run");
  const ProcessResult r = Drill({"report", tmp.path().string(), "--json"});
  ASSERT_EQ(r.exit_code, 0) << r.output;
  const report::BatchMetrics got = report::BatchMetricsFromJson(json::parse(r.output));
  const report::BatchMetrics want = report::ComputeMetrics(reports);
  EXPECT_EQ(got.total_tasks, 3);
  EXPECT_EQ(got.validated, want.validated);
  EXPECT_EQ(got.variant, want.variant);
  EXPECT_NEAR(got.resolved_rate, want.resolved_rate, 1e-12);
  EXPECT_NEAR(got.crash_rate, want.crash_rate, 1e-12);
  EXPECT_NEAR(got.total_cost_usd, 4.0, 1e-12);
  ASSERT_TRUE(got.cost_per_success.has_value());
  EXPECT_NEAR(*got.cost_per_success, 4.0, 1e-12);
  EXPECT_NEAR(got.avg_exec_time_min, want.avg_exec_time_min, 1e-12);

  const ProcessResult table = Drill({"report", tmp.path().string()});
  ASSERT_EQ(table.exit_code, 0);
  EXPECT_NE(table.output.find("33.3%"), std::string::npos) << table.output;
  EXPECT_NE(table.output.find("66.7%"), std::string::npos) << table.output;
}

TEST(CliTest, ReportOnEmptyDirectoryFails) {
  TempDir tmp;
  const ProcessResult r = Drill({"report", tmp.path().string()});
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.output.find("EmptyBatch"), std::string::npos) << r.output;
}

class CliLiveTest : public ::testing::Test {
 protected:
  void SetUp() override {
    if (!CoverageToolchainAvailable()) GTEST_SKIP() << "coverage toolchain unavailable";
  }
};

TEST_F(CliLiveTest, RunReplayThenValidate) {
  TempDir tmp;
  const ProcessResult run =
      Drill({"run", "--task", Fixture("corpus/magic_gate/truth/task.json").string(),
             "--workdir", tmp.path().string(), "--replay",
             Fixture("transcripts/magic_gate_validated.json").string()});
  ASSERT_EQ(run.exit_code, 0) << run.output;
  EXPECT_NE(run.output.find("verdict: Validated heap-buffer-overflow in copy_payload"),
            std::string::npos)
      << run.output;
  EXPECT_NE(run.output.find("iterations: n1=2 n2=1"), std::string::npos) << run.output;
  const fs::path run_dir = tmp / "magic_gate";
  EXPECT_TRUE(fs::is_regular_file(run_dir / "pov" / "pov.bin"));

  const ProcessResult validate = Drill({"validate", run_dir.string()});
  ASSERT_EQ(validate.exit_code, 0) << validate.output;
  EXPECT_NE(validate.output.find("verdict: Validated"), std::string::npos) << validate.output;

  // A stored verdict that the PoV no longer reproduces is a mismatch.
  json doc = json::parse(ReadFileOrThrow(run_dir / "report.json"));
  doc["verdict"] = TaskReportToJson(Synthetic("magic_gate", Verdict::Kind::kNoCrash, 0, 0))
                       .at("verdict");
  WriteText(run_dir / "report.json", doc.dump(2));
  const ProcessResult mismatch = Drill({"validate", run_dir.string()});
  EXPECT_EQ(mismatch.exit_code, 1) << mismatch.output;
  EXPECT_NE(mismatch.output.find("VerdictMismatch"), std::string::npos) << mismatch.output;
}

TEST_F(CliLiveTest, RunWithBuildFailureReportsPhase) {
  TempDir tmp;
  const ProcessResult run =
      Drill({"run", "--task", Fixture("corpus/broken_build/truth/task.json").string(),
             "--workdir", tmp.path().string(), "--replay",
             Fixture("transcripts/broken_build.json").string()});
  EXPECT_EQ(run.exit_code, 1) << run.output;
  EXPECT_NE(run.output.find("(phase instrumentation)"), std::string::npos) << run.output;
  EXPECT_TRUE(fs::is_regular_file(tmp / "broken_build" / "report.json"));
}

TEST_F(CliLiveTest, BatchRunsTasksInParallel) {
  TempDir tmp;
  WriteText(tmp / "tasks.txt",
            Fixture("corpus/magic_gate/truth/task.json").string() + " " +
                Fixture("transcripts/magic_gate_validated.json").string() + "\n" +
                Fixture("corpus/broken_build/truth/task.json").string() + " " +
                Fixture("transcripts/broken_build.json").string() + "\n");
  const ProcessResult batch = Drill({"batch", "--tasks", (tmp / "tasks.txt").string(),
                                     "--workers", "2", "--workdir", (tmp / "runs").string()});
  // One task fails to build, so the batch reports TaskFailed.
  EXPECT_EQ(batch.exit_code, 1) << batch.output;
  EXPECT_NE(batch.output.find("error: TaskFailed"), std::string::npos) << batch.output;
  EXPECT_NE(batch.output.find("Resolved rate             50.0%"), std::string::npos)
      << batch.output;
  EXPECT_TRUE(fs::is_regular_file(tmp / "runs" / "magic_gate" / "report.json"));
  EXPECT_TRUE(fs::is_regular_file(tmp / "runs" / "broken_build" / "report.json"));
}

}  // namespace
}  // namespace drill
