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


#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "drill/common/error.h"
#include "drill/common/text.h"
#include "drill/report/metrics.h"
#include "drill/report/similarity.h"
#include "gtest/gtest.h"
#include "support/test_support.h"

namespace drill::report {
namespace {

using ::drill::testing::TempDir;
using ::drill::testing::ThrowsCode;

TaskReport Report(Verdict::Kind kind, double cost = 0, double secs = 0) {
  TaskReport r;
  r.project_id = "t";
  r.verdict.kind = kind;
  r.cost_usd = cost;
  r.wall_time_secs = secs;
  return r;
}

std::vector<TaskReport> Batch(int total, int validated, int variant, double cost_each = 0) {
  std::vector<TaskReport> reports;
  for (int i = 0; i < total; ++i) {
    const Verdict::Kind kind = i < validated             ? Verdict::Kind::kValidated
                               : i < validated + variant ? Verdict::Kind::kVariant
                                                         : Verdict::Kind::kNoCrash;
    reports.push_back(Report(kind, cost_each, 60));
  }
  return reports;
}

TEST(MetricsTest, FullBenchmarkRow) {
  const BatchMetrics m = ComputeMetrics(Batch(190, 55, 12));
  EXPECT_EQ(m.validated, 55);
  EXPECT_EQ(m.variant, 12);
  EXPECT_NEAR(m.resolved_rate * 100, 28.9, 0.05);
  EXPECT_NEAR(m.crash_rate * 100, 35.3, 0.05);
  EXPECT_EQ(FormatPercent(m.resolved_rate), "28.9%");
  EXPECT_EQ(FormatPercent(m.crash_rate), "35.3%");
}

TEST(MetricsTest, SubsetRow) {
  const BatchMetrics m = ComputeMetrics(Batch(60, 15, 2));
  EXPECT_EQ(FormatPercent(m.resolved_rate), "25.0%");
  EXPECT_EQ(FormatPercent(m.crash_rate), "28.3%");
}

TEST(MetricsTest, CostPerSuccess) {
  const BatchMetrics full = ComputeMetrics(Batch(190, 55, 12, 1.79));
  ASSERT_TRUE(full.cost_per_success.has_value());
  EXPECT_NEAR(*full.cost_per_success, 6.18, 0.01);
  EXPECT_EQ(FormatUsd(full.cost_per_success), "$6.18");
  EXPECT_NEAR(full.avg_cost_per_task, 1.79, 1e-9);
  const BatchMetrics subset = ComputeMetrics(Batch(60, 15, 2, 1.93));
  EXPECT_NEAR(*subset.cost_per_success, 7.72, 0.01);
  EXPECT_DOUBLE_EQ(subset.avg_exec_time_min, 1.0);
}

TEST(MetricsTest, NothingValidated) {
  const BatchMetrics m = ComputeMetrics({Report(Verdict::Kind::kNoCrash, 0.5)});
  EXPECT_EQ(m.resolved_rate, 0);
  EXPECT_FALSE(m.cost_per_success.has_value());
  EXPECT_EQ(FormatUsd(m.cost_per_success), "n/a");
  EXPECT_EQ(BatchMetricsToJson(m)["cost_per_success"], "n/a");
  EXPECT_NE(RenderMetricsTable(m).find("n/a"), std::string::npos);
}

TEST(MetricsTest, EmptyBatch) {
  EXPECT_TRUE(ThrowsCode([] { ComputeMetrics({}); }, ErrorCode::kEmptyBatch));
}

TEST(MetricsTest, PermutationInvariantAndJsonRoundTrip) {
  std::mt19937 rng(42);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<TaskReport> reports;
    const int n = 1 + static_cast<int>(rng() % 40);
    for (int i = 0; i < n; ++i) {
      reports.push_back(Report(static_cast<Verdict::Kind>(rng() % 3), (rng() % 1000) / 256.0,
                               (rng() % 5000) / 8.0));
    }
    const BatchMetrics m = ComputeMetrics(reports);
    std::shuffle(reports.begin(), reports.end(), rng);
    const BatchMetrics shuffled = ComputeMetrics(reports);
    EXPECT_EQ(shuffled.validated, m.validated);
    EXPECT_EQ(shuffled.variant, m.variant);
    EXPECT_NEAR(shuffled.total_cost_usd, m.total_cost_usd, 1e-9);
    EXPECT_DOUBLE_EQ(shuffled.resolved_rate, m.resolved_rate);
    EXPECT_EQ(BatchMetricsFromJson(nlohmann::json::parse(BatchMetricsToJson(m).dump())), m);
  }
}

TEST(MetricsTest, LoadsRunDirectories) {
  TempDir dir;
  const std::vector<Verdict::Kind> kinds = {Verdict::Kind::kValidated, Verdict::Kind::kVariant,
                                            Verdict::Kind::kNoCrash};
  for (size_t i = 0; i < kinds.size(); ++i) {
    TaskReport r = Report(kinds[i], 1.0 + static_cast<double>(i), 30);
    r.project_id = "t" + std::to_string(i);
    WriteFileOrThrow(dir / r.project_id / "report.json", TaskReportToJson(r).dump());
  }
  std::filesystem::create_directories(dir / "not_a_run");
  const auto reports = LoadRunReports(dir.path());
  ASSERT_EQ(reports.size(), 3u);
  EXPECT_EQ(reports[0].project_id, "t0");
  const BatchMetrics m = ComputeMetrics(reports);
  EXPECT_EQ(m.validated, 1);
  EXPECT_EQ(m.variant, 1);
  EXPECT_DOUBLE_EQ(*m.cost_per_success, 6.0);
  EXPECT_TRUE(ThrowsCode([&] { LoadRunReports(dir / "missing"); }, ErrorCode::kFileUnreadable));
}

TEST(SimilarityTest, IdentityAndDisjoint) {
  const std::string a = "MGICR\x28\x00AAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAA";
  EXPECT_EQ(PovSimilarity(a, a), (SimilarityScore{1.0, 1.0, 1.0}));
  EXPECT_EQ(PovSimilarity("abcdefghijklmnopqrstuvwxyz", "0123456789"),
            (SimilarityScore{0.0, 0.0, 0.0}));
  EXPECT_EQ(PovSimilarity("ab", "ab"), (SimilarityScore{1.0, 1.0, 1.0}));
}

TEST(SimilarityTest, AverageRowWeighting) {
  EXPECT_NEAR(CombineScore(0.0413, 0.0022), 0.0296, 0.0001);
}

TEST(SimilarityTest, ChunksCountAsMultiset) {
  const std::string chunk(16, 'x');
  EXPECT_DOUBLE_EQ(ChunkSimilarity(chunk + chunk, chunk), 0.5);
  EXPECT_DOUBLE_EQ(ChunkSimilarity(chunk + chunk, chunk + chunk + chunk), 2.0 / 3.0);
  // Alignment matters: a shifted copy shares no chunk but most grams.
  const std::string data = "0123456789abcdefFEDCBA9876543210";
  EXPECT_EQ(ChunkSimilarity(data, "_" + data), 0.0);
  EXPECT_GT(GramSimilarity(data, "_" + data), 0.9);
}

TEST(SimilarityTest, SymmetricAndBounded) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    auto random_bytes = [&] {
      std::string s(1 + rng() % 80, '\0');
      for (char &c : s) c = static_cast<char>('a' + rng() % 4);
      return s;
    };
    const std::string a = random_bytes(), b = random_bytes();
    const SimilarityScore ab = PovSimilarity(a, b), ba = PovSimilarity(b, a);
    EXPECT_EQ(ab, ba);
    for (double v : {ab.gram_sim, ab.chunk_sim, ab.score}) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
    EXPECT_DOUBLE_EQ(ab.score, 0.7 * ab.gram_sim + 0.3 * ab.chunk_sim);
  }
}

TEST(SimilarityTest, EmptyInput) {
  EXPECT_TRUE(ThrowsCode([] { PovSimilarity("", "x"); }, ErrorCode::kEmptyInput));
  EXPECT_TRUE(ThrowsCode([] { PovSimilarity("x", ""); }, ErrorCode::kEmptyInput));
}

}  // namespace
}  // namespace drill::report
