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


#include "drill/report/metrics.h"

#include <algorithm>

#include "drill/common/error.h"
#include "drill/common/text.h"
#include "fmt/format.h"

namespace drill::report {

namespace fs = std::filesystem;
using nlohmann::json;

BatchMetrics ComputeMetrics(const std::vector<TaskReport> &reports) {
  if (reports.empty()) throw Error(ErrorCode::kEmptyBatch, "no task reports");
  BatchMetrics m;
  m.total_tasks = static_cast<int>(reports.size());
  double total_secs = 0;
  for (const TaskReport &r : reports) {
    if (r.verdict.kind == Verdict::Kind::kValidated) ++m.validated;
    if (r.verdict.kind == Verdict::Kind::kVariant) ++m.variant;
    m.total_cost_usd += r.cost_usd;
    total_secs += r.wall_time_secs;
  }
  const double n = m.total_tasks;
  m.resolved_rate = m.validated / n;
  m.crash_rate = (m.validated + m.variant) / n;
  m.avg_cost_per_task = m.total_cost_usd / n;
  if (m.validated > 0) m.cost_per_success = m.total_cost_usd / m.validated;
  m.avg_exec_time_min = total_secs / n / 60.0;
  return m;
}

std::string FormatPercent(double fraction) { return fmt::format("{:.1f}%", fraction * 100.0); }

std::string FormatUsd(std::optional<double> usd) {
  return usd ? fmt::format("${:.2f}", *usd) : std::string("n/a");
}

std::string RenderMetricsTable(const BatchMetrics &m) {
  const std::vector<std::pair<std::string, std::string>> rows = {
      {"Tasks", std::to_string(m.total_tasks)},
      {"Validated PoVs", std::to_string(m.validated)},
      {"Variant PoVs", std::to_string(m.variant)},
      {"Resolved rate", FormatPercent(m.resolved_rate)},
      {"Crash rate", FormatPercent(m.crash_rate)},
      {"Total cost", FormatUsd(m.total_cost_usd)},
      {"Avg cost per task", FormatUsd(m.avg_cost_per_task)},
      {"Cost per success", FormatUsd(m.cost_per_success)},
      {"Avg exec time (min)", fmt::format("{:.2f}", m.avg_exec_time_min)},
  };
  std::string out;
  for (const auto &[label, value] : rows) out += fmt::format("{:<20} {:>10}\n", label, value);
  return out;
}

json BatchMetricsToJson(const BatchMetrics &m) {
  return {{"total_tasks", m.total_tasks},
          {"validated", m.validated},
          {"variant", m.variant},
          {"resolved_rate", m.resolved_rate},
          {"crash_rate", m.crash_rate},
          {"total_cost_usd", m.total_cost_usd},
          {"avg_cost_per_task", m.avg_cost_per_task},
          {"cost_per_success", m.cost_per_success ? json(*m.cost_per_success) : json("n/a")},
          {"avg_exec_time_min", m.avg_exec_time_min},
          {"resolved_rate_display", FormatPercent(m.resolved_rate)},
          {"crash_rate_display", FormatPercent(m.crash_rate)}};
}

BatchMetrics BatchMetricsFromJson(const json &doc) {
  try {
    BatchMetrics m;
    m.total_tasks = doc.at("total_tasks").get<int>();
    m.validated = doc.at("validated").get<int>();
    m.variant = doc.at("variant").get<int>();
    m.resolved_rate = doc.at("resolved_rate").get<double>();
    m.crash_rate = doc.at("crash_rate").get<double>();
    m.total_cost_usd = doc.at("total_cost_usd").get<double>();
    m.avg_cost_per_task = doc.at("avg_cost_per_task").get<double>();
    if (doc.at("cost_per_success").is_number()) {
      m.cost_per_success = doc["cost_per_success"].get<double>();
    }
    m.avg_exec_time_min = doc.at("avg_exec_time_min").get<double>();
    return m;
  } catch (const json::exception &e) {
    throw Error(ErrorCode::kMalformedSpec, fmt::format("batch metrics: {}", e.what()));
  }
}

std::vector<TaskReport> LoadRunReports(const fs::path &runs_dir) {
  if (!fs::is_directory(runs_dir)) {
    throw Error(ErrorCode::kFileUnreadable, fmt::format("{} is not a directory", runs_dir.string()));
  }
  std::vector<fs::path> dirs;
  for (const auto &entry : fs::directory_iterator(runs_dir)) {
    if (entry.is_directory() && fs::is_regular_file(entry.path() / "report.json")) {
      dirs.push_back(entry.path());
    }
  }
  std::sort(dirs.begin(), dirs.end());
  std::vector<TaskReport> reports;
  for (const fs::path &dir : dirs) {
    const fs::path file = dir / "report.json";
    try {
      reports.push_back(TaskReportFromJson(json::parse(ReadFileOrThrow(file))));
    } catch (const json::exception &e) {
      throw Error(ErrorCode::kMalformedSpec, fmt::format("{}: {}", file.string(), e.what()));
    }
  }
  return reports;
}

}  // namespace drill::report
