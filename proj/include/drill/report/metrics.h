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


#ifndef DRILL_REPORT_METRICS_H_
#define DRILL_REPORT_METRICS_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "drill/task/task_report.h"
#include "nlohmann/json.hpp"

namespace drill::report {

struct BatchMetrics {
  int total_tasks = 0;
  int validated = 0;
  int variant = 0;
  double resolved_rate = 0;  // validated / total
  double crash_rate = 0;     // (validated + variant) / total
  double total_cost_usd = 0;
  double avg_cost_per_task = 0;
  std::optional<double> cost_per_success;  // Unset when nothing validated.
  double avg_exec_time_min = 0;
  friend bool operator==(const BatchMetrics &, const BatchMetrics &) = default;
};

// Throws Error(kEmptyBatch) for an empty list.
BatchMetrics ComputeMetrics(const std::vector<TaskReport> &reports);

// "28.9%": one decimal place.
std::string FormatPercent(double fraction);
// "$6.18", or "n/a" when unset.
std::string FormatUsd(std::optional<double> usd);

std::string RenderMetricsTable(const BatchMetrics &metrics);
// cost_per_success is the string "n/a" when unset.
nlohmann::json BatchMetricsToJson(const BatchMetrics &metrics);
BatchMetrics BatchMetricsFromJson(const nlohmann::json &doc);

// report.json of every immediate subdirectory that has one, sorted by
// directory name. Throws Error(kFileUnreadable) when `runs_dir` is missing.
std::vector<TaskReport> LoadRunReports(const std::filesystem::path &runs_dir);

}  // namespace drill::report

#endif  // DRILL_REPORT_METRICS_H_
