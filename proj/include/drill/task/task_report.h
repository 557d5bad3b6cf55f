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

#ifndef DRILL_TASK_TASK_REPORT_H_
#define DRILL_TASK_TASK_REPORT_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "drill/task/types.h"
#include "nlohmann/json.hpp"

namespace drill {

struct PhaseStats {
  double time_secs = 0;
  int64_t input_tokens = 0;
  int64_t output_tokens = 0;
  double cost_usd = 0;

  friend bool operator==(const PhaseStats &, const PhaseStats &) = default;
};

// Outcome of one task run. Paths are relative to the run directory so a run
// directory can be moved or compared byte-for-byte.
struct TaskReport {
  std::string project_id;
  Verdict verdict;
  std::optional<std::filesystem::path> pov_path;
  int useful_tc_count = 0;
  int n1_used = 0;
  int n2_used = 0;
  double cost_usd = 0;
  double wall_time_secs = 0;
  std::map<std::string, PhaseStats> phase_breakdown;
  std::optional<std::string> failing_phase;
  std::string failure_reason;

  // What `drill validate` needs to re-execute the PoV.
  std::string harness_cmd;
  std::filesystem::path san_root;  // Harness cwd for sanitizer runs.
  bool detect_leaks = false;

  friend bool operator==(const TaskReport &, const TaskReport &) = default;
};

nlohmann::json TaskReportToJson(const TaskReport &report);
TaskReport TaskReportFromJson(const nlohmann::json &doc);

}  // namespace drill

#endif  // DRILL_TASK_TASK_REPORT_H_
