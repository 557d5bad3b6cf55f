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

#ifndef DRILL_TASK_TASK_SPEC_H_
#define DRILL_TASK_TASK_SPEC_H_

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "drill/llm/model_params.h"
#include "drill/task/types.h"
#include "nlohmann/json.hpp"

namespace drill {

// Pipeline stages that talk to a model. Trace refinement is split out of
// vulnerability analysis so it can run on a cheaper model.
enum class Phase {
  kVulnAnalysis,
  kTraceRefinement,
  kInstrumentation,
  kPathExploration,
  kCrashTriggering,
};

inline constexpr std::array<Phase, 5> kAllPhases = {
    Phase::kVulnAnalysis, Phase::kTraceRefinement, Phase::kInstrumentation,
    Phase::kPathExploration, Phase::kCrashTriggering};

std::string_view PhaseName(Phase phase);
std::optional<Phase> PhaseFromName(std::string_view name);

// Ground truth for one vulnerability.
struct VulnSpec {
  std::string project_id;
  std::filesystem::path repo_path;  // Absolute after loading.
  SourceLocation v_location;
  CrashKind v_effect;
  std::optional<std::string> sanitizer_report;
  std::optional<std::string> cve_id;

  friend bool operator==(const VulnSpec &, const VulnSpec &) = default;
};

struct TaskConfig {
  double budget_usd = 1.50;
  int n1_max_iterations = 10;
  int n2_max_iterations = 10;
  std::map<Phase, llm::ModelParams> model_assignments;
  int tool_output_limit_chars = 8000;
  int exec_timeout_secs = 60;
  std::filesystem::path work_dir = "runs";

  // Validated-match window: innermost frames considered / line slack.
  int match_frames = 3;
  int match_line_tolerance = 2;
  int build_max_attempts = 4;
  int agent_max_turns = 30;
  bool early_exit_pe = false;

  const llm::ModelParams &model_for(Phase phase) const {
    return model_assignments.at(phase);
  }

  friend bool operator==(const TaskConfig &, const TaskConfig &) = default;
};

// Low temperature for analysis stages, higher for input generation.
llm::ModelParams DefaultModelFor(Phase phase);
TaskConfig DefaultTaskConfig();

// Parses a task document. Relative repo paths resolve against `base_dir`.
// Throws Error(kMalformedSpec) on syntax errors and Error(kInvalidSpec) with
// the offending field name first in the message on invariant violations.
std::pair<VulnSpec, TaskConfig> ParseTaskSpec(std::string_view document,
                                              const std::filesystem::path &base_dir);
std::pair<VulnSpec, TaskConfig> LoadTaskSpec(const std::filesystem::path &path);

nlohmann::json TaskSpecToJson(const VulnSpec &spec, const TaskConfig &config);

}  // namespace drill

#endif  // DRILL_TASK_TASK_SPEC_H_
