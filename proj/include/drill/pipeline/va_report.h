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


#ifndef DRILL_PIPELINE_VA_REPORT_H_
#define DRILL_PIPELINE_VA_REPORT_H_

#include <optional>
#include <string>
#include <string_view>

#include "drill/task/types.h"
#include "nlohmann/json.hpp"

namespace drill::pipeline {

inline constexpr std::string_view kInputPlaceholder = "{input}";

struct RootCause {
  std::string forward;        // Input-format prerequisites from the entry point.
  std::string backward;       // Conditions at the crash site.
  std::string type_specific;  // Sub-pattern of the vulnerability class.

  friend bool operator==(const RootCause &, const RootCause &) = default;
};

// Output of vulnerability analysis.
struct VAReport {
  CrashKind crash_kind;
  CrashTrace crash_trace;  // Refined.
  std::string harness_cmd;  // Exactly one {input}.
  std::optional<std::string> input_extension;  // ".img"
  RootCause root_cause;

  friend bool operator==(const VAReport &, const VAReport &) = default;
};

int CountPlaceholders(std::string_view harness_cmd);

// Throws Error(kAnalysisFailed) naming the violated invariant.
void ValidateVAReport(const VAReport &report);

std::string RenderRootCause(const RootCause &rc);

nlohmann::json VAReportToJson(const VAReport &report);
VAReport VAReportFromJson(const nlohmann::json &doc);

// Reads the agent's finish payload: {"harness_cmd", "input_extension"?,
// "root_cause": {"forward", "backward", "type_specific"}}. A missing leading
// dot on the extension is added. Throws Error(kAnalysisFailed).
struct AnalysisFindings {
  std::string harness_cmd;
  std::optional<std::string> input_extension;
  RootCause root_cause;
};
AnalysisFindings ParseAnalysisPayload(const std::string &payload);

// First JSON object in `text`, tolerating surrounding prose or code fences.
std::optional<nlohmann::json> ExtractJsonObject(std::string_view text);

}  // namespace drill::pipeline

#endif  // DRILL_PIPELINE_VA_REPORT_H_
