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


#include "drill/pipeline/va_report.h"

#include "drill/common/error.h"
#include "drill/common/text.h"
#include "drill/task/json_io.h"
#include "fmt/format.h"

namespace drill::pipeline {

using nlohmann::json;

int CountPlaceholders(std::string_view harness_cmd) {
  int count = 0;
  for (size_t pos = harness_cmd.find(kInputPlaceholder); pos != std::string_view::npos;
       pos = harness_cmd.find(kInputPlaceholder, pos + kInputPlaceholder.size())) {
    ++count;
  }
  return count;
}

void ValidateVAReport(const VAReport &report) {
  const int placeholders = CountPlaceholders(report.harness_cmd);
  if (placeholders != 1) {
    throw Error(ErrorCode::kAnalysisFailed,
                fmt::format("harness_cmd must contain {} exactly once, found {}",
                            kInputPlaceholder, placeholders));
  }
  if (Trim(report.root_cause.forward).empty()) {
    throw Error(ErrorCode::kAnalysisFailed, "root_cause.forward is empty");
  }
  if (Trim(report.root_cause.backward).empty()) {
    throw Error(ErrorCode::kAnalysisFailed, "root_cause.backward is empty");
  }
  if (Trim(report.root_cause.type_specific).empty()) {
    throw Error(ErrorCode::kAnalysisFailed, "root_cause.type_specific is empty");
  }
  if (report.crash_trace.frames.empty()) {
    throw Error(ErrorCode::kAnalysisFailed, "crash trace has no frames");
  }
}

std::string RenderRootCause(const RootCause &rc) {
  return fmt::format("Forward (input format prerequisites):\n{}\n\n"
                     "Backward (violating conditions at the crash site):\n{}\n\n"
                     "Type-specific pattern:\n{}",
                     rc.forward, rc.backward, rc.type_specific);
}

json VAReportToJson(const VAReport &report) {
  json doc = {{"crash_trace", CrashTraceToJson(report.crash_trace, report.crash_kind)},
              {"harness_cmd", report.harness_cmd},
              {"input_extension", nullptr},
              {"root_cause",
               {{"forward", report.root_cause.forward},
                {"backward", report.root_cause.backward},
                {"type_specific", report.root_cause.type_specific}}}};
  if (report.input_extension) doc["input_extension"] = *report.input_extension;
  return doc;
}

VAReport VAReportFromJson(const json &doc) {
  try {
    VAReport report;
    report.crash_trace = CrashTraceFromJson(doc.at("crash_trace"));
    report.crash_kind = CrashKind::FromToken(doc["crash_trace"].at("crash_type").get<std::string>());
    report.harness_cmd = doc.at("harness_cmd").get<std::string>();
    if (doc.contains("input_extension") && doc["input_extension"].is_string()) {
      report.input_extension = doc["input_extension"].get<std::string>();
    }
    const json &rc = doc.at("root_cause");
    report.root_cause = {rc.at("forward").get<std::string>(), rc.at("backward").get<std::string>(),
                         rc.at("type_specific").get<std::string>()};
    return report;
  } catch (const json::exception &e) {
    throw Error(ErrorCode::kMalformedSpec, fmt::format("va_report: {}", e.what()));
  }
}

std::optional<json> ExtractJsonObject(std::string_view text) {
  for (size_t start = text.find('{'); start != std::string_view::npos;
       start = text.find('{', start + 1)) {
    // Try the longest balanced candidate first, then shorter ones.
    for (size_t end = text.rfind('}'); end != std::string_view::npos && end > start;
         end = text.rfind('}', end - 1)) {
      json doc = json::parse(text.substr(start, end - start + 1), nullptr, false);
      if (!doc.is_discarded() && doc.is_object()) return doc;
      if (end == 0) break;
    }
  }
  return std::nullopt;
}

AnalysisFindings ParseAnalysisPayload(const std::string &payload) {
  const std::optional<json> doc = ExtractJsonObject(payload);
  if (!doc) throw Error(ErrorCode::kAnalysisFailed, "payload is not a JSON object");
  AnalysisFindings findings;
  auto text = [&](const json &obj, const char *key, const std::string &field) {
    if (!obj.contains(key) || !obj[key].is_string()) {
      throw Error(ErrorCode::kAnalysisFailed, fmt::format("{} must be a string", field));
    }
    return obj[key].get<std::string>();
  };
  findings.harness_cmd = text(*doc, "harness_cmd", "harness_cmd");
  if (doc->contains("input_extension") && (*doc)["input_extension"].is_string()) {
    std::string ext(Trim((*doc)["input_extension"].get<std::string>()));
    if (!ext.empty()) findings.input_extension = ext.front() == '.' ? ext : "." + ext;
  }
  if (!doc->contains("root_cause") || !(*doc)["root_cause"].is_object()) {
    throw Error(ErrorCode::kAnalysisFailed, "root_cause must be an object");
  }
  const json &rc = (*doc)["root_cause"];
  findings.root_cause = {text(rc, "forward", "root_cause.forward"),
                         text(rc, "backward", "root_cause.backward"),
                         text(rc, "type_specific", "root_cause.type_specific")};
  VAReport probe;
  probe.crash_trace.frames.resize(1);
  probe.harness_cmd = findings.harness_cmd;
  probe.root_cause = findings.root_cause;
  ValidateVAReport(probe);
  return findings;
}

}  // namespace drill::pipeline
