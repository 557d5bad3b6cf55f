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

#include "drill/task/task_report.h"

#include "drill/common/error.h"
#include "drill/task/json_io.h"

namespace drill {
using nlohmann::json;

json TaskReportToJson(const TaskReport &r) {
  json phases = json::object();
  for (const auto &[name, s] : r.phase_breakdown) {
    phases[name] = {{"time_secs", s.time_secs},
                    {"input_tokens", s.input_tokens},
                    {"output_tokens", s.output_tokens},
                    {"cost_usd", s.cost_usd}};
  }
  json doc = {
      {"project_id", r.project_id},
      {"verdict", VerdictToJson(r.verdict)},
      {"pov_path", r.pov_path ? json(r.pov_path->string()) : json(nullptr)},
      {"useful_tc_count", r.useful_tc_count},
      {"iterations_used", {{"n1", r.n1_used}, {"n2", r.n2_used}}},
      {"cost_usd", r.cost_usd},
      {"wall_time_secs", r.wall_time_secs},
      {"phase_breakdown", phases},
      {"failing_phase", r.failing_phase ? json(*r.failing_phase) : json(nullptr)},
      {"failure_reason", r.failure_reason},
      {"harness_cmd", r.harness_cmd},
      {"san_root", r.san_root.string()},
      {"detect_leaks", r.detect_leaks},
  };
  return doc;
}

TaskReport TaskReportFromJson(const json &doc) {
  TaskReport r;
  try {
    r.project_id = doc.at("project_id").get<std::string>();
    r.verdict = VerdictFromJson(doc.at("verdict"));
    if (!doc.at("pov_path").is_null()) r.pov_path = doc["pov_path"].get<std::string>();
    r.useful_tc_count = doc.at("useful_tc_count").get<int>();
    r.n1_used = doc.at("iterations_used").at("n1").get<int>();
    r.n2_used = doc.at("iterations_used").at("n2").get<int>();
    r.cost_usd = doc.at("cost_usd").get<double>();
    r.wall_time_secs = doc.at("wall_time_secs").get<double>();
    for (const auto &[name, s] : doc.at("phase_breakdown").items()) {
      r.phase_breakdown[name] = PhaseStats{s.at("time_secs").get<double>(),
                                           s.at("input_tokens").get<int64_t>(),
                                           s.at("output_tokens").get<int64_t>(),
                                           s.at("cost_usd").get<double>()};
    }
    if (doc.contains("failing_phase") && !doc["failing_phase"].is_null()) {
      r.failing_phase = doc["failing_phase"].get<std::string>();
    }
    r.failure_reason = doc.value("failure_reason", std::string());
    r.harness_cmd = doc.value("harness_cmd", std::string());
    r.san_root = doc.value("san_root", std::string());
    r.detect_leaks = doc.value("detect_leaks", false);
  } catch (const json::exception &e) {
    throw Error(ErrorCode::kMalformedSpec, std::string("report.json: ") + e.what());
  }
  return r;
}

}  // namespace drill
