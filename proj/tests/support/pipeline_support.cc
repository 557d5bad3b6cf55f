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


#include "support/pipeline_support.h"

#include "drill/common/text.h"
#include "support/test_support.h"

namespace drill::testing {

namespace fs = std::filesystem;

build::CompilerConfig TestCompilers() {
  build::CompilerConfig c;
  c.cc = "clang";
  c.cxx = "clang++";
  c.coverage_cc = (ShimDir() / "clang-cov").string();
  c.coverage_cxx = (ShimDir() / "clang-cov++").string();
  c.extra_cflags = {"-gdwarf-4"};
  return c;
}

std::pair<VulnSpec, TaskConfig> LoadCorpusTask(const std::string &name,
                                               const fs::path &work_dir) {
  auto [spec, config] = LoadTaskSpec(Fixture("corpus/" + name + "/truth/task.json"));
  config.work_dir = work_dir;
  return {spec, config};
}

std::vector<llm::ReplayEntry> LoadTranscript(const std::string &name) {
  return llm::TranscriptFromJson(
      nlohmann::json::parse(FixtureText("transcripts/" + name + ".json")));
}

ReplayRun RunReplay(const VulnSpec &spec, const TaskConfig &config,
                    std::vector<llm::ReplayEntry> entries, llm::DigestNormalizer normalizer) {
  llm::ReplayBackend backend(std::move(entries), std::move(normalizer));
  pipeline::PipelineDeps deps;
  deps.backend = &backend;
  deps.compilers = TestCompilers();
  ReplayRun run;
  run.report = pipeline::RunPipeline(spec, config, deps);
  run.calls = backend.calls();
  run.remaining = backend.remaining();
  return run;
}

nlohmann::json ReportWithoutTimings(const fs::path &run_dir) {
  nlohmann::json doc = nlohmann::json::parse(ReadFileOrThrow(run_dir / "report.json"));
  doc.erase("wall_time_secs");
  for (auto &[name, stats] : doc["phase_breakdown"].items()) stats.erase("time_secs");
  return doc;
}

}  // namespace drill::testing
