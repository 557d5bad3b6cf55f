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


#ifndef DRILL_PIPELINE_PIPELINE_H_
#define DRILL_PIPELINE_PIPELINE_H_

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "drill/agent/context.h"
#include "drill/agent/runtime.h"
#include "drill/agent/sandbox.h"
#include "drill/agent/tools.h"
#include "drill/build/build.h"
#include "drill/coverage/profile.h"
#include "drill/coverage/trace_coverage.h"
#include "drill/llm/chat.h"
#include "drill/llm/ledger.h"
#include "drill/llm/replay.h"
#include "drill/pipeline/executor.h"
#include "drill/pipeline/guidance.h"
#include "drill/pipeline/va_report.h"
#include "drill/task/task_report.h"
#include "drill/task/task_spec.h"

namespace drill::pipeline {

// Run directory of one task:
//   task.json  va_report.json  crash_trace.json  build_cov.log  build_san.log
//   iters/pe_<i>/{input.bin, gen.script, coverage.json, feedback.txt}
//   iters/ct_<j>/{input.bin, asan_report.txt, feedback.txt}
//   pov/pov.bin  report.json  transcript.json
//   work/          agent sandbox: src/ (repo copy), build_cov/, build_san/,
//                  testcases/, scratch/
struct RunLayout {
  std::filesystem::path run_dir;

  std::filesystem::path task() const { return run_dir / "task.json"; }
  std::filesystem::path va_report() const { return run_dir / "va_report.json"; }
  std::filesystem::path crash_trace() const { return run_dir / "crash_trace.json"; }
  std::filesystem::path build_log(const build::InstrumentationKind &kind) const;
  std::filesystem::path pe_dir(int i) const;
  std::filesystem::path ct_dir(int j) const;
  std::filesystem::path pov() const { return run_dir / "pov" / "pov.bin"; }
  std::filesystem::path report() const { return run_dir / "report.json"; }
  std::filesystem::path transcript() const { return run_dir / "transcript.json"; }
  std::filesystem::path profiles() const { return run_dir / "profiles"; }
  std::filesystem::path work() const { return run_dir / "work"; }
  std::filesystem::path src() const { return work() / "src"; }
  std::filesystem::path build_cov() const { return work() / "build_cov"; }
  std::filesystem::path build_san() const { return work() / "build_san"; }
};

RunLayout LayoutFor(const VulnSpec &spec, const TaskConfig &config);

// Rewrites the run directory (as given and canonical) to "<RUN_DIR>".
llm::DigestNormalizer RunDirNormalizer(const std::filesystem::path &run_dir);

struct TestCase {
  int id = 0;
  std::filesystem::path path;  // Persisted input.bin.
  std::optional<std::filesystem::path> producer_script;
  std::string sandbox_path;  // Copy the crash-triggering agent can read.
  bool reaches_vuln = false;
  coverage::TraceCoverageSummary summary;
};

struct InstrumentedBinaries {
  build::BuildResult cov;
  build::BuildResult san;
};

struct CrashTriggerResult {
  Verdict verdict;
  std::optional<std::filesystem::path> pov;
};

struct PipelineDeps {
  llm::ChatBackend *backend = nullptr;  // Required.
  // Null: llvm-profdata/llvm-cov found by CoverageToolchain::Discover().
  coverage::ProfileCollector *collector = nullptr;
  build::CompilerConfig compilers = build::CompilerConfig::FromEnvironment();
  std::filesystem::path ast_grep;  // Empty: built-in search fallback.
};

// One task run. The phase methods must be called in order; Run() calls
// them all and never throws.
class TaskRun {
 public:
  TaskRun(VulnSpec spec, TaskConfig config, PipelineDeps deps);
  ~TaskRun();

  VAReport VulnAnalysis();
  InstrumentedBinaries Instrumentation(const VAReport &va);
  std::vector<TestCase> PathExplore(const VAReport &va, const InstrumentedBinaries &bins);
  CrashTriggerResult CrashTrigger(const VAReport &va, const std::vector<TestCase> &useful,
                                  const InstrumentedBinaries &bins);

  TaskReport Run();

  const RunLayout &layout() const { return layout_; }
  const llm::UsageLedger &ledger() const { return ledger_; }
  int n1_used() const { return n1_used_; }
  int n2_used() const { return n2_used_; }
  // Every exchange with the model so far, digests relative to the run dir.
  nlohmann::json Transcript() const { return recorder_.Transcript(); }
  // Normalizer that makes request digests independent of the run location.
  llm::DigestNormalizer Normalizer() const;

 private:
  class LlmBuildAgent;
  class LlmTraceRefiner;

  void PrepareRunDirectory();
  agent::AgentConfig ConfigFor(Phase phase, std::string system_prompt,
                               std::vector<std::string> tools) const;
  agent::ToolEnvironment &Env();
  coverage::ProfileCollector &Collector(const InstrumentedBinaries &bins);
  CoverageRun ExecuteCoverage(const VAReport &va, const InstrumentedBinaries &bins,
                              const std::filesystem::path &input);
  std::optional<std::filesystem::path> MaterializeInput(const std::string &payload,
                                                        const std::filesystem::path &iter_dir,
                                                        const std::string &name,
                                                        std::optional<std::filesystem::path> *script);

  VulnSpec spec_;
  TaskConfig config_;
  PipelineDeps deps_;
  RunLayout layout_;
  llm::UsageLedger ledger_;
  llm::RecordingBackend recorder_;
  std::unique_ptr<agent::Sandbox> sandbox_;
  agent::ToolRegistry registry_ = agent::ToolRegistry::Builtin();
  agent::ToolEnvironment env_;
  std::unique_ptr<coverage::ProfileCollector> owned_collector_;
  std::optional<coverage::CoverageMap> latest_coverage_;
  std::map<Phase, double> phase_secs_;
  int n1_used_ = 0;
  int n2_used_ = 0;
};

TaskReport RunPipeline(const VulnSpec &spec, const TaskConfig &config, PipelineDeps deps);

// Re-executes the stored PoV of a finished run on its sanitizer build and
// matches the result against the stored task. Throws Error(kFileUnreadable)
// when the run has no PoV, Error(kMalformedSpec) on a broken run directory.
Verdict RevalidateRun(const std::filesystem::path &run_dir);

// One line per earlier iteration, oldest first.
std::string SummarizeTestCase(const std::string &name, const std::string &bytes,
                              const coverage::TraceCoverageSummary &summary);

}  // namespace drill::pipeline

#endif  // DRILL_PIPELINE_PIPELINE_H_
