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


// drill: command-line front end.
//
//   drill run --task <file> [--budget <usd>] [--n1 <k>] [--n2 <k>]
//             [--workdir <dir>] [--early-exit-pe] [--replay <transcript>]
//   drill batch --tasks <list-file> --workers <W> [--seed <s>] [--workdir <dir>]
//   drill validate <run-dir>
//   drill report <runs-dir> [--json]
//   drill similarity <generated> <ground-truth> [--json]
//
// Failures print one line, "error: <Code>: <detail>", and exit nonzero:
// 2 for a malformed or invalid task document, 1 otherwise.

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "drill/common/error.h"
#include "drill/common/subprocess.h"
#include "drill/common/text.h"
#include "drill/llm/http_backend.h"
#include "drill/llm/replay.h"
#include "drill/pipeline/pipeline.h"
#include "drill/report/metrics.h"
#include "drill/report/similarity.h"
#include "drill/task/json_io.h"
#include "drill/task/task_spec.h"
#include "fmt/format.h"

namespace drill::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct RunOptions {
  std::string task;
  std::optional<double> budget;
  std::optional<int> n1;
  std::optional<int> n2;
  std::optional<std::string> workdir;
  bool early_exit_pe = false;
  std::optional<std::string> replay;
};

struct BatchOptions {
  std::string tasks;
  int workers = 1;
  unsigned seed = 42;
  std::optional<std::string> workdir;
  std::optional<double> budget;
};

int ExitCodeFor(ErrorCode code) {
  return code == ErrorCode::kMalformedSpec || code == ErrorCode::kInvalidSpec ? 2 : 1;
}

std::string DescribeVerdict(const Verdict &verdict) {
  std::string out(VerdictName(verdict.kind));
  if (verdict.flaky) out += " (flaky)";
  if (verdict.observed) {
    out += " " + verdict.observed->kind.token();
    if (!verdict.observed->trace.frames.empty()) {
      const StackFrame &f = verdict.observed->trace.frames.front();
      out += fmt::format(" in {} at {}:{}", f.function, f.file, f.line);
    }
  }
  return out;
}

// Unset model ids take $DRILL_LLM_MODEL.
void ApplyModelEnvironment(TaskConfig &config) {
  const char *model = std::getenv("DRILL_LLM_MODEL");
  if (model == nullptr || *model == '\0') return;
  for (auto &[phase, params] : config.model_assignments) {
    if (params.model_id == llm::ModelParams{}.model_id) params.model_id = model;
  }
}

int CmdRun(const RunOptions &o) {
  auto [spec, config] = LoadTaskSpec(o.task);
  if (o.budget) {
    if (!(*o.budget > 0)) throw Error(ErrorCode::kInvalidSpec, "budget_usd: must be > 0");
    config.budget_usd = *o.budget;
  }
  if (o.n1) config.n1_max_iterations = *o.n1;
  if (o.n2) config.n2_max_iterations = *o.n2;
  if (o.workdir) config.work_dir = *o.workdir;
  if (o.early_exit_pe) config.early_exit_pe = true;
  ApplyModelEnvironment(config);

  std::unique_ptr<llm::ChatBackend> backend;
  if (o.replay) {
    json doc;
    try {
      doc = json::parse(ReadFileOrThrow(*o.replay));
    } catch (const json::exception &e) {
      throw Error(ErrorCode::kMalformedSpec, fmt::format("{}: {}", *o.replay, e.what()));
    }
    backend = std::make_unique<llm::ReplayBackend>(
        llm::TranscriptFromJson(doc),
        pipeline::RunDirNormalizer(pipeline::LayoutFor(spec, config).run_dir));
  } else {
    backend = std::make_unique<llm::HttpBackend>(llm::HttpBackendOptions::FromEnvironment());
  }
  pipeline::PipelineDeps deps;
  deps.backend = backend.get();
  const TaskReport report = pipeline::RunPipeline(spec, config, deps);
  const fs::path run_dir = pipeline::LayoutFor(spec, config).run_dir;

  std::cout << fmt::format("project: {}\n", report.project_id)
            << fmt::format("verdict: {}\n", DescribeVerdict(report.verdict))
            << fmt::format("iterations: n1={} n2={}\n", report.n1_used, report.n2_used)
            << fmt::format("useful test cases: {}\n", report.useful_tc_count)
            << fmt::format("cost: ${:.4f}\n", report.cost_usd);
  if (report.pov_path) std::cout << fmt::format("pov: {}\n", (run_dir / *report.pov_path).string());
  std::cout << fmt::format("report: {}\n", (run_dir / "report.json").string());
  if (report.failing_phase) {
    std::cerr << fmt::format("error: {} (phase {})\n", report.failure_reason, *report.failing_phase);
    return 1;
  }
  return 0;
}

struct BatchEntry {
  std::string task;
  std::optional<std::string> transcript;
};

std::vector<BatchEntry> ReadTaskList(const fs::path &list) {
  std::istringstream in(ReadFileOrThrow(list));
  std::vector<BatchEntry> entries;
  std::string line;
  while (std::getline(in, line)) {
    const std::string trimmed(Trim(line));
    if (trimmed.empty() || trimmed.front() == '#') continue;
    std::istringstream fields(trimmed);
    BatchEntry entry;
    fields >> entry.task;
    std::string transcript;
    if (fields >> transcript) entry.transcript = transcript;
    // Relative paths are relative to the list file.
    auto anchor = [&](const std::string &p) {
      return fs::path(p).is_absolute() ? p : (list.parent_path() / p).lexically_normal().string();
    };
    entry.task = anchor(entry.task);
    if (entry.transcript) entry.transcript = anchor(*entry.transcript);
    entries.push_back(std::move(entry));
  }
  return entries;
}

int CmdBatch(const BatchOptions &o) {
  if (o.workers < 1) throw Error(ErrorCode::kPrecondition, "--workers must be >= 1");
  std::vector<BatchEntry> entries = ReadTaskList(o.tasks);
  if (entries.empty()) throw Error(ErrorCode::kEmptyBatch, "task list is empty");
  std::mt19937 rng(o.seed);
  std::shuffle(entries.begin(), entries.end(), rng);
  const fs::path self = fs::read_symlink("/proc/self/exe");
  const std::string workdir = fs::absolute(o.workdir.value_or("runs")).string();

  std::atomic<size_t> next{0};
  std::atomic<int> failures{0};
  std::mutex out_mu;
  auto worker = [&] {
    for (size_t i = next++; i < entries.size(); i = next++) {
      ProcessOptions p;
      p.argv = {self.string(), "run", "--task", entries[i].task, "--workdir", workdir};
      if (entries[i].transcript) {
        p.argv.insert(p.argv.end(), {"--replay", *entries[i].transcript});
      }
      if (o.budget) p.argv.insert(p.argv.end(), {"--budget", fmt::format("{}", *o.budget)});
      p.timeout = std::chrono::hours(24);
      const ProcessResult r = RunProcess(p);
      if (!r.ok()) ++failures;
      std::string verdict = "no verdict";
      std::string error;
      for (const std::string &l : SplitLines(r.output)) {
        if (StartsWith(l, "verdict: ")) verdict = l.substr(9);
        if (StartsWith(l, "error: ")) error = l;
      }
      const std::lock_guard<std::mutex> lock(out_mu);
      std::cout << fmt::format("{}: {}{}\n", entries[i].task, verdict,
                               error.empty() ? "" : " [" + error + "]");
    }
  };
  std::vector<std::thread> threads;
  for (int w = 0; w < std::min<int>(o.workers, static_cast<int>(entries.size())); ++w) {
    threads.emplace_back(worker);
  }
  for (auto &t : threads) t.join();

  const auto reports = report::LoadRunReports(workdir);
  if (!reports.empty()) std::cout << "\n" << report::RenderMetricsTable(report::ComputeMetrics(reports));
  if (failures > 0) {
    std::cerr << fmt::format("error: TaskFailed: {} of {} tasks did not complete\n",
                             failures.load(), entries.size());
    return 1;
  }
  return 0;
}

int CmdValidate(const std::string &run_dir) {
  const TaskReport stored =
      TaskReportFromJson(json::parse(ReadFileOrThrow(fs::path(run_dir) / "report.json")));
  const Verdict verdict = pipeline::RevalidateRun(run_dir);
  std::cout << fmt::format("verdict: {}\n", DescribeVerdict(verdict));
  if (verdict.kind != stored.verdict.kind) {
    throw Error(ErrorCode::kVerdictMismatch,
                fmt::format("stored verdict {}, re-execution gave {}",
                            VerdictName(stored.verdict.kind), VerdictName(verdict.kind)));
  }
  return 0;
}

int CmdReport(const std::string &runs_dir, bool as_json) {
  const report::BatchMetrics metrics = report::ComputeMetrics(report::LoadRunReports(runs_dir));
  std::cout << (as_json ? report::BatchMetricsToJson(metrics).dump(2) + "\n"
                        : report::RenderMetricsTable(metrics));
  return 0;
}

int CmdSimilarity(const std::string &generated, const std::string &truth, bool as_json) {
  const report::SimilarityScore s =
      report::PovSimilarity(ReadFileOrThrow(generated), ReadFileOrThrow(truth));
  if (as_json) {
    std::cout << json{{"gram_sim", s.gram_sim}, {"chunk_sim", s.chunk_sim}, {"score", s.score}}.dump(2)
              << "\n";
  } else {
    std::cout << fmt::format("gram_sim {:.4f}\nchunk_sim {:.4f}\nscore {:.4f}\n", s.gram_sim,
                             s.chunk_sim, s.score);
  }
  return 0;
}

int Main(int argc, char **argv) {
  CLI::App app{"Proof-of-vulnerability generation from vulnerability reports"};
  app.require_subcommand(1);

  RunOptions run;
  CLI::App *run_cmd = app.add_subcommand("run", "Run one task through all four phases");
  run_cmd->add_option("--task", run.task, "Task document (JSON)")->required();
  run_cmd->add_option("--budget", run.budget, "Cost budget in USD");
  run_cmd->add_option("--n1", run.n1, "Path exploration iterations")->check(CLI::PositiveNumber);
  run_cmd->add_option("--n2", run.n2, "Crash triggering iterations")->check(CLI::PositiveNumber);
  run_cmd->add_option("--workdir", run.workdir, "Directory for run directories");
  run_cmd->add_flag("--early-exit-pe", run.early_exit_pe,
                    "End path exploration at the first useful test case");
  run_cmd->add_option("--replay", run.replay, "Replay a recorded model transcript");

  BatchOptions batch;
  CLI::App *batch_cmd = app.add_subcommand("batch", "Run a list of tasks in parallel");
  batch_cmd->add_option("--tasks", batch.tasks, "File with one task path per line")->required();
  batch_cmd->add_option("--workers", batch.workers, "Parallel task processes")->required();
  batch_cmd->add_option("--seed", batch.seed, "Shuffle seed");
  batch_cmd->add_option("--workdir", batch.workdir, "Directory for run directories");
  batch_cmd->add_option("--budget", batch.budget, "Cost budget per task in USD");

  std::string validate_dir;
  CLI::App *validate_cmd = app.add_subcommand("validate", "Re-execute the PoV of a finished run");
  validate_cmd->add_option("run-dir", validate_dir)->required();

  std::string report_dir;
  bool report_json = false;
  CLI::App *report_cmd = app.add_subcommand("report", "Aggregate the runs in a directory");
  report_cmd->add_option("runs-dir", report_dir)->required();
  report_cmd->add_flag("--json", report_json);

  std::string sim_a, sim_b;
  bool sim_json = false;
  CLI::App *sim_cmd = app.add_subcommand("similarity", "Compare a PoV with a reference input");
  sim_cmd->add_option("generated", sim_a)->required();
  sim_cmd->add_option("ground-truth", sim_b)->required();
  sim_cmd->add_flag("--json", sim_json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    std::cerr << fmt::format("error: Usage: {}\n", e.what());
    return 2;
  }

  try {
    if (*run_cmd) return CmdRun(run);
    if (*batch_cmd) return CmdBatch(batch);
    if (*validate_cmd) return CmdValidate(validate_dir);
    if (*report_cmd) return CmdReport(report_dir, report_json);
    if (*sim_cmd) return CmdSimilarity(sim_a, sim_b, sim_json);
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return ExitCodeFor(e.code());
  } catch (const json::exception &e) {
    std::cerr << "error: MalformedSpec: " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "error: Io: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace
}  // namespace drill::cli

int main(int argc, char **argv) { return drill::cli::Main(argc, argv); }
