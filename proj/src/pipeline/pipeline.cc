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


#include "drill/pipeline/pipeline.h"

#include <chrono>
#include <regex>
#include <utility>

#include "drill/agent/budget.h"
#include "drill/agent/runtime.h"
#include "drill/common/error.h"
#include "drill/common/text.h"
#include "drill/sanitizer/crash_match.h"
#include "drill/sanitizer/report_parser.h"
#include "drill/sanitizer/trace_refine.h"
#include "drill/source/function_index.h"
#include "drill/task/json_io.h"
#include "fmt/format.h"
#include "prompts.h"

namespace drill::pipeline {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr char kRunDirToken[] = "<RUN_DIR>";
constexpr size_t kProgramOutputChars = 2000;
constexpr size_t kReportExcerptChars = 3000;

using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void WriteJson(const fs::path &path, const json &doc) { WriteFileOrThrow(path, doc.dump(2) + "\n"); }

std::string JoinLines(const std::vector<std::string> &lines) {
  std::string out;
  for (const std::string &l : lines) out += l + "\n";
  if (!out.empty()) out.pop_back();
  return out;
}

// PIDs and addresses differ between otherwise identical executions.
std::string ScrubVolatile(const std::string &text) {
  static const std::regex kPid("==[0-9]+==");
  static const std::regex kAddress("0x[0-9a-fA-F]+");
  return std::regex_replace(std::regex_replace(text, kPid, "==PID=="), kAddress, "0x?");
}

std::string StripRoot(std::string text, const fs::path &root) {
  const std::string prefix = root.string() + "/";
  for (size_t pos = text.find(prefix); pos != std::string::npos; pos = text.find(prefix, pos)) {
    text.erase(pos, prefix.size());
  }
  return text;
}

void StripRoot(std::vector<StackFrame> &frames, const fs::path &root) {
  for (StackFrame &f : frames) f.file = StripRoot(f.file, root);
}

// Build-root-relative frame paths and no volatile values, so the crash can
// be shown to the model and stored in the report.
CrashInfo NormalizeObserved(CrashInfo info, const fs::path &build_root) {
  StripRoot(info.trace.frames, build_root);
  if (info.trace.alloc_frames) StripRoot(*info.trace.alloc_frames, build_root);
  if (info.trace.free_frames) StripRoot(*info.trace.free_frames, build_root);
  info.summary_line = ScrubVolatile(StripRoot(info.summary_line, build_root));
  info.raw_excerpt = ScrubVolatile(StripRoot(info.raw_excerpt, build_root));
  return info;
}

void RelativizeToRepo(std::vector<StackFrame> &frames, const fs::path &repo) {
  for (StackFrame &f : frames) {
    const fs::path found = source::ResolveInRepo(repo, f.file);
    if (!found.empty()) f.file = found.lexically_relative(repo).generic_string();
  }
}

std::string DescribeStatus(agent::AgentOutcome::Status status) {
  switch (status) {
    case agent::AgentOutcome::Status::kFinished: return "finished";
    case agent::AgentOutcome::Status::kTurnCapReached: return "turn cap reached";
    case agent::AgentOutcome::Status::kBudgetStopped: return "budget exhausted";
  }
  return "unknown";
}

std::string RenderCrash(const CrashInfo &crash) {
  std::string out = fmt::format("sanitizer report: {}\n", crash.kind.token());
  for (const StackFrame &f : crash.trace.frames) {
    out += fmt::format("  #{} {} at {}:{}\n", f.index, f.function, f.file, f.line);
  }
  if (!crash.summary_line.empty()) out += crash.summary_line + "\n";
  return out;
}

std::string ExecutionFeedback(const CoverageRun &run, const coverage::TraceCoverageSummary &summary) {
  std::string out = fmt::format("coverage build: {}\n", DescribeExit(run.process));
  const std::string output(Trim(run.process.output));
  out += output.empty() ? "program output: none\n"
                        : fmt::format("program output:\n{}\n",
                                      TruncateHeadTail(output, kProgramOutputChars));
  // Harnesses run under /bin/sh, which reports a signal death as 128 + N.
  const bool signaled = run.process.term_signal != 0 ||
                        (run.process.exit_code > 128 && run.process.exit_code < 128 + 65);
  if (signaled || run.process.timed_out) {
    out += "note: the program did not exit normally on the coverage build\n";
  }
  if (!run.profile_written) {
    out += "note: no coverage profile was written, so no function counts as reached\n";
  } else if (!run.collect_error.empty()) {
    out += fmt::format("note: coverage could not be collected: {}\n", run.collect_error);
  }
  out += coverage::RenderTraceFeedback(summary);
  if (out.back() != '\n') out += '\n';
  return out;
}

struct Candidate {
  fs::path input;
  std::optional<fs::path> script;
};

}  // namespace

fs::path RunLayout::build_log(const build::InstrumentationKind &kind) const {
  return run_dir / (kind.kind == build::InstrumentationKind::Kind::kCoverage ? "build_cov.log"
                                                                            : "build_san.log");
}

fs::path RunLayout::pe_dir(int i) const { return run_dir / "iters" / fmt::format("pe_{}", i); }

fs::path RunLayout::ct_dir(int j) const { return run_dir / "iters" / fmt::format("ct_{}", j); }

RunLayout LayoutFor(const VulnSpec &spec, const TaskConfig &config) {
  return RunLayout{fs::absolute(config.work_dir / spec.project_id).lexically_normal()};
}

llm::DigestNormalizer RunDirNormalizer(const fs::path &run_dir) {
  llm::DigestNormalizer normalizer;
  const std::string plain = run_dir.string();
  const std::string canonical = fs::weakly_canonical(run_dir).string();
  // Longer spelling first, so neither rewrites part of the other.
  if (canonical != plain && canonical.size() > plain.size()) {
    normalizer.replacements.emplace_back(canonical, kRunDirToken);
  }
  normalizer.replacements.emplace_back(plain, kRunDirToken);
  if (canonical != plain && canonical.size() <= plain.size()) {
    normalizer.replacements.emplace_back(canonical, kRunDirToken);
  }
  return normalizer;
}

std::string SummarizeTestCase(const std::string &name, const std::string &bytes,
                              const coverage::TraceCoverageSummary &summary) {
  std::string deepest = "no frame reached";
  if (summary.deepest_reached_index >= 0) {
    for (const coverage::FrameReach &r : summary.frames) {
      if (r.frame.index == summary.deepest_reached_index) {
        deepest = fmt::format("deepest frame #{} {}", r.frame.index, r.frame.function);
      }
    }
  }
  const bool reaches = !summary.frames.empty() && summary.frames.front().reached;
  return fmt::format("{}: sha256 {} ({} bytes), {}, {}", name, Sha256Hex(bytes).substr(0, 12),
                     bytes.size(), deepest,
                     reaches ? "reaches the crash site" : "does not reach the crash site");
}

// ---------------------------------------------------------------------------
// Model-backed collaborators.

class TaskRun::LlmBuildAgent : public build::BuildAgent {
 public:
  explicit LlmBuildAgent(TaskRun &run) : run_(run) {
    context_.ledger = &run_.ledger_;
    context_ = agent::UpdateContext(
        std::move(context_), {{"project", fmt::format("{} (sources in src/)", run_.spec_.project_id)}});
  }

  std::optional<build::BuildPlan> ProposePlan(const fs::path &) override {
    return Ask(prompts::BuildPlanTask());
  }

  std::optional<build::BuildPlan> ProposeFix(const build::BuildPlan &current,
                                             const std::string &failure, int attempt) override {
    return Ask(prompts::BuildFixTask(current, failure, attempt));
  }

 private:
  static std::optional<build::BuildPlan> Parse(const std::string &payload, std::string *error) {
    const std::optional<json> doc = ExtractJsonObject(payload);
    if (!doc) {
      *error = "payload is not a JSON object";
      return std::nullopt;
    }
    try {
      build::BuildPlan plan = build::BuildPlanFromJson(*doc);
      if (plan.steps.empty() || plan.entry_point.empty()) {
        *error = "plan needs at least one step and an entry_point";
        return std::nullopt;
      }
      return plan;
    } catch (const Error &e) {
      *error = e.detail();
    } catch (const json::exception &e) {
      *error = e.what();
    }
    return std::nullopt;
  }

  std::optional<build::BuildPlan> Ask(const std::string &task) {
    const agent::AgentConfig config =
        run_.ConfigFor(Phase::kInstrumentation, prompts::BuildPlanSystem(),
                       {agent::kReadFile, agent::kExecuteBash, agent::kFinish});
    agent::AgentRunOptions options;
    options.validate_finish = [](const std::string &payload) -> std::optional<std::string> {
      std::string error;
      if (Parse(payload, &error)) return std::nullopt;
      return error;
    };
    const agent::AgentOutcome outcome = agent::RunAgent(
        config, context_, task, run_.registry_, run_.Env(), run_.recorder_, options);
    if (outcome.status != agent::AgentOutcome::Status::kFinished) return std::nullopt;
    std::string error;
    return Parse(outcome.payload, &error);
  }

  TaskRun &run_;
  agent::AgentContext context_;
};

class TaskRun::LlmTraceRefiner : public sanitizer::TraceRefiner {
 public:
  explicit LlmTraceRefiner(TaskRun &run) : run_(run) {}

  std::string ProposeRefinedTrace(const CrashTrace &trace,
                                  const std::string &source_context) override {
    const llm::ModelParams params = run_.ConfigFor(Phase::kTraceRefinement, "", {}).params;
    const std::vector<llm::ChatTurn> history = {
        llm::ChatTurn::System(prompts::TraceRefinerSystem()),
        llm::ChatTurn::User(prompts::TraceRefinerTask(trace, source_context))};
    const llm::ChatResponse response = run_.recorder_.Chat(history, {}, params);
    run_.ledger_ = llm::Accrue(run_.ledger_, Phase::kTraceRefinement, response.usage, params);
    const std::optional<json> doc = ExtractJsonObject(response.turn.content);
    return doc ? doc->dump() : response.turn.content;
  }

 private:
  TaskRun &run_;
};

// ---------------------------------------------------------------------------
// TaskRun.

namespace {

llm::ChatBackend *RequireBackend(llm::ChatBackend *backend) {
  if (backend == nullptr) throw Error(ErrorCode::kPrecondition, "no chat backend");
  return backend;
}

}  // namespace

TaskRun::TaskRun(VulnSpec spec, TaskConfig config, PipelineDeps deps)
    : spec_(std::move(spec)),
      config_(std::move(config)),
      deps_(std::move(deps)),
      layout_(LayoutFor(spec_, config_)),
      recorder_(RequireBackend(deps_.backend), Normalizer()) {
  PrepareRunDirectory();
}

TaskRun::~TaskRun() = default;

llm::DigestNormalizer TaskRun::Normalizer() const { return RunDirNormalizer(layout_.run_dir); }

void TaskRun::PrepareRunDirectory() {
  const fs::path repo = fs::weakly_canonical(spec_.repo_path);
  if (!fs::is_directory(repo)) {
    throw Error(ErrorCode::kInvalidSpec, fmt::format("repository {} is not a directory", repo.string()));
  }
  if (agent::IsWithin(fs::weakly_canonical(layout_.run_dir), repo)) {
    throw Error(ErrorCode::kPrecondition, "the run directory must be outside the repository");
  }
  std::error_code ec;
  fs::remove_all(layout_.run_dir, ec);
  if (ec) throw Error(ErrorCode::kIo, fmt::format("cannot clear {}: {}", layout_.run_dir.string(), ec.message()));
  fs::create_directories(layout_.run_dir / "iters");
  fs::create_directories(layout_.pov().parent_path());
  fs::create_directories(layout_.profiles());
  WriteJson(layout_.task(), TaskSpecToJson(spec_, config_));

  fs::create_directories(layout_.work());
  fs::copy(repo, layout_.src(), fs::copy_options::recursive | fs::copy_options::copy_symlinks);
  fs::create_directories(layout_.work() / "testcases");
  fs::create_directories(layout_.work() / "scratch");
  sandbox_ = std::make_unique<agent::Sandbox>(layout_.work());

  env_.sandbox = sandbox_.get();
  env_.output_limit = static_cast<size_t>(config_.tool_output_limit_chars);
  env_.exec_timeout = std::chrono::seconds(config_.exec_timeout_secs);
  env_.search_root = sandbox_->root() / "src";
  env_.coverage = [this]() -> const coverage::CoverageMap * {
    return latest_coverage_ ? &*latest_coverage_ : nullptr;
  };
  env_.coverage_source_root = sandbox_->root() / "build_cov";
  env_.ast_grep = deps_.ast_grep;
}

agent::AgentConfig TaskRun::ConfigFor(Phase phase, std::string system_prompt,
                                      std::vector<std::string> tools) const {
  agent::AgentConfig config;
  config.phase = phase;
  config.system_prompt = std::move(system_prompt);
  config.allowed_tools = std::move(tools);
  config.max_turns = config_.agent_max_turns;
  const auto it = config_.model_assignments.find(phase);
  config.params = it != config_.model_assignments.end() ? it->second : DefaultModelFor(phase);
  return config;
}

agent::ToolEnvironment &TaskRun::Env() { return env_; }

coverage::ProfileCollector &TaskRun::Collector(const InstrumentedBinaries &) {
  if (deps_.collector != nullptr) return *deps_.collector;
  if (!owned_collector_) {
    owned_collector_ = std::make_unique<coverage::LlvmProfileCollector>(
        coverage::CoverageToolchain::Discover(), sandbox_->root() / "build_cov");
  }
  return *owned_collector_;
}

CoverageRun TaskRun::ExecuteCoverage(const VAReport &va, const InstrumentedBinaries &bins,
                                     const fs::path &input) {
  const HarnessExecutor executor(va.harness_cmd, va.input_extension,
                                 std::chrono::seconds(config_.exec_timeout_secs));
  const fs::path binary = bins.cov.binary_path.value_or(bins.cov.entry_path);
  return executor.RunCoverage(layout_.build_cov(), binary, input, layout_.profiles(),
                              Collector(bins));
}

namespace {

// The file named by a test-case finish payload, checked against the sandbox.
Candidate ResolveCandidate(const std::string &payload, const agent::Sandbox &sandbox) {
  std::string input_path;
  std::optional<std::string> script_path;
  if (const std::optional<json> doc = ExtractJsonObject(payload)) {
    if (!doc->contains("input_path") || !(*doc)["input_path"].is_string()) {
      throw Error(ErrorCode::kPrecondition, "payload needs a string input_path");
    }
    input_path = (*doc)["input_path"].get<std::string>();
    if (doc->contains("generator_script") && (*doc)["generator_script"].is_string() &&
        !(*doc)["generator_script"].get<std::string>().empty()) {
      script_path = (*doc)["generator_script"].get<std::string>();
    }
  } else {
    input_path = std::string(Trim(payload));
  }
  Candidate candidate;
  candidate.input = sandbox.Resolve(input_path);
  if (!fs::is_regular_file(candidate.input)) {
    throw Error(ErrorCode::kFileUnreadable, fmt::format("{} is not a file", input_path));
  }
  if (script_path) {
    const fs::path script = sandbox.Resolve(*script_path);
    if (!fs::is_regular_file(script)) {
      throw Error(ErrorCode::kFileUnreadable, fmt::format("{} is not a file", *script_path));
    }
    candidate.script = script;
  }
  return candidate;
}

agent::FinishValidator CandidateValidator(const agent::Sandbox &sandbox) {
  return [&sandbox](const std::string &payload) -> std::optional<std::string> {
    try {
      ResolveCandidate(payload, sandbox);
      return std::nullopt;
    } catch (const Error &e) {
      return e.detail();
    }
  };
}

}  // namespace

std::optional<fs::path> TaskRun::MaterializeInput(const std::string &payload,
                                                  const fs::path &iter_dir,
                                                  const std::string &name,
                                                  std::optional<fs::path> *script) {
  Candidate candidate;
  try {
    candidate = ResolveCandidate(payload, *sandbox_);
  } catch (const Error &e) {
    WriteFileOrThrow(iter_dir / "feedback.txt", fmt::format("no test case: {}\n", e.detail()));
    return std::nullopt;
  }
  const fs::path input = iter_dir / "input.bin";
  const fs::path testcases = layout_.work() / "testcases";
  fs::copy_file(candidate.input, input, fs::copy_options::overwrite_existing);
  fs::copy_file(candidate.input, testcases / (name + ".bin"), fs::copy_options::overwrite_existing);
  if (candidate.script) {
    fs::copy_file(*candidate.script, iter_dir / "gen.script", fs::copy_options::overwrite_existing);
    fs::copy_file(*candidate.script, testcases / (name + ".script"),
                  fs::copy_options::overwrite_existing);
    *script = iter_dir / "gen.script";
  }
  return input;
}

VAReport TaskRun::VulnAnalysis() {
  const auto start = Clock::now();
  if (!spec_.sanitizer_report && !spec_.v_location.function) {
    throw Error(ErrorCode::kPrecondition,
                "without a sanitizer report the target location needs a function name");
  }
  VAReport va;
  va.crash_kind = spec_.v_effect;
  agent::AgentContext context;
  context.ledger = &ledger_;
  std::vector<agent::PinnedBlock> pinned = {
      {"vulnerability", prompts::RenderVulnerability(spec_)}};

  if (spec_.sanitizer_report) {
    const CrashInfo info = sanitizer::ParseSanitizerReport(*spec_.sanitizer_report);
    if (!info.kind.is_other()) va.crash_kind = info.kind;
    const auto refine_start = Clock::now();
    LlmTraceRefiner refiner(*this);
    sanitizer::RefineResult refined;
    try {
      refined = sanitizer::RefineTraceLines(info.trace, layout_.src(), &refiner);
    } catch (const Error &e) {
      if (e.code() != ErrorCode::kRefinerFailure) throw;
      refined = sanitizer::RefineTraceLines(info.trace, layout_.src(), nullptr);
    }
    phase_secs_[Phase::kTraceRefinement] += SecondsSince(refine_start);
    va.crash_trace = std::move(refined.trace);
    pinned.push_back({"sanitizer_report",
                      TruncateHeadTail(*spec_.sanitizer_report, kReportExcerptChars)});
  } else {
    va.crash_trace.frames.push_back(
        StackFrame{0, *spec_.v_location.function, spec_.v_location.file, spec_.v_location.line,
                   std::nullopt});
  }
  RelativizeToRepo(va.crash_trace.frames, layout_.src());
  if (va.crash_trace.alloc_frames) RelativizeToRepo(*va.crash_trace.alloc_frames, layout_.src());
  if (va.crash_trace.free_frames) RelativizeToRepo(*va.crash_trace.free_frames, layout_.src());
  WriteJson(layout_.crash_trace(), CrashTraceToJson(va.crash_trace, va.crash_kind));
  pinned.insert(pinned.begin() + 1,
                agent::PinnedBlock{"crash_trace", prompts::RenderTrace(va.crash_trace, va.crash_kind)});
  context = agent::UpdateContext(std::move(context), pinned);

  const agent::AgentConfig config = ConfigFor(
      Phase::kVulnAnalysis, prompts::VulnAnalysisSystem(),
      {agent::kReadFile, agent::kExecuteBash, agent::kSearchFunction, agent::kSearchPattern,
       agent::kFinish});
  agent::AgentRunOptions options;
  options.validate_finish = [](const std::string &payload) -> std::optional<std::string> {
    try {
      ParseAnalysisPayload(payload);
      return std::nullopt;
    } catch (const Error &e) {
      return e.detail();
    }
  };
  const agent::AgentOutcome outcome = agent::RunAgent(
      config, context, prompts::VulnAnalysisTask(), registry_, Env(), recorder_, options);
  if (outcome.status != agent::AgentOutcome::Status::kFinished) {
    throw Error(ErrorCode::kAnalysisFailed,
                fmt::format("analysis agent stopped: {} after {} turns",
                            DescribeStatus(outcome.status), outcome.turns));
  }
  const AnalysisFindings findings = ParseAnalysisPayload(outcome.payload);
  va.harness_cmd = findings.harness_cmd;
  va.input_extension = findings.input_extension;
  va.root_cause = findings.root_cause;
  ValidateVAReport(va);
  WriteJson(layout_.va_report(), VAReportToJson(va));
  phase_secs_[Phase::kVulnAnalysis] +=
      SecondsSince(start) - phase_secs_[Phase::kTraceRefinement];
  return va;
}

InstrumentedBinaries TaskRun::Instrumentation(const VAReport &) {
  const auto start = Clock::now();
  LlmBuildAgent agent(*this);
  const build::BuildPlan plan = build::DeriveBuildPlan(layout_.src(), &agent);
  auto run_build = [&](const build::InstrumentationKind &kind, const fs::path &dir) {
    build::BuildOptions options;
    options.pristine_repo = spec_.repo_path;
    options.build_dir = dir;
    options.log_path = layout_.build_log(kind);
    options.max_attempts = config_.build_max_attempts;
    options.compilers = deps_.compilers;
    build::BuildResult result = build::RunBuild(plan, kind, &agent, options);
    if (!result.effective) {
      throw Error(ErrorCode::kBuildFailed,
                  fmt::format("{} build not effective after {} attempts: {}", kind.Name(),
                              result.attempts, result.last_error_excerpt));
    }
    return result;
  };
  InstrumentedBinaries bins;
  bins.cov = run_build(build::InstrumentationKind::Coverage(), layout_.build_cov());
  bins.san = run_build(build::SanitizerKindFor(spec_.v_effect), layout_.build_san());
  phase_secs_[Phase::kInstrumentation] += SecondsSince(start);
  return bins;
}

std::vector<TestCase> TaskRun::PathExplore(const VAReport &va, const InstrumentedBinaries &bins) {
  const auto start = Clock::now();
  agent::AgentContext context;
  context.ledger = &ledger_;
  context = agent::UpdateContext(
      std::move(context),
      {{"vulnerability", prompts::RenderVulnerability(spec_)},
       {"crash_trace", prompts::RenderTrace(va.crash_trace, va.crash_kind)},
       {"root_cause", RenderRootCause(va.root_cause)},
       {"harness", prompts::RenderHarness(va)}});
  const agent::AgentConfig config = ConfigFor(
      Phase::kPathExploration, prompts::PathExploreSystem(),
      {agent::kReadFile, agent::kWriteFile, agent::kExecuteBash, agent::kSearchFunction,
       agent::kSearchPattern, agent::kCoverageQuery, agent::kFinish});
  Collector(bins);

  std::vector<TestCase> useful;
  std::vector<std::string> history;
  int completed = 0;
  for (int i = 1; i <= config_.n1_max_iterations; ++i) {
    if (agent::CheckBudget(ledger_, config_.budget_usd, completed > 0) ==
        agent::BudgetDecision::kHardStop) {
      break;
    }
    ++n1_used_;
    const fs::path dir = layout_.pe_dir(i);
    fs::create_directories(dir);
    const std::string name = fmt::format("pe_{}", i);

    agent::AgentRunOptions options;
    options.budget_usd = config_.budget_usd;
    options.cycle_complete = completed > 0;
    options.validate_finish = CandidateValidator(*sandbox_);
    const agent::AgentOutcome outcome =
        agent::RunAgent(config, context, prompts::PathExploreTask(i, config_.n1_max_iterations),
                        registry_, Env(), recorder_, options);
    if (outcome.status != agent::AgentOutcome::Status::kFinished) {
      WriteFileOrThrow(dir / "feedback.txt",
                       fmt::format("no test case: {}\n", DescribeStatus(outcome.status)));
      history.push_back(fmt::format("{}: no test case ({})", name, DescribeStatus(outcome.status)));
      context = agent::UpdateContext(std::move(context), {{"iteration_history", JoinLines(history)}});
      if (outcome.status == agent::AgentOutcome::Status::kBudgetStopped) break;
      continue;
    }
    WriteFileOrThrow(dir / "finish.txt", outcome.payload);
    std::optional<fs::path> script;
    const std::optional<fs::path> input = MaterializeInput(outcome.payload, dir, name, &script);
    if (!input) {
      history.push_back(fmt::format("{}: no test case (input did not materialize)", name));
      context = agent::UpdateContext(std::move(context), {{"iteration_history", JoinLines(history)}});
      continue;
    }

    const CoverageRun run = ExecuteCoverage(va, bins, *input);
    const coverage::TraceCoverageSummary summary =
        coverage::CollectTraceCoverage(run.map, va.crash_trace);
    const bool reaches = coverage::ReachesVulnFunc(summary, va.crash_trace);
    latest_coverage_ = run.map;
    WriteJson(dir / "coverage.json", coverage::CoverageMapToJson(run.map));
    const std::string feedback = ExecutionFeedback(run, summary);
    WriteFileOrThrow(dir / "feedback.txt", feedback);

    const std::string bytes = ReadFileOrThrow(*input);
    TestCase tc{i, *input, script, fmt::format("testcases/{}.bin", name), reaches, summary};
    if (reaches) useful.push_back(tc);
    history.push_back(SummarizeTestCase(name, bytes, summary));
    context = agent::UpdateContext(
        std::move(context),
        {{"latest_test_case",
          fmt::format("{} ({} bytes): {}", tc.sandbox_path, bytes.size(), HexPreview(bytes, 64))},
         {"latest_coverage_feedback", feedback},
         {"iteration_history", JoinLines(history)}});
    ++completed;
    if (reaches && config_.early_exit_pe) break;
  }
  phase_secs_[Phase::kPathExploration] += SecondsSince(start);
  return useful;
}

CrashTriggerResult TaskRun::CrashTrigger(const VAReport &va, const std::vector<TestCase> &useful,
                                         const InstrumentedBinaries &bins) {
  const auto start = Clock::now();
  const Guidance guidance = SampleVulnTypeHints(RenderRootCause(va.root_cause), spec_);
  agent::AgentContext context;
  context.ledger = &ledger_;
  context = agent::UpdateContext(
      std::move(context),
      {{"vulnerability", prompts::RenderVulnerability(spec_)},
       {"crash_trace", prompts::RenderTrace(va.crash_trace, va.crash_kind)},
       {"root_cause", RenderRootCause(va.root_cause)},
       {"harness", prompts::RenderHarness(va)},
       {"guidance", fmt::format("vulnerability type: {}\n{}", guidance.vuln_type.token(),
                                guidance.hint_text)},
       {"useful_test_cases", prompts::RenderUsefulTestCases(useful)}});
  const agent::AgentConfig config = ConfigFor(
      Phase::kCrashTriggering, prompts::CrashTriggerSystem(),
      {agent::kReadFile, agent::kWriteFile, agent::kExecuteBash, agent::kSearchFunction,
       agent::kSearchPattern, agent::kCoverageQuery, agent::kFinish});
  const HarnessExecutor executor(va.harness_cmd, va.input_extension,
                                 std::chrono::seconds(config_.exec_timeout_secs));
  const bool detect_leaks = build::DetectLeaksFor(spec_.v_effect);
  const sanitizer::MatchWindow window{config_.match_frames, config_.match_line_tolerance};
  auto validate = [&](const fs::path &input) -> std::pair<Verdict, std::optional<CrashInfo>> {
    const SanitizerRun run = executor.RunSanitizer(layout_.build_san(), input, detect_leaks);
    if (!run.crash) return {Verdict::NoCrash(), std::nullopt};
    CrashInfo observed = NormalizeObserved(*run.crash, layout_.build_san());
    return {sanitizer::MatchCrash(observed, spec_, window), observed};
  };

  std::optional<Verdict> best;
  int best_rank = 0;
  std::vector<std::string> history;
  int completed = 0;
  CrashTriggerResult result{Verdict::NoCrash(), std::nullopt};
  for (int j = 1; j <= config_.n2_max_iterations; ++j) {
    if (agent::CheckBudget(ledger_, config_.budget_usd, completed > 0) ==
        agent::BudgetDecision::kHardStop) {
      break;
    }
    ++n2_used_;
    const fs::path dir = layout_.ct_dir(j);
    fs::create_directories(dir);
    const std::string name = fmt::format("ct_{}", j);

    agent::AgentRunOptions options;
    options.budget_usd = config_.budget_usd;
    options.cycle_complete = completed > 0;
    options.validate_finish = CandidateValidator(*sandbox_);
    const agent::AgentOutcome outcome =
        agent::RunAgent(config, context, prompts::CrashTriggerTask(j, config_.n2_max_iterations),
                        registry_, Env(), recorder_, options);
    if (outcome.status != agent::AgentOutcome::Status::kFinished) {
      WriteFileOrThrow(dir / "feedback.txt",
                       fmt::format("no candidate: {}\n", DescribeStatus(outcome.status)));
      history.push_back(fmt::format("{}: no candidate ({})", name, DescribeStatus(outcome.status)));
      context = agent::UpdateContext(std::move(context), {{"iteration_history", JoinLines(history)}});
      if (outcome.status == agent::AgentOutcome::Status::kBudgetStopped) break;
      continue;
    }
    WriteFileOrThrow(dir / "finish.txt", outcome.payload);
    std::optional<fs::path> script;
    const std::optional<fs::path> input = MaterializeInput(outcome.payload, dir, name, &script);
    if (!input) {
      history.push_back(fmt::format("{}: no candidate (input did not materialize)", name));
      context = agent::UpdateContext(std::move(context), {{"iteration_history", JoinLines(history)}});
      continue;
    }

    const CoverageRun cov = ExecuteCoverage(va, bins, *input);
    const coverage::TraceCoverageSummary summary =
        coverage::CollectTraceCoverage(cov.map, va.crash_trace);
    latest_coverage_ = cov.map;
    WriteJson(dir / "coverage.json", coverage::CoverageMapToJson(cov.map));

    const SanitizerRun san = executor.RunSanitizer(layout_.build_san(), *input, detect_leaks);
    if (san.report_seen) WriteFileOrThrow(dir / "asan_report.txt", san.process.output);
    Verdict verdict = Verdict::NoCrash();
    std::optional<CrashInfo> observed;
    if (san.crash) {
      observed = NormalizeObserved(*san.crash, layout_.build_san());
      verdict = sanitizer::MatchCrash(*observed, spec_, window);
    }
    if (verdict.kind == Verdict::Kind::kValidated) {
      // One confirming re-execution; a crash that does not repeat is flaky.
      const auto [confirm, confirm_observed] = validate(*input);
      if (confirm.kind != Verdict::Kind::kValidated) {
        verdict = Verdict::Variant(*observed, /*flaky=*/true);
      }
    }

    std::string feedback = ExecutionFeedback(cov, summary);
    feedback += fmt::format("sanitizer build: {}\n", DescribeExit(san.process));
    feedback += observed ? RenderCrash(*observed) : std::string("sanitizer report: none\n");
    feedback += fmt::format("verdict: {}{}\n", VerdictName(verdict.kind),
                            verdict.flaky ? " (did not reproduce on re-execution)" : "");
    if (verdict.kind == Verdict::Kind::kVariant && !verdict.flaky) {
      feedback += "the crash differs from the target in kind or location\n";
    }
    WriteFileOrThrow(dir / "feedback.txt", feedback);
    ++completed;

    if (verdict.kind == Verdict::Kind::kValidated) {
      fs::copy_file(*input, layout_.pov(), fs::copy_options::overwrite_existing);
      result = {verdict, layout_.pov()};
      best.reset();
      break;
    }
    if (verdict.kind == Verdict::Kind::kVariant) {
      const int rank = verdict.flaky ? 3 : (observed->kind == spec_.v_effect ? 2 : 1);
      if (rank > best_rank) {
        best_rank = rank;
        best = verdict;
        fs::copy_file(*input, layout_.pov(), fs::copy_options::overwrite_existing);
      }
    }
    const std::string bytes = ReadFileOrThrow(*input);
    history.push_back(fmt::format("{}, {}", SummarizeTestCase(name, bytes, summary),
                                  observed ? fmt::format("{} {}", VerdictName(verdict.kind),
                                                         observed->kind.token())
                                           : std::string("no sanitizer report")));
    context = agent::UpdateContext(
        std::move(context),
        {{"latest_candidate", fmt::format("testcases/{}.bin ({} bytes): {}", name, bytes.size(),
                                          HexPreview(bytes, 64))},
         {"latest_feedback", feedback},
         {"iteration_history", JoinLines(history)}});
  }
  if (best) result = {*best, layout_.pov()};
  phase_secs_[Phase::kCrashTriggering] += SecondsSince(start);
  return result;
}

TaskReport TaskRun::Run() {
  const auto start = Clock::now();
  TaskReport report;
  report.project_id = spec_.project_id;
  report.verdict = Verdict::NoCrash();
  Phase phase = Phase::kVulnAnalysis;
  try {
    const VAReport va = VulnAnalysis();
    report.harness_cmd = va.harness_cmd;
    phase = Phase::kInstrumentation;
    const InstrumentedBinaries bins = Instrumentation(va);
    report.san_root = layout_.build_san().lexically_relative(layout_.run_dir);
    report.detect_leaks = build::DetectLeaksFor(spec_.v_effect);
    phase = Phase::kPathExploration;
    const std::vector<TestCase> useful = PathExplore(va, bins);
    report.useful_tc_count = static_cast<int>(useful.size());
    phase = Phase::kCrashTriggering;
    const CrashTriggerResult ct = CrashTrigger(va, useful, bins);
    report.verdict = ct.verdict;
    if (ct.pov) report.pov_path = ct.pov->lexically_relative(layout_.run_dir);
  } catch (const std::exception &e) {
    report.verdict = Verdict::NoCrash();
    report.pov_path.reset();
    report.failing_phase = std::string(PhaseName(phase));
    report.failure_reason = e.what();
  }
  report.n1_used = n1_used_;
  report.n2_used = n2_used_;
  report.cost_usd = ledger_.cost_usd;
  for (const Phase p : kAllPhases) {
    PhaseStats stats;
    if (const auto it = phase_secs_.find(p); it != phase_secs_.end()) stats.time_secs = it->second;
    if (const auto it = ledger_.per_phase.find(p); it != ledger_.per_phase.end()) {
      stats.input_tokens = it->second.input_tokens;
      stats.output_tokens = it->second.output_tokens;
      stats.cost_usd = it->second.cost_usd;
    }
    report.phase_breakdown[std::string(PhaseName(p))] = stats;
  }
  report.wall_time_secs = SecondsSince(start);
  try {
    WriteJson(layout_.transcript(), Transcript());
    WriteJson(layout_.report(), TaskReportToJson(report));
  } catch (const std::exception &e) {
    if (report.failure_reason.empty()) report.failure_reason = e.what();
  }
  return report;
}

TaskReport RunPipeline(const VulnSpec &spec, const TaskConfig &config, PipelineDeps deps) {
  std::unique_ptr<TaskRun> run;
  try {
    run = std::make_unique<TaskRun>(spec, config, std::move(deps));
  } catch (const std::exception &e) {
    // Setting up the run directory counts toward the first phase.
    TaskReport report;
    report.project_id = spec.project_id;
    report.verdict = Verdict::NoCrash();
    report.failing_phase = std::string(PhaseName(Phase::kVulnAnalysis));
    report.failure_reason = e.what();
    for (const Phase p : kAllPhases) report.phase_breakdown[std::string(PhaseName(p))] = {};
    return report;
  }
  return run->Run();
}

Verdict RevalidateRun(const fs::path &run_dir) {
  const RunLayout layout{run_dir};
  TaskReport report;
  VAReport va;
  try {
    report = TaskReportFromJson(json::parse(ReadFileOrThrow(layout.report())));
    va = VAReportFromJson(json::parse(ReadFileOrThrow(layout.va_report())));
  } catch (const json::exception &e) {
    throw Error(ErrorCode::kMalformedSpec, fmt::format("broken run directory: {}", e.what()));
  }
  const auto [spec, config] = LoadTaskSpec(layout.task());
  if (!report.pov_path) {
    throw Error(ErrorCode::kFileUnreadable, fmt::format("{} has no PoV", run_dir.string()));
  }
  const fs::path pov = run_dir / *report.pov_path;
  if (!fs::is_regular_file(pov)) {
    throw Error(ErrorCode::kFileUnreadable, fmt::format("missing PoV {}", pov.string()));
  }
  const fs::path san_root = run_dir / report.san_root;
  const HarnessExecutor executor(va.harness_cmd, va.input_extension,
                                 std::chrono::seconds(config.exec_timeout_secs));
  const SanitizerRun run = executor.RunSanitizer(san_root, pov, report.detect_leaks);
  if (!run.crash) return Verdict::NoCrash();
  return sanitizer::MatchCrash(NormalizeObserved(*run.crash, san_root), spec,
                               {config.match_frames, config.match_line_tolerance});
}

}  // namespace drill::pipeline
