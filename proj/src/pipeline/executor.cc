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


#include "drill/pipeline/executor.h"

#include "drill/common/error.h"
#include "drill/sanitizer/report_parser.h"
#include "fmt/format.h"

namespace drill::pipeline {

namespace fs = std::filesystem;

std::string ShellQuote(std::string_view text) {
  std::string out = "'";
  for (char c : text) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  out += "'";
  return out;
}

std::string SubstituteInput(const std::string &harness_cmd, const fs::path &input) {
  static constexpr std::string_view kToken = "{input}";
  const std::string quoted = ShellQuote(input.string());
  std::string out;
  size_t pos = 0;
  for (size_t hit = harness_cmd.find(kToken); hit != std::string::npos;
       hit = harness_cmd.find(kToken, pos)) {
    out.append(harness_cmd, pos, hit - pos);
    out += quoted;
    pos = hit + kToken.size();
  }
  out.append(harness_cmd, pos);
  return out;
}

fs::path StageInput(const fs::path &input, const std::optional<std::string> &extension) {
  if (!extension || extension->empty()) return input;
  const fs::path staged = input.parent_path() / ("input" + *extension);
  if (staged != input) fs::copy_file(input, staged, fs::copy_options::overwrite_existing);
  return staged;
}

std::map<std::string, std::string> SanitizerEnv(bool detect_leaks) {
  std::string asan = fmt::format(
      "detect_leaks={}:symbolize=1:abort_on_error=0:allocator_may_return_null=1:"
      "handle_abort=1",
      detect_leaks ? 1 : 0);
  if (FindOnPath("llvm-symbolizer").empty()) {
    const fs::path addr2line = FindOnPath("addr2line");
    if (!addr2line.empty()) asan += ":external_symbolizer_path=" + addr2line.string();
  }
  return {{"ASAN_OPTIONS", asan},
          {"UBSAN_OPTIONS", "print_stacktrace=1:halt_on_error=1:symbolize=1"}};
}

std::string DescribeExit(const ProcessResult &process) {
  if (process.timed_out) return "timed out";
  if (process.term_signal != 0) return fmt::format("killed by signal {}", process.term_signal);
  if (process.exit_code > 128 && process.exit_code < 128 + 65) {
    return fmt::format("exit code {} (signal {})", process.exit_code, process.exit_code - 128);
  }
  return fmt::format("exit code {}", process.exit_code);
}

HarnessExecutor::HarnessExecutor(std::string harness_cmd,
                                 std::optional<std::string> input_extension,
                                 std::chrono::seconds timeout)
    : harness_cmd_(std::move(harness_cmd)),
      input_extension_(std::move(input_extension)),
      timeout_(timeout) {}

ProcessResult HarnessExecutor::Run(const fs::path &build_root, const fs::path &input,
                                   const std::map<std::string, std::string> &env) const {
  const fs::path staged = StageInput(fs::absolute(input), input_extension_);
  ProcessOptions options;
  options.argv = {"/bin/sh", "-c", SubstituteInput(harness_cmd_, staged)};
  options.cwd = build_root;
  options.env = env;
  options.timeout = timeout_;
  options.max_output_bytes = 4 << 20;
  return RunProcess(options);
}

CoverageRun HarnessExecutor::RunCoverage(const fs::path &build_root, const fs::path &binary,
                                         const fs::path &input, const fs::path &profile_dir,
                                         coverage::ProfileCollector &collector) const {
  fs::create_directories(profile_dir);
  coverage::ResetRawProfiles(profile_dir);
  CoverageRun run;
  run.process = Run(build_root, input,
                    {{"LLVM_PROFILE_FILE", (fs::absolute(profile_dir) / "%p.profraw").string()}});
  // The runtime creates the file at startup and fills it at exit, so a
  // process that dies early leaves an empty one behind.
  auto raw = coverage::ListRawProfiles(profile_dir);
  std::erase_if(raw, [](const fs::path &p) { return fs::file_size(p) == 0; });
  if (raw.empty()) return run;
  run.profile_written = true;
  try {
    run.map = collector.Collect(raw, binary);
  } catch (const Error &e) {
    run.collect_error = e.what();
    coverage::ResetRawProfiles(profile_dir);
  }
  return run;
}

SanitizerRun HarnessExecutor::RunSanitizer(const fs::path &build_root, const fs::path &input,
                                           bool detect_leaks) const {
  SanitizerRun run;
  run.process = Run(build_root, input, SanitizerEnv(detect_leaks));
  if (!sanitizer::LooksLikeSanitizerReport(run.process.output)) return run;
  run.report_seen = true;
  try {
    run.crash = sanitizer::ParseSanitizerReport(run.process.output);
  } catch (const Error &e) {
    CrashInfo info;
    info.kind = CrashKind::Other("unsymbolized-crash");
    info.raw_excerpt = run.process.output.substr(0, sanitizer::kMaxExcerptChars);
    info.summary_line = e.what();
    run.crash = std::move(info);
  }
  return run;
}

}  // namespace drill::pipeline
