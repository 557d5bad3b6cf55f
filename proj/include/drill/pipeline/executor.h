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


#ifndef DRILL_PIPELINE_EXECUTOR_H_
#define DRILL_PIPELINE_EXECUTOR_H_

#include <chrono>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "drill/common/subprocess.h"
#include "drill/coverage/coverage_map.h"
#include "drill/coverage/profile.h"
#include "drill/task/types.h"

namespace drill::pipeline {

std::string ShellQuote(std::string_view text);

// Replaces each literal {input} with the shell-quoted path.
std::string SubstituteInput(const std::string &harness_cmd, const std::filesystem::path &input);

// Harness input path for `input`: the file itself, or a copy next to it
// named "input<ext>" when the program expects an extension.
std::filesystem::path StageInput(const std::filesystem::path &input,
                                 const std::optional<std::string> &extension);

// ASAN_OPTIONS / UBSAN_OPTIONS for validation runs. Leak detection is only
// on for leak specs so exit-time leaks do not mask other crashes.
std::map<std::string, std::string> SanitizerEnv(bool detect_leaks);

struct CoverageRun {
  ProcessResult process;
  coverage::CoverageMap map;
  bool profile_written = false;
  std::string collect_error;  // Set when profiles existed but could not be read.
};

struct SanitizerRun {
  ProcessResult process;
  std::optional<CrashInfo> crash;
  bool report_seen = false;
};

// Runs the harness command with a build root as cwd.
class HarnessExecutor {
 public:
  HarnessExecutor(std::string harness_cmd, std::optional<std::string> input_extension,
                  std::chrono::seconds timeout);

  ProcessResult Run(const std::filesystem::path &build_root, const std::filesystem::path &input,
                    const std::map<std::string, std::string> &env) const;

  // Executes on P_cov with LLVM_PROFILE_FILE under `profile_dir` (emptied
  // first) and collects the profiles.
  CoverageRun RunCoverage(const std::filesystem::path &build_root,
                          const std::filesystem::path &binary, const std::filesystem::path &input,
                          const std::filesystem::path &profile_dir,
                          coverage::ProfileCollector &collector) const;

  // Executes on P_san and parses any sanitizer report. Reports without
  // source frames become Other("unsymbolized-crash").
  SanitizerRun RunSanitizer(const std::filesystem::path &build_root,
                            const std::filesystem::path &input, bool detect_leaks) const;

 private:
  std::string harness_cmd_;
  std::optional<std::string> input_extension_;
  std::chrono::seconds timeout_;
};

// "exit code N" / "killed by signal N" / "timed out".
std::string DescribeExit(const ProcessResult &process);

}  // namespace drill::pipeline

#endif  // DRILL_PIPELINE_EXECUTOR_H_
