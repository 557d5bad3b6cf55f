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

#ifndef DRILL_COMMON_SUBPROCESS_H_
#define DRILL_COMMON_SUBPROCESS_H_

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace drill {

struct ProcessOptions {
  std::vector<std::string> argv;
  std::filesystem::path cwd;  // Empty: inherit.
  // Applied on top of the parent environment.
  std::map<std::string, std::string> env;
  std::chrono::milliseconds timeout{std::chrono::seconds(60)};
  // Output beyond this many bytes is read and discarded.
  size_t max_output_bytes = 16 << 20;
  // When set, stderr goes to this file instead of `output`.
  std::filesystem::path stderr_path;
};

struct ProcessResult {
  int exit_code = -1;    // Valid when the process exited normally.
  int term_signal = 0;   // Nonzero when killed by a signal.
  bool timed_out = false;
  std::string output;    // stdout and stderr, interleaved.
  std::chrono::milliseconds duration{0};

  bool ok() const { return !timed_out && term_signal == 0 && exit_code == 0; }
};

// Runs argv[0] (PATH lookup) in its own process group. On timeout the whole
// group is killed with SIGKILL.
ProcessResult RunProcess(const ProcessOptions &options);

// Runs `command` through /bin/sh -c.
ProcessResult RunShell(const std::string &command,
                       const std::filesystem::path &cwd,
                       const std::map<std::string, std::string> &env,
                       std::chrono::milliseconds timeout);

// Returns the absolute path of `name` on PATH, or an empty path.
std::filesystem::path FindOnPath(const std::string &name);

}  // namespace drill

#endif  // DRILL_COMMON_SUBPROCESS_H_
