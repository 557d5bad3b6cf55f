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


#ifndef DRILL_AGENT_SANDBOX_H_
#define DRILL_AGENT_SANDBOX_H_

#include <chrono>
#include <filesystem>
#include <string>
#include <string_view>

#include "drill/common/subprocess.h"

namespace drill::agent {

// Directory-scoped sandbox for one task. File tools only touch paths that
// resolve, symlinks included, to the work directory or below it. Shell
// commands run with the work directory as cwd, HOME and TMPDIR; they are not
// otherwise confined.
class Sandbox {
 public:
  // Creates `work_dir` when missing.
  explicit Sandbox(const std::filesystem::path &work_dir);

  const std::filesystem::path &root() const { return root_; }

  // Maps a relative (to the root) or absolute path onto its resolved
  // location. Throws Error(kPathEscape) when that location is outside the
  // root and Error(kPrecondition) for an empty path.
  std::filesystem::path Resolve(std::string_view user_path) const;

  // Root-relative spelling of a resolved path, for messages.
  std::string Display(const std::filesystem::path &resolved) const;

  // Reads a whole file through Resolve(). Throws Error(kFileUnreadable).
  std::string ReadFile(std::string_view user_path) const;

  // Creates or truncates a file through Resolve(); parent directories are
  // created. A symlink in the final component is refused.
  void WriteFile(std::string_view user_path, std::string_view content) const;

  ProcessResult Exec(const std::string &command, std::chrono::milliseconds timeout,
                     size_t max_output_bytes = 1 << 20) const;

 private:
  std::filesystem::path root_;  // Canonical.
};

// True when `path` equals `root` or lies below it (both canonical).
bool IsWithin(const std::filesystem::path &path, const std::filesystem::path &root);

}  // namespace drill::agent

#endif  // DRILL_AGENT_SANDBOX_H_
