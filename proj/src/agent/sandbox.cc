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


#include "drill/agent/sandbox.h"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>

#include "drill/common/error.h"
#include "drill/common/text.h"
#include "fmt/format.h"

namespace drill::agent {

namespace fs = std::filesystem;

bool IsWithin(const fs::path &path, const fs::path &root) {
  auto [root_end, path_it] = std::mismatch(root.begin(), root.end(), path.begin(), path.end());
  if (root_end == root.end()) return true;
  // A trailing empty component ("dir/") on the root still counts as a match.
  return std::next(root_end) == root.end() && root_end->empty();
}

Sandbox::Sandbox(const fs::path &work_dir) {
  fs::create_directories(work_dir);
  root_ = fs::canonical(work_dir);
}

fs::path Sandbox::Resolve(std::string_view user_path) const {
  if (user_path.empty()) throw Error(ErrorCode::kPrecondition, "empty path");
  if (user_path.find('\0') != std::string_view::npos) {
    throw Error(ErrorCode::kPathEscape, "path contains a NUL byte");
  }
  fs::path candidate(user_path);
  if (candidate.is_relative()) candidate = root_ / candidate;
  std::error_code ec;
  fs::path resolved = fs::weakly_canonical(candidate.lexically_normal(), ec);
  if (ec) {
    throw Error(ErrorCode::kPathEscape, fmt::format("cannot resolve {}: {}", user_path,
                                                    ec.message()));
  }
  if (!IsWithin(resolved, root_)) {
    throw Error(ErrorCode::kPathEscape,
                fmt::format("{} resolves outside the work directory", user_path));
  }
  return resolved;
}

std::string Sandbox::Display(const fs::path &resolved) const {
  fs::path rel = resolved.lexically_relative(root_);
  return rel.empty() ? resolved.string() : rel.string();
}

std::string Sandbox::ReadFile(std::string_view user_path) const {
  const fs::path path = Resolve(user_path);
  if (!fs::is_regular_file(path)) {
    throw Error(ErrorCode::kFileUnreadable, fmt::format("{}: not a regular file", user_path));
  }
  return ReadFileOrThrow(path);
}

void Sandbox::WriteFile(std::string_view user_path, std::string_view content) const {
  const fs::path path = Resolve(user_path);
  if (path == root_) throw Error(ErrorCode::kPrecondition, "cannot write the work directory");
  fs::create_directories(path.parent_path());
  // The parent chain may have changed since Resolve(); check it again.
  if (!IsWithin(fs::canonical(path.parent_path()), root_)) {
    throw Error(ErrorCode::kPathEscape, fmt::format("{} escapes the work directory", user_path));
  }
  const int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_NOFOLLOW | O_CLOEXEC, 0644);
  if (fd < 0) {
    const int err = errno;
    if (err == ELOOP) {
      throw Error(ErrorCode::kPathEscape, fmt::format("{} is a symlink", user_path));
    }
    throw Error(ErrorCode::kIo, fmt::format("{}: {}", user_path, std::strerror(err)));
  }
  size_t written = 0;
  while (written < content.size()) {
    const ssize_t n = ::write(fd, content.data() + written, content.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      const int err = errno;
      ::close(fd);
      throw Error(ErrorCode::kIo, fmt::format("{}: {}", user_path, std::strerror(err)));
    }
    written += static_cast<size_t>(n);
  }
  ::close(fd);
}

ProcessResult Sandbox::Exec(const std::string &command, std::chrono::milliseconds timeout,
                            size_t max_output_bytes) const {
  ProcessOptions options;
  options.argv = {"/bin/sh", "-c", command};
  options.cwd = root_;
  options.env = {{"HOME", root_.string()}, {"TMPDIR", root_.string()}};
  options.timeout = timeout;
  options.max_output_bytes = max_output_bytes;
  return RunProcess(options);
}

}  // namespace drill::agent
