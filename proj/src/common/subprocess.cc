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

#include "drill/common/subprocess.h"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstdlib>
#include <cstring>

#include "drill/common/error.h"

extern char **environ;

namespace drill {
namespace {

using Clock = std::chrono::steady_clock;

// Everything the child needs is prepared before fork(); the child only calls
// async-signal-safe functions.
struct ChildSpec {
  std::vector<std::string> argv_storage;
  std::vector<char *> argv;
  std::vector<std::string> env_storage;
  std::vector<char *> envp;
  std::string cwd;
  std::string stderr_path;
};

ChildSpec PrepareChild(const ProcessOptions &options) {
  ChildSpec spec;
  spec.argv_storage = options.argv;
  for (auto &arg : spec.argv_storage) spec.argv.push_back(arg.data());
  spec.argv.push_back(nullptr);

  std::map<std::string, std::string> env;
  for (char **e = environ; e && *e; ++e) {
    std::string entry(*e);
    const auto eq = entry.find('=');
    if (eq == std::string::npos) continue;
    env[entry.substr(0, eq)] = entry.substr(eq + 1);
  }
  for (const auto &[key, value] : options.env) env[key] = value;
  for (const auto &[key, value] : env) spec.env_storage.push_back(key + "=" + value);
  for (auto &entry : spec.env_storage) spec.envp.push_back(entry.data());
  spec.envp.push_back(nullptr);
  spec.cwd = options.cwd.string();
  spec.stderr_path = options.stderr_path.string();
  return spec;
}

std::string ResolveExecutable(const std::string &name) {
  if (name.find('/') != std::string::npos) return name;
  const auto found = FindOnPath(name);
  return found.empty() ? name : found.string();
}

}  // namespace

std::filesystem::path FindOnPath(const std::string &name) {
  const char *path_env = std::getenv("PATH");
  if (!path_env) return {};
  std::string_view path(path_env);
  size_t start = 0;
  while (start <= path.size()) {
    size_t end = path.find(':', start);
    if (end == std::string_view::npos) end = path.size();
    std::filesystem::path dir(std::string(path.substr(start, end - start)));
    if (!dir.empty()) {
      const auto candidate = dir / name;
      if (::access(candidate.c_str(), X_OK) == 0 &&
          std::filesystem::is_regular_file(candidate)) {
        return candidate;
      }
    }
    start = end + 1;
  }
  return {};
}

ProcessResult RunProcess(const ProcessOptions &options) {
  if (options.argv.empty()) {
    throw Error(ErrorCode::kPrecondition, "RunProcess: empty argv");
  }
  ChildSpec spec = PrepareChild(options);
  const std::string exe = ResolveExecutable(options.argv.front());

  int fds[2];
  if (::pipe2(fds, O_CLOEXEC) != 0) {
    throw Error(ErrorCode::kIo, std::string("pipe: ") + std::strerror(errno));
  }

  const auto start = Clock::now();
  const pid_t pid = ::fork();
  if (pid < 0) {
    ::close(fds[0]);
    ::close(fds[1]);
    throw Error(ErrorCode::kIo, std::string("fork: ") + std::strerror(errno));
  }
  if (pid == 0) {
    ::setpgid(0, 0);
    ::dup2(fds[1], STDOUT_FILENO);
    if (spec.stderr_path.empty()) {
      ::dup2(fds[1], STDERR_FILENO);
    } else {
      const int err = ::open(spec.stderr_path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
      if (err >= 0) ::dup2(err, STDERR_FILENO);
    }
    const int devnull = ::open("/dev/null", O_RDONLY);
    if (devnull >= 0) ::dup2(devnull, STDIN_FILENO);
    if (!spec.cwd.empty() && ::chdir(spec.cwd.c_str()) != 0) {
      static const char kMsg[] = "drill: cannot chdir to working directory\n";
      (void)!::write(STDERR_FILENO, kMsg, sizeof(kMsg) - 1);
      ::_exit(126);
    }
    ::execve(exe.c_str(), spec.argv.data(), spec.envp.data());
    static const char kMsg[] = "drill: exec failed\n";
    (void)!::write(STDERR_FILENO, kMsg, sizeof(kMsg) - 1);
    ::_exit(127);
  }
  ::setpgid(pid, pid);  // Also done in the child; whichever runs first wins.
  ::close(fds[1]);

  ProcessResult result;
  const auto deadline = start + options.timeout;
  bool exited = false;
  int status = 0;
  bool pipe_open = true;
  char buf[8192];
  while (!result.timed_out && (pipe_open || !exited)) {
    const auto now = Clock::now();
    if (now >= deadline) {
      result.timed_out = true;
      break;
    }
    if (!exited && ::waitpid(pid, &status, WNOHANG) == pid) exited = true;
    if (!pipe_open) {
      // Output closed but the child is still running.
      ::usleep(5000);
      continue;
    }
    const auto remaining =
        std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now).count();
    // Once the child is gone, only wait briefly for stragglers holding the pipe.
    const int wait_ms = static_cast<int>(std::min<long long>(remaining, exited ? 50 : 20));
    pollfd pfd{fds[0], POLLIN, 0};
    const int rc = ::poll(&pfd, 1, wait_ms);
    if (rc < 0) {
      if (errno == EINTR) continue;
      pipe_open = false;
      continue;
    }
    if (rc == 0) {
      if (exited) pipe_open = false;
      continue;
    }
    const ssize_t n = ::read(fds[0], buf, sizeof(buf));
    if (n > 0) {
      const size_t room = options.max_output_bytes > result.output.size()
                              ? options.max_output_bytes - result.output.size()
                              : 0;
      result.output.append(buf, std::min(static_cast<size_t>(n), room));
    } else if (n == 0 || (errno != EINTR && errno != EAGAIN)) {
      pipe_open = false;
    }
  }

  // The process group may outlive the direct child (background jobs).
  ::kill(-pid, SIGKILL);
  if (!exited) ::waitpid(pid, &status, 0);
  ::close(fds[0]);

  result.duration = std::chrono::duration_cast<std::chrono::milliseconds>(
      Clock::now() - start);
  if (!result.timed_out) {
    if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
    else if (WIFSIGNALED(status)) result.term_signal = WTERMSIG(status);
  }
  return result;
}

ProcessResult RunShell(const std::string &command,
                       const std::filesystem::path &cwd,
                       const std::map<std::string, std::string> &env,
                       std::chrono::milliseconds timeout) {
  ProcessOptions options;
  options.argv = {"/bin/sh", "-c", command};
  options.cwd = cwd;
  options.env = env;
  options.timeout = timeout;
  return RunProcess(options);
}

}  // namespace drill
