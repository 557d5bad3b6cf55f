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

#include "drill/coverage/profile.h"

#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <string>
#include <system_error>

#include "drill/common/error.h"
#include "drill/common/subprocess.h"
#include "drill/common/text.h"

namespace drill::coverage {
namespace fs = std::filesystem;
namespace {

constexpr auto kToolTimeout = std::chrono::seconds(120);
constexpr size_t kStderrExcerpt = 2000;

fs::path FindTool(const std::string &name) {
  if (const char *dir = std::getenv("DRILL_LLVM_BIN"); dir != nullptr && *dir != '\0') {
    const fs::path candidate = fs::path(dir) / name;
    if (::access(candidate.c_str(), X_OK) == 0) return candidate;
  }
  if (fs::path found = FindOnPath(name); !found.empty()) return found;
  for (int version = 30; version >= 10; --version) {
    if (fs::path found = FindOnPath(name + "-" + std::to_string(version)); !found.empty()) {
      return found;
    }
  }
  return {};
}

std::string ReadExcerpt(const fs::path &path) {
  std::error_code ec;
  if (!fs::exists(path, ec)) return {};
  try {
    return TruncateHeadTail(ReadFileOrThrow(path), kStderrExcerpt);
  } catch (const Error &) {
    return {};
  }
}

void RemoveAll(const std::vector<fs::path> &paths) {
  std::error_code ec;
  for (const auto &p : paths) fs::remove(p, ec);
}

}  // namespace

CoverageToolchain CoverageToolchain::Discover() {
  CoverageToolchain tc{FindTool("llvm-profdata"), FindTool("llvm-cov")};
  if (tc.profdata.empty()) throw Error(ErrorCode::kToolchainMissing, "llvm-profdata not found");
  if (tc.cov.empty()) throw Error(ErrorCode::kToolchainMissing, "llvm-cov not found");
  return tc;
}

std::vector<fs::path> ListRawProfiles(const fs::path &dir) {
  std::vector<fs::path> out;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) return out;
  for (const auto &entry : fs::directory_iterator(dir, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".profraw") {
      out.push_back(entry.path());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int ResetRawProfiles(const fs::path &dir) {
  const auto profiles = ListRawProfiles(dir);
  RemoveAll(profiles);
  return static_cast<int>(profiles.size());
}

CoverageMap LlvmProfileCollector::Collect(const std::vector<fs::path> &raw_profiles,
                                          const fs::path &binary) {
  if (raw_profiles.empty()) throw Error(ErrorCode::kMalformedProfile, "no raw profiles");
  for (const auto &p : raw_profiles) {
    if (!fs::is_regular_file(p)) {
      throw Error(ErrorCode::kMalformedProfile, "missing raw profile " + p.string());
    }
  }
  const fs::path scratch = raw_profiles.front().parent_path();
  const fs::path merged = scratch / "merged.profdata";
  const fs::path stderr_log = scratch / "export.stderr";
  std::vector<fs::path> cleanup = raw_profiles;
  cleanup.push_back(merged);
  cleanup.push_back(stderr_log);

  ProcessOptions merge;
  merge.argv = {toolchain_.profdata.string(), "merge", "-sparse"};
  for (const auto &p : raw_profiles) merge.argv.push_back(p.string());
  merge.argv.insert(merge.argv.end(), {"-o", merged.string()});
  merge.timeout = kToolTimeout;
  const ProcessResult merged_run = RunProcess(merge);
  if (!merged_run.ok()) {
    RemoveAll(cleanup);
    throw Error(ErrorCode::kMalformedProfile,
                "profile merge failed: " + TruncateHeadTail(merged_run.output, kStderrExcerpt));
  }

  ProcessOptions exp;
  exp.argv = {toolchain_.cov.string(), "export", binary.string(), "-instr-profile",
              merged.string()};
  exp.cwd = source_root_;
  exp.timeout = kToolTimeout;
  exp.max_output_bytes = size_t{1} << 30;
  exp.stderr_path = stderr_log;
  const ProcessResult exported = RunProcess(exp);
  const std::string stderr_text = ReadExcerpt(stderr_log);
  RemoveAll(cleanup);
  if (!exported.ok()) {
    throw Error(ErrorCode::kMalformedProfile, "coverage export failed: " + stderr_text);
  }
  try {
    CoverageMap map = ParseLlvmCovExport(exported.output, binary.filename().string());
    RelativizeFiles(map, source_root_.empty() ? fs::current_path() : source_root_);
    return map;
  } catch (const Error &e) {
    throw Error(ErrorCode::kMalformedProfile, e.detail() + "; stderr: " + stderr_text);
  }
}

CoverageMap CollectProfile(const std::vector<fs::path> &raw_profiles, const fs::path &binary,
                           const CoverageToolchain &toolchain, const fs::path &source_root) {
  LlvmProfileCollector collector(toolchain, source_root);
  return collector.Collect(raw_profiles, binary);
}

}  // namespace drill::coverage
