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

#ifndef DRILL_COVERAGE_PROFILE_H_
#define DRILL_COVERAGE_PROFILE_H_

#include <filesystem>
#include <vector>

#include "drill/coverage/coverage_map.h"

namespace drill::coverage {

// Locations of the profile merge and export executables.
struct CoverageToolchain {
  std::filesystem::path profdata;
  std::filesystem::path cov;

  // Looks in $DRILL_LLVM_BIN first, then on PATH (plain and -N suffixed
  // names). Throws Error(kToolchainMissing) when either tool is absent.
  static CoverageToolchain Discover();
};

// Raw profiles currently present in `dir` (files ending in .profraw), sorted.
std::vector<std::filesystem::path> ListRawProfiles(const std::filesystem::path &dir);

// Deletes every raw profile in `dir`; returns how many were removed.
int ResetRawProfiles(const std::filesystem::path &dir);

// Turns raw profiles into a CoverageMap. Implementations must delete the raw
// profiles they consumed so the next execution starts clean.
class ProfileCollector {
 public:
  virtual ~ProfileCollector() = default;
  virtual CoverageMap Collect(const std::vector<std::filesystem::path> &raw_profiles,
                              const std::filesystem::path &binary) = 0;
};

// Runs `llvm-profdata merge -sparse` then `llvm-cov export`. The export runs
// in `source_root` (the build tree) so relative names in the coverage mapping
// resolve there; file names under it are reported root-relative.
class LlvmProfileCollector : public ProfileCollector {
 public:
  explicit LlvmProfileCollector(CoverageToolchain toolchain,
                                std::filesystem::path source_root = {})
      : toolchain_(std::move(toolchain)), source_root_(std::move(source_root)) {}
  CoverageMap Collect(const std::vector<std::filesystem::path> &raw_profiles,
                      const std::filesystem::path &binary) override;

 private:
  CoverageToolchain toolchain_;
  std::filesystem::path source_root_;
};

// Convenience wrapper over LlvmProfileCollector. Throws kMalformedProfile
// for an empty list, a missing file, or a failing merge/export (stderr in
// the error detail).
CoverageMap CollectProfile(const std::vector<std::filesystem::path> &raw_profiles,
                           const std::filesystem::path &binary,
                           const CoverageToolchain &toolchain,
                           const std::filesystem::path &source_root = {});

}  // namespace drill::coverage

#endif  // DRILL_COVERAGE_PROFILE_H_
