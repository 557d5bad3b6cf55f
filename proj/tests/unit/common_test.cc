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

#include <chrono>
#include <random>
#include <string>

#include "drill/common/error.h"
#include "drill/common/subprocess.h"
#include "drill/common/text.h"
#include "gtest/gtest.h"
#include "support/test_support.h"

namespace drill {
namespace {

using std::chrono::milliseconds;

TEST(ErrorTest, WhatCarriesCodeName) {
  const Error e(ErrorCode::kInvalidSpec, "v_location.line: required");
  EXPECT_STREQ(e.what(), "InvalidSpec: v_location.line: required");
  EXPECT_EQ(e.detail(), "v_location.line: required");
  EXPECT_EQ(ErrorCodeName(ErrorCode::kMalformedProfile), "MalformedProfile");
}

TEST(TextTest, HeadTailTruncation) {
  EXPECT_EQ(TruncateHeadTail("abcdef", 6), "abcdef");
  EXPECT_EQ(TruncateHeadTail("abcdefghij", 4), "ab…[truncated 6 chars]…ij");
  EXPECT_EQ(TruncateHeadTail("abcdefghij", 5), "abc…[truncated 5 chars]…ij");
}

TEST(TextTest, TruncateToLimitIsBounded) {
  std::mt19937 rng(7);
  for (int i = 0; i < 500; ++i) {
    std::string s(rng() % 300, 'x');
    const size_t limit = 1 + rng() % 200;
    const std::string out = TruncateToLimit(s, limit);
    ASSERT_LE(out.size(), limit);
    if (s.size() <= limit) {
      ASSERT_EQ(out, s);
    } else if (limit >= kTailTruncationMarker.size()) {
      ASSERT_TRUE(EndsWith(out, kTailTruncationMarker));
    }
  }
}

TEST(TextTest, Helpers) {
  EXPECT_EQ(Trim("  a b \n"), "a b");
  EXPECT_EQ(SplitLines("a\nb\n").size(), 2u);
  EXPECT_EQ(Sha256Hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(SubprocessTest, CapturesOutputAndExitCode) {
  const ProcessResult r = RunShell("echo hi; echo err >&2; exit 3", {}, {}, milliseconds(5000));
  EXPECT_EQ(r.exit_code, 3);
  EXPECT_NE(r.output.find("hi"), std::string::npos);
  EXPECT_NE(r.output.find("err"), std::string::npos);
  EXPECT_FALSE(r.ok());
}

TEST(SubprocessTest, StderrCanGoToFile) {
  testing::TempDir dir;
  ProcessOptions opts;
  opts.argv = {"/bin/sh", "-c", "echo out; echo err >&2"};
  opts.stderr_path = dir / "err.txt";
  const ProcessResult r = RunProcess(opts);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.output, "out\n");
  EXPECT_EQ(ReadFileOrThrow(dir / "err.txt"), "err\n");
}

TEST(SubprocessTest, TimeoutKillsProcessGroup) {
  const auto start = std::chrono::steady_clock::now();
  const ProcessResult r = RunShell("sleep 30 & sleep 30; wait", {}, {}, milliseconds(500));
  const auto elapsed = std::chrono::steady_clock::now() - start;
  EXPECT_TRUE(r.timed_out);
  EXPECT_LT(elapsed, std::chrono::seconds(3));
}

TEST(SubprocessTest, EnvironmentAndCwd) {
  testing::TempDir dir;
  const ProcessResult r = RunShell("echo $DRILL_X; pwd", dir.path(), {{"DRILL_X", "42"}},
                                   milliseconds(5000));
  EXPECT_EQ(r.output, "42\n" + std::filesystem::canonical(dir.path()).string() + "\n");
}

TEST(SubprocessTest, SignalDeathReported) {
  const ProcessResult r = RunShell("kill -SEGV $$", {}, {}, milliseconds(5000));
  EXPECT_EQ(r.term_signal, SIGSEGV);
}

}  // namespace
}  // namespace drill
