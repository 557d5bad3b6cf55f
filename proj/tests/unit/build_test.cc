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

#include "drill/build/build.h"

#include <random>
#include <string>

#include "drill/common/subprocess.h"
#include "drill/common/text.h"
#include "drill/coverage/profile.h"
#include "drill/sanitizer/report_parser.h"
#include "gtest/gtest.h"
#include "support/test_support.h"

namespace drill::build {
namespace {

namespace fs = std::filesystem;
using ::drill::testing::Fixture;
using ::drill::testing::TempDir;
using ::drill::testing::ThrowsCode;

bool Contains(const std::string &haystack, const std::string &needle) {
  return haystack.find(needle) != std::string::npos;
}

CompilerConfig TestCompilers() {
  CompilerConfig c;
  c.cc = "clang";
  c.cxx = "clang++";
  c.coverage_cc = (drill::testing::ShimDir() / "clang-cov").string();
  c.coverage_cxx = (drill::testing::ShimDir() / "clang-cov++").string();
  c.extra_cflags = {"-gdwarf-4"};
  return c;
}

// Scripted stand-in for the build agent.
class ScriptedAgent : public BuildAgent {
 public:
  std::optional<BuildPlan> plan;
  std::vector<BuildPlan> fixes;
  std::vector<std::string> failures;

  std::optional<BuildPlan> ProposePlan(const fs::path &) override { return plan; }
  std::optional<BuildPlan> ProposeFix(const BuildPlan &, const std::string &failure,
                                      int) override {
    failures.push_back(failure);
    if (fixes.empty()) return std::nullopt;
    BuildPlan next = fixes.front();
    fixes.erase(fixes.begin());
    return next;
  }
};

BuildPlan MakePlan() { return BuildPlan{{"make"}, {}, "target_bin", ""}; }

TEST(InjectFlagsTest, CoverageFlags) {
  const BuildPlan out = InjectFlags(MakePlan(), InstrumentationKind::Coverage(), TestCompilers());
  for (const char *var : {"CFLAGS", "CXXFLAGS", "LDFLAGS"}) {
    EXPECT_TRUE(Contains(out.env.at(var), "-fprofile-instr-generate")) << var;
    EXPECT_TRUE(Contains(out.env.at(var), "-fcoverage-mapping")) << var;
  }
  EXPECT_EQ(out.env.at("CC"), TestCompilers().coverage_cc);
  EXPECT_EQ(out.steps, MakePlan().steps);
}

TEST(InjectFlagsTest, AddressSanitizerFlags) {
  const BuildPlan out = InjectFlags(
      MakePlan(), InstrumentationKind::Sanitizer(SanitizerType::kAddress), TestCompilers());
  EXPECT_TRUE(Contains(out.env.at("CFLAGS"), "-fsanitize=address -fno-omit-frame-pointer"));
  EXPECT_TRUE(Contains(out.env.at("LDFLAGS"), "-fsanitize=address"));
  EXPECT_EQ(out.env.at("CC"), "clang");
}

TEST(InjectFlagsTest, IdempotentAndPrepends) {
  BuildPlan plan = MakePlan();
  plan.env["CFLAGS"] = "-O1 -DFOO";
  const auto kind = InstrumentationKind::Coverage();
  const BuildPlan once = InjectFlags(plan, kind, TestCompilers());
  const BuildPlan twice = InjectFlags(once, kind, TestCompilers());
  EXPECT_EQ(once, twice);
  EXPECT_TRUE(EndsWith(once.env.at("CFLAGS"), "-O1 -DFOO"));
  EXPECT_TRUE(StartsWith(once.env.at("CFLAGS"), "-fprofile-instr-generate"));
}

TEST(InjectFlagsTest, StepsPreservedForRandomPlans) {
  std::mt19937 rng(42);
  const std::vector<InstrumentationKind> kinds = {
      InstrumentationKind::Coverage(), InstrumentationKind::Sanitizer(SanitizerType::kAddress),
      InstrumentationKind::Sanitizer(SanitizerType::kUndefined)};
  for (int i = 0; i < 200; ++i) {
    BuildPlan plan;
    const int n = 1 + rng() % 5;
    for (int s = 0; s < n; ++s) plan.steps.push_back("step" + std::to_string(rng() % 100));
    if (rng() % 2) plan.env["CFLAGS"] = "-O" + std::to_string(rng() % 4);
    plan.entry_point = "bin";
    const BuildPlan out = InjectFlags(plan, kinds[rng() % kinds.size()], TestCompilers());
    ASSERT_EQ(out.steps, plan.steps);
    ASSERT_EQ(out.entry_point, plan.entry_point);
  }
}

TEST(InstrumentationKindTest, DerivedFromEffect) {
  using Tag = CrashKind::Tag;
  EXPECT_EQ(SanitizerKindFor(CrashKind(Tag::kMemoryLeak)),
            InstrumentationKind::Sanitizer(SanitizerType::kAddress));
  EXPECT_TRUE(DetectLeaksFor(CrashKind(Tag::kMemoryLeak)));
  EXPECT_FALSE(DetectLeaksFor(CrashKind(Tag::kHeapBufferOverflow)));
  EXPECT_EQ(SanitizerKindFor(CrashKind::Other("undefined-behavior")),
            InstrumentationKind::Sanitizer(SanitizerType::kUndefined));
  EXPECT_EQ(SanitizerKindFor(CrashKind(Tag::kUseAfterFree)).sanitizer, SanitizerType::kAddress);
}

TEST(BuildPlanJsonTest, RoundTripAndValidation) {
  BuildPlan p{{"./configure", "make"}, {{"X", "1"}}, "bin/tool", "sub"};
  EXPECT_EQ(BuildPlanFromJson(BuildPlanToJson(p)), p);
  EXPECT_TRUE(ThrowsCode([] { BuildPlanFromJson(nlohmann::json{{"steps", nlohmann::json::array()},
                                                                {"entry_point", "x"}}); },
                         ErrorCode::kPlanNotFound));
  EXPECT_TRUE(ThrowsCode([] { BuildPlanFromJson(nlohmann::json{{"steps", {"make"}}}); },
                         ErrorCode::kPlanNotFound));
}

class BuildFixtureTest : public ::testing::Test {
 protected:
  void SetUp() override {
    if (FindOnPath("clang").empty() || FindOnPath("make").empty()) GTEST_SKIP() << "no clang/make";
  }

  BuildOptions Options(const std::string &fixture, const std::string &log) {
    BuildOptions o;
    o.pristine_repo = Fixture("build/" + fixture);
    o.build_dir = dir_ / ("out_" + log);
    o.log_path = dir_ / (log + ".log");
    o.compilers = TestCompilers();
    o.step_timeout = std::chrono::seconds(120);
    return o;
  }

  TempDir dir_;
};

TEST_F(BuildFixtureTest, CheckInstrumentationOnRealBinaries) {
  if (!drill::testing::CoverageToolchainAvailable()) GTEST_SKIP() << "coverage toolchain absent";
  ScriptedAgent agent;
  const BuildResult cov =
      RunBuild(MakePlan(), InstrumentationKind::Coverage(), &agent, Options("make_readme", "cov"));
  ASSERT_TRUE(cov.binary_path.has_value());
  EXPECT_TRUE(CheckInstrumentation(*cov.binary_path, InstrumentationKind::Coverage()));

  // Control: the same project built without injected flags.
  fs::copy(Fixture("build/make_readme"), dir_ / "plain", fs::copy_options::recursive);
  ASSERT_TRUE(RunShell("make CC=clang", dir_ / "plain", {}, std::chrono::seconds(60)).ok());
  EXPECT_FALSE(CheckInstrumentation(dir_ / "plain" / "target_bin", InstrumentationKind::Coverage()));
  EXPECT_FALSE(CheckInstrumentation(dir_ / "plain" / "target_bin",
                                    InstrumentationKind::Sanitizer(SanitizerType::kAddress)));

  WriteFileOrThrow(dir_ / "empty", "");
  EXPECT_FALSE(CheckInstrumentation(dir_ / "empty", InstrumentationKind::Coverage()));
  EXPECT_TRUE(ThrowsCode(
      [&] { CheckInstrumentation(dir_ / "missing", InstrumentationKind::Coverage()); },
      ErrorCode::kFileUnreadable));
}

TEST_F(BuildFixtureTest, WellFormedProjectBuildsOnFirstAttempt) {
  if (!drill::testing::CoverageToolchainAvailable()) GTEST_SKIP() << "coverage toolchain absent";
  ScriptedAgent agent;
  const BuildResult r =
      RunBuild(MakePlan(), InstrumentationKind::Coverage(), &agent, Options("make_readme", "cov"));
  EXPECT_TRUE(r.success);
  EXPECT_EQ(r.attempts, 1);
  EXPECT_TRUE(r.effective);
  EXPECT_TRUE(agent.failures.empty());
  EXPECT_TRUE(Contains(ReadFileOrThrow(dir_ / "cov.log"), "$ make"));

  // Executing a successful coverage build leaves a raw profile behind.
  const fs::path profiles = dir_ / "profiles";
  ProcessOptions run;
  run.argv = {r.binary_path->string(), Fixture("build/make_readme/README.md").string()};
  run.env["LLVM_PROFILE_FILE"] = (profiles / "cov-%p.profraw").string();
  ASSERT_TRUE(RunProcess(run).ok());
  EXPECT_EQ(coverage::ListRawProfiles(profiles).size(), 1u);
}

TEST_F(BuildFixtureTest, OverriddenFlagsAreRepairedByAgent) {
  if (!drill::testing::CoverageToolchainAvailable()) GTEST_SKIP() << "coverage toolchain absent";
  ScriptedAgent agent;
  agent.fixes.push_back(BuildPlan{{"make CFLAGS=\"$CFLAGS\""}, {}, "target_bin", ""});
  const BuildResult r = RunBuild(MakePlan(), InstrumentationKind::Coverage(), &agent,
                                 Options("flag_override", "cov"));
  ASSERT_EQ(agent.failures.size(), 1u);
  EXPECT_TRUE(Contains(agent.failures[0], "lacks coverage instrumentation markers"));
  EXPECT_TRUE(r.success);
  EXPECT_EQ(r.attempts, 2);
  EXPECT_TRUE(r.effective);
  EXPECT_EQ(r.plan.steps, std::vector<std::string>{"make CFLAGS=\"$CFLAGS\""});
}

TEST_F(BuildFixtureTest, IneffectiveWithoutRepairIsReported) {
  ScriptedAgent agent;
  const BuildResult r =
      RunBuild(MakePlan(), InstrumentationKind::Sanitizer(SanitizerType::kAddress), &agent,
               Options("flag_override", "san"));
  EXPECT_TRUE(r.success);
  EXPECT_FALSE(r.effective);
  EXPECT_EQ(r.attempts, 1);
}

TEST_F(BuildFixtureTest, NonexistentCommandFailsAfterMaxAttempts) {
  ScriptedAgent agent;
  const BuildPlan broken{{"definitely-not-a-command-xyz"}, {}, "target_bin", ""};
  for (int i = 0; i < 5; ++i) agent.fixes.push_back(broken);
  BuildOptions o = Options("make_readme", "broken");
  o.max_attempts = 3;
  try {
    RunBuild(broken, InstrumentationKind::Sanitizer(SanitizerType::kAddress), &agent, o);
    FAIL() << "expected BuildFailed";
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kBuildFailed);
    EXPECT_TRUE(Contains(e.detail(), "after 3 attempt(s)")) << e.detail();
    EXPECT_TRUE(Contains(e.detail(), "not found")) << e.detail();
  }
  EXPECT_EQ(agent.failures.size(), 2u);
}

TEST_F(BuildFixtureTest, ConfigureThenMake) {
  ScriptedAgent agent;
  agent.plan = BuildPlan{{"./configure", "make"}, {}, "target_bin", ""};
  const BuildPlan plan = DeriveBuildPlan(Fixture("build/configure_make"), &agent);
  ASSERT_EQ(plan.steps.size(), 2u);
  const BuildResult r = RunBuild(plan, InstrumentationKind::Sanitizer(SanitizerType::kAddress),
                                 &agent, Options("configure_make", "san"));
  EXPECT_TRUE(r.effective);
}

TEST_F(BuildFixtureTest, DerivedMakePlanBuilds) {
  ScriptedAgent agent;
  agent.plan = MakePlan();
  const BuildPlan plan = DeriveBuildPlan(Fixture("build/make_readme"), &agent);
  EXPECT_EQ(plan.steps, std::vector<std::string>{"make"});
  EXPECT_EQ(plan.entry_point, "target_bin");
  const BuildResult r = RunBuild(plan, InstrumentationKind::Sanitizer(SanitizerType::kAddress),
                                 &agent, Options("make_readme", "san"));
  EXPECT_TRUE(r.success);
  EXPECT_TRUE(r.effective);
}

TEST_F(BuildFixtureTest, SeededBugReportIsParseable) {
  fs::create_directories(dir_ / "seeded");
  fs::copy_file(Fixture("c/heap_of.c"), dir_ / "seeded" / "heap_of.c");
  ScriptedAgent agent;
  BuildOptions o = Options("make_readme", "seeded");
  o.pristine_repo = dir_ / "seeded";
  const BuildPlan plan{{"$CC $CFLAGS $LDFLAGS -o heap_of heap_of.c"}, {}, "heap_of", ""};
  const BuildResult r =
      RunBuild(plan, InstrumentationKind::Sanitizer(SanitizerType::kAddress), &agent, o);
  ASSERT_TRUE(r.effective);
  WriteFileOrThrow(dir_ / "crash.bin", "@abcdef");
  ProcessOptions run;
  run.argv = {r.binary_path->string(), (dir_ / "crash.bin").string()};
  run.env["ASAN_OPTIONS"] = "abort_on_error=0:detect_leaks=0:external_symbolizer_path=/usr/bin/addr2line";
  const ProcessResult out = RunProcess(run);
  const CrashInfo info = sanitizer::ParseSanitizerReport(out.output);
  EXPECT_EQ(info.kind.tag(), CrashKind::Tag::kHeapBufferOverflow);
  EXPECT_EQ(info.trace.frames[0].function, "read_past_end");
  EXPECT_EQ(info.trace.frames[0].line, 7);
}

TEST_F(BuildFixtureTest, EmptyRepoHasNoPlan) {
  fs::create_directories(dir_ / "empty");
  ScriptedAgent agent;
  agent.plan = MakePlan();
  EXPECT_TRUE(ThrowsCode([&] { DeriveBuildPlan(dir_ / "empty", &agent); },
                         ErrorCode::kPlanNotFound));
  agent.plan.reset();
  EXPECT_TRUE(ThrowsCode([&] { DeriveBuildPlan(Fixture("build/make_readme"), &agent); },
                         ErrorCode::kPlanNotFound));
}

TEST_F(BuildFixtureTest, ResolveEntryBinary) {
  const fs::path root = dir_ / "wrapper";
  fs::copy(Fixture("build/wrapper"), root, fs::copy_options::recursive);
  fs::create_directories(root / "bin");
  ASSERT_TRUE(RunShell("clang -o bin/tool src/tool.c", root, {}, std::chrono::seconds(60)).ok());
  EXPECT_EQ(ResolveEntryBinary(root / "bin" / "tool", root), root / "bin" / "tool");
  EXPECT_EQ(ResolveEntryBinary(root / "run.sh", root), fs::weakly_canonical(root / "bin" / "tool"));
  EXPECT_TRUE(ThrowsCode([&] { ResolveEntryBinary(root / "system_only.sh", root); },
                         ErrorCode::kBinaryNotFound));
  EXPECT_TRUE(ThrowsCode([&] { ResolveEntryBinary(root / "nothing", root); },
                         ErrorCode::kBinaryNotFound));
}

}  // namespace
}  // namespace drill::build
