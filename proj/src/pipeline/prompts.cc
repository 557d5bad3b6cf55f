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


#include "prompts.h"

#include "drill/common/text.h"
#include "fmt/format.h"

namespace drill::pipeline::prompts {

namespace {

constexpr char kTestCaseFinish[] =
    "When the file is ready, call finish with payload "
    "{\"input_path\": \"<path under scratch/>\", \"generator_script\": \"<path or null>\"}.";

void AppendFrames(std::string &out, const std::vector<StackFrame> &frames) {
  for (const StackFrame &f : frames) {
    out += fmt::format("  #{} {} at {}:{}\n", f.index, f.function, f.file, f.line);
  }
}

}  // namespace

std::string WorkDirLayout() {
  return "Work directory layout: src/ holds the project sources, build_cov/ and build_san/ "
         "the instrumented builds once they exist, testcases/ earlier test cases, and "
         "scratch/ is yours for new files. Paths in tool calls are relative to the work "
         "directory.";
}

std::string VulnAnalysisSystem() {
  return "You analyze a memory-safety vulnerability in a C/C++ project so that a "
         "proof-of-vulnerability input can be built for it. " +
         WorkDirLayout() +
         "\n\nDetermine:\n"
         "1. The harness command: which program the crash backtrace belongs to and the "
         "arguments that make it process an input file. Look for the entry points, the "
         "argument parsing and the usage or help strings.\n"
         "2. The input file extension, if the program checks it.\n"
         "3. The root cause, in three parts: forward, the input format prerequisites "
         "derived from the entry point to the vulnerable code; backward, the conditions at "
         "the crash site that violate the security property; type_specific, how this "
         "vulnerability class shows up in this code.";
}

std::string VulnAnalysisTask() {
  return "Read the code along the crash backtrace and produce the analysis. The harness "
         "command runs from the root of a build directory with the same layout as src/; "
         "write {input} exactly once where the input file path goes. Call finish with "
         "payload {\"harness_cmd\": \"...\", \"input_extension\": \".ext\" or null, "
         "\"root_cause\": {\"forward\": \"...\", \"backward\": \"...\", "
         "\"type_specific\": \"...\"}}.";
}

std::string BuildPlanSystem() {
  return "You work out how to build a C/C++ project from its documentation and build "
         "files. " +
         WorkDirLayout() +
         " Read README files, Makefiles and configure scripts; do not run the build. "
         "Compilers and flags are supplied through CC, CXX, CFLAGS, CXXFLAGS and LDFLAGS, "
         "so the steps must honor those variables.";
}

std::string BuildPlanTask() {
  return "Call finish with payload {\"steps\": [shell commands run in order from the "
         "project root], \"env\": {extra environment}, \"entry_point\": \"path of the "
         "program, relative to the project root\", \"workdir\": \"\"}.";
}

std::string BuildFixTask(const build::BuildPlan &current, const std::string &failure,
                         int attempt) {
  return fmt::format(
      "Build attempt {} with this plan did not produce an instrumented program.\n\n"
      "Plan:\n{}\n\nProblem:\n{}\n\nReturn a corrected plan in the same finish payload "
      "format: {{\"steps\", \"env\", \"entry_point\", \"workdir\"}}.",
      attempt, build::BuildPlanToJson(current).dump(2), failure);
}

std::string TraceRefinerSystem() {
  return "You correct line numbers in a crash backtrace. Each caller frame's line must be "
         "the line that calls the function of the next inner frame. Reply with the crash "
         "trace JSON only, same shape as the input.";
}

std::string TraceRefinerTask(const CrashTrace &trace, const std::string &source_context) {
  std::string frames;
  AppendFrames(frames, trace.frames);
  return fmt::format("Backtrace, innermost first:\n{}\nSource around the frames:\n{}", frames,
                     source_context);
}

std::string PathExploreSystem() {
  return "You write test inputs that drive a program along a crash backtrace toward the "
         "vulnerable function. " +
         WorkDirLayout() +
         "\n\nEach round you produce one test case file under scratch/. For structured "
         "binary data, write a Python generator script with write_file and run it with "
         "execute_bash. After each test case runs, its coverage along the backtrace is "
         "added to your context; coverage_query gives line-level detail for the latest "
         "test case. Use it to find the check that stops execution and change the input "
         "to pass it.";
}

std::string PathExploreTask(int iteration, int total) {
  return fmt::format("Round {} of {}. Produce the next test case. {}", iteration, total,
                     kTestCaseFinish);
}

std::string CrashTriggerSystem() {
  return "You turn inputs that already reach the vulnerable function into a "
         "proof-of-vulnerability: an input that makes the sanitizer report the expected "
         "error at the target location. " +
         WorkDirLayout() +
         "\n\nStart from the useful test cases listed below; they pass the format checks. "
         "Change what the crashing statement depends on. Each candidate runs on the "
         "coverage build and the sanitizer build; the outcome is added to your context.";
}

std::string CrashTriggerTask(int iteration, int total) {
  return fmt::format("Round {} of {}. Produce the next candidate. {}", iteration, total,
                     kTestCaseFinish);
}

std::string RenderVulnerability(const VulnSpec &spec) {
  std::string out = fmt::format("project: {}\ntarget location: {}:{}", spec.project_id,
                                spec.v_location.file, spec.v_location.line);
  if (spec.v_location.function) out += fmt::format(" ({})", *spec.v_location.function);
  out += fmt::format("\nexpected effect: {}", spec.v_effect.token());
  if (spec.cve_id) out += fmt::format("\nid: {}", *spec.cve_id);
  return out;
}

std::string RenderTrace(const CrashTrace &trace, const CrashKind &kind) {
  std::string out = fmt::format("crash ({}), innermost frame first:\n", kind.token());
  AppendFrames(out, trace.frames);
  if (trace.alloc_frames) {
    out += "allocated by:\n";
    AppendFrames(out, *trace.alloc_frames);
  }
  if (trace.free_frames) {
    out += "freed by:\n";
    AppendFrames(out, *trace.free_frames);
  }
  if (!out.empty() && out.back() == '\n') out.pop_back();
  return out;
}

std::string RenderHarness(const VAReport &va) {
  std::string out = fmt::format("command (run from the build root): {}", va.harness_cmd);
  if (va.input_extension) out += fmt::format("\ninput extension: {}", *va.input_extension);
  return out;
}

std::string RenderUsefulTestCases(const std::vector<TestCase> &useful) {
  if (useful.empty()) {
    return "none: no earlier test case reached the vulnerable function; start from the "
           "root cause";
  }
  std::string out;
  for (const TestCase &tc : useful) {
    const std::string bytes = ReadFileOrThrow(tc.path);
    out += fmt::format("{} ({} bytes): {}\n", tc.sandbox_path, bytes.size(),
                       HexPreview(bytes, 64));
    if (tc.producer_script) out += fmt::format("  generated by testcases/pe_{}.script\n", tc.id);
  }
  out.pop_back();
  return out;
}

}  // namespace drill::pipeline::prompts
