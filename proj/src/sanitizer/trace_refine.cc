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

#include "drill/sanitizer/trace_refine.h"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>

#include "drill/common/error.h"
#include "drill/common/text.h"
#include "drill/source/function_index.h"
#include "drill/task/json_io.h"
#include "fmt/format.h"
#include "nlohmann/json.hpp"

namespace drill::sanitizer {
namespace fs = std::filesystem;

namespace {

struct FrameSource {
  fs::path path;
  std::string text;
  std::optional<source::FunctionDefinition> extent;
};

// The definition of `function` in `text` that contains `line`, else the
// nearest one.
std::optional<source::FunctionDefinition> PickDefinition(const std::string &text,
                                                         const StackFrame &frame,
                                                         const fs::path &path) {
  auto defs = source::FindFunctionDefinitions(text, frame.function, path);
  if (defs.empty()) return std::nullopt;
  for (const auto &d : defs) {
    if (d.Contains(frame.line)) return d;
  }
  return *std::min_element(defs.begin(), defs.end(), [&](const auto &a, const auto &b) {
    const auto dist = [&](const source::FunctionDefinition &d) {
      return frame.line < d.signature_line ? d.signature_line - frame.line
                                           : frame.line - d.end_line;
    };
    return dist(a) < dist(b);
  });
}

std::string ExcerptAround(const std::string &text, int first, int last) {
  const auto lines = SplitLines(text);
  std::string out;
  for (int l = std::max(1, first); l <= std::min<int>(last, static_cast<int>(lines.size()));
       ++l) {
    out += fmt::format("{:5} | {}\n", l, lines[l - 1]);
  }
  return out;
}

}  // namespace

RefineResult RefineTraceLines(const CrashTrace &trace, const fs::path &repo,
                              TraceRefiner *refiner) {
  RefineResult result;
  result.trace = trace;
  auto &frames = result.trace.frames;

  std::map<size_t, FrameSource> unresolved;
  for (size_t i = 1; i < frames.size(); ++i) {
    StackFrame &frame = frames[i];
    const std::string &callee = frames[i - 1].function;
    const fs::path path = source::ResolveInRepo(repo, frame.file);
    if (path.empty()) {
      result.warnings.push_back(
          fmt::format("frame #{}: {} not found in repository; kept line {}", frame.index,
                      frame.file, frame.line));
      continue;
    }
    FrameSource src{path, ReadFileOrThrow(path), std::nullopt};
    src.extent = PickDefinition(src.text, frame, path);
    if (!src.extent) {
      result.warnings.push_back(fmt::format("frame #{}: definition of {} not found; kept line {}",
                                            frame.index, frame.function, frame.line));
      continue;
    }
    const auto calls = source::FindCallLines(src.text, callee, src.extent->body_start_line,
                                             src.extent->end_line);
    if (std::find(calls.begin(), calls.end(), frame.line) != calls.end()) continue;
    if (calls.empty()) {
      unresolved.emplace(i, std::move(src));
      continue;
    }
    // Nearest call site; ties go to the earlier line.
    const int reported = frame.line;
    const int best = *std::min_element(calls.begin(), calls.end(), [&](int a, int b) {
      const int da = std::abs(a - reported), db = std::abs(b - reported);
      return da != db ? da < db : a < b;
    });
    frame.line = best;
    frame.column.reset();
    ++result.frames_changed;
  }

  if (unresolved.empty() || refiner == nullptr) {
    for (const auto &[i, src] : unresolved) {
      result.warnings.push_back(fmt::format("frame #{}: no call to {} inside {}; kept line {}",
                                            frames[i].index, frames[i - 1].function,
                                            frames[i].function, frames[i].line));
    }
    return result;
  }

  std::string context;
  for (const auto &[i, src] : unresolved) {
    context += fmt::format("frame #{} {} ({}:{}), callee {}\n", frames[i].index,
                           frames[i].function, frames[i].file, frames[i].line,
                           frames[i - 1].function);
    context += ExcerptAround(src.text, src.extent->signature_line, src.extent->end_line);
    context += '\n';
  }
  const std::string proposal = refiner->ProposeRefinedTrace(result.trace, context);
  CrashTrace proposed;
  try {
    proposed = CrashTraceFromJson(nlohmann::json::parse(proposal));
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::kRefinerFailure, std::string("unparseable trace: ") + e.what());
  } catch (const Error &e) {
    throw Error(ErrorCode::kRefinerFailure, e.detail());
  }
  for (const auto &[i, src] : unresolved) {
    const auto match = std::find_if(proposed.frames.begin(), proposed.frames.end(),
                                    [&](const StackFrame &f) { return f.index == frames[i].index; });
    if (match == proposed.frames.end() || match->line == frames[i].line) continue;
    if (!src.extent->Contains(match->line)) {
      result.warnings.push_back(fmt::format(
          "frame #{}: refiner proposed line {} outside {}; kept line {}", frames[i].index,
          match->line, frames[i].function, frames[i].line));
      continue;
    }
    frames[i].line = match->line;
    frames[i].column.reset();
    ++result.frames_changed;
  }
  return result;
}

}  // namespace drill::sanitizer
