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


#ifndef DRILL_SRC_PIPELINE_PROMPTS_H_
#define DRILL_SRC_PIPELINE_PROMPTS_H_

// Prompt text for the sub-agents. Kept in one place so transcripts change
// only when these do.

#include <string>
#include <vector>

#include "drill/build/build.h"
#include "drill/pipeline/pipeline.h"
#include "drill/task/task_spec.h"
#include "drill/task/types.h"

namespace drill::pipeline::prompts {

std::string WorkDirLayout();

std::string VulnAnalysisSystem();
std::string VulnAnalysisTask();

std::string BuildPlanSystem();
std::string BuildPlanTask();
std::string BuildFixTask(const build::BuildPlan &current, const std::string &failure, int attempt);

std::string TraceRefinerSystem();
std::string TraceRefinerTask(const CrashTrace &trace, const std::string &source_context);

std::string PathExploreSystem();
std::string PathExploreTask(int iteration, int total);

std::string CrashTriggerSystem();
std::string CrashTriggerTask(int iteration, int total);

std::string RenderVulnerability(const VulnSpec &spec);
std::string RenderTrace(const CrashTrace &trace, const CrashKind &kind);
std::string RenderHarness(const VAReport &va);
std::string RenderUsefulTestCases(const std::vector<TestCase> &useful);

}  // namespace drill::pipeline::prompts

#endif  // DRILL_SRC_PIPELINE_PROMPTS_H_
