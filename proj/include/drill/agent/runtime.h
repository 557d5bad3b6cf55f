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


#ifndef DRILL_AGENT_RUNTIME_H_
#define DRILL_AGENT_RUNTIME_H_

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "drill/agent/context.h"
#include "drill/agent/tools.h"
#include "drill/llm/chat.h"
#include "drill/llm/model_params.h"
#include "drill/task/task_spec.h"

namespace drill::agent {

struct AgentConfig {
  Phase phase = Phase::kVulnAnalysis;
  std::string system_prompt;
  std::vector<std::string> allowed_tools;
  int max_turns = 30;
  llm::ModelParams params;
};

// Throws Error(kPrecondition) for max_turns < 1, an unregistered allowed
// tool, or invalid model parameters.
void ValidateAgentConfig(const AgentConfig &config, const ToolRegistry &registry);

struct AgentOutcome {
  enum class Status { kFinished, kTurnCapReached, kBudgetStopped };

  Status status = Status::kTurnCapReached;
  std::string payload;  // The accepted finish payload.
  int turns = 0;        // Model calls made.
  std::vector<ToolResult> tool_results;
};

// Returns an error message to reject a finish payload; the agent is told
// and keeps going.
using FinishValidator = std::function<std::optional<std::string>(const std::string &payload)>;

struct AgentRunOptions {
  double budget_usd = std::numeric_limits<double>::infinity();
  // Whether a full generate-and-validate cycle has already completed in
  // this phase. Only then may an exhausted budget stop the run.
  bool cycle_complete = false;
  FinishValidator validate_finish;
};

// The sub-agent loop: chat, run the requested tools, feed results back,
// until `finish` is accepted or max_turns model calls were made. The system
// turn is the config prompt followed by the rendered pinned blocks; the
// transcript restarts with `task_message`. Usage is accrued into
// context.ledger under config.phase. Tool errors are returned to the model
// as failed results; provider errors propagate.
AgentOutcome RunAgent(const AgentConfig &config, AgentContext &context,
                      const std::string &task_message, const ToolRegistry &registry,
                      ToolEnvironment &env, llm::ChatBackend &backend,
                      const AgentRunOptions &options = {});

std::string SystemPrompt(const AgentConfig &config, const AgentContext &context);

}  // namespace drill::agent

#endif  // DRILL_AGENT_RUNTIME_H_
