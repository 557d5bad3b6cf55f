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


#include "drill/agent/runtime.h"

#include <algorithm>

#include "drill/agent/budget.h"
#include "drill/common/error.h"
#include "fmt/format.h"

namespace drill::agent {

namespace {

constexpr char kNoToolNudge[] =
    "Continue with tool calls. Call finish when the result is ready.";
constexpr char kBudgetNudge[] =
    "The cost budget is exhausted. Call finish now with your best result.";

}  // namespace

void ValidateAgentConfig(const AgentConfig &config, const ToolRegistry &registry) {
  if (config.max_turns < 1) throw Error(ErrorCode::kPrecondition, "max_turns must be >= 1");
  for (const std::string &tool : config.allowed_tools) {
    if (!registry.Contains(tool)) {
      throw Error(ErrorCode::kPrecondition, fmt::format("allowed tool {} is not registered", tool));
    }
  }
  llm::ValidateModelParams(config.params);
}

std::string SystemPrompt(const AgentConfig &config, const AgentContext &context) {
  const std::string pinned = context.Render();
  return pinned.empty() ? config.system_prompt : config.system_prompt + "\n\n" + pinned;
}

AgentOutcome RunAgent(const AgentConfig &config, AgentContext &context,
                      const std::string &task_message, const ToolRegistry &registry,
                      ToolEnvironment &env, llm::ChatBackend &backend,
                      const AgentRunOptions &options) {
  ValidateAgentConfig(config, registry);
  const std::vector<llm::ToolSchema> schemas = registry.Schemas(config.allowed_tools);
  const bool finish_allowed = std::find(config.allowed_tools.begin(), config.allowed_tools.end(),
                                        kFinish) != config.allowed_tools.end();
  context.transcript = {llm::ChatTurn::User(task_message)};
  AgentOutcome outcome;
  bool nudged_budget = false;

  while (outcome.turns < config.max_turns) {
    std::vector<llm::ChatTurn> history;
    history.reserve(context.transcript.size() + 1);
    history.push_back(llm::ChatTurn::System(SystemPrompt(config, context)));
    history.insert(history.end(), context.transcript.begin(), context.transcript.end());

    const llm::ChatResponse response = backend.Chat(history, schemas, config.params);
    ++outcome.turns;
    if (context.ledger != nullptr) {
      *context.ledger = llm::Accrue(*context.ledger, config.phase, response.usage, config.params);
    }
    context.transcript.push_back(response.turn);

    if (response.turn.tool_calls.empty()) {
      context.transcript.push_back(llm::ChatTurn::User(kNoToolNudge));
    }
    for (const llm::ToolCall &call : response.turn.tool_calls) {
      if (call.name == kFinish && finish_allowed) {
        const std::string payload = FinishPayload(call.arguments);
        std::optional<std::string> rejection;
        if (options.validate_finish) rejection = options.validate_finish(payload);
        ToolResult result{kFinish, !rejection, rejection ? *rejection : "accepted", 0,
                          std::nullopt, false};
        outcome.tool_results.push_back(result);
        context.transcript.push_back(llm::ChatTurn::Tool(call.id, RenderToolResult(result)));
        if (!rejection) {
          outcome.status = AgentOutcome::Status::kFinished;
          outcome.payload = payload;
          return outcome;
        }
        continue;
      }
      ToolResult result;
      try {
        result = DispatchTool(call, config.allowed_tools, registry, env);
      } catch (const Error &e) {
        result = {call.name, false, std::string(e.what()), 0, std::nullopt, false};
      }
      outcome.tool_results.push_back(result);
      context.transcript.push_back(llm::ChatTurn::Tool(call.id, RenderToolResult(result)));
    }

    if (context.ledger != nullptr) {
      const BudgetDecision decision =
          CheckBudget(*context.ledger, options.budget_usd, options.cycle_complete);
      if (decision == BudgetDecision::kHardStop) {
        outcome.status = AgentOutcome::Status::kBudgetStopped;
        return outcome;
      }
      if (decision == BudgetDecision::kFinishAfterCurrentCycle && !nudged_budget) {
        context.transcript.push_back(llm::ChatTurn::User(kBudgetNudge));
        nudged_budget = true;
      }
    }
  }
  outcome.status = AgentOutcome::Status::kTurnCapReached;
  return outcome;
}

}  // namespace drill::agent
