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


#ifndef DRILL_LLM_CHAT_H_
#define DRILL_LLM_CHAT_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "drill/llm/model_params.h"
#include "nlohmann/json.hpp"

namespace drill::llm {

struct ToolCall {
  std::string id;
  std::string name;
  nlohmann::json arguments = nlohmann::json::object();

  friend bool operator==(const ToolCall &, const ToolCall &) = default;
};

struct ChatTurn {
  enum class Role { kSystem, kUser, kAssistant, kTool };

  Role role = Role::kUser;
  std::string content;
  std::vector<ToolCall> tool_calls;         // Assistant turns only.
  std::optional<std::string> tool_call_id;  // Tool turns only.

  static ChatTurn System(std::string content);
  static ChatTurn User(std::string content);
  static ChatTurn Assistant(std::string content, std::vector<ToolCall> calls = {});
  static ChatTurn Tool(std::string call_id, std::string content);

  friend bool operator==(const ChatTurn &, const ChatTurn &) = default;
};

std::string_view RoleName(ChatTurn::Role role);
std::optional<ChatTurn::Role> RoleFromName(std::string_view name);

// Throws Error(kPrecondition) when a tool turn lacks its call id or an
// assistant turn is empty.
void ValidateTurn(const ChatTurn &turn);
// Throws Error(kPrecondition) for a temperature outside [0, 2], a
// nonpositive output cap or negative pricing.
void ValidateModelParams(const ModelParams &params);

nlohmann::json ChatTurnToJson(const ChatTurn &turn);
// Throws Error(kMalformedSpec) on a document of the wrong shape.
ChatTurn ChatTurnFromJson(const nlohmann::json &doc);

struct ToolSchema {
  std::string name;
  std::string description;
  nlohmann::json parameters;  // JSON Schema of the argument object.

  friend bool operator==(const ToolSchema &, const ToolSchema &) = default;
};

nlohmann::json ToolSchemaToJson(const ToolSchema &schema);

struct ChatResponse {
  ChatTurn turn;  // Always an assistant turn.
  TokenUsage usage;
};

// A chat-completions provider. Chat() checks the preconditions shared by
// every backend and forwards to DoChat().
class ChatBackend {
 public:
  virtual ~ChatBackend() = default;

  // Throws Error(kPrecondition) when `history` is empty, does not start with
  // a system turn, or holds an invalid turn.
  ChatResponse Chat(const std::vector<ChatTurn> &history, const std::vector<ToolSchema> &tools,
                    const ModelParams &params);

 protected:
  virtual ChatResponse DoChat(const std::vector<ChatTurn> &history,
                              const std::vector<ToolSchema> &tools, const ModelParams &params) = 0;
};

}  // namespace drill::llm

#endif  // DRILL_LLM_CHAT_H_
