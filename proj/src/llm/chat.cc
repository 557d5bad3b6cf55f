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


#include "drill/llm/chat.h"

#include "drill/common/error.h"
#include "fmt/format.h"

namespace drill::llm {

using nlohmann::json;

ChatTurn ChatTurn::System(std::string content) {
  return {Role::kSystem, std::move(content), {}, std::nullopt};
}

ChatTurn ChatTurn::User(std::string content) {
  return {Role::kUser, std::move(content), {}, std::nullopt};
}

ChatTurn ChatTurn::Assistant(std::string content, std::vector<ToolCall> calls) {
  return {Role::kAssistant, std::move(content), std::move(calls), std::nullopt};
}

ChatTurn ChatTurn::Tool(std::string call_id, std::string content) {
  return {Role::kTool, std::move(content), {}, std::move(call_id)};
}

std::string_view RoleName(ChatTurn::Role role) {
  switch (role) {
    case ChatTurn::Role::kSystem: return "system";
    case ChatTurn::Role::kUser: return "user";
    case ChatTurn::Role::kAssistant: return "assistant";
    case ChatTurn::Role::kTool: return "tool";
  }
  return "user";
}

std::optional<ChatTurn::Role> RoleFromName(std::string_view name) {
  for (auto role : {ChatTurn::Role::kSystem, ChatTurn::Role::kUser, ChatTurn::Role::kAssistant,
                    ChatTurn::Role::kTool}) {
    if (RoleName(role) == name) return role;
  }
  return std::nullopt;
}

void ValidateTurn(const ChatTurn &turn) {
  if (turn.role == ChatTurn::Role::kTool && !turn.tool_call_id) {
    throw Error(ErrorCode::kPrecondition, "tool turn without tool_call_id");
  }
  if (turn.role == ChatTurn::Role::kAssistant && turn.content.empty() &&
      turn.tool_calls.empty()) {
    throw Error(ErrorCode::kPrecondition, "assistant turn with neither content nor tool calls");
  }
}

void ValidateModelParams(const ModelParams &params) {
  if (!(params.temperature >= 0.0 && params.temperature <= 2.0)) {
    throw Error(ErrorCode::kPrecondition,
                fmt::format("temperature {} outside [0, 2]", params.temperature));
  }
  if (params.max_output_tokens <= 0) {
    throw Error(ErrorCode::kPrecondition, "max_output_tokens must be positive");
  }
  if (params.pricing.usd_per_mtok_in < 0 || params.pricing.usd_per_mtok_out < 0) {
    throw Error(ErrorCode::kPrecondition, "pricing must be nonnegative");
  }
}

json ChatTurnToJson(const ChatTurn &turn) {
  json doc = {{"role", RoleName(turn.role)}, {"content", turn.content}};
  if (!turn.tool_calls.empty()) {
    json calls = json::array();
    for (const ToolCall &call : turn.tool_calls) {
      calls.push_back({{"id", call.id}, {"name", call.name}, {"arguments", call.arguments}});
    }
    doc["tool_calls"] = std::move(calls);
  }
  if (turn.tool_call_id) doc["tool_call_id"] = *turn.tool_call_id;
  return doc;
}

ChatTurn ChatTurnFromJson(const json &doc) {
  try {
    ChatTurn turn;
    auto role = RoleFromName(doc.at("role").get<std::string>());
    if (!role) throw Error(ErrorCode::kMalformedSpec, "unknown chat role");
    turn.role = *role;
    if (doc.contains("content") && !doc["content"].is_null()) {
      turn.content = doc["content"].get<std::string>();
    }
    if (doc.contains("tool_calls")) {
      for (const json &call : doc["tool_calls"]) {
        ToolCall parsed;
        parsed.id = call.at("id").get<std::string>();
        parsed.name = call.at("name").get<std::string>();
        parsed.arguments = call.value("arguments", json::object());
        turn.tool_calls.push_back(std::move(parsed));
      }
    }
    if (doc.contains("tool_call_id")) turn.tool_call_id = doc["tool_call_id"].get<std::string>();
    return turn;
  } catch (const json::exception &e) {
    throw Error(ErrorCode::kMalformedSpec, fmt::format("chat turn: {}", e.what()));
  }
}

json ToolSchemaToJson(const ToolSchema &schema) {
  return {{"name", schema.name},
          {"description", schema.description},
          {"parameters", schema.parameters}};
}

ChatResponse ChatBackend::Chat(const std::vector<ChatTurn> &history,
                               const std::vector<ToolSchema> &tools, const ModelParams &params) {
  if (history.empty()) throw Error(ErrorCode::kPrecondition, "empty chat history");
  if (history.front().role != ChatTurn::Role::kSystem) {
    throw Error(ErrorCode::kPrecondition, "chat history must start with a system turn");
  }
  for (const ChatTurn &turn : history) ValidateTurn(turn);
  ValidateModelParams(params);
  return DoChat(history, tools, params);
}

}  // namespace drill::llm
