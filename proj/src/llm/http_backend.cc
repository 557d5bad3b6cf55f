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


#include "drill/llm/http_backend.h"

#include <algorithm>
#include <cstdlib>
#include <thread>

#include "drill/common/error.h"
#include "fmt/format.h"
#include "httplib.h"

namespace drill::llm {

using nlohmann::json;

namespace {

constexpr size_t kBodyExcerptChars = 400;

std::string Excerpt(const std::string &body) {
  return body.size() <= kBodyExcerptChars ? body : body.substr(0, kBodyExcerptChars) + "...";
}

// Splits "scheme://host[:port]/prefix" into the origin and the path prefix.
std::pair<std::string, std::string> SplitBaseUrl(const std::string &url) {
  const size_t scheme_end = url.find("://");
  const size_t path_start = url.find('/', scheme_end == std::string::npos ? 0 : scheme_end + 3);
  if (path_start == std::string::npos) return {url, ""};
  std::string prefix = url.substr(path_start);
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  return {url.substr(0, path_start), prefix};
}

}  // namespace

HttpBackendOptions HttpBackendOptions::FromEnvironment() {
  HttpBackendOptions options;
  const char *base = std::getenv("DRILL_LLM_BASE_URL");
  if (base == nullptr || *base == '\0') {
    throw Error(ErrorCode::kProviderError, "DRILL_LLM_BASE_URL is not set");
  }
  options.base_url = base;
  if (const char *key = std::getenv("DRILL_LLM_API_KEY")) options.api_key = key;
  return options;
}

json BuildChatRequest(const std::vector<ChatTurn> &history, const std::vector<ToolSchema> &tools,
                      const ModelParams &params) {
  json messages = json::array();
  for (const ChatTurn &turn : history) {
    json message = {{"role", RoleName(turn.role)}, {"content", turn.content}};
    if (!turn.tool_calls.empty()) {
      json calls = json::array();
      for (const ToolCall &call : turn.tool_calls) {
        calls.push_back({{"id", call.id},
                         {"type", "function"},
                         {"function", {{"name", call.name}, {"arguments", call.arguments.dump()}}}});
      }
      message["tool_calls"] = std::move(calls);
      if (turn.content.empty()) message["content"] = nullptr;
    }
    if (turn.tool_call_id) message["tool_call_id"] = *turn.tool_call_id;
    messages.push_back(std::move(message));
  }
  json request = {{"model", params.model_id},
                  {"messages", std::move(messages)},
                  {"temperature", params.temperature},
                  {"max_tokens", params.max_output_tokens}};
  if (!tools.empty()) {
    json specs = json::array();
    for (const ToolSchema &tool : tools) {
      specs.push_back({{"type", "function"}, {"function", ToolSchemaToJson(tool)}});
    }
    request["tools"] = std::move(specs);
  }
  return request;
}

ChatResponse ParseChatResponse(const json &body) {
  try {
    const json &message = body.at("choices").at(0).at("message");
    ChatResponse response;
    response.turn.role = ChatTurn::Role::kAssistant;
    if (message.contains("content") && message["content"].is_string()) {
      response.turn.content = message["content"].get<std::string>();
    }
    if (message.contains("tool_calls") && message["tool_calls"].is_array()) {
      for (const json &call : message["tool_calls"]) {
        ToolCall parsed;
        parsed.id = call.at("id").get<std::string>();
        parsed.name = call.at("function").at("name").get<std::string>();
        const json &args = call["function"].value("arguments", json("{}"));
        if (args.is_string()) {
          const std::string text = args.get<std::string>();
          parsed.arguments = json::parse(text, nullptr, false);
          if (parsed.arguments.is_discarded()) parsed.arguments = {{"_raw", text}};
        } else {
          parsed.arguments = args;
        }
        response.turn.tool_calls.push_back(std::move(parsed));
      }
    }
    if (body.contains("usage") && body["usage"].is_object()) {
      response.usage.input_tokens = body["usage"].value("prompt_tokens", int64_t{0});
      response.usage.output_tokens = body["usage"].value("completion_tokens", int64_t{0});
    }
    if (response.turn.content.empty() && response.turn.tool_calls.empty()) {
      throw Error(ErrorCode::kProviderError, "provider returned an empty assistant turn");
    }
    return response;
  } catch (const json::exception &e) {
    throw Error(ErrorCode::kProviderError,
                fmt::format("unexpected response shape: {}: {}", e.what(), Excerpt(body.dump())));
  }
}

bool IsTransientStatus(int status) {
  return status == 408 || status == 409 || status == 429 || (status >= 500 && status <= 599);
}

ChatResponse HttpBackend::DoChat(const std::vector<ChatTurn> &history,
                                 const std::vector<ToolSchema> &tools,
                                 const ModelParams &params) {
  const auto [origin, prefix] = SplitBaseUrl(options_.base_url);
  httplib::Client client(origin);
  client.set_connection_timeout(std::chrono::seconds(30));
  client.set_read_timeout(options_.request_timeout);
  client.set_write_timeout(std::chrono::seconds(60));
  httplib::Headers headers;
  if (!options_.api_key.empty()) {
    headers.emplace("Authorization", "Bearer " + options_.api_key);
  }
  const std::string body = BuildChatRequest(history, tools, params).dump();
  const std::string path = prefix + "/chat/completions";

  std::chrono::milliseconds backoff = options_.initial_backoff;
  std::string last_error;
  for (int attempt = 0; attempt <= options_.max_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(backoff);
      backoff = std::min(backoff * 2, options_.max_backoff);
    }
    httplib::Result result = client.Post(path, headers, body, "application/json");
    if (!result) {
      last_error = fmt::format("transport error: {}", httplib::to_string(result.error()));
      continue;
    }
    if (result->status == 200) {
      json parsed = json::parse(result->body, nullptr, false);
      if (parsed.is_discarded()) {
        throw Error(ErrorCode::kProviderError,
                    fmt::format("status 200: body is not JSON: {}", Excerpt(result->body)));
      }
      return ParseChatResponse(parsed);
    }
    last_error = fmt::format("status {}: {}", result->status, Excerpt(result->body));
    if (!IsTransientStatus(result->status)) break;
  }
  throw Error(ErrorCode::kProviderError, last_error);
}

}  // namespace drill::llm
