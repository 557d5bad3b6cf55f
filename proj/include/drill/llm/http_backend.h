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


#ifndef DRILL_LLM_HTTP_BACKEND_H_
#define DRILL_LLM_HTTP_BACKEND_H_

#include <chrono>
#include <string>
#include <vector>

#include "drill/llm/chat.h"
#include "nlohmann/json.hpp"

namespace drill::llm {

struct HttpBackendOptions {
  std::string base_url;  // e.g. "https://api.example.com/v1"
  std::string api_key;
  int max_retries = 3;
  std::chrono::milliseconds initial_backoff{1000};
  std::chrono::milliseconds max_backoff{8000};
  std::chrono::seconds request_timeout{300};

  // Reads DRILL_LLM_BASE_URL and DRILL_LLM_API_KEY. Throws
  // Error(kProviderError) when the base URL is unset.
  static HttpBackendOptions FromEnvironment();
};

// Request body for a chat-completions endpoint with function calling.
nlohmann::json BuildChatRequest(const std::vector<ChatTurn> &history,
                                const std::vector<ToolSchema> &tools, const ModelParams &params);
// Reads choices[0].message and usage. Tool-call arguments that are not valid
// JSON are kept as {"_raw": "<text>"}. Throws Error(kProviderError).
ChatResponse ParseChatResponse(const nlohmann::json &body);

// True for statuses worth retrying: 408, 409, 429 and 5xx.
bool IsTransientStatus(int status);

// Posts to <base_url>/chat/completions. Connection failures and transient
// statuses are retried max_retries times with doubling, capped backoff.
class HttpBackend : public ChatBackend {
 public:
  explicit HttpBackend(HttpBackendOptions options) : options_(std::move(options)) {}

 protected:
  ChatResponse DoChat(const std::vector<ChatTurn> &history, const std::vector<ToolSchema> &tools,
                      const ModelParams &params) override;

 private:
  HttpBackendOptions options_;
};

}  // namespace drill::llm

#endif  // DRILL_LLM_HTTP_BACKEND_H_
