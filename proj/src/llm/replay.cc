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


#include "drill/llm/replay.h"

#include "drill/common/error.h"
#include "drill/common/text.h"
#include "fmt/format.h"

namespace drill::llm {

using nlohmann::json;

std::string DigestNormalizer::Apply(std::string text) const {
  for (const auto &[from, to] : replacements) {
    if (from.empty()) continue;
    size_t pos = 0;
    while ((pos = text.find(from, pos)) != std::string::npos) {
      text.replace(pos, from.size(), to);
      pos += to.size();
    }
  }
  return text;
}

json RequestDocument(const std::vector<ChatTurn> &history, const std::vector<ToolSchema> &tools,
                     const ModelParams &params) {
  json messages = json::array();
  for (const ChatTurn &turn : history) messages.push_back(ChatTurnToJson(turn));
  json schemas = json::array();
  for (const ToolSchema &tool : tools) schemas.push_back(ToolSchemaToJson(tool));
  return {{"messages", std::move(messages)},
          {"tools", std::move(schemas)},
          {"model", params.model_id},
          {"temperature", params.temperature},
          {"max_output_tokens", params.max_output_tokens}};
}

std::string RequestDigest(const std::vector<ChatTurn> &history,
                          const std::vector<ToolSchema> &tools, const ModelParams &params,
                          const DigestNormalizer &normalizer) {
  return Sha256Hex(normalizer.Apply(RequestDocument(history, tools, params).dump()));
}

std::vector<ReplayEntry> TranscriptFromJson(const json &doc) {
  if (!doc.is_array()) throw Error(ErrorCode::kMalformedSpec, "transcript must be a JSON array");
  std::vector<ReplayEntry> entries;
  for (size_t i = 0; i < doc.size(); ++i) {
    const json &item = doc[i];
    try {
      ReplayEntry entry;
      if (item.contains("request_digest") && !item["request_digest"].is_null()) {
        entry.request_digest = item["request_digest"].get<std::string>();
      }
      if (item.contains("request")) entry.request = item["request"];
      json response = item.at("response");
      if (!response.contains("role")) response["role"] = "assistant";
      entry.response.turn = ChatTurnFromJson(response);
      if (entry.response.turn.role != ChatTurn::Role::kAssistant) {
        throw Error(ErrorCode::kMalformedSpec, "scripted response must be an assistant turn");
      }
      if (item.contains("usage")) {
        entry.response.usage.input_tokens = item["usage"].value("input_tokens", int64_t{0});
        entry.response.usage.output_tokens = item["usage"].value("output_tokens", int64_t{0});
      }
      entries.push_back(std::move(entry));
    } catch (const json::exception &e) {
      throw Error(ErrorCode::kMalformedSpec, fmt::format("transcript entry {}: {}", i, e.what()));
    } catch (const Error &e) {
      throw Error(ErrorCode::kMalformedSpec, fmt::format("transcript entry {}: {}", i, e.detail()));
    }
  }
  return entries;
}

json TranscriptToJson(const std::vector<ReplayEntry> &entries) {
  json doc = json::array();
  for (const ReplayEntry &entry : entries) {
    json response = ChatTurnToJson(entry.response.turn);
    response.erase("role");
    json item = {{"response", std::move(response)},
                 {"usage",
                  {{"input_tokens", entry.response.usage.input_tokens},
                   {"output_tokens", entry.response.usage.output_tokens}}}};
    if (entry.request_digest) item["request_digest"] = *entry.request_digest;
    if (entry.request) item["request"] = *entry.request;
    doc.push_back(std::move(item));
  }
  return doc;
}

ReplayBackend::ReplayBackend(std::vector<ReplayEntry> entries, DigestNormalizer normalizer)
    : entries_(std::move(entries)), normalizer_(std::move(normalizer)) {}

size_t ReplayBackend::calls() const {
  std::lock_guard lock(mu_);
  return next_;
}

size_t ReplayBackend::remaining() const {
  std::lock_guard lock(mu_);
  return entries_.size() - next_;
}

ChatResponse ReplayBackend::DoChat(const std::vector<ChatTurn> &history,
                                   const std::vector<ToolSchema> &tools,
                                   const ModelParams &params) {
  std::lock_guard lock(mu_);
  if (next_ >= entries_.size()) {
    throw Error(ErrorCode::kReplayMismatch,
                fmt::format("transcript exhausted after {} call(s)", entries_.size()));
  }
  const ReplayEntry &entry = entries_[next_];
  if (entry.request_digest) {
    const std::string actual = RequestDigest(history, tools, params, normalizer_);
    if (actual != *entry.request_digest) {
      throw Error(ErrorCode::kReplayMismatch,
                  fmt::format("call {}: request digest {} differs from scripted {}", next_,
                              actual, *entry.request_digest));
    }
  }
  ++next_;
  return entry.response;
}

RecordingBackend::RecordingBackend(ChatBackend *inner, DigestNormalizer normalizer)
    : inner_(inner), normalizer_(std::move(normalizer)) {}

std::vector<ReplayEntry> RecordingBackend::entries() const {
  std::lock_guard lock(mu_);
  return entries_;
}

ChatResponse RecordingBackend::DoChat(const std::vector<ChatTurn> &history,
                                      const std::vector<ToolSchema> &tools,
                                      const ModelParams &params) {
  ChatResponse response = inner_->Chat(history, tools, params);
  ReplayEntry entry;
  entry.request_digest = RequestDigest(history, tools, params, normalizer_);
  entry.request = json::parse(normalizer_.Apply(RequestDocument(history, tools, params).dump()));
  entry.response = response;
  std::lock_guard lock(mu_);
  entries_.push_back(std::move(entry));
  return response;
}

}  // namespace drill::llm
