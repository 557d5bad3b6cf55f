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


#ifndef DRILL_LLM_REPLAY_H_
#define DRILL_LLM_REPLAY_H_

// Scripted chat backends for deterministic runs.
//
// A transcript is a JSON array of entries:
//   {"request_digest": "<sha256>"?,          // omitted: not checked
//    "request": {...}?,                      // informational, ignored on replay
//    "response": {"content": str, "tool_calls": [{"id", "name", "arguments"}]?},
//    "usage": {"input_tokens": int, "output_tokens": int}}

#include <cstddef>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "drill/llm/chat.h"
#include "nlohmann/json.hpp"

namespace drill::llm {

// Literal substitutions applied to the serialized request before hashing,
// so requests that embed a run directory hash the same wherever it lives.
struct DigestNormalizer {
  std::vector<std::pair<std::string, std::string>> replacements;

  std::string Apply(std::string text) const;
};

// Canonical request document: sorted keys, history, tool schemas, model id,
// temperature and output cap.
nlohmann::json RequestDocument(const std::vector<ChatTurn> &history,
                               const std::vector<ToolSchema> &tools, const ModelParams &params);
std::string RequestDigest(const std::vector<ChatTurn> &history,
                          const std::vector<ToolSchema> &tools, const ModelParams &params,
                          const DigestNormalizer &normalizer = {});

struct ReplayEntry {
  std::optional<std::string> request_digest;
  std::optional<nlohmann::json> request;
  ChatResponse response;
};

// Throws Error(kMalformedSpec) on a document of the wrong shape.
std::vector<ReplayEntry> TranscriptFromJson(const nlohmann::json &doc);
nlohmann::json TranscriptToJson(const std::vector<ReplayEntry> &entries);

// Returns the scripted responses in order. Throws Error(kReplayMismatch) when
// a request digest differs from the scripted one or the script runs out.
class ReplayBackend : public ChatBackend {
 public:
  explicit ReplayBackend(std::vector<ReplayEntry> entries, DigestNormalizer normalizer = {});

  size_t calls() const;
  size_t remaining() const;

 protected:
  ChatResponse DoChat(const std::vector<ChatTurn> &history, const std::vector<ToolSchema> &tools,
                      const ModelParams &params) override;

 private:
  std::vector<ReplayEntry> entries_;
  DigestNormalizer normalizer_;
  mutable std::mutex mu_;
  size_t next_ = 0;
};

// Forwards to `inner` and keeps every exchange, digest and request
// included, so a live run can be replayed later. Nothing is written to disk;
// callers persist Transcript() themselves.
class RecordingBackend : public ChatBackend {
 public:
  explicit RecordingBackend(ChatBackend *inner, DigestNormalizer normalizer = {});

  std::vector<ReplayEntry> entries() const;
  nlohmann::json Transcript() const { return TranscriptToJson(entries()); }

 protected:
  ChatResponse DoChat(const std::vector<ChatTurn> &history, const std::vector<ToolSchema> &tools,
                      const ModelParams &params) override;

 private:
  ChatBackend *inner_;
  DigestNormalizer normalizer_;
  mutable std::mutex mu_;
  std::vector<ReplayEntry> entries_;
};

}  // namespace drill::llm

#endif  // DRILL_LLM_REPLAY_H_
