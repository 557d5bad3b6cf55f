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

#include "drill/task/json_io.h"

#include "drill/common/error.h"

namespace drill {
using nlohmann::json;

namespace {

json FramesToJson(const std::vector<StackFrame> &frames) {
  json out = json::array();
  for (const auto &f : frames) {
    out.push_back({{"index", f.index}, {"function", f.function}, {"file", f.file},
                   {"line", f.line}});
  }
  return out;
}

std::vector<StackFrame> FramesFromJson(const json &arr) {
  if (!arr.is_array()) throw Error(ErrorCode::kMalformedSpec, "frames must be an array");
  std::vector<StackFrame> frames;
  for (const auto &item : arr) {
    if (!item.is_object()) throw Error(ErrorCode::kMalformedSpec, "frame must be an object");
    StackFrame f;
    try {
      f.index = item.at("index").get<int>();
      f.function = item.at("function").get<std::string>();
      f.file = item.at("file").get<std::string>();
      f.line = item.at("line").get<int>();
    } catch (const json::exception &e) {
      throw Error(ErrorCode::kMalformedSpec, std::string("frame: ") + e.what());
    }
    if (item.contains("column") && item["column"].is_number_integer()) {
      f.column = item["column"].get<int>();
    }
    frames.push_back(std::move(f));
  }
  return frames;
}

}  // namespace

json CrashTraceToJson(const CrashTrace &trace, const CrashKind &kind) {
  json doc = {{"crash_type", kind.token()}, {"frames", FramesToJson(trace.frames)}};
  if (trace.alloc_frames) doc["alloc_frames"] = FramesToJson(*trace.alloc_frames);
  if (trace.free_frames) doc["free_frames"] = FramesToJson(*trace.free_frames);
  return doc;
}

CrashTrace CrashTraceFromJson(const json &doc) {
  if (!doc.is_object() || !doc.contains("frames")) {
    throw Error(ErrorCode::kMalformedSpec, "crash trace must be an object with frames");
  }
  CrashTrace trace;
  trace.frames = FramesFromJson(doc.at("frames"));
  if (doc.contains("alloc_frames") && !doc["alloc_frames"].is_null()) {
    trace.alloc_frames = FramesFromJson(doc["alloc_frames"]);
  }
  if (doc.contains("free_frames") && !doc["free_frames"].is_null()) {
    trace.free_frames = FramesFromJson(doc["free_frames"]);
  }
  return trace;
}

json CrashInfoToJson(const CrashInfo &info) {
  json doc = CrashTraceToJson(info.trace, info.kind);
  doc["summary_line"] = info.summary_line;
  doc["raw_excerpt"] = info.raw_excerpt;
  return doc;
}

CrashInfo CrashInfoFromJson(const json &doc) {
  CrashInfo info;
  info.trace = CrashTraceFromJson(doc);
  info.kind = CrashKind::FromToken(doc.value("crash_type", std::string()));
  info.summary_line = doc.value("summary_line", std::string());
  info.raw_excerpt = doc.value("raw_excerpt", std::string());
  return info;
}

json VerdictToJson(const Verdict &verdict) {
  json doc = {{"kind", VerdictName(verdict.kind)}, {"flaky", verdict.flaky}};
  if (verdict.observed) doc["observed"] = CrashInfoToJson(*verdict.observed);
  return doc;
}

Verdict VerdictFromJson(const json &doc) {
  Verdict v;
  const auto kind = VerdictKindFromName(doc.value("kind", std::string()));
  if (!kind) throw Error(ErrorCode::kMalformedSpec, "unknown verdict kind");
  v.kind = *kind;
  v.flaky = doc.value("flaky", false);
  if (doc.contains("observed")) v.observed = CrashInfoFromJson(doc["observed"]);
  return v;
}

}  // namespace drill
