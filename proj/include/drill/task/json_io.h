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

#ifndef DRILL_TASK_JSON_IO_H_
#define DRILL_TASK_JSON_IO_H_

#include "drill/task/types.h"
#include "nlohmann/json.hpp"

namespace drill {

// Crash trace document:
//   {"crash_type": str, "frames": [{"index", "function", "file", "line"}],
//    "alloc_frames": [...]?, "free_frames": [...]?}
nlohmann::json CrashTraceToJson(const CrashTrace &trace, const CrashKind &kind);
// Throws Error(kMalformedSpec) when the document does not have that shape.
CrashTrace CrashTraceFromJson(const nlohmann::json &doc);

nlohmann::json CrashInfoToJson(const CrashInfo &info);
CrashInfo CrashInfoFromJson(const nlohmann::json &doc);

nlohmann::json VerdictToJson(const Verdict &verdict);
Verdict VerdictFromJson(const nlohmann::json &doc);

}  // namespace drill

#endif  // DRILL_TASK_JSON_IO_H_
