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

#include "drill/common/error.h"

namespace drill {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedSpec: return "MalformedSpec";
    case ErrorCode::kInvalidSpec: return "InvalidSpec";
    case ErrorCode::kNoReport: return "NoReport";
    case ErrorCode::kNoSourceFrames: return "NoSourceFrames";
    case ErrorCode::kRefinerFailure: return "RefinerFailure";
    case ErrorCode::kToolchainMissing: return "ToolchainMissing";
    case ErrorCode::kMalformedProfile: return "MalformedProfile";
    case ErrorCode::kUnknownFunction: return "UnknownFunction";
    case ErrorCode::kUnknownFile: return "UnknownFile";
    case ErrorCode::kRangeOutOfBounds: return "RangeOutOfBounds";
    case ErrorCode::kPlanNotFound: return "PlanNotFound";
    case ErrorCode::kBuildFailed: return "BuildFailed";
    case ErrorCode::kFileUnreadable: return "FileUnreadable";
    case ErrorCode::kBinaryNotFound: return "BinaryNotFound";
    case ErrorCode::kProviderError: return "ProviderError";
    case ErrorCode::kPrecondition: return "Precondition";
    case ErrorCode::kTurnCapReached: return "TurnCapReached";
    case ErrorCode::kUnknownTool: return "UnknownTool";
    case ErrorCode::kToolDenied: return "ToolDenied";
    case ErrorCode::kPathEscape: return "PathEscape";
    case ErrorCode::kAnalysisFailed: return "AnalysisFailed";
    case ErrorCode::kEmptyBatch: return "EmptyBatch";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kReplayMismatch: return "ReplayMismatch";
    case ErrorCode::kIo: return "Io";
    case ErrorCode::kVerdictMismatch: return "VerdictMismatch";
    case ErrorCode::kTaskFailed: return "TaskFailed";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string &message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code),
      detail_(message) {}

}  // namespace drill
