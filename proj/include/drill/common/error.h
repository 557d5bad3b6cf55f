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

#ifndef DRILL_COMMON_ERROR_H_
#define DRILL_COMMON_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace drill {

// Every failure surfaced by the library carries one of these codes. The CLI
// prints them verbatim, so the names are part of the external interface.
enum class ErrorCode {
  kMalformedSpec,
  kInvalidSpec,
  kNoReport,
  kNoSourceFrames,
  kRefinerFailure,
  kToolchainMissing,
  kMalformedProfile,
  kUnknownFunction,
  kUnknownFile,
  kRangeOutOfBounds,
  kPlanNotFound,
  kBuildFailed,
  kFileUnreadable,
  kBinaryNotFound,
  kProviderError,
  kPrecondition,
  kTurnCapReached,
  kUnknownTool,
  kToolDenied,
  kPathEscape,
  kAnalysisFailed,
  kEmptyBatch,
  kEmptyInput,
  kReplayMismatch,
  kIo,
  kVerdictMismatch,
  kTaskFailed,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &message);

  ErrorCode code() const { return code_; }
  // Message without the code prefix.
  const std::string &detail() const { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace drill

#endif  // DRILL_COMMON_ERROR_H_
