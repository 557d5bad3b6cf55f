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

#ifndef DRILL_COMMON_TEXT_H_
#define DRILL_COMMON_TEXT_H_

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace drill {

// Keeps the first ceil(limit/2) and the last floor(limit/2) bytes of `text`
// and joins them with a "…[truncated N chars]…" marker. Text that already
// fits is returned unchanged.
std::string TruncateHeadTail(std::string_view text, size_t limit);

// Cuts `text` so that the result, marker included, is at most `limit` bytes.
inline constexpr std::string_view kTailTruncationMarker = "…[truncated]";
std::string TruncateToLimit(std::string_view text, size_t limit);

std::string_view Trim(std::string_view s);
std::vector<std::string> SplitLines(std::string_view text);
bool StartsWith(std::string_view s, std::string_view prefix);
bool EndsWith(std::string_view s, std::string_view suffix);

// Lowercase hex SHA-256 of `data`.
std::string Sha256Hex(std::string_view data);

// "41 42 43 ..." rendering of at most `max_bytes` leading bytes.
std::string HexPreview(std::string_view data, size_t max_bytes);

std::string ReadFileOrThrow(const std::filesystem::path &path);
// Creates parent directories as needed.
void WriteFileOrThrow(const std::filesystem::path &path, std::string_view data);

}  // namespace drill

#endif  // DRILL_COMMON_TEXT_H_
