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

#include "drill/common/text.h"

#include <openssl/evp.h>

#include <fstream>
#include <iterator>
#include <sstream>

#include "drill/common/error.h"
#include "fmt/format.h"

namespace drill {

std::string TruncateHeadTail(std::string_view text, size_t limit) {
  if (text.size() <= limit) return std::string(text);
  const size_t head = (limit + 1) / 2;
  const size_t tail = limit / 2;
  std::string out;
  out.reserve(limit + 48);
  out.append(text.substr(0, head));
  out.append(fmt::format("…[truncated {} chars]…", text.size() - limit));
  out.append(text.substr(text.size() - tail));
  return out;
}

std::string TruncateToLimit(std::string_view text, size_t limit) {
  if (text.size() <= limit) return std::string(text);
  if (limit <= kTailTruncationMarker.size()) {
    return std::string(kTailTruncationMarker.substr(0, limit));
  }
  std::string out(text.substr(0, limit - kTailTruncationMarker.size()));
  out.append(kTailTruncationMarker);
  return out;
}

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> SplitLines(std::string_view text) {
  std::vector<std::string> lines;
  size_t start = 0;
  while (start < text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.emplace_back(line);
    start = end + 1;
  }
  return lines;
}

bool StartsWith(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

bool EndsWith(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.substr(s.size() - suffix.size()) == suffix;
}

std::string Sha256Hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) out += fmt::format("{:02x}", digest[i]);
  return out;
}

std::string HexPreview(std::string_view data, size_t max_bytes) {
  std::string out;
  const size_t n = std::min(data.size(), max_bytes);
  for (size_t i = 0; i < n; ++i) {
    if (i) out += ' ';
    out += fmt::format("{:02x}", static_cast<unsigned char>(data[i]));
  }
  if (data.size() > n) out += fmt::format(" ... ({} bytes total)", data.size());
  return out;
}

std::string ReadFileOrThrow(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void WriteFileOrThrow(const std::filesystem::path &path, std::string_view data) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw Error(ErrorCode::kIo, "short write to " + path.string());
}

}  // namespace drill
