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

#include "drill/sanitizer/report_parser.h"

#include <cstdlib>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include "drill/common/error.h"
#include "drill/common/text.h"

namespace drill::sanitizer {
namespace {

// "    #3 0x55d6 in parse_record /src/heap_of.c:13:11"
const std::regex &FrameRegex() {
  static const std::regex re(
      R"(^\s*#(\d+)\s+0x[0-9a-fA-F]+\s+in\s+(.+?)\s+(\S+?):(\d+)(?::(\d+))?\s*$)");
  return re;
}

// Any "#N 0x..." line, symbolized or not.
const std::regex &AnyFrameRegex() {
  static const std::regex re(R"(^\s*#\d+\s+0x[0-9a-fA-F]+)");
  return re;
}

const std::regex &ErrorLineRegex() {
  static const std::regex re(R"(ERROR:\s*(\w+Sanitizer):\s*(.*)$)");
  return re;
}

// "file.c:3:47: runtime error: shift exponent ..."
const std::regex &RuntimeErrorRegex() {
  static const std::regex re(R"(^(\S+?):(\d+):(?:(\d+):)?\s*runtime error:\s*(.*)$)");
  return re;
}

bool IsRuntimeFrame(const std::string &function, const std::string &file) {
  static constexpr std::string_view kPrefixes[] = {
      "__interceptor_", "__asan_", "__asan::", "__sanitizer", "__lsan", "__ubsan",
      "__libc_start", "__GI_", "__wrap_"};
  for (auto p : kPrefixes) {
    if (StartsWith(function, p)) return true;
  }
  if (function == "_start") return true;
  // glibc startup frames resolve to sysdeps sources.
  return StartsWith(file, "csu/") || file.find("/sysdeps/") != std::string::npos ||
         StartsWith(file, "../sysdeps/");
}

struct ParsedBlock {
  std::vector<StackFrame> frames;
  bool had_frames = false;
};

// Consumes consecutive "#N" lines starting at `i`.
ParsedBlock ParseBlock(const std::vector<std::string> &lines, size_t &i) {
  ParsedBlock block;
  // Skip blank lines and headers until the first frame line.
  while (i < lines.size() && !std::regex_search(lines[i], AnyFrameRegex())) {
    const std::string_view line = Trim(lines[i]);
    if (StartsWith(line, "SUMMARY:") || line.find("by thread") != std::string_view::npos) {
      return block;
    }
    ++i;
  }
  for (; i < lines.size() && std::regex_search(lines[i], AnyFrameRegex()); ++i) {
    block.had_frames = true;
    std::smatch m;
    if (!std::regex_match(lines[i], m, FrameRegex())) continue;
    StackFrame frame;
    frame.function = m[2].str();
    frame.file = m[3].str();
    frame.line = std::atoi(m[4].str().c_str());
    if (m[5].matched) frame.column = std::atoi(m[5].str().c_str());
    if (frame.line < 1 || frame.file.empty() || frame.file == "??") continue;
    if (IsRuntimeFrame(frame.function, frame.file)) continue;
    block.frames.push_back(std::move(frame));
  }
  for (size_t n = 0; n < block.frames.size(); ++n) block.frames[n].index = static_cast<int>(n);
  return block;
}

// Sanitizer description -> kind. "SEGV on unknown address 0x..." is a null
// dereference only when the faulting address lies in the zero page.
CrashKind KindFromDescription(std::string_view sanitizer, std::string_view desc) {
  if (sanitizer == "LeakSanitizer" || StartsWith(desc, "detected memory leaks")) {
    return CrashKind(CrashKind::Tag::kMemoryLeak);
  }
  if (StartsWith(desc, "SEGV on unknown address")) {
    static const std::regex addr_re(R"(address\s+(0x[0-9a-fA-F]+))");
    std::cmatch m;
    const std::string d(desc);
    if (std::regex_search(d.c_str(), m, addr_re)) {
      const unsigned long long addr = std::strtoull(m[1].str().c_str(), nullptr, 16);
      if (addr < 4096) return CrashKind(CrashKind::Tag::kNullDereference);
    }
    return CrashKind::Other("SEGV");
  }
  // Token ends at the first " on ", " at ", " (" or ":".
  size_t cut = desc.size();
  for (std::string_view stop : {" on ", " at ", " (", ":", " for "}) {
    const auto p = desc.find(stop);
    if (p != std::string_view::npos) cut = std::min(cut, p);
  }
  const std::string token(Trim(desc.substr(0, cut)));
  return CrashKind::FromToken(token);
}

}  // namespace

bool LooksLikeSanitizerReport(std::string_view text) {
  for (const auto &line : SplitLines(text)) {
    if (std::regex_search(line, ErrorLineRegex()) ||
        std::regex_search(line, RuntimeErrorRegex())) {
      return true;
    }
  }
  return false;
}

CrashInfo ParseSanitizerReport(std::string_view text) {
  if (Trim(text).empty()) throw Error(ErrorCode::kNoReport, "empty report");
  const auto lines = SplitLines(text);

  CrashInfo info;
  size_t i = 0;
  bool found = false;
  std::optional<StackFrame> runtime_error_site;
  for (; i < lines.size(); ++i) {
    std::smatch m;
    if (std::regex_search(lines[i], m, ErrorLineRegex())) {
      info.kind = KindFromDescription(m[1].str(), Trim(m[2].str()));
      found = true;
      break;
    }
    if (std::regex_search(lines[i], m, RuntimeErrorRegex())) {
      info.kind = CrashKind::Other("undefined-behavior");
      StackFrame site;
      site.function = "<unknown>";
      site.file = m[1].str();
      site.line = std::atoi(m[2].str().c_str());
      if (m[3].matched) site.column = std::atoi(m[3].str().c_str());
      runtime_error_site = site;
      found = true;
      break;
    }
  }
  if (!found) throw Error(ErrorCode::kNoReport, "no sanitizer ERROR line");
  const size_t error_line = i;

  // Excerpt: error line through the first SUMMARY line.
  std::string excerpt;
  for (size_t k = error_line; k < lines.size(); ++k) {
    excerpt += lines[k];
    excerpt += '\n';
    if (StartsWith(Trim(lines[k]), "SUMMARY:")) {
      info.summary_line = std::string(Trim(lines[k]));
      break;
    }
  }
  info.raw_excerpt = TruncateToLimit(excerpt, kMaxExcerptChars);

  ++i;
  ParsedBlock crash = ParseBlock(lines, i);
  if (crash.frames.empty()) {
    if (crash.had_frames) {
      throw Error(ErrorCode::kNoSourceFrames, "backtrace contains only raw addresses");
    }
    if (!runtime_error_site) {
      throw Error(ErrorCode::kNoSourceFrames, "report has no backtrace");
    }
    crash.frames.push_back(*runtime_error_site);
  }
  info.trace.frames = std::move(crash.frames);

  const bool heap = info.kind.is_heap_related();
  if (info.kind.tag() == CrashKind::Tag::kMemoryLeak) {
    // The leak stack is the allocation stack.
    info.trace.alloc_frames = info.trace.frames;
  }
  if (heap) {
    // Header lines are checked in order; stop at the summary.
    for (; i < lines.size(); ++i) {
      const std::string_view line = Trim(lines[i]);
      if (StartsWith(line, "SUMMARY:")) break;
      const bool freed = line.find("freed by thread") != std::string_view::npos;
      const bool allocated = line.find("allocated by thread") != std::string_view::npos;
      if (!freed && !allocated) continue;
      ++i;
      ParsedBlock block = ParseBlock(lines, i);
      --i;
      if (freed && !info.trace.free_frames) info.trace.free_frames = std::move(block.frames);
      else if (allocated && !info.trace.alloc_frames) {
        info.trace.alloc_frames = std::move(block.frames);
      }
    }
  }
  return info;
}

}  // namespace drill::sanitizer
