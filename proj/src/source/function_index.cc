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

#include "drill/source/function_index.h"

#include <algorithm>
#include <cctype>
#include <regex>
#include <system_error>

#include "drill/common/text.h"

namespace drill::source {
namespace fs = std::filesystem;

namespace {

bool IsIdentChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

int LineOf(std::string_view text, size_t offset) {
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + offset, '\n'));
}

// Offset of the bracket matching text[open], or npos.
size_t MatchBracket(std::string_view text, size_t open, char open_ch, char close_ch) {
  int depth = 0;
  for (size_t i = open; i < text.size(); ++i) {
    if (text[i] == open_ch) ++depth;
    else if (text[i] == close_ch && --depth == 0) return i;
  }
  return std::string_view::npos;
}

std::regex CallPattern(std::string_view name) {
  std::string escaped;
  for (char c : name) {
    if (!IsIdentChar(c)) escaped += '\\';
    escaped += c;
  }
  return std::regex("(^|[^A-Za-z0-9_])" + escaped + "\\s*\\(");
}

}  // namespace

std::string BareFunctionName(std::string_view decorated) {
  std::string_view s = Trim(decorated);
  // Drop the parameter list, tracking nesting so "operator()" style names and
  // templates inside the parameters do not confuse the cut.
  int angle = 0;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '<') ++angle;
    else if (s[i] == '>') --angle;
    else if (s[i] == '(' && angle == 0 && i > 0) {
      s = s.substr(0, i);
      break;
    }
  }
  // Drop template arguments at the end: "foo<int>" -> "foo".
  while (!s.empty() && s.back() == '>') {
    int depth = 0;
    size_t i = s.size();
    while (i-- > 0) {
      if (s[i] == '>') ++depth;
      else if (s[i] == '<' && --depth == 0) break;
    }
    if (i == std::string_view::npos || i >= s.size()) break;
    s = s.substr(0, i);
  }
  const auto colon = s.rfind("::");
  if (colon != std::string_view::npos) s = s.substr(colon + 2);
  return std::string(Trim(s));
}

std::string StripCommentsAndStrings(std::string_view src) {
  std::string out(src);
  enum class State { kCode, kLineComment, kBlockComment, kString, kChar };
  State state = State::kCode;
  for (size_t i = 0; i < src.size(); ++i) {
    const char c = src[i];
    const char next = i + 1 < src.size() ? src[i + 1] : '\0';
    switch (state) {
      case State::kCode:
        if (c == '/' && next == '/') {
          state = State::kLineComment;
          out[i] = ' ';
        } else if (c == '/' && next == '*') {
          state = State::kBlockComment;
          out[i] = out[i + 1] = ' ';
          ++i;
        } else if (c == '"') {
          state = State::kString;
        } else if (c == '\'') {
          state = State::kChar;
        }
        break;
      case State::kLineComment:
        if (c == '\n') state = State::kCode;
        else out[i] = ' ';
        break;
      case State::kBlockComment:
        if (c == '*' && next == '/') {
          out[i] = out[i + 1] = ' ';
          ++i;
          state = State::kCode;
        } else if (c != '\n') {
          out[i] = ' ';
        }
        break;
      case State::kString:
      case State::kChar: {
        const char quote = state == State::kString ? '"' : '\'';
        if (c == '\\' && next != '\n') {
          out[i] = ' ';
          if (i + 1 < src.size()) out[i + 1] = ' ';
          ++i;
        } else if (c == quote) {
          state = State::kCode;
        } else if (c != '\n') {
          out[i] = ' ';
        }
        break;
      }
    }
  }
  return out;
}

std::vector<FunctionDefinition> FindFunctionDefinitions(std::string_view source,
                                                        std::string_view name,
                                                        const fs::path &file) {
  std::vector<FunctionDefinition> defs;
  const std::string bare = BareFunctionName(name);
  if (bare.empty()) return defs;
  const std::string clean = StripCommentsAndStrings(source);
  const std::string_view text(clean);

  size_t pos = 0;
  while ((pos = text.find(bare, pos)) != std::string_view::npos) {
    const size_t name_pos = pos;
    pos += bare.size();
    if (name_pos > 0 && IsIdentChar(text[name_pos - 1])) continue;
    if (pos < text.size() && IsIdentChar(text[pos])) continue;
    size_t paren = pos;
    while (paren < text.size() && std::isspace(static_cast<unsigned char>(text[paren]))) ++paren;
    if (paren >= text.size() || text[paren] != '(') continue;

    // Member access or a call expression rather than a declarator.
    size_t before = name_pos;
    while (before > 0 && std::isspace(static_cast<unsigned char>(text[before - 1]))) --before;
    if (before > 0) {
      const char prev = text[before - 1];
      if (prev == '.' || prev == '(' || prev == ',' || prev == '=' || prev == '!' ||
          prev == '+' || prev == '-' || prev == '?' || prev == '[' || prev == '|' ||
          prev == '/' || prev == '%' || prev == '^' || prev == '<') {
        continue;
      }
      if (prev == '>' && before >= 2 && text[before - 2] == '-') continue;
      if (IsIdentChar(prev)) {
        size_t word_start = before - 1;
        while (word_start > 0 && IsIdentChar(text[word_start - 1])) --word_start;
        const auto word = text.substr(word_start, before - word_start);
        if (word == "return" || word == "else" || word == "case" || word == "sizeof" ||
            word == "do") {
          continue;
        }
      }
    }

    const size_t close = MatchBracket(text, paren, '(', ')');
    if (close == std::string_view::npos) continue;
    // Skip trailing qualifiers up to the body or a terminator.
    size_t body = close + 1;
    while (body < text.size() && text[body] != '{' && text[body] != ';' &&
           text[body] != '}' && text[body] != '(' && text[body] != ')' && text[body] != '=') {
      ++body;
    }
    if (body >= text.size() || text[body] != '{') continue;
    const size_t end = MatchBracket(text, body, '{', '}');
    if (end == std::string_view::npos) continue;

    FunctionDefinition def;
    def.name = bare;
    def.file = file;
    def.signature_line = LineOf(text, name_pos);
    def.body_start_line = LineOf(text, body);
    def.end_line = LineOf(text, end);
    defs.push_back(std::move(def));
    pos = end;
  }
  return defs;
}

std::vector<int> FindCallLines(std::string_view source, std::string_view callee,
                               int first_line, int last_line) {
  std::vector<int> lines;
  const std::string bare = BareFunctionName(callee);
  if (bare.empty()) return lines;
  const std::regex pattern = CallPattern(bare);
  const auto all = SplitLines(StripCommentsAndStrings(source));
  for (int line = std::max(1, first_line);
       line <= std::min<int>(last_line, static_cast<int>(all.size())); ++line) {
    if (std::regex_search(all[line - 1], pattern)) lines.push_back(line);
  }
  return lines;
}

bool IsSourceFile(const fs::path &path) {
  static constexpr std::string_view kExtensions[] = {".c", ".cc", ".cpp", ".cxx", ".c++",
                                                     ".h", ".hh", ".hpp", ".hxx", ".inc"};
  const auto ext = path.extension().string();
  return std::any_of(std::begin(kExtensions), std::end(kExtensions),
                     [&](std::string_view e) { return ext == e; });
}

std::vector<FunctionDefinition> SearchFunctionInTree(const fs::path &root,
                                                     std::string_view name) {
  std::vector<fs::path> files;
  std::error_code ec;
  for (auto it = fs::recursive_directory_iterator(root, ec);
       !ec && it != fs::recursive_directory_iterator(); it.increment(ec)) {
    if (it->is_regular_file(ec) && IsSourceFile(it->path())) files.push_back(it->path());
  }
  std::sort(files.begin(), files.end());
  std::vector<FunctionDefinition> defs;
  for (const auto &file : files) {
    std::string text;
    try {
      text = ReadFileOrThrow(file);
    } catch (...) {
      continue;
    }
    if (text.find(BareFunctionName(name)) == std::string::npos) continue;
    auto found = FindFunctionDefinitions(text, name, file);
    defs.insert(defs.end(), found.begin(), found.end());
  }
  return defs;
}

fs::path ResolveInRepo(const fs::path &repo, const std::string &reported_path) {
  std::error_code ec;
  const fs::path reported(reported_path);
  if (reported.is_absolute() && fs::is_regular_file(reported, ec) &&
      StartsWith(fs::weakly_canonical(reported, ec).string(),
                 fs::weakly_canonical(repo, ec).string())) {
    return reported;
  }
  std::vector<fs::path> parts;
  for (const auto &p : reported.relative_path()) parts.push_back(p);
  for (size_t skip = 0; skip < parts.size(); ++skip) {
    fs::path candidate = repo;
    for (size_t i = skip; i < parts.size(); ++i) candidate /= parts[i];
    if (fs::is_regular_file(candidate, ec)) return candidate;
  }
  return {};
}

}  // namespace drill::source
