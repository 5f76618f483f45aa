// Copyright 2026 The pdflow Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pdflow/lexer.h"

#include <array>
#include <string>

#include "absl/strings/ascii.h"

namespace pdflow {
namespace {

// Longest first so a greedy scan picks e.g. `>>>=` over `>>`.
constexpr std::array<std::string_view, 35> kOperators = {
    ">>>=", "...",  "===", "!==", "**=", "<<=", ">>=", ">>>", "&&=",
    "||=",  "?\?=", "=>",  "->",  "==",  "!=",  "<=",  ">=",  "&&",
    "||",   "??",   "?.",  "++",  "--",  "+=",  "-=",  "*=",  "/=",
    "%=",   "&=",   "|=",  "^=",  "**",  "<<",  ">>",  "::",
};

// Keywords after which a `/` starts a regular expression.
constexpr std::array<std::string_view, 14> kRegexPrefixWords = {
    "return", "typeof", "instanceof", "in", "of",   "new",   "delete",
    "void",   "throw",  "case",       "do", "else", "yield", "await",
};

// Template-literal nesting beyond this depth is scanned flat.
constexpr int kMaxTemplateDepth = 64;

bool IsIdentStart(unsigned char c) {
  return absl::ascii_isalpha(c) || c == '_' || c == '$' || c >= 0x80;
}

bool IsIdentPart(unsigned char c) {
  return IsIdentStart(c) || absl::ascii_isdigit(c);
}

class Lexer {
 public:
  Lexer(std::string_view text, Language language)
      : text_(text), js_(IsJavaScriptLike(language)) {}

  std::vector<Token> Run() {
    std::size_t i = 0;
    if (text_.starts_with("\xEF\xBB\xBF")) i = 3;
    if (js_ && text_.substr(i, 2) == "#!") i = SkipLine(i);
    while (i < text_.size()) {
      const unsigned char c = text_[i];
      if (c == '\n') {
        newline_ = true;
        ++i;
      } else if (absl::ascii_isspace(c)) {
        ++i;
      } else if (c == '/' && At(i + 1) == '/') {
        i = SkipLine(i);
      } else if (c == '/' && At(i + 1) == '*') {
        i = SkipBlockComment(i);
      } else if (c == '"' || c == '\'') {
        i = ScanQuoted(i);
      } else if (c == '`' && js_) {
        Emit(TokenKind::kString, i, SkipTemplate(i, 0));
        i = tokens_.back().end;
      } else if (c == '/' && js_ && RegexAllowed()) {
        i = ScanRegexOrSlash(i);
      } else if (absl::ascii_isdigit(c) ||
                 (c == '.' && absl::ascii_isdigit(At(i + 1)))) {
        i = ScanNumber(i);
      } else if (IsIdentStart(c)) {
        std::size_t j = i + 1;
        while (j < text_.size() && IsIdentPart(text_[j])) ++j;
        Emit(TokenKind::kIdentifier, i, j);
        i = j;
      } else {
        i = ScanPunct(i);
      }
    }
    return std::move(tokens_);
  }

 private:
  unsigned char At(std::size_t i) const {
    return i < text_.size() ? text_[i] : '\0';
  }

  void Emit(TokenKind kind, std::size_t begin, std::size_t end) {
    Token t;
    t.kind = kind;
    t.begin = static_cast<std::uint32_t>(begin);
    t.end = static_cast<std::uint32_t>(end);
    t.text = text_.substr(begin, end - begin);
    t.newline_before = newline_;
    newline_ = false;
    tokens_.push_back(t);
  }

  std::size_t SkipLine(std::size_t i) const {
    const std::size_t nl = text_.find('\n', i);
    return nl == std::string_view::npos ? text_.size() : nl;
  }

  std::size_t SkipBlockComment(std::size_t i) {
    const std::size_t close = text_.find("*/", i + 2);
    const std::size_t end =
        close == std::string_view::npos ? text_.size() : close + 2;
    if (text_.substr(i, end - i).find('\n') != std::string_view::npos) {
      newline_ = true;
    }
    return end;
  }

  std::size_t ScanQuoted(std::size_t i) {
    const char quote = text_[i];
    if (!js_ && quote == '"' && text_.substr(i, 3) == "\"\"\"") {
      // Java text block.
      std::size_t j = i + 3;
      while (j < text_.size()) {
        if (text_[j] == '\\') {
          j += 2;
        } else if (text_.substr(j, 3) == "\"\"\"") {
          j += 3;
          break;
        } else {
          ++j;
        }
      }
      j = std::min(j, text_.size());
      Emit(TokenKind::kString, i, j);
      return j;
    }
    std::size_t j = i + 1;
    while (j < text_.size()) {
      const char c = text_[j];
      if (c == '\\') {
        j += 2;
        continue;
      }
      if (c == '\n') break;  // unterminated: stop at the line end
      ++j;
      if (c == quote) break;
    }
    j = std::min(j, text_.size());
    Emit(TokenKind::kString, i, j);
    return j;
  }

  // Returns the end of a template literal starting at `i` (a backtick).
  std::size_t SkipTemplate(std::size_t i, int depth) {
    std::size_t j = i + 1;
    while (j < text_.size()) {
      const char c = text_[j];
      if (c == '\\') {
        j += 2;
      } else if (c == '`') {
        return j + 1;
      } else if (c == '$' && At(j + 1) == '{') {
        j = SkipTemplateExpression(j + 2, depth);
      } else {
        ++j;
      }
    }
    return text_.size();
  }

  // Skips a `${ ... }` body, honouring nested strings and templates.
  std::size_t SkipTemplateExpression(std::size_t j, int depth) {
    int braces = 1;
    while (j < text_.size()) {
      const char c = text_[j];
      if (c == '{') {
        ++braces;
        ++j;
      } else if (c == '}') {
        ++j;
        if (--braces == 0) return j;
      } else if (c == '`' && depth < kMaxTemplateDepth) {
        j = SkipTemplate(j, depth + 1);
      } else if (c == '"' || c == '\'') {
        std::size_t k = j + 1;
        while (k < text_.size() && text_[k] != c && text_[k] != '\n') {
          k += text_[k] == '\\' ? 2 : 1;
        }
        j = std::min(k + 1, text_.size());
      } else if (c == '/' && At(j + 1) == '/') {
        j = SkipLine(j);
      } else if (c == '/' && At(j + 1) == '*') {
        const std::size_t close = text_.find("*/", j + 2);
        j = close == std::string_view::npos ? text_.size() : close + 2;
      } else {
        ++j;
      }
    }
    return text_.size();
  }

  bool RegexAllowed() const {
    if (tokens_.empty()) return true;
    const Token& prev = tokens_.back();
    switch (prev.kind) {
      case TokenKind::kNumber:
      case TokenKind::kString:
      case TokenKind::kRegex:
        return false;
      case TokenKind::kIdentifier:
        for (auto w : kRegexPrefixWords) {
          if (prev.text == w) return true;
        }
        return false;
      case TokenKind::kPunct:
        return !(prev.text == ")" || prev.text == "]" || prev.text == "}" ||
                 prev.text == "++" || prev.text == "--");
    }
    return false;
  }

  std::size_t ScanRegexOrSlash(std::size_t i) {
    std::size_t j = i + 1;
    bool in_class = false;
    while (j < text_.size()) {
      const char c = text_[j];
      if (c == '\n') break;
      if (c == '\\') {
        j += 2;
        continue;
      }
      if (c == '[') in_class = true;
      if (c == ']') in_class = false;
      if (c == '/' && !in_class) {
        ++j;
        while (j < text_.size() && absl::ascii_isalpha(text_[j])) ++j;
        Emit(TokenKind::kRegex, i, j);
        return j;
      }
      ++j;
    }
    return ScanPunct(i);
  }

  std::size_t ScanNumber(std::size_t i) {
    std::size_t j = i;
    while (j < text_.size()) {
      const unsigned char c = text_[j];
      if (absl::ascii_isalnum(c) || c == '_' || c == '.') {
        if (c == '.' && !absl::ascii_isdigit(At(j + 1)) &&
            !absl::ascii_isalpha(At(j + 1))) {
          break;
        }
        const bool exponent = (c == 'e' || c == 'E' || c == 'p' || c == 'P');
        ++j;
        if (exponent && (At(j) == '+' || At(j) == '-')) ++j;
      } else {
        break;
      }
    }
    Emit(TokenKind::kNumber, i, j);
    return j;
  }

  std::size_t ScanPunct(std::size_t i) {
    for (auto op : kOperators) {
      if (text_.substr(i, op.size()) == op) {
        // `a ?.5 : b` is a conditional, not optional chaining.
        if (op == "?." && absl::ascii_isdigit(At(i + 2))) continue;
        Emit(TokenKind::kPunct, i, i + op.size());
        return i + op.size();
      }
    }
    Emit(TokenKind::kPunct, i, i + 1);
    return i + 1;
  }

  std::string_view text_;
  bool js_;
  bool newline_ = false;
  std::vector<Token> tokens_;
};

}  // namespace

std::optional<Language> LanguageFromPath(std::string_view path) {
  const std::size_t dot = path.rfind('.');
  const std::size_t slash = path.find_last_of("/\\");
  if (dot == std::string_view::npos ||
      (slash != std::string_view::npos && dot < slash)) {
    return std::nullopt;
  }
  const std::string ext = absl::AsciiStrToLower(std::string(path.substr(dot)));
  if (ext == ".java") return Language::kJava;
  if (ext == ".js" || ext == ".jsx" || ext == ".mjs" || ext == ".cjs") {
    return Language::kJavaScript;
  }
  if (ext == ".ts" || ext == ".tsx" || ext == ".mts" || ext == ".cts") {
    return Language::kTypeScript;
  }
  return std::nullopt;
}

std::string_view LanguageName(Language language) {
  switch (language) {
    case Language::kJava:
      return "java";
    case Language::kJavaScript:
      return "javascript";
    case Language::kTypeScript:
      return "typescript";
  }
  return "unknown";
}

bool IsJavaScriptLike(Language language) { return language != Language::kJava; }

bool IsValidUtf8(std::string_view text) {
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    const unsigned char c = text[i];
    if (c < 0x80) {
      ++i;
      continue;
    }
    int len;
    std::uint32_t cp;
    if (c >= 0xC2 && c <= 0xDF) {
      len = 2;
      cp = c & 0x1F;
    } else if (c >= 0xE0 && c <= 0xEF) {
      len = 3;
      cp = c & 0x0F;
    } else if (c >= 0xF0 && c <= 0xF4) {
      len = 4;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + len > n) return false;
    for (int k = 1; k < len; ++k) {
      const unsigned char cc = text[i + k];
      if ((cc & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    if ((len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000) ||
        cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      return false;
    }
    i += len;
  }
  return true;
}

std::vector<Token> Tokenize(std::string_view text, Language language) {
  return Lexer(text, language).Run();
}

std::string_view StringContent(const Token& token) {
  std::string_view t = token.text;
  if (t.size() >= 6 && t.starts_with("\"\"\"") && t.ends_with("\"\"\"")) {
    return t.substr(3, t.size() - 6);
  }
  if (t.empty()) return t;
  const char open = t.front();
  t.remove_prefix(1);
  if (!t.empty() && t.back() == open) t.remove_suffix(1);
  return t;
}

}  // namespace pdflow
