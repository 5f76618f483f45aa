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

#ifndef PDFLOW_LEXER_H_
#define PDFLOW_LEXER_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace pdflow {

enum class Language { kJava, kJavaScript, kTypeScript };

inline constexpr std::array<Language, 3> kAllLanguages = {
    Language::kJava, Language::kJavaScript, Language::kTypeScript};

// By extension: .java, .js/.jsx/.mjs/.cjs, .ts/.tsx/.mts/.cts.
std::optional<Language> LanguageFromPath(std::string_view path);
std::string_view LanguageName(Language language);
bool IsJavaScriptLike(Language language);

// Strict UTF-8 validation: rejects overlong forms, surrogates and code
// points above U+10FFFF.
bool IsValidUtf8(std::string_view text);

enum class TokenKind {
  kIdentifier,  // also keywords; callers compare text
  kNumber,
  kString,  // '..', "..", Java text blocks and JS template literals
  kRegex,   // JS regular-expression literal
  kPunct,
};

struct Token {
  TokenKind kind = TokenKind::kPunct;
  std::string_view text;
  // Byte offsets into the source, [begin, end).
  std::uint32_t begin = 0;
  std::uint32_t end = 0;
  // A line break separates this token from the previous one.
  bool newline_before = false;

  bool Is(std::string_view s) const {
    return kind == TokenKind::kPunct && text == s;
  }
  bool IsWord(std::string_view s) const {
    return kind == TokenKind::kIdentifier && text == s;
  }
};

// Tolerant tokenizer. Comments are dropped. Unterminated strings, comments
// and templates run to the end of the line or file instead of failing, so
// this never rejects input.
std::vector<Token> Tokenize(std::string_view text, Language language);

// The contents of a string token without its delimiters. Escapes are kept
// verbatim.
std::string_view StringContent(const Token& token);

}  // namespace pdflow

#endif  // PDFLOW_LEXER_H_
