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

#include <random>
#include <string>
#include <vector>

#include "gtest/gtest.h"

namespace pdflow {
namespace {

std::vector<std::string> Texts(std::string_view src, Language lang) {
  std::vector<std::string> out;
  for (const Token& t : Tokenize(src, lang)) out.emplace_back(t.text);
  return out;
}

using Strs = std::vector<std::string>;

TEST(LexerTest, LanguageFromPath) {
  EXPECT_EQ(LanguageFromPath("A.java"), Language::kJava);
  EXPECT_EQ(LanguageFromPath("a/b.js"), Language::kJavaScript);
  EXPECT_EQ(LanguageFromPath("x.jsx"), Language::kJavaScript);
  EXPECT_EQ(LanguageFromPath("x.mjs"), Language::kJavaScript);
  EXPECT_EQ(LanguageFromPath("x.cjs"), Language::kJavaScript);
  EXPECT_EQ(LanguageFromPath("x.ts"), Language::kTypeScript);
  EXPECT_EQ(LanguageFromPath("x.tsx"), Language::kTypeScript);
  EXPECT_EQ(LanguageFromPath("x.mts"), Language::kTypeScript);
  EXPECT_FALSE(LanguageFromPath("x.py").has_value());
  EXPECT_FALSE(LanguageFromPath("java").has_value());
  EXPECT_FALSE(LanguageFromPath("x.java.bak").has_value());
}

TEST(LexerTest, LanguageNames) {
  EXPECT_EQ(LanguageName(Language::kJava), "java");
  EXPECT_EQ(LanguageName(Language::kJavaScript), "javascript");
  EXPECT_EQ(LanguageName(Language::kTypeScript), "typescript");
  EXPECT_FALSE(IsJavaScriptLike(Language::kJava));
  EXPECT_TRUE(IsJavaScriptLike(Language::kTypeScript));
}

TEST(LexerTest, Utf8Validation) {
  EXPECT_TRUE(IsValidUtf8(""));
  EXPECT_TRUE(IsValidUtf8("plain"));
  EXPECT_TRUE(IsValidUtf8("caf\xc3\xa9 \xe2\x82\xac \xf0\x9f\x98\x80"));
  EXPECT_FALSE(IsValidUtf8("\xc0\xaf"));          // overlong
  EXPECT_FALSE(IsValidUtf8("\xed\xa0\x80"));      // surrogate
  EXPECT_FALSE(IsValidUtf8("\xf4\x90\x80\x80"));  // above U+10FFFF
  EXPECT_FALSE(IsValidUtf8("\xe2\x82"));          // truncated
  EXPECT_FALSE(IsValidUtf8("\x80"));              // stray continuation
  EXPECT_FALSE(IsValidUtf8("\xff"));
}

TEST(LexerTest, BasicTokens) {
  auto toks = Tokenize("let x = foo.bar(1, 'a');", Language::kJavaScript);
  ASSERT_EQ(toks.size(), 12u);
  EXPECT_TRUE(toks[0].IsWord("let"));
  EXPECT_TRUE(toks[2].Is("="));
  EXPECT_EQ(toks[7].kind, TokenKind::kNumber);
  EXPECT_EQ(toks[9].kind, TokenKind::kString);
  EXPECT_EQ(StringContent(toks[9]), "a");
  EXPECT_TRUE(toks[11].Is(";"));
}

TEST(LexerTest, OffsetsSliceTheSource) {
  std::string src = "a.b = \"x\\\"y\" // c\n  + q;";
  for (const Token& t : Tokenize(src, Language::kJava)) {
    EXPECT_EQ(src.substr(t.begin, t.end - t.begin), t.text);
  }
}

TEST(LexerTest, CommentsAreDropped) {
  EXPECT_EQ(Texts("a /* b */ c // d\ne", Language::kJava),
            (Strs{"a", "c", "e"}));
  EXPECT_EQ(Texts("a /** doc\n*/ b", Language::kTypeScript), (Strs{"a", "b"}));
}

TEST(LexerTest, NewlineBefore) {
  auto toks = Tokenize("a\nb /* x\n */ c d", Language::kJavaScript);
  ASSERT_EQ(toks.size(), 4u);
  EXPECT_FALSE(toks[0].newline_before);
  EXPECT_TRUE(toks[1].newline_before);
  EXPECT_TRUE(toks[2].newline_before);
  EXPECT_FALSE(toks[3].newline_before);
}

TEST(LexerTest, MultiCharPunctuators) {
  EXPECT_EQ(
      Texts("a ?? b?.c === d => e >>>= f", Language::kTypeScript),
      (Strs{"a", "??", "b", "?.", "c", "===", "d", "=>", "e", ">>>=", "f"}));
  EXPECT_EQ(Texts("x::y -> z", Language::kJava),
            (Strs{"x", "::", "y", "->", "z"}));
}

TEST(LexerTest, TemplateLiteralIsOneString) {
  auto toks = Tokenize("f(`a ${b + `c`} d`)", Language::kJavaScript);
  ASSERT_EQ(toks.size(), 4u);
  EXPECT_EQ(toks[2].kind, TokenKind::kString);
  EXPECT_EQ(StringContent(toks[2]), "a ${b + `c`} d");
}

TEST(LexerTest, JavaTextBlock) {
  auto toks = Tokenize("s = \"\"\"\n  hi \"x\"\n  \"\"\";", Language::kJava);
  ASSERT_EQ(toks.size(), 4u);
  EXPECT_EQ(toks[2].kind, TokenKind::kString);
  EXPECT_EQ(StringContent(toks[2]), "\n  hi \"x\"\n  ");
}

TEST(LexerTest, RegexVersusDivision) {
  auto div = Tokenize("a = b / c / d", Language::kJavaScript);
  for (const Token& t : div) EXPECT_NE(t.kind, TokenKind::kRegex);
  auto re = Tokenize("x = /ab[/]c/g.test(s)", Language::kJavaScript);
  ASSERT_GE(re.size(), 3u);
  EXPECT_EQ(re[2].kind, TokenKind::kRegex);
  EXPECT_EQ(re[2].text, "/ab[/]c/g");
  auto ret = Tokenize("return /x/.test(y)", Language::kTypeScript);
  EXPECT_EQ(ret[1].kind, TokenKind::kRegex);
  auto java = Tokenize("x = a / b", Language::kJava);
  for (const Token& t : java) EXPECT_NE(t.kind, TokenKind::kRegex);
}

TEST(LexerTest, Numbers) {
  auto toks = Tokenize("0x1F 1_000 3.5e-2 10n 7L .5", Language::kJava);
  for (const Token& t : toks) EXPECT_EQ(t.kind, TokenKind::kNumber) << t.text;
  EXPECT_EQ(toks.size(), 6u);
}

TEST(LexerTest, IdentifiersWithDollarAndUnicode) {
  EXPECT_EQ(Texts("$el _x caf\xc3\xa9", Language::kJavaScript),
            (Strs{"$el", "_x", "caf\xc3\xa9"}));
}

TEST(LexerTest, UnterminatedConstructsDoNotSwallowTheFile) {
  auto toks = Tokenize("a = 'oops\nb = c;", Language::kJavaScript);
  bool saw_b = false;
  for (const Token& t : toks) saw_b |= t.IsWord("b");
  EXPECT_TRUE(saw_b);
  auto comment = Tokenize("a /* never closed", Language::kJava);
  EXPECT_EQ(comment.size(), 1u);
}

TEST(LexerTest, EmptyInput) {
  EXPECT_TRUE(Tokenize("", Language::kJava).empty());
  EXPECT_TRUE(Tokenize("  \n\t// only\n", Language::kTypeScript).empty());
}

// Tokens are ordered, non-overlapping and lie within the input for any
// byte sequence.
TEST(LexerTest, FuzzInvariants) {
  std::mt19937_64 rng(7);
  const std::string alphabet =
      "ab_$ 09.\n\t'\"`/\\*{}()[];,=<>!?:+-&|^%#@~\xc3\xa9";
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  std::uniform_int_distribution<int> len(0, 200);
  for (int i = 0; i < 3000; ++i) {
    std::string src;
    for (int k = len(rng); k > 0; --k) src += alphabet[pick(rng)];
    for (Language lang : kAllLanguages) {
      std::uint32_t last = 0;
      for (const Token& t : Tokenize(src, lang)) {
        ASSERT_LE(last, t.begin) << src;
        ASSERT_LT(t.begin, t.end) << src;
        ASSERT_LE(t.end, src.size()) << src;
        ASSERT_EQ(src.substr(t.begin, t.end - t.begin), t.text);
        last = t.end;
      }
    }
  }
}

}  // namespace
}  // namespace pdflow
