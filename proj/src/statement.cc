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

#include "pdflow/statement.h"

#include <algorithm>
#include <array>
#include <utility>

#include "absl/strings/ascii.h"
#include "absl/strings/str_join.h"
#include "fmt/format.h"
#include "pdflow/status.h"

namespace pdflow {
namespace {

// Beyond this block nesting, braces are treated as plain brackets.
constexpr int kMaxBlockNesting = 200;
// Beyond this expression nesting, operands are not collected.
constexpr int kMaxExprDepth = 64;

constexpr std::string_view kBodyPlaceholder = "{...}";

constexpr std::array<std::string_view, 50> kNonValueWords = {
    "true",       "false",      "null",    "undefined", "new",    "typeof",
    "instanceof", "in",         "of",      "function",  "async",  "await",
    "return",     "class",      "const",   "let",       "var",    "void",
    "delete",     "yield",      "as",      "satisfies", "keyof",  "extends",
    "implements", "throw",      "if",      "else",      "for",    "while",
    "do",         "switch",     "case",    "default",   "break",  "continue",
    "try",        "catch",      "finally", "import",    "export", "from",
    "static",     "public",     "private", "protected", "final",  "interface",
    "enum",       "instanceof",
};

// Stripped from the head of a statement before analysis.
constexpr std::array<std::string_view, 24> kLeadingWords = {
    "export",   "default", "declare",  "public",   "private",  "protected",
    "static",   "final",   "abstract", "readonly", "override", "transient",
    "volatile", "native",  "strictfp", "async",    "await",    "return",
    "throw",    "yield",   "const",    "let",      "var",      "sealed",
};

constexpr std::array<std::string_view, 16> kAssignOps = {
    "=",  "+=",  "-=",  "*=",   "/=",  "%=",  "&=",  "|=",
    "^=", "<<=", ">>=", ">>>=", "**=", "&&=", "||=", "?\?=",
};

template <std::size_t N>
bool In(std::string_view s, const std::array<std::string_view, N>& set) {
  return std::find(set.begin(), set.end(), s) != set.end();
}

bool IsNonValueWord(std::string_view w) { return In(w, kNonValueWords); }

bool IsOpen(const Token& t) { return t.Is("(") || t.Is("[") || t.Is("{"); }
bool IsClose(const Token& t) { return t.Is(")") || t.Is("]") || t.Is("}"); }
bool IsArrow(const Token& t) { return t.Is("=>") || t.Is("->"); }
bool IsMemberDot(const Token& t) {
  return t.Is(".") || t.Is("?.") || t.Is("::");
}
bool IsPlaceholder(const Token& t) {
  return t.kind == TokenKind::kPunct && t.text == kBodyPlaceholder;
}

bool IsAssignOp(const Token& t) {
  return t.kind == TokenKind::kPunct && In(t.text, kAssignOps);
}

using Tokens = std::vector<Token>;

// Index of the bracket closing the one at `open`, or `end` if unbalanced.
std::size_t CloseOf(const Tokens& v, std::size_t open, std::size_t end) {
  int depth = 0;
  for (std::size_t j = open; j < end; ++j) {
    if (IsOpen(v[j])) {
      ++depth;
    } else if (IsClose(v[j])) {
      if (--depth == 0) return j;
    }
  }
  return end;
}

std::string JoinTokens(const Tokens& v, std::size_t a, std::size_t b) {
  std::string out;
  for (std::size_t k = a; k < b; ++k) {
    if (k > a && v[k].begin > v[k - 1].end) out += ' ';
    out.append(v[k].text);
  }
  return out;
}

// Skips `<...>` type arguments at `j`. Returns the index after the closing
// `>` when it is directly followed by `(`, else `j` unchanged.
std::size_t SkipTypeArgs(const Tokens& v, std::size_t j, std::size_t end) {
  if (j >= end || !v[j].Is("<")) return j;
  int depth = 0;
  for (std::size_t k = j; k < end; ++k) {
    const Token& t = v[k];
    if (t.Is("<")) {
      ++depth;
    } else if (t.Is(">")) {
      depth -= 1;
    } else if (t.Is(">>")) {
      depth -= 2;
    } else if (t.Is(">>>")) {
      depth -= 3;
    } else if (!(t.kind == TokenKind::kIdentifier || t.Is(".") || t.Is(",") ||
                 t.Is("[") || t.Is("]") || t.Is("?") || t.Is("&") ||
                 t.Is("|") || t.kind == TokenKind::kString)) {
      return j;
    }
    if (depth < 0) return j;
    if (depth == 0) {
      return (k + 1 < end && v[k + 1].Is("(")) ? k + 1 : j;
    }
  }
  return j;
}

struct ChainParse {
  std::size_t next = 0;  // index after the chain
  Chain chain;
  std::string text;  // verbatim, without whitespace
};

// Parses an access chain starting at identifier `j`. Returns nullopt if `j`
// does not start one.
std::optional<ChainParse> ParseChainAt(const Tokens& v, std::size_t j,
                                       std::size_t end) {
  if (j >= end || v[j].kind != TokenKind::kIdentifier) return std::nullopt;
  const std::string_view head = v[j].text;
  const bool self = head == "this" || head == "super";
  if (!self && IsNonValueWord(head)) return std::nullopt;
  ChainParse out;
  if (!self) out.chain.emplace_back(head);
  std::size_t k = j + 1;
  while (k < end) {
    const Token& t = v[k];
    if (IsMemberDot(t) && k + 1 < end &&
        v[k + 1].kind == TokenKind::kIdentifier) {
      out.chain.emplace_back(v[k + 1].text);
      k += 2;
    } else if (t.Is("!") && k + 1 < end &&
               (IsMemberDot(v[k + 1]) || v[k + 1].Is("["))) {
      ++k;  // TypeScript non-null assertion
    } else if (t.Is("[")) {
      const std::size_t close = CloseOf(v, k, end);
      if (close >= end) break;
      k = close + 1;
    } else if (t.Is("?.") && k + 1 < end && v[k + 1].Is("[")) {
      ++k;
    } else {
      break;
    }
  }
  out.next = k;
  for (std::size_t m = j; m < k; ++m) out.text.append(v[m].text);
  return out;
}

// If a call's argument list follows a chain ending at `k`, returns the index
// of its `(`.
std::optional<std::size_t> CallOpenAfter(const Tokens& v, std::size_t k,
                                         std::size_t end) {
  if (k >= end) return std::nullopt;
  if (v[k].Is("(")) return k;
  if (v[k].Is("?.") && k + 1 < end && v[k + 1].Is("(")) return k + 1;
  if (v[k].Is("!") && k + 1 < end && v[k + 1].Is("(")) return k + 1;
  const std::size_t after = SkipTypeArgs(v, k, end);
  if (after != k) return after;
  return std::nullopt;
}

// A `(` group at `open` that is an arrow-function parameter list.
bool IsArrowParams(const Tokens& v, std::size_t open, std::size_t end) {
  const std::size_t close = CloseOf(v, open, end);
  if (close >= end) return false;
  std::size_t k = close + 1;
  // TypeScript return annotation: `(a): T => ...`.
  if (k < end && v[k].Is(":")) {
    while (k < end && !IsArrow(v[k]) && !v[k].Is(";") && !v[k].Is(",") &&
           !v[k].Is(")")) {
      ++k;
    }
  }
  return k < end && IsArrow(v[k]);
}

bool LooksLikeCast(const Tokens& v, std::size_t open, std::size_t close,
                   std::size_t end) {
  if (close + 1 >= end || close == open + 1) return false;
  static constexpr std::array<std::string_view, 8> kPrimitives = {
      "int", "long", "short", "byte", "char", "float", "double", "boolean"};
  const Token& first = v[open + 1];
  if (first.kind != TokenKind::kIdentifier || first.text.empty() ||
      !(absl::ascii_isupper(first.text[0]) || In(first.text, kPrimitives))) {
    return false;
  }
  for (std::size_t k = open + 1; k < close; ++k) {
    const Token& t = v[k];
    if (!(t.kind == TokenKind::kIdentifier || t.Is(".") || t.Is("<") ||
          t.Is(">") || t.Is(">>") || t.Is(",") || t.Is("[") || t.Is("]") ||
          t.Is("?"))) {
      return false;
    }
  }
  const Token& next = v[close + 1];
  return next.kind == TokenKind::kIdentifier ||
         next.kind == TokenKind::kString || next.kind == TokenKind::kNumber ||
         next.Is("(");
}

struct Operands {
  std::vector<Arg> items;  // kIdentifier and kStringLiteral only
  std::vector<CallExpr> calls;
};

// Flattens parsed arguments back into operand items.
void AppendArgOperands(const std::vector<Arg>& args, Operands& out) {
  for (const Arg& arg : args) {
    switch (arg.kind) {
      case ArgKind::kIdentifier:
      case ArgKind::kStringLiteral:
        out.items.push_back(arg);
        break;
      case ArgKind::kNumberLiteral:
        break;
      case ArgKind::kOther:
        for (const auto& chain : arg.inner_chains) {
          Arg item;
          item.kind = ArgKind::kIdentifier;
          item.chain = chain;
          item.text = ChainDisplay(chain);
          out.items.push_back(std::move(item));
        }
        for (const auto& literal : arg.inner_literals) {
          Arg item;
          item.kind = ArgKind::kStringLiteral;
          item.literal = literal;
          item.text = literal;
          out.items.push_back(std::move(item));
        }
        break;
    }
  }
}

class ExprAnalyzer {
 public:
  ExprAnalyzer(const Tokens& v, bool java) : v_(v), java_(java) {}

  std::vector<Arg> ParseArgs(std::size_t open, std::size_t close, int depth,
                             std::vector<CallExpr>& nested) const {
    std::vector<Arg> args;
    std::size_t a = open + 1;
    int level = 0;
    for (std::size_t k = open + 1; k <= close; ++k) {
      if (k < close) {
        if (IsOpen(v_[k])) ++level;
        if (IsClose(v_[k])) --level;
        if (!(level == 0 && v_[k].Is(","))) continue;
      }
      if (k > a) args.push_back(ClassifyArg(a, k, depth, nested));
      a = k + 1;
    }
    return args;
  }

  Arg ClassifyArg(std::size_t a, std::size_t b, int depth,
                  std::vector<CallExpr>& nested) const {
    Arg arg;
    arg.text = JoinTokens(v_, a, b);
    if (b - a == 1 && v_[a].kind == TokenKind::kString) {
      arg.kind = ArgKind::kStringLiteral;
      arg.literal = std::string(StringContent(v_[a]));
      return arg;
    }
    if ((b - a == 1 && v_[a].kind == TokenKind::kNumber) ||
        (b - a == 2 && (v_[a].Is("-") || v_[a].Is("+")) &&
         v_[a + 1].kind == TokenKind::kNumber)) {
      arg.kind = ArgKind::kNumberLiteral;
      return arg;
    }
    if (auto chain = ParseChainAt(v_, a, b);
        chain && chain->next == b && !chain->chain.empty()) {
      arg.kind = ArgKind::kIdentifier;
      arg.chain = std::move(chain->chain);
      return arg;
    }
    arg.kind = ArgKind::kOther;
    Operands inner;
    Collect(a, b, false, depth, inner);
    for (auto& item : inner.items) {
      if (item.kind == ArgKind::kIdentifier) {
        arg.inner_chains.push_back(std::move(item.chain));
      } else {
        arg.inner_literals.push_back(std::move(item.literal));
      }
    }
    for (auto& call : inner.calls) nested.push_back(std::move(call));
    return arg;
  }

  // Collects value operands in [begin, end). Calls contribute their
  // receivers and arguments; callee names do not count as values.
  void Collect(std::size_t begin, std::size_t end, bool in_object, int depth,
               Operands& out) const {
    if (depth > kMaxExprDepth) return;
    std::size_t j = begin;
    while (j < end) {
      const Token& t = v_[j];
      if (t.kind == TokenKind::kString) {
        Arg lit;
        lit.kind = ArgKind::kStringLiteral;
        lit.text = std::string(t.text);
        lit.literal = std::string(StringContent(t));
        out.items.push_back(std::move(lit));
        ++j;
        continue;
      }
      if (t.kind == TokenKind::kIdentifier) {
        j = CollectWord(j, end, in_object, depth, out);
        continue;
      }
      if (t.Is("(")) {
        const std::size_t close = CloseOf(v_, j, end);
        if (IsArrowParams(v_, j, end)) {
          j = close + 1;
        } else if (java_ && LooksLikeCast(v_, j, close, end)) {
          j = close + 1;
        } else {
          Collect(j + 1, std::min(close, end), false, depth + 1, out);
          j = close + 1;
          j = ConsumeChained(j, end, depth, out);
        }
        continue;
      }
      if (t.Is("[") || t.Is("{")) {
        const std::size_t close = CloseOf(v_, j, end);
        Collect(j + 1, std::min(close, end), t.Is("{"), depth + 1, out);
        j = close + 1;
        continue;
      }
      ++j;
    }
  }

  // Handles `.member` / `.call(...)` sequences that follow a call result.
  std::size_t ConsumeChained(std::size_t j, std::size_t end, int depth,
                             Operands& out) const {
    while (j + 1 < end && IsMemberDot(v_[j]) &&
           v_[j + 1].kind == TokenKind::kIdentifier) {
      const std::size_t name = j + 1;
      j += 2;
      while (j < end && (v_[j].Is("[") || v_[j].Is("!"))) {
        j = v_[j].Is("!") ? j + 1 : CloseOf(v_, j, end) + 1;
      }
      if (auto open = CallOpenAfter(v_, j, end)) {
        const std::size_t close = CloseOf(v_, *open, end);
        CallExpr call;
        call.callee = std::string(v_[name].text);
        call.callee_text = call.callee;
        call.depth = depth + 1;
        call.args =
            ParseArgs(*open, std::min(close, end), depth + 1, call.nested);
        call.direct_args = call.args.size();
        AppendArgOperands(call.args, out);
        out.calls.push_back(std::move(call));
        j = close + 1;
      }
    }
    return j;
  }

  // The first call in [begin, end), in token order, descending into
  // brackets but not into function parameter lists.
  struct FoundCall {
    std::size_t chain_begin;
    std::size_t open;
    std::size_t close;
    ChainParse chain;
  };

  std::optional<FoundCall> FindFirstCall(std::size_t begin,
                                         std::size_t end) const {
    std::size_t j = begin;
    while (j < end) {
      const Token& t = v_[j];
      if (t.kind == TokenKind::kIdentifier) {
        if (t.text == "function") {
          j = SkipFunctionHead(j, end);
          continue;
        }
        if (j + 1 < end && IsArrow(v_[j + 1])) {
          j += 2;
          continue;
        }
        if (t.text == "as" || t.text == "satisfies" || t.text == "instanceof") {
          j = SkipType(j + 1, end);
          continue;
        }
        auto chain = ParseChainAt(v_, j, end);
        if (!chain) {
          ++j;
          continue;
        }
        if (auto open = CallOpenAfter(v_, chain->next, end);
            open && !chain->chain.empty()) {
          return FoundCall{j, *open, std::min(CloseOf(v_, *open, end), end),
                           *std::move(chain)};
        }
        j = std::max(chain->next, j + 1);
        continue;
      }
      if (t.Is("(") && IsArrowParams(v_, j, end)) {
        j = CloseOf(v_, j, end) + 1;
        continue;
      }
      ++j;
    }
    return std::nullopt;
  }

 private:
  std::size_t CollectWord(std::size_t j, std::size_t end, bool in_object,
                          int depth, Operands& out) const {
    const Token& t = v_[j];
    if (t.text == "function") return SkipFunctionHead(j, end);
    if (j + 1 < end && IsArrow(v_[j + 1])) return j + 2;  // `x => ...`
    if (t.text == "as" || t.text == "satisfies" || t.text == "instanceof") {
      return SkipType(j + 1, end);
    }
    if (in_object && j + 1 < end && v_[j + 1].Is(":")) return j + 2;
    auto chain = ParseChainAt(v_, j, end);
    if (!chain) return j + 1;
    if (auto open = CallOpenAfter(v_, chain->next, end);
        open && !chain->chain.empty()) {
      const std::size_t close = std::min(CloseOf(v_, *open, end), end);
      CallExpr call;
      call.callee = chain->chain.back();
      call.receiver.assign(chain->chain.begin(), chain->chain.end() - 1);
      call.callee_text = chain->text;
      call.depth = depth + 1;
      call.args = ParseArgs(*open, close, depth + 1, call.nested);
      call.direct_args = call.args.size();
      if (!call.receiver.empty()) {
        Arg recv;
        recv.kind = ArgKind::kIdentifier;
        recv.chain = call.receiver;
        recv.text = ChainDisplay(call.receiver);
        out.items.push_back(std::move(recv));
      }
      AppendArgOperands(call.args, out);
      out.calls.push_back(std::move(call));
      return ConsumeChained(close + 1, end, depth, out);
    }
    if (!chain->chain.empty()) {
      Arg value;
      value.kind = ArgKind::kIdentifier;
      value.text = chain->text;
      value.chain = std::move(chain->chain);
      out.items.push_back(std::move(value));
    }
    return std::max(chain->next, j + 1);
  }

  // Skips `function name?(params)`; the body is already a placeholder.
  std::size_t SkipFunctionHead(std::size_t j, std::size_t end) const {
    ++j;
    if (j < end && v_[j].Is("*")) ++j;
    if (j < end && v_[j].kind == TokenKind::kIdentifier) ++j;
    if (j < end && v_[j].Is("(")) j = CloseOf(v_, j, end) + 1;
    return j;
  }

  std::size_t SkipType(std::size_t j, std::size_t end) const {
    while (j < end && (v_[j].kind == TokenKind::kIdentifier || v_[j].Is(".") ||
                       v_[j].Is("[") || v_[j].Is("]"))) {
      ++j;
    }
    const std::size_t after = j < end && v_[j].Is("<") ? j : end;
    if (after < end) {
      int level = 0;
      for (std::size_t k = after; k < end; ++k) {
        if (v_[k].Is("<")) ++level;
        if (v_[k].Is(">")) --level;
        if (v_[k].Is(">>")) level -= 2;
        if (level <= 0) return k + 1;
      }
    }
    return j;
  }

  const Tokens& v_;
  bool java_;
};

// ---------------------------------------------------------------------------
// Block structure

enum class BlockKind { kFile, kFunction, kClass, kPlain };

enum class BraceRole {
  kBare,         // plain block, same scope
  kContainer,    // class/interface/enum body
  kDeclaration,  // function or method body ending the statement
  kNested,       // function or anonymous-class body inside an expression
  kExpression,   // object literal, array initializer, type literal
};

bool HasTopLevelAssign(const Tokens& buf) {
  int level = 0;
  for (const Token& t : buf) {
    if (IsOpen(t)) ++level;
    if (IsClose(t)) --level;
    if (level == 0 && IsAssignOp(t)) return true;
  }
  return false;
}

std::size_t SkipLeadingWords(const Tokens& buf) {
  std::size_t k = 0;
  while (k < buf.size() && buf[k].kind == TokenKind::kIdentifier &&
         In(buf[k].text, kLeadingWords)) {
    ++k;
  }
  return k;
}

// True if the tokens before index `end` close a parameter list, optionally
// followed by a return type (`): T`) or a throws clause.
bool EndsWithSignature(const Tokens& buf) {
  if (buf.empty()) return false;
  std::size_t k = buf.size();
  if (buf[k - 1].Is(")")) return true;
  int angle = 0;
  while (k > 0) {
    const Token& t = buf[k - 1];
    if (t.Is(">")) {
      ++angle;
    } else if (t.Is(">>")) {
      angle += 2;
    } else if (t.Is("<")) {
      --angle;
    } else if (t.Is(":") && angle <= 0) {
      return k >= 2 && buf[k - 2].Is(")");
    } else if (t.IsWord("throws")) {
      return k >= 2 && buf[k - 2].Is(")");
    } else if (!(t.kind == TokenKind::kIdentifier || t.Is(".") || t.Is(",") ||
                 t.Is("[") || t.Is("]") || t.Is("|") || t.Is("&") ||
                 t.Is("?") || t.kind == TokenKind::kString || (angle > 0))) {
      return false;
    }
    --k;
  }
  return false;
}

bool HasTopLevelWord(const Tokens& buf, std::string_view word) {
  int level = 0;
  for (const Token& t : buf) {
    if (IsOpen(t)) ++level;
    if (IsClose(t)) --level;
    if (level == 0 && t.IsWord(word)) return true;
  }
  return false;
}

bool HasContainerKeyword(const Tokens& buf, bool java) {
  int level = 0;
  for (std::size_t k = 0; k < buf.size(); ++k) {
    const Token& t = buf[k];
    if (IsOpen(t)) ++level;
    if (IsClose(t)) --level;
    if (level != 0 || t.kind != TokenKind::kIdentifier) continue;
    if (t.text == "class" || t.text == "interface" || t.text == "enum") {
      return true;
    }
    const bool named =
        k + 1 < buf.size() && (buf[k + 1].kind == TokenKind::kIdentifier ||
                               buf[k + 1].kind == TokenKind::kString);
    if (!java && (t.text == "namespace" || t.text == "module") && named) {
      return true;
    }
    if (java && t.text == "record" && named) return true;
  }
  return false;
}

BraceRole ClassifyStatementBrace(const Tokens& buf, bool java) {
  if (buf.empty()) return BraceRole::kBare;
  const Token& prev = buf.back();
  if (IsArrow(prev)) return BraceRole::kNested;
  const bool assign = HasTopLevelAssign(buf);
  const std::size_t head = SkipLeadingWords(buf);
  const bool expression_head =
      assign ||
      (head > 0 && (buf[0].IsWord("return") || buf[0].IsWord("throw") ||
                    buf[0].IsWord("yield") || buf[0].IsWord("await")));
  if (!assign && HasContainerKeyword(buf, java)) return BraceRole::kContainer;
  const bool has_function = HasTopLevelWord(buf, "function");
  if (expression_head) {
    if (EndsWithSignature(buf) || HasContainerKeyword(buf, java)) {
      return BraceRole::kNested;
    }
    return BraceRole::kExpression;
  }
  if (EndsWithSignature(buf)) {
    if (head < buf.size() && buf[head].IsWord("new")) return BraceRole::kNested;
    return BraceRole::kDeclaration;
  }
  if (has_function) return BraceRole::kDeclaration;
  if (buf.size() == 1 && buf[0].IsWord("static")) {
    return BraceRole::kDeclaration;
  }
  if (buf[head < buf.size() ? head : 0].IsWord("import") ||
      buf[0].IsWord("export")) {
    return BraceRole::kExpression;
  }
  static constexpr std::array<std::string_view, 12> kExpressionWords = {
      "const", "let",  "var",    "return", "throw", "yield",
      "await", "case", "typeof", "new",    "in",    "of"};
  if (prev.kind == TokenKind::kIdentifier && In(prev.text, kExpressionWords)) {
    return BraceRole::kExpression;
  }
  if (prev.kind == TokenKind::kIdentifier) return BraceRole::kBare;
  return BraceRole::kExpression;
}

// `{` inside brackets: a function body or anonymous class when it follows a
// parameter list or an arrow.
bool IsNestedBodyBrace(const Tokens& buf) {
  if (buf.empty()) return false;
  if (IsArrow(buf.back())) return true;
  return EndsWithSignature(buf);
}

// Whether an anonymous body after `buf` is a class body (`new X() {`).
bool IsAnonymousClass(const Tokens& buf) {
  if (buf.empty() || !buf.back().Is(")")) return false;
  int level = 0;
  std::size_t k = buf.size();
  while (k > 0) {
    const Token& t = buf[k - 1];
    if (IsClose(t)) ++level;
    if (IsOpen(t)) --level;
    if (level == 0) break;
    --k;
  }
  // k-1 is the `(`; walk back over the type name.
  if (k < 2) return false;
  std::size_t m = k - 1;
  while (m > 0 &&
         (buf[m - 1].kind == TokenKind::kIdentifier || buf[m - 1].Is(".") ||
          buf[m - 1].Is("<") || buf[m - 1].Is(">") || buf[m - 1].Is(","))) {
    if (buf[m - 1].IsWord("new")) return true;
    --m;
  }
  return false;
}

bool AsiContinues(const Token& last, const Token& next) {
  if (last.kind == TokenKind::kPunct && !IsPlaceholder(last) &&
      !(last.Is(")") || last.Is("]") || last.Is("}") || last.Is("++") ||
        last.Is("--") || last.Is("!"))) {
    return true;
  }
  static constexpr std::array<std::string_view, 18> kBinaryWords = {
      "new",        "typeof", "instanceof", "in",        "of",       "extends",
      "implements", "await",  "as",         "satisfies", "function", "class",
      "const",      "let",    "var",        "async",     "keyof",    "import"};
  if (last.kind == TokenKind::kIdentifier && In(last.text, kBinaryWords)) {
    return true;
  }
  if (next.kind == TokenKind::kPunct) {
    return !(next.Is("(") || next.Is("[") || next.Is("{") || next.Is("++") ||
             next.Is("--") || next.Is("!") || next.Is("@") || next.Is("~") ||
             next.Is("#"));
  }
  if (next.kind == TokenKind::kIdentifier) {
    return next.text == "instanceof" || next.text == "in" ||
           next.text == "of" || next.text == "as" || next.text == "satisfies" ||
           next.text == "extends" || next.text == "implements";
  }
  return false;
}

bool IsControlWord(std::string_view w) {
  return w == "if" || w == "while" || w == "for" || w == "switch" ||
         w == "catch" || w == "synchronized" || w == "with" || w == "try";
}

class Extractor {
 public:
  explicit Extractor(const SourceFile& file)
      : file_(file),
        toks_(Tokenize(file.text, file.language)),
        java_(file.language == Language::kJava) {
    line_starts_.push_back(0);
    for (std::size_t i = 0; i < file.text.size(); ++i) {
      if (file.text[i] == '\n') line_starts_.push_back(i + 1);
    }
  }

  std::vector<Statement> Run() {
    std::size_t i = 0;
    ParseBlock(i, 0, BlockKind::kFile, 0);
    std::sort(out_.begin(), out_.end(),
              [](const Statement& a, const Statement& b) {
                if (a.span.begin_offset != b.span.begin_offset) {
                  return a.span.begin_offset < b.span.begin_offset;
                }
                return a.span.end_offset > b.span.end_offset;
              });
    return std::move(out_);
  }

 private:
  void ParseBlock(std::size_t& i, int scope, BlockKind kind, int nesting) {
    const std::size_t n = toks_.size();
    while (i < n) {
      if (toks_[i].Is("}")) {
        ++i;
        if (kind == BlockKind::kFile) continue;  // stray closer
        return;
      }
      if (toks_[i].Is(";")) {
        ++i;
        continue;
      }
      const std::size_t before = i;
      ParseStatement(i, n, scope, kind, nesting);
      if (i == before) ++i;
    }
  }

  std::size_t SkipDecorator(std::size_t i) const {
    const std::size_t n = toks_.size();
    ++i;  // '@'
    while (i < n && toks_[i].kind == TokenKind::kIdentifier) {
      ++i;
      if (i + 1 < n && toks_[i].Is(".") &&
          toks_[i + 1].kind == TokenKind::kIdentifier) {
        ++i;
      } else {
        break;
      }
    }
    if (i < n && toks_[i].Is("(")) i = CloseOf(toks_, i, n) + 1;
    return std::min(i, n);
  }

  std::size_t SkipCaseLabel(std::size_t i, std::size_t limit) const {
    int level = 0;
    for (std::size_t k = i + 1; k < limit; ++k) {
      const Token& t = toks_[k];
      if (IsOpen(t)) ++level;
      if (IsClose(t)) {
        if (level == 0) return k;  // malformed; stop at the block end
        --level;
      }
      if (level == 0 && (t.Is(":") || t.Is("->"))) return k + 1;
      if (level == 0 && t.Is(";")) return k;
    }
    return limit;
  }

  void ParseStatement(std::size_t& i, std::size_t limit, int scope,
                      BlockKind kind, int nesting) {
    // Prefixes: decorators, case labels, `else`.
    while (i < limit) {
      const Token& t = toks_[i];
      if (t.Is("@") && i + 1 < limit &&
          toks_[i + 1].kind == TokenKind::kIdentifier &&
          toks_[i + 1].text != "interface") {
        i = SkipDecorator(i);
      } else if (t.IsWord("case")) {
        i = SkipCaseLabel(i, limit);
      } else if (t.IsWord("default") && i + 1 < limit &&
                 (toks_[i + 1].Is(":") || toks_[i + 1].Is("->"))) {
        i += 2;
      } else if (t.IsWord("else")) {
        ++i;
      } else {
        break;
      }
    }
    if (i >= limit) return;
    const Token& t = toks_[i];
    const bool deep = nesting >= kMaxBlockNesting;

    if (t.kind == TokenKind::kIdentifier && IsControlWord(t.text) &&
        kind != BlockKind::kClass) {
      std::size_t open = i + 1;
      if (t.text == "for" && open < limit && toks_[open].IsWord("await")) {
        ++open;
      }
      if (open < limit && toks_[open].Is("(")) {
        const std::size_t close = CloseOf(toks_, open, limit);
        if (t.text == "if" || t.text == "while" || t.text == "switch") {
          std::size_t c = open + 1;
          CollectStatement(c, std::min(close, limit), scope, kind, nesting);
        }
        i = std::min(close + 1, limit);
        if (i < limit && toks_[i].Is("{") && !deep) {
          ++i;
          ParseBlock(i, scope, BlockKind::kPlain, nesting + 1);
        } else if (i < limit && toks_[i].Is(";")) {
          ++i;
        }
        return;
      }
    }
    if ((t.IsWord("try") || t.IsWord("finally") || t.IsWord("do")) &&
        i + 1 < limit && toks_[i + 1].Is("{") && !deep) {
      i += 2;
      ParseBlock(i, scope, BlockKind::kPlain, nesting + 1);
      return;
    }
    if (t.IsWord("static") && i + 1 < limit && toks_[i + 1].Is("{") && !deep) {
      i += 2;
      ParseBlock(i, ++last_scope_, BlockKind::kFunction, nesting + 1);
      return;
    }
    if (t.Is("{") && !deep) {
      ++i;
      if (kind == BlockKind::kClass) {
        ParseBlock(i, ++last_scope_, BlockKind::kFunction, nesting + 1);
      } else {
        ParseBlock(i, scope, BlockKind::kPlain, nesting + 1);
      }
      return;
    }
    CollectStatement(i, limit, scope, kind, nesting);
  }

  // Gathers one statement starting at `i` and emits it. Function bodies met
  // on the way are parsed as nested scopes and replaced by a placeholder.
  void CollectStatement(std::size_t& i, std::size_t limit, int scope,
                        BlockKind kind, int nesting) {
    Tokens buf;
    std::vector<char> stack;
    const bool js = !java_;
    const bool deep = nesting >= kMaxBlockNesting;
    auto nested_body = [&](bool anonymous_class) {
      const std::size_t brace = i;
      ++i;
      ParseBlock(i, ++last_scope_,
                 anonymous_class ? BlockKind::kClass : BlockKind::kFunction,
                 nesting + 1);
      Token placeholder;
      placeholder.kind = TokenKind::kPunct;
      placeholder.text = kBodyPlaceholder;
      placeholder.begin = toks_[brace].begin;
      placeholder.end = toks_[std::min(i, toks_.size()) - 1].end;
      placeholder.newline_before = toks_[brace].newline_before;
      buf.push_back(placeholder);
    };
    while (i < limit) {
      const Token& t = toks_[i];
      if (stack.empty()) {
        if (t.Is(";")) {
          Emit(buf, scope, kind);
          ++i;
          return;
        }
        if (t.Is("}")) {
          Emit(buf, scope, kind);
          return;
        }
        if (js && !buf.empty() && t.newline_before &&
            !AsiContinues(buf.back(), t)) {
          Emit(buf, scope, kind);
          return;
        }
        if (t.Is("{") && !deep) {
          const BraceRole role = ClassifyStatementBrace(buf, java_);
          switch (role) {
            case BraceRole::kBare:
            case BraceRole::kDeclaration:
            case BraceRole::kContainer: {
              ++i;
              if (role == BraceRole::kBare) {
                ParseBlock(i, scope, BlockKind::kPlain, nesting + 1);
              } else {
                ParseBlock(i, ++last_scope_,
                           role == BraceRole::kContainer ? BlockKind::kClass
                                                         : BlockKind::kFunction,
                           nesting + 1);
              }
              return;
            }
            case BraceRole::kNested:
              nested_body(IsAnonymousClass(buf));
              continue;
            case BraceRole::kExpression:
              break;
          }
        }
      } else {
        if (t.Is("{") && !deep && IsNestedBodyBrace(buf)) {
          nested_body(IsAnonymousClass(buf));
          continue;
        }
        // Recovery: a statement terminator inside parentheses means the
        // brackets were unbalanced.
        if ((t.Is(";") || t.Is("}")) && stack.back() != '{') {
          Emit(buf, scope, kind);
          if (t.Is(";")) ++i;
          return;
        }
      }
      if (IsOpen(t)) {
        stack.push_back(t.text[0]);
      } else if (IsClose(t) && !stack.empty()) {
        stack.pop_back();
      }
      buf.push_back(t);
      ++i;
    }
    Emit(buf, scope, kind);
  }

  Position PositionAt(std::size_t offset) const {
    auto it =
        std::upper_bound(line_starts_.begin(), line_starts_.end(), offset);
    const std::size_t line =
        static_cast<std::size_t>(it - line_starts_.begin());
    const std::size_t start = line_starts_[line - 1];
    int column = 1;
    for (std::size_t k = start; k < offset; ++k) {
      if ((static_cast<unsigned char>(file_.text[k]) & 0xC0) != 0x80) {
        ++column;
      }
    }
    return Position{static_cast<int>(line), column};
  }

  void Emit(const Tokens& buf, int scope, BlockKind kind) {
    if (buf.empty()) return;
    Statement st;
    st.file = file_.path;
    st.scope_id = scope;
    st.span.begin_offset = buf.front().begin;
    st.span.end_offset = buf.back().end;
    st.span.start = PositionAt(st.span.begin_offset);
    st.span.end = PositionAt(st.span.end_offset);
    st.text = file_.text.substr(st.span.begin_offset,
                                st.span.end_offset - st.span.begin_offset);
    Analyze(buf, kind, st);
    out_.push_back(std::move(st));
  }

  void Analyze(const Tokens& v, BlockKind kind, Statement& st) const {
    std::size_t b = SkipLeadingWords(v);
    const std::size_t e = v.size();
    if (b >= e) return;
    ExprAnalyzer ex(v, java_);

    // Top-level assignment operators.
    std::vector<std::size_t> assigns;
    int level = 0;
    for (std::size_t k = b; k < e; ++k) {
      if (IsOpen(v[k])) ++level;
      if (IsClose(v[k])) --level;
      if (level == 0 && IsAssignOp(v[k])) assigns.push_back(k);
    }
    if (assigns.size() > 1) return;  // chained assignment: Other

    std::size_t expr_begin = b;
    if (assigns.size() == 1) {
      const std::size_t eq = assigns[0];
      if (v[b].Is("{") || v[b].Is("[")) return;  // destructuring
      std::size_t lhs_end = eq;
      int lvl = 0;
      for (std::size_t k = b; k < eq; ++k) {
        if (IsOpen(v[k])) ++lvl;
        if (IsClose(v[k])) --lvl;
        if (lvl == 0 && v[k].Is(":")) {
          lhs_end = k;
          break;
        }
      }
      // Walk back over the trailing access chain.
      std::size_t s = lhs_end;
      std::size_t pos = lhs_end;
      while (pos > b) {
        const Token& t = v[pos - 1];
        if (t.Is("]")) {
          std::size_t k = pos - 1;
          int depth = 0;
          while (k > b) {
            if (IsClose(v[k])) ++depth;
            if (IsOpen(v[k])) --depth;
            if (depth == 0) break;
            --k;
          }
          pos = k;
        } else if (t.kind == TokenKind::kIdentifier) {
          s = pos - 1;
          pos -= 1;
          if (pos > b && (IsMemberDot(v[pos - 1]) || v[pos - 1].Is("!"))) {
            pos -= 1;
          } else {
            break;
          }
        } else if (t.Is("!")) {
          pos -= 1;
        } else {
          break;
        }
      }
      if (s >= lhs_end) return;
      auto chain = ParseChainAt(v, s, lhs_end);
      if (!chain || chain->chain.empty()) return;
      st.kind = StatementKind::kAssignment;
      st.target = std::move(chain->chain);
      expr_begin = eq + 1;
    } else if (kind == BlockKind::kClass) {
      return;  // declarations only
    }

    auto found = ex.FindFirstCall(expr_begin, e);
    if (!found) return;
    if (st.kind != StatementKind::kAssignment) {
      // `Type name(params);` is a declaration, not a call.
      if (found->chain_begin > expr_begin) {
        const Token& before = v[found->chain_begin - 1];
        if (before.kind == TokenKind::kIdentifier && before.text != "new" &&
            before.text != "await" && before.text != "typeof" &&
            before.text != "void" && before.text != "delete" &&
            before.text != "in" && before.text != "of" && before.text != "do") {
          return;
        }
        if (before.Is(">") && java_) return;
      }
      st.kind = StatementKind::kExpressionCall;
    }
    CallExpr call;
    call.callee = found->chain.chain.back();
    call.receiver.assign(found->chain.chain.begin(),
                         found->chain.chain.end() - 1);
    call.callee_text = found->chain.text;
    call.args = ex.ParseArgs(found->open, found->close, 0, call.nested);
    call.direct_args = call.args.size();

    Operands extra;
    ex.Collect(expr_begin, found->chain_begin, false, 0, extra);
    const std::size_t after = ex.ConsumeChained(found->close + 1, e, 0, extra);
    ex.Collect(after, e, false, 0, extra);
    for (auto& item : extra.items) call.args.push_back(std::move(item));
    for (auto& c : extra.calls) call.nested.push_back(std::move(c));
    st.call = std::move(call);
  }

  const SourceFile& file_;
  Tokens toks_;
  bool java_;
  std::vector<std::size_t> line_starts_;
  int last_scope_ = 0;
  std::vector<Statement> out_;
};

}  // namespace

std::string ChainDisplay(const Chain& chain) {
  return absl::StrJoin(chain, ".");
}

std::string_view StatementKindName(StatementKind kind) {
  switch (kind) {
    case StatementKind::kAssignment:
      return "assignment";
    case StatementKind::kExpressionCall:
      return "call";
    case StatementKind::kOther:
      return "other";
  }
  return "other";
}

absl::StatusOr<SourceFile> MakeSourceFile(std::string path, std::string text) {
  auto language = LanguageFromPath(path);
  if (!language) {
    return MakeError(ErrorKind::kUnsupportedLanguage,
                     fmt::format("no analyzer for '{}'", path));
  }
  if (!IsValidUtf8(text)) {
    return MakeError(ErrorKind::kUndecodable,
                     fmt::format("'{}' is not valid UTF-8", path));
  }
  return SourceFile{std::move(path), *language, std::move(text)};
}

std::vector<Statement> ExtractStatements(const SourceFile& file) {
  return Extractor(file).Run();
}

Chain NormalizeChain(std::string_view raw) {
  const Tokens v = Tokenize(raw, Language::kTypeScript);
  if (v.empty()) return {};
  auto chain = ParseChainAt(v, 0, v.size());
  if (!chain || chain->next != v.size()) return {};
  return std::move(chain->chain);
}

}  // namespace pdflow
