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

#ifndef PDFLOW_STATEMENT_H_
#define PDFLOW_STATEMENT_H_

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "pdflow/lexer.h"

namespace pdflow {

// A dotted access path with `this` and index expressions removed:
// `this.users[0].email` -> {users, email}.
using Chain = std::vector<std::string>;

// Segments joined with '.'.
std::string ChainDisplay(const Chain& chain);

struct Position {
  int line = 0;    // 1-based
  int column = 0;  // 1-based, in Unicode code points

  auto operator<=>(const Position&) const = default;
};

// Half-open: `end` is the position just past the last character. Statement
// spans exclude the terminating semicolon.
struct Span {
  Position start;
  Position end;
  std::size_t begin_offset = 0;
  std::size_t end_offset = 0;

  auto operator<=>(const Span&) const = default;
};

struct SourceFile {
  std::string path;
  Language language = Language::kJava;
  std::string text;
};

// Infers the language from `path`. Errors: kUnsupportedLanguage,
// kUndecodable (text is not valid UTF-8).
absl::StatusOr<SourceFile> MakeSourceFile(std::string path, std::string text);

enum class ArgKind { kIdentifier, kStringLiteral, kNumberLiteral, kOther };

struct Arg {
  ArgKind kind = ArgKind::kOther;
  std::string text;     // tokens joined with single spaces
  Chain chain;          // kIdentifier
  std::string literal;  // kStringLiteral content, quotes removed
  // For kOther: value chains and string-literal contents found inside,
  // in source order. Callee names and lambda parameters are excluded.
  std::vector<Chain> inner_chains;
  std::vector<std::string> inner_literals;
};

struct CallExpr {
  Chain receiver;
  std::string callee;
  // The callee access path as written, e.g. "this.usersRepository.findOne".
  std::string callee_text;
  // Arguments of the call, followed by any operands of the enclosing
  // expression that sit outside it (chained-call arguments, other
  // subexpressions). Those extra operands are Identifier or StringLiteral.
  std::vector<Arg> args;
  std::size_t direct_args = 0;  // how many of `args` are the call's own
  // Calls found inside arguments or chained after this one.
  std::vector<CallExpr> nested;
  int depth = 0;
};

enum class StatementKind { kAssignment, kExpressionCall, kOther };

std::string_view StatementKindName(StatementKind kind);

struct Statement {
  std::string file;
  Span span;
  std::string text;  // the exact file slice at `span`
  StatementKind kind = StatementKind::kOther;
  Chain target;                  // kAssignment only
  std::optional<CallExpr> call;  // outermost call, if any
  int scope_id = 0;
};

// Splits a file into statements ordered by start offset. Statements in
// nested function bodies (callbacks, lambdas, anonymous classes) get their
// own scope and lie inside the span of the statement that contains them.
// Never fails on malformed code.
std::vector<Statement> ExtractStatements(const SourceFile& file);

// Parses a dotted/bracketed access expression. Returns an empty chain if
// `raw` is not one.
Chain NormalizeChain(std::string_view raw);

}  // namespace pdflow

#endif  // PDFLOW_STATEMENT_H_
