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

#include <random>
#include <string>
#include <vector>

#include "fmt/format.h"
#include "gtest/gtest.h"
#include "pdflow/status.h"
#include "support/test_util.h"

namespace pdflow {
namespace {

using testing::Extract;

// The only statement of `body` wrapped in a method.
Statement One(std::string_view body, bool ts = false) {
  std::string text =
      ts ? fmt::format("class C {{\n  async m() {{\n    {}\n  }}\n}}\n", body)
         : fmt::format("class C {{\n  void m() {{\n    {}\n  }}\n}}\n", body);
  auto stmts = Extract(ts ? "a.ts" : "A.java", text);
  std::vector<Statement> calls;
  for (Statement& s : stmts) {
    if (s.kind != StatementKind::kOther) calls.push_back(std::move(s));
  }
  EXPECT_EQ(calls.size(), 1u) << text;
  return calls.empty() ? Statement{} : calls[0];
}

TEST(StatementTest, ChainDisplay) {
  EXPECT_EQ(ChainDisplay({"users", "email"}), "users.email");
  EXPECT_EQ(ChainDisplay({}), "");
}

TEST(StatementTest, NormalizeChain) {
  EXPECT_EQ(NormalizeChain("this.users[0].email"), (Chain{"users", "email"}));
  EXPECT_EQ(NormalizeChain("a?.b"), (Chain{"a", "b"}));
  EXPECT_EQ(NormalizeChain("x"), (Chain{"x"}));
  EXPECT_EQ(NormalizeChain("a[i][j].b"), (Chain{"a", "b"}));
  EXPECT_TRUE(NormalizeChain("a + b").empty());
  EXPECT_TRUE(NormalizeChain("f(x)").empty());
  EXPECT_TRUE(NormalizeChain("").empty());
}

TEST(StatementTest, MakeSourceFile) {
  auto ok = MakeSourceFile("x/A.java", "class A {}");
  ASSERT_TRUE(ok.ok());
  EXPECT_EQ(ok->language, Language::kJava);
  EXPECT_TRUE(IsErrorKind(MakeSourceFile("a.rb", "").status(),
                          ErrorKind::kUnsupportedLanguage));
  EXPECT_TRUE(IsErrorKind(MakeSourceFile("a.ts", "x = '\xff';").status(),
                          ErrorKind::kUndecodable));
}

TEST(StatementTest, AssignmentWithCall) {
  Statement s = One("full_name = retrieve(record_data,2);");
  EXPECT_EQ(s.kind, StatementKind::kAssignment);
  EXPECT_EQ(s.target, (Chain{"full_name"}));
  ASSERT_TRUE(s.call.has_value());
  EXPECT_TRUE(s.call->receiver.empty());
  EXPECT_EQ(s.call->callee, "retrieve");
  ASSERT_EQ(s.call->args.size(), 2u);
  EXPECT_EQ(s.call->args[0].kind, ArgKind::kIdentifier);
  EXPECT_EQ(s.call->args[0].chain, (Chain{"record_data"}));
  EXPECT_EQ(s.call->args[1].kind, ArgKind::kNumberLiteral);
  EXPECT_EQ(s.text, "full_name = retrieve(record_data,2)");
}

TEST(StatementTest, CharLiteralArg) {
  Statement s = One("isFemale = check(user_detail,'F');");
  ASSERT_EQ(s.call->args.size(), 2u);
  EXPECT_EQ(s.call->args[1].kind, ArgKind::kStringLiteral);
  EXPECT_EQ(s.call->args[1].literal, "F");
}

TEST(StatementTest, ReceiverAndCallee) {
  Statement s = One("AccountInfo.update(userId,index);");
  EXPECT_EQ(s.kind, StatementKind::kExpressionCall);
  EXPECT_TRUE(s.target.empty());
  EXPECT_EQ(s.call->receiver, (Chain{"AccountInfo"}));
  EXPECT_EQ(s.call->callee, "update");
  EXPECT_EQ(s.call->callee_text, "AccountInfo.update");
  EXPECT_EQ(s.call->direct_args, 2u);
}

TEST(StatementTest, AwaitAndThisAreStripped) {
  Statement s = One(
      "UserInfo = await this.usersRepository.findOne(email, options);", true);
  EXPECT_EQ(s.kind, StatementKind::kAssignment);
  EXPECT_EQ(s.target, (Chain{"UserInfo"}));
  EXPECT_EQ(s.call->receiver, (Chain{"usersRepository"}));
  EXPECT_EQ(s.call->callee, "findOne");
  EXPECT_EQ(s.call->callee_text, "this.usersRepository.findOne");
}

TEST(StatementTest, MemberArgument) {
  Statement s = One("query = createQueryBuilder(users.email_addr);", true);
  ASSERT_EQ(s.call->args.size(), 1u);
  EXPECT_EQ(s.call->args[0].chain, (Chain{"users", "email_addr"}));
  EXPECT_EQ(s.call->args[0].text, "users.email_addr");
}

TEST(StatementTest, DeclarationsYieldTargets) {
  Statement java = One("String email = user.getEmail();");
  EXPECT_EQ(java.kind, StatementKind::kAssignment);
  EXPECT_EQ(java.target, (Chain{"email"}));
  EXPECT_EQ(java.call->receiver, (Chain{"user"}));
  Statement generic = One("List<String> names = repo.findAll();");
  EXPECT_EQ(generic.target, (Chain{"names"}));
  Statement ts = One("const phone: string = get(user);", true);
  EXPECT_EQ(ts.target, (Chain{"phone"}));
  Statement member = One("this.profile.email = load(x);", true);
  EXPECT_EQ(member.target, (Chain{"profile", "email"}));
}

TEST(StatementTest, CompoundAssignment) {
  Statement s = One("total += compute(salary);");
  EXPECT_EQ(s.kind, StatementKind::kAssignment);
  EXPECT_EQ(s.target, (Chain{"total"}));
}

TEST(StatementTest, ChainedCallFirstIsTheSink) {
  Statement s = One("x = repo.find(email).sort(order);", true);
  EXPECT_EQ(s.call->callee, "find");
  EXPECT_EQ(s.call->receiver, (Chain{"repo"}));
  EXPECT_EQ(s.call->direct_args, 1u);
  ASSERT_EQ(s.call->args.size(), 2u);
  EXPECT_EQ(s.call->args[1].chain, (Chain{"order"}));
  ASSERT_FALSE(s.call->nested.empty());
}

TEST(StatementTest, NestedCallsInArguments) {
  Statement s = One("send(format(email), phone);", true);
  EXPECT_EQ(s.call->callee, "send");
  ASSERT_EQ(s.call->args.size(), 2u);
  EXPECT_EQ(s.call->args[0].kind, ArgKind::kOther);
  EXPECT_EQ(s.call->args[0].inner_chains, (std::vector<Chain>{{"email"}}));
  ASSERT_EQ(s.call->nested.size(), 1u);
  EXPECT_EQ(s.call->nested[0].callee, "format");
  EXPECT_EQ(s.call->nested[0].depth, 1);
}

TEST(StatementTest, StringLiteralArgument) {
  Statement s = One("log(\"contact noreply@test.org\");", true);
  ASSERT_EQ(s.call->args.size(), 1u);
  EXPECT_EQ(s.call->args[0].kind, ArgKind::kStringLiteral);
  EXPECT_EQ(s.call->args[0].literal, "contact noreply@test.org");
}

TEST(StatementTest, AssignmentWithoutCall) {
  Statement s = One("alias = email;", true);
  EXPECT_EQ(s.kind, StatementKind::kAssignment);
  EXPECT_FALSE(s.call.has_value());
}

TEST(StatementTest, PlainStatementsAreOther) {
  auto stmts = Extract("a.ts", "import { x } from 'y';\nlet n;\nif (a) {}\n");
  for (const Statement& s : stmts) EXPECT_EQ(s.kind, StatementKind::kOther);
}

TEST(StatementTest, SpansAreOneBasedAndHalfOpen) {
  std::string text = "class C {\n  void m() {\n    a = f(b);\n  }\n}\n";
  auto stmts = Extract("C.java", text);
  const Statement* s = nullptr;
  for (const Statement& st : stmts) {
    if (st.kind == StatementKind::kAssignment) s = &st;
  }
  ASSERT_NE(s, nullptr);
  EXPECT_EQ(s->span.start, (Position{3, 5}));
  EXPECT_EQ(s->span.end, (Position{3, 13}));
  EXPECT_EQ(text.substr(s->span.begin_offset,
                        s->span.end_offset - s->span.begin_offset),
            "a = f(b)");
}

TEST(StatementTest, ColumnsCountCodePoints) {
  std::string text = "// \xc3\xa9\xc3\xa9\nx = \"\xc3\xa9\"; y = f(z);\n";
  auto stmts = Extract("a.js", text);
  ASSERT_EQ(stmts.size(), 2u);
  EXPECT_EQ(stmts[1].span.start, (Position{2, 10}));
}

TEST(StatementTest, AllPatternExampleStatementsAreExtracted) {
  auto stmts = Extract(
      "t.java",
      testing::ReadFileOrDie(testing::TestdataPath("pattern_examples.java")));
  int calls = 0;
  for (const Statement& s : stmts) calls += s.call.has_value();
  EXPECT_EQ(calls, 8);
}

TEST(StatementTest, LambdaBodiesGetTheirOwnScope) {
  std::string text =
      "function f() {\n"
      "  items.forEach((u) => {\n"
      "    send(u.email);\n"
      "  });\n"
      "}\n";
  auto stmts = Extract("a.js", text);
  const Statement* outer = nullptr;
  const Statement* inner = nullptr;
  for (const Statement& s : stmts) {
    if (s.call && s.call->callee == "forEach") outer = &s;
    if (s.call && s.call->callee == "send") inner = &s;
  }
  ASSERT_NE(outer, nullptr);
  ASSERT_NE(inner, nullptr);
  EXPECT_NE(outer->scope_id, inner->scope_id);
  EXPECT_LE(outer->span.begin_offset, inner->span.begin_offset);
  EXPECT_GE(outer->span.end_offset, inner->span.end_offset);
  EXPECT_EQ(inner->call->args[0].chain, (Chain{"u", "email"}));
}

TEST(StatementTest, SeparateMethodsGetSeparateScopes) {
  auto stmts = Extract("A.java",
                       "class A {\n void a() { x = f(y); }\n"
                       " void b() { z = g(w); }\n}\n");
  std::vector<int> scopes;
  for (const Statement& s : stmts) {
    if (s.call) scopes.push_back(s.scope_id);
  }
  ASSERT_EQ(scopes.size(), 2u);
  EXPECT_NE(scopes[0], scopes[1]);
}

TEST(StatementTest, AsiWithoutSemicolons) {
  auto stmts = Extract("a.js", "a = f(b)\nc = g(d)\n");
  ASSERT_EQ(stmts.size(), 2u);
  EXPECT_EQ(stmts[0].target, (Chain{"a"}));
  EXPECT_EQ(stmts[1].target, (Chain{"c"}));
}

TEST(StatementTest, JavaCastIsSkipped) {
  Statement s = One("String e = (String) repo.get(email);");
  EXPECT_EQ(s.call->callee, "get");
  EXPECT_EQ(s.call->receiver, (Chain{"repo"}));
}

TEST(StatementTest, EmptyAndGarbageInput) {
  EXPECT_TRUE(Extract("a.ts", "").empty());
  Extract("a.ts", "}}}{{{((()))]]]");
  Extract("A.java", "class { void ( = = ; } )");
}

// For arbitrary input, statements are ordered by start, their text is the
// exact slice at their span and spans are laminar (disjoint or nested).
TEST(StatementTest, FuzzInvariants) {
  const std::vector<std::string> pieces = {
      "a", "b.c", "email", "=",  "(",   ")",      "{",     "}",      ";",
      ",", "\n",  "f",     "=>", "'x'", "1",      "this.", "await ", "return ",
      "[", "]",   "`t`",   "/",  ".",   "const ", "->",    "new "};
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1);
  std::uniform_int_distribution<int> len(0, 60);
  for (int i = 0; i < 3000; ++i) {
    std::string src;
    for (int k = len(rng); k > 0; --k) src += pieces[pick(rng)];
    for (const char* path : {"A.java", "a.ts"}) {
      auto stmts = Extract(path, src);
      for (std::size_t j = 0; j < stmts.size(); ++j) {
        const Span& sp = stmts[j].span;
        ASSERT_LE(sp.begin_offset, sp.end_offset) << src;
        ASSERT_LE(sp.end_offset, src.size()) << src;
        ASSERT_EQ(stmts[j].text,
                  src.substr(sp.begin_offset, sp.end_offset - sp.begin_offset));
        if (j == 0) continue;
        const Span& prev = stmts[j - 1].span;
        ASSERT_LE(prev.begin_offset, sp.begin_offset) << src;
        for (std::size_t k = 0; k < j; ++k) {
          const Span& o = stmts[k].span;
          bool disjoint = o.end_offset <= sp.begin_offset;
          bool nested = o.begin_offset <= sp.begin_offset &&
                        sp.end_offset <= o.end_offset;
          ASSERT_TRUE(disjoint || nested) << src;
        }
      }
    }
  }
}

}  // namespace
}  // namespace pdflow
