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

#include "pdflow/taint.h"

#include <string>
#include <vector>

#include "fmt/format.h"
#include "gtest/gtest.h"
#include "pdflow/patterns.h"
#include "support/test_util.h"

namespace pdflow {
namespace {

using testing::ScanText;

class TaintTest : public ::testing::Test {
 protected:
  MatchCache cache_{DefaultRulePack()};
  TaintSet taint_;
};

TEST_F(TaintTest, CategoryOfFinalSegment) {
  auto ref = CategoryOf({"users", "email_addr"}, taint_, cache_);
  ASSERT_TRUE(ref.has_value());
  EXPECT_EQ(ref->display, "users.email_addr");
  EXPECT_EQ(ref->matched, "email_addr");
  EXPECT_EQ(ref->stem, "email");
  EXPECT_EQ(ref->rule_id, "src.email");
  EXPECT_EQ(ref->categories, (std::vector{SourceCategory::kContact}));
  EXPECT_EQ(ref->origin, TaintOrigin::kSeeded);
  EXPECT_EQ(ref->confidence, Confidence::kHigh);
}

TEST_F(TaintTest, CategoryOfFallsBackToEarlierSegments) {
  auto ref = CategoryOf({"email", "length"}, taint_, cache_);
  ASSERT_TRUE(ref.has_value());
  EXPECT_EQ(ref->matched, "email");
  EXPECT_EQ(ref->display, "email.length");
  EXPECT_FALSE(CategoryOf({"options", "index"}, taint_, cache_).has_value());
}

TEST_F(TaintTest, CategoryOfUsesTaintSetOnPrefixes) {
  taint_["choice"] = TaintedVar{"choice", {SourceCategory::kAccount},
                                "user",   TaintOrigin::kDerived,
                                "abc",    Confidence::kHigh};
  auto ref = CategoryOf({"choice", "value"}, taint_, cache_);
  ASSERT_TRUE(ref.has_value());
  EXPECT_EQ(ref->origin, TaintOrigin::kDerived);
  EXPECT_EQ(ref->rule_id, "derived");
  EXPECT_EQ(ref->derived_from, "abc");
  EXPECT_EQ(ref->stem, "user");
}

TEST_F(TaintTest, ReceiverUsesOnlyTheFinalSegment) {
  EXPECT_FALSE(
      ReceiverCategoryOf({"user", "organizationUsers"}, taint_, cache_));
  auto ref = ReceiverCategoryOf({"repo", "UserInfo"}, taint_, cache_);
  ASSERT_TRUE(ref.has_value());
  EXPECT_EQ(ref->position, SourcePosition::kReceiver);
  EXPECT_EQ(ref->rule_id, "src.user");
}

TEST(TaintNamesTest, Names) {
  EXPECT_EQ(ConfidenceName(Confidence::kHigh), "high");
  EXPECT_EQ(ConfidenceName(Confidence::kLow), "low");
  EXPECT_EQ(TaintOriginName(TaintOrigin::kSeeded), "seeded");
  EXPECT_EQ(TaintOriginName(TaintOrigin::kDerived), "derived");
  EXPECT_EQ(SourcePositionName(SourcePosition::kTarget), "target");
  EXPECT_EQ(SourcePositionName(SourcePosition::kLiteralArg), "literal-arg");
}

std::string Method(std::string_view body) {
  return fmt::format("class T {{\n  void m() {{\n{}  }}\n}}\n", body);
}

TEST(AnalyzeTest, SolidFlowIntoPlainTargetPropagates) {
  auto with = ScanText("T.java", Method("choice = UserInfo.retrieve(2);\n"
                                        "send(choice);\n"));
  ASSERT_EQ(with.size(), 2u);
  EXPECT_EQ(with[0].instance.shape, FlowShape::kP5);
  EXPECT_EQ(with[1].instance.shape, FlowShape::kP8);
  EXPECT_EQ(with[1].instance.rendered, "choice -send-> send(choice)");
  EXPECT_EQ(with[1].source.origin, TaintOrigin::kDerived);
  EXPECT_EQ(with[1].source.derived_from, with[0].id);
  EXPECT_EQ(with[1].source.categories, with[0].source.categories);
  auto without = ScanText(
      "T.java", Method("choice = UserInfo.retrieve(2);\nsend(choice);\n"),
      /*propagate=*/false);
  EXPECT_EQ(without.size(), 1u);
}

TEST(AnalyzeTest, DashedFlowDoesNotPropagate) {
  auto f = ScanText("T.java", Method("ok = check(email);\nsend(ok);\n"));
  ASSERT_EQ(f.size(), 1u);
  EXPECT_EQ(f[0].instance.shape, FlowShape::kP4);
}

TEST(AnalyzeTest, FirstDerivationWins) {
  auto f = ScanText("T.java", Method("x = get(email);\n"
                                     "x = get(phone);\n"
                                     "send(x);\n"));
  ASSERT_EQ(f.size(), 3u);
  EXPECT_EQ(f[1].instance.shape, FlowShape::kP2);
  EXPECT_EQ(f[2].source.stem, "email");
  EXPECT_EQ(f[2].source.derived_from, f[0].id);
}

TEST(AnalyzeTest, TaintIsScopeLocal) {
  auto f = ScanText("T.java",
                    "class T {\n"
                    "  void a() { choice = retrieve(email); }\n"
                    "  void b() { send(choice); }\n"
                    "}\n");
  EXPECT_EQ(f.size(), 1u);
}

TEST(AnalyzeTest, TaintDoesNotFlowBackwards) {
  auto f = ScanText("T.java", Method("send(choice);\n"
                                     "choice = retrieve(email);\n"));
  ASSERT_EQ(f.size(), 1u);
  EXPECT_EQ(f[0].instance.shape, FlowShape::kP5);
}

TEST(AnalyzeTest, LiteralSourcesAreLowConfidence) {
  auto f = ScanText("a.ts", Method("log(\"contact noreply@test.org\");\n"));
  ASSERT_EQ(f.size(), 1u);
  EXPECT_EQ(f[0].confidence, Confidence::kLow);
  EXPECT_EQ(f[0].source.position, SourcePosition::kLiteralArg);
  EXPECT_EQ(f[0].source.rule_id, "lit.email");
  EXPECT_EQ(f[0].source.display, "\"noreply@test.org\"");
  EXPECT_EQ(f[0].sink.category, SinkCategory::kLog);
}

TEST(AnalyzeTest, DerivedFromLiteralKeepsLowConfidence) {
  auto f = ScanText("a.ts", Method("x = format(\"a@b.io\");\nsend(x);\n"));
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f[1].confidence, Confidence::kLow);
}

TEST(AnalyzeTest, NoSinkOrNoSourceGivesNothing) {
  EXPECT_TRUE(ScanText("T.java", Method("x = compute(email);\n")).empty());
  EXPECT_TRUE(ScanText("T.java", Method("send(index);\n")).empty());
  EXPECT_TRUE(ScanText("T.java", Method("login(email);\n")).empty());
  EXPECT_TRUE(ScanText("T.java", Method("x = surgeon_name;\n")).empty());
}

std::vector<const Statement*> Ptrs(const std::vector<Statement>& v) {
  std::vector<const Statement*> out;
  for (const Statement& s : v) out.push_back(&s);
  return out;
}

TEST(AnalyzeTest, StatsCountNonFindings) {
  auto stmts = testing::Extract(
      "T.java", Method("x = compute(email);\n"     // source only
                       "send(index);\n"            // sink only
                       "y = wrap(send(phone));\n"  // sink nested only
                       "z = get(phone);\n"));      // flow
  MatchCache cache(DefaultRulePack());
  ScopeStats stats;
  auto flows = AnalyzeScope(Ptrs(stmts), cache, {}, &stats);
  EXPECT_EQ(flows.size(), 1u);
  EXPECT_EQ(stats.flows, 1u);
  // The nested sink is not the statement's sink, so that statement is also
  // source-only.
  EXPECT_EQ(stats.source_only, 2u);
  EXPECT_EQ(stats.sink_only, 1u);
  EXPECT_EQ(stats.inner_sink_matches, 1u);
  EXPECT_EQ(stats.statements, stmts.size());
}

TEST(AnalyzeTest, StatsAccumulate) {
  ScopeStats a{1, 2, 3, 4, 5, 6, 7};
  a += ScopeStats{1, 1, 1, 1, 1, 1, 1};
  EXPECT_EQ(a.statements, 2u);
  EXPECT_EQ(a.flows, 8u);
}

TEST(AnalyzeTest, SourcesAreOrderedTargetReceiverArgs) {
  auto stmts = testing::Extract(
      "a.ts", Method("email = UserInfo.update(phone, 'x');\n"));
  MatchCache cache(DefaultRulePack());
  auto flows = AnalyzeScope(Ptrs(stmts), cache, {});
  ASSERT_EQ(flows.size(), 1u);
  ASSERT_EQ(flows[0].sources.size(), 3u);
  EXPECT_EQ(flows[0].sources[0].position, SourcePosition::kTarget);
  EXPECT_EQ(flows[0].sources[1].position, SourcePosition::kReceiver);
  EXPECT_EQ(flows[0].sources[2].position, SourcePosition::kArg);
  EXPECT_EQ(flows[0].sources[2].index, 0);
  EXPECT_EQ(flows[0].sink->id, "dpv.update");
}

}  // namespace
}  // namespace pdflow
