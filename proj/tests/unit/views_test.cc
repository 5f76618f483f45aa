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

#include "pdflow/views.h"

#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fmt/format.h"
#include "gtest/gtest.h"
#include "pdflow/status.h"
#include "support/corpus.h"
#include "support/test_util.h"

namespace pdflow {
namespace {

Finding Make(std::string path, int line, std::string stem,
             std::vector<SourceCategory> cats, SinkCategory sink,
             FlowShape shape = FlowShape::kP8,
             Confidence confidence = Confidence::kHigh,
             std::string matched = "") {
  Finding f;
  f.path = std::move(path);
  f.span.start = {line, 1};
  f.span.end = {line, 10};
  f.id = fmt::format("{}:{}", f.path, line);
  f.source.stem = stem;
  f.source.display = matched.empty() ? stem : matched;
  f.source.matched = f.source.display;
  f.source.categories = std::move(cats);
  f.source.confidence = confidence;
  f.confidence = confidence;
  f.sink.category = sink;
  f.sink.callee = "sink";
  f.sink.text = "sink";
  f.instance.shape = shape;
  f.instance.rendered = fmt::format("{} -sink-> sink({})", stem, stem);
  return f;
}

using SC = SourceCategory;
using KC = SinkCategory;

std::vector<Finding> Sample() {
  return {
      Make("a.ts", 1, "email", {SC::kContact}, KC::kDatabase, FlowShape::kP8,
           Confidence::kHigh, "email_addr"),
      Make("a.ts", 2, "email", {SC::kContact}, KC::kTransportation,
           FlowShape::kP5, Confidence::kHigh, "email"),
      Make("b.ts", 1, "email", {SC::kContact}, KC::kLog, FlowShape::kP8,
           Confidence::kLow, "\"x@y.io\""),
      Make("b.ts", 2, "ssn", {SC::kNationalId}, KC::kLog),
      Make("c.java", 5, "name", {SC::kPersonalId}, KC::kManipulation,
           FlowShape::kP1, Confidence::kHigh, "full_name"),
      Make("c.java", 6, "user", {SC::kAccount, SC::kHealth}, KC::kDatabase,
           FlowShape::kP8),
  };
}

TEST(TypeViewTest, HierarchyAndCounts) {
  DataTypeTree tree = BuildTypeView(Sample());
  EXPECT_EQ(tree.root.name, kTypeTreeRoot);
  EXPECT_EQ(tree.root.count, 6);
  ASSERT_EQ(tree.root.children.size(), 5u);
  const TypeNode& con = tree.root.children[0];
  EXPECT_EQ(con.name, "CON");
  EXPECT_EQ(con.count, 3);
  ASSERT_EQ(con.children.size(), 1u);
  const TypeNode& email = con.children[0];
  EXPECT_EQ(email.name, "email");
  EXPECT_EQ(email.count, 3);
  ASSERT_EQ(email.children.size(), 3u);
  // Ties on count are broken by name.
  EXPECT_EQ(email.children[0].name, "\"x@y.io\"");
  EXPECT_EQ(email.children[1].name, "email");
  EXPECT_EQ(email.children[2].name, "email_addr");
  // Count-1 categories in name order.
  std::vector<std::string> rest;
  for (std::size_t i = 1; i < tree.root.children.size(); ++i) {
    rest.push_back(tree.root.children[i].name);
  }
  EXPECT_EQ(rest, (std::vector<std::string>{"ACC", "HEA", "NID", "PID"}));
}

// Each node counts the distinct findings below it, children sort by count
// then name, and every leaf count sums to its stem count.
void CheckNode(const TypeNode& node, int depth) {
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    const TypeNode& c = node.children[i];
    sum += c.count;
    EXPECT_GT(c.count, 0);
    if (i > 0) {
      const TypeNode& p = node.children[i - 1];
      EXPECT_TRUE(p.count > c.count || (p.count == c.count && p.name < c.name))
          << p.name << " before " << c.name;
    }
    CheckNode(c, depth + 1);
  }
  if (depth >= 1 && !node.children.empty()) {
    EXPECT_EQ(sum, node.count);
  }
  if (depth == 0) {
    EXPECT_GE(sum, node.count);
  }
}

TEST(TypeViewTest, InvariantsOverGeneratedCorpus) {
  std::vector<Finding> all;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto f = testing::ScanText(
        fmt::format("g{}.ts", seed),
        testing::GenerateCorpusFile(seed, Language::kTypeScript, 150));
    all.insert(all.end(), f.begin(), f.end());
  }
  DataTypeTree tree = BuildTypeView(all);
  EXPECT_EQ(tree.root.count, static_cast<std::int64_t>(all.size()));
  CheckNode(tree.root, 0);
}

TEST(TypeViewTest, Empty) {
  DataTypeTree tree = BuildTypeView({});
  EXPECT_EQ(tree.root.count, 0);
  EXPECT_TRUE(tree.root.children.empty());
}

TEST(ViewKeyTest, NamesAndAliases) {
  const std::pair<const char*, ViewKey> cases[] = {
      {"none", ViewKey::kNone},
      {"source-stem", ViewKey::kSourceStem},
      {"stem", ViewKey::kSourceStem},
      {"source-category", ViewKey::kSourceCategory},
      {"category", ViewKey::kSourceCategory},
      {"sink-category", ViewKey::kSinkCategory},
      {"sink", ViewKey::kSinkName},
      {"sink-name", ViewKey::kSinkName},
      {"file", ViewKey::kFile},
      {"path", ViewKey::kFile},
      {"pattern-shape", ViewKey::kPatternShape},
      {"shape", ViewKey::kPatternShape},
      {"confidence", ViewKey::kConfidence},
  };
  for (const auto& [name, key] : cases) {
    auto got = ParseViewKey(name);
    ASSERT_TRUE(got.ok()) << name;
    EXPECT_EQ(*got, key) << name;
  }
  EXPECT_EQ(ViewKeyName(ViewKey::kSinkName), "sink-name");
  EXPECT_TRUE(
      IsErrorKind(ParseViewKey("colour").status(), ErrorKind::kUnknownKey));
}

TEST(FlowFilterTest, ParsesAndCanonicalizes) {
  auto f = ParseFlowFilter("stem=email");
  ASSERT_TRUE(f.ok());
  EXPECT_EQ(f->key, ViewKey::kSourceStem);
  EXPECT_EQ(f->value, "email");
  auto d = ParseFlowFilter("sink-category:D");
  ASSERT_TRUE(d.ok());
  EXPECT_EQ(d->value, "DB");
  auto shape = ParseFlowFilter("shape=p5");
  ASSERT_TRUE(shape.ok());
  EXPECT_EQ(shape->value, "P5");
  auto path = ParseFlowFilter("file=C:/x.ts");
  ASSERT_TRUE(path.ok());
  EXPECT_EQ(path->value, "C:/x.ts");
}

TEST(FlowFilterTest, Errors) {
  for (const char* bad : {"stem", "nope=1", "none=x", "category=XYZ",
                          "sink-category=Q", "shape=P0", "confidence=medium"}) {
    EXPECT_TRUE(
        IsErrorKind(ParseFlowFilter(bad).status(), ErrorKind::kUnknownKey))
        << bad;
  }
}

std::vector<FlowFilter> Filters(std::initializer_list<const char*> texts) {
  std::vector<FlowFilter> out;
  for (const char* t : texts) out.push_back(*ParseFlowFilter(t));
  return out;
}

TEST(FlowFilterTest, SameKeyOrDifferentKeysAnd) {
  auto sample = Sample();
  auto count = [&](std::initializer_list<const char*> texts) {
    auto filters = Filters(texts);
    int n = 0;
    for (const Finding& f : sample) n += MatchesFilters(f, filters);
    return n;
  };
  EXPECT_EQ(count({}), 6);
  EXPECT_EQ(count({"stem=email"}), 3);
  EXPECT_EQ(count({"stem=email", "stem=ssn"}), 4);
  EXPECT_EQ(count({"stem=email", "sink-category=L"}), 1);
  EXPECT_EQ(count({"stem=email", "stem=ssn", "sink-category=L"}), 2);
  EXPECT_EQ(count({"category=HEA"}), 1);
  EXPECT_EQ(count({"confidence=low"}), 1);
  EXPECT_EQ(count({"file=c.java", "shape=P1"}), 1);
}

TEST(FlowTableTest, EmailFlowsViewByStem) {
  auto findings = testing::ScanText(
      "server/src/x.ts",
      testing::ReadFileOrDie(testing::TestdataPath("email_flows.ts")));
  auto table =
      BuildFlowTable(findings, ViewKey::kNone, Filters({"stem=email"}));
  ASSERT_TRUE(table.ok());
  ASSERT_EQ(table->groups.size(), 1u);
  std::vector<std::string> types;
  for (const FlowTableRow& r : table->groups[0].rows)
    types.push_back(r.sink_type);
  EXPECT_EQ(types, (std::vector<std::string>{"DB", "DB", "DB", "C/D", "C/D",
                                             "T", "M"}));
  EXPECT_EQ(table->groups[0].rows[2].sink, "this.usersRepository.findOne");
  EXPECT_EQ(table->groups[0].rows[2].instance, "email+_ -findOne-> UserInfo");
}

TEST(FlowTableTest, RowRanking) {
  auto table = BuildFlowTable(Sample(), ViewKey::kNone, {});
  ASSERT_TRUE(table.ok());
  std::vector<std::string> ids;
  for (const auto& r : table->groups[0].rows) ids.push_back(r.id);
  // High confidence first, then the email stem (two high-confidence rows
  // plus one low), then single-finding stems by name.
  EXPECT_EQ(ids, (std::vector<std::string>{"a.ts:1", "a.ts:2", "c.java:5",
                                           "b.ts:2", "c.java:6", "b.ts:1"}));
}

TEST(FlowTableTest, GroupsOrderedBySizeThenKey) {
  auto table = BuildFlowTable(Sample(), ViewKey::kSinkCategory, {});
  ASSERT_TRUE(table.ok());
  std::vector<std::pair<std::string, std::size_t>> groups;
  for (const auto& g : table->groups) groups.emplace_back(g.key, g.rows.size());
  EXPECT_EQ(groups, (std::vector<std::pair<std::string, std::size_t>>{
                        {"DB", 2}, {"L", 2}, {"M", 1}, {"T", 1}}));
  EXPECT_EQ(table->row_count(), 6u);
}

TEST(FlowTableTest, SourceCategoryGroupsPartitionRows) {
  auto table = BuildFlowTable(Sample(), ViewKey::kSourceCategory, {});
  ASSERT_TRUE(table.ok());
  EXPECT_EQ(table->row_count(), 6u);
  std::set<std::string> keys;
  for (const auto& g : table->groups) keys.insert(g.key);
  EXPECT_EQ(keys.count("HEA"), 0u);
  EXPECT_EQ(keys.count("ACC"), 1u);
}

TEST(FlowTableTest, ConfidenceIsNotGroupable) {
  EXPECT_FALSE(BuildFlowTable(Sample(), ViewKey::kConfidence, {}).ok());
}

TEST(FlowTableTest, EveryGroupingPartitionsTheFilteredRows) {
  auto sample = Sample();
  for (ViewKey key :
       {ViewKey::kNone, ViewKey::kSourceStem, ViewKey::kSourceCategory,
        ViewKey::kSinkCategory, ViewKey::kSinkName, ViewKey::kFile,
        ViewKey::kPatternShape}) {
    auto table = BuildFlowTable(sample, key, Filters({"confidence=high"}));
    ASSERT_TRUE(table.ok());
    std::set<std::string> ids;
    for (const auto& g : table->groups) {
      for (const auto& r : g.rows) EXPECT_TRUE(ids.insert(r.id).second);
    }
    EXPECT_EQ(ids.size(), 5u) << ViewKeyName(key);
  }
}

// Independent count of (category, sink) pairs.
TEST(HeatmapTest, CountsMatchABruteForceTally) {
  auto sample = Sample();
  HeatmapStats h = BuildHeatmap(sample);
  std::map<std::pair<int, int>, std::int64_t> tally;
  for (const Finding& f : sample) {
    for (SourceCategory c : f.source.categories) {
      ++tally[{static_cast<int>(c), static_cast<int>(f.sink.category)}];
    }
  }
  std::int64_t total = 0;
  for (std::size_t r = 0; r < kNumSourceCategories; ++r) {
    for (std::size_t c = 0; c < kNumSinkCategories; ++c) {
      std::int64_t want = tally[{static_cast<int>(r), static_cast<int>(c)}];
      EXPECT_EQ(h.cells[r][c], want) << r << "," << c;
      total += want;
    }
  }
  EXPECT_EQ(h.total, total);
  EXPECT_EQ(h.total, 7);
  EXPECT_EQ(h.findings, 6);
  EXPECT_EQ(h.multi_category_findings, 1);
  EXPECT_EQ(h.column_totals[static_cast<int>(KC::kDatabase)], 3);
  EXPECT_EQ(h.row_totals[static_cast<int>(SC::kContact)], 3);
}

TEST(RopaTest, Sections) {
  RopaSummary ropa = BuildRopa(Sample());
  EXPECT_EQ(ropa.categories_of_personal_data,
            (std::vector{SC::kAccount, SC::kContact, SC::kPersonalId,
                         SC::kHealth, SC::kNationalId}));
  std::vector<SinkCategory> processing;
  for (const auto& p : ropa.categories_of_processing)
    processing.push_back(p.sink);
  EXPECT_EQ(processing, (std::vector{KC::kManipulation, KC::kTransportation,
                                     KC::kDatabase, KC::kLog}));
  ASSERT_EQ(ropa.database_or_third_party_transfers.size(), 2u);
  EXPECT_EQ(ropa.database_or_third_party_transfers[0].sink,
            KC::kTransportation);
  EXPECT_EQ(ropa.database_or_third_party_transfers[1].sink, KC::kDatabase);
  EXPECT_EQ(ropa.database_or_third_party_transfers[1].findings, 2);
  EXPECT_TRUE(ropa.encryption_or_anonymization.empty());
  ASSERT_EQ(ropa.logging.size(), 2u);
  EXPECT_EQ(ropa.logging[0], (CategoryCount{SC::kContact, 1}));
  EXPECT_EQ(ropa.logging[1], (CategoryCount{SC::kNationalId, 1}));
}

TEST(RopaTest, DeclaredCategories) {
  auto mapping = ParseDeclaredCategories("declared: [CON, PID]\n");
  ASSERT_TRUE(mapping.ok());
  EXPECT_EQ(*mapping, (std::vector{SC::kContact, SC::kPersonalId}));
  auto list = ParseDeclaredCategories("- ACC\n- LOC\n");
  ASSERT_TRUE(list.ok());
  EXPECT_EQ(list->size(), 2u);
  EXPECT_TRUE(IsErrorKind(ParseDeclaredCategories("[XYZ]").status(),
                          ErrorKind::kUnknownKey));
  EXPECT_TRUE(IsErrorKind(ParseDeclaredCategories("declared: [").status(),
                          ErrorKind::kParseError));
  EXPECT_TRUE(IsErrorKind(ParseDeclaredCategories("declared: 3").status(),
                          ErrorKind::kParseError));
}

TEST(RopaTest, CoverageDiff) {
  RopaSummary ropa = BuildRopa(Sample());
  CoverageDiff full =
      DiffCoverage(ropa, {SC::kAccount, SC::kContact, SC::kPersonalId,
                          SC::kHealth, SC::kNationalId, SC::kLocation});
  EXPECT_EQ(full.notation, "+");
  EXPECT_TRUE(full.undisclosed.empty());
  EXPECT_EQ(full.unused, (std::vector{SC::kLocation}));
  CoverageDiff partial = DiffCoverage(ropa, {SC::kContact, SC::kPersonalId});
  EXPECT_EQ(partial.notation, "-ACC, -HEA, -NID");
}

}  // namespace
}  // namespace pdflow
