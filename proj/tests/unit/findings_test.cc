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

#include "pdflow/findings.h"

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <tuple>

#include "fmt/format.h"
#include "gtest/gtest.h"
#include "nlohmann/json.hpp"
#include "pdflow/status.h"
#include "support/corpus.h"
#include "support/test_util.h"

namespace pdflow {
namespace {

using nlohmann::json;

FindingsDocument FixtureDoc() {
  FindingsDocument doc;
  doc.tool.rulepack_version = DefaultRulePack().version();
  for (const char* name : {"pattern_examples.java", "email_flows.ts"}) {
    auto f = testing::ScanText(
        name, testing::ReadFileOrDie(testing::TestdataPath(name)));
    doc.findings.insert(doc.findings.end(), f.begin(), f.end());
  }
  doc.stats.files = 2;
  doc.stats.statements = 40;
  SortFindings(doc.findings);
  return doc;
}

TEST(FindingsTest, RoundTripIsExact) {
  FindingsDocument doc = FixtureDoc();
  std::string text = EmitFindingsJson(doc);
  auto back = LoadFindingsJson(text);
  ASSERT_TRUE(back.ok()) << back.status();
  EXPECT_EQ(*back, doc);
  EXPECT_EQ(EmitFindingsJson(*back), text);
}

TEST(FindingsTest, CanonicalLayout) {
  std::string text = EmitFindingsJson(FixtureDoc());
  ASSERT_FALSE(text.empty());
  EXPECT_EQ(text.back(), '\n');
  EXPECT_EQ(text.rfind("{\n  \"findings\": [", 0), 0u);
  json j = json::parse(text);
  EXPECT_EQ(j["schema_version"], kFindingsSchemaVersion);
  EXPECT_EQ(j["tool"]["name"], "pdflow");
  EXPECT_EQ(j["stats"]["findings"], 15);
  EXPECT_FALSE(j["stats"].contains("elapsed_ms"));
}

TEST(FindingsTest, FindingJsonShape) {
  FindingsDocument doc = FixtureDoc();
  json f = FindingToJson(doc.findings[0]);
  for (const char* key : {"id", "path", "span", "snippet", "source",
                          "participants", "sink", "instance", "confidence"}) {
    EXPECT_TRUE(f.contains(key)) << key;
  }
  EXPECT_TRUE(f["span"].contains("start_line"));
  EXPECT_TRUE(f["span"].contains("end_offset"));
  EXPECT_TRUE(f["instance"]["shape"].is_string());
  EXPECT_TRUE(f["sink"]["category"].is_string());
  EXPECT_TRUE(f["source"]["categories"].is_array());
}

TEST(FindingsTest, ElapsedIsKeptWhenSet) {
  FindingsDocument doc;
  doc.stats.elapsed_ms = 42;
  auto back = LoadFindingsJson(EmitFindingsJson(doc));
  ASSERT_TRUE(back.ok());
  EXPECT_EQ(back->stats.elapsed_ms, 42);
}

TEST(FindingsTest, EmptyDocument) {
  FindingsDocument doc;
  auto back = LoadFindingsJson(EmitFindingsJson(doc));
  ASSERT_TRUE(back.ok()) << back.status();
  EXPECT_EQ(*back, doc);
}

json Mutable() { return json::parse(EmitFindingsJson(FixtureDoc())); }

void ExpectMismatch(const json& j, const std::string& what) {
  auto r = LoadFindingsJson(j.dump());
  ASSERT_FALSE(r.ok()) << what;
  EXPECT_TRUE(IsErrorKind(r.status(), ErrorKind::kSchemaMismatch))
      << what << ": " << r.status();
}

TEST(FindingsTest, RejectsMalformedDocuments) {
  EXPECT_TRUE(
      IsErrorKind(LoadFindingsJson("{").status(), ErrorKind::kSchemaMismatch));
  EXPECT_TRUE(
      IsErrorKind(LoadFindingsJson("[]").status(), ErrorKind::kSchemaMismatch));
  EXPECT_TRUE(
      IsErrorKind(LoadFindingsJson("").status(), ErrorKind::kSchemaMismatch));

  json j = Mutable();
  j["schema_version"] = 2;
  ExpectMismatch(j, "schema_version");

  j = Mutable();
  j.erase("tool");
  ExpectMismatch(j, "missing tool");

  j = Mutable();
  j["findings"][0]["instance"]["shape"] = "P9";
  ExpectMismatch(j, "bad shape");

  j = Mutable();
  j["findings"][0]["sink"]["category"] = "X";
  ExpectMismatch(j, "bad sink category");

  j = Mutable();
  j["findings"][0]["source"]["categories"] = json::array({"NOPE"});
  ExpectMismatch(j, "bad source category");

  j = Mutable();
  j["findings"][0]["confidence"] = "medium";
  ExpectMismatch(j, "bad confidence");

  j = Mutable();
  j["findings"][0]["span"]["start_line"] = "one";
  ExpectMismatch(j, "mistyped span");

  j = Mutable();
  j["findings"][0].erase("id");
  ExpectMismatch(j, "missing id");

  j = Mutable();
  j["stats"]["findings"] = 3;
  ExpectMismatch(j, "count disagrees");

  j = Mutable();
  j["findings"] = json::object();
  ExpectMismatch(j, "findings not an array");
}

TEST(FindingsTest, ErrorMessageNamesTheField) {
  json j = Mutable();
  j["findings"][2]["instance"]["shape"] = "P9";
  auto r = LoadFindingsJson(j.dump());
  ASSERT_FALSE(r.ok());
  EXPECT_NE(r.status().message().find("shape"), std::string_view::npos)
      << r.status();
}

TEST(FindingsTest, InvalidUtf8IsReplacedOnEmit) {
  FindingsDocument doc = FixtureDoc();
  doc.findings[0].snippet = "bad \xff byte";
  std::string text = EmitFindingsJson(doc);
  auto back = LoadFindingsJson(text);
  ASSERT_TRUE(back.ok());
  EXPECT_EQ(back->findings[0].snippet, "bad \xef\xbf\xbd byte");
}

TEST(FindingsTest, SortOrder) {
  FindingsDocument doc = FixtureDoc();
  std::vector<Finding> shuffled = doc.findings;
  std::mt19937 rng(3);
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  SortFindings(shuffled);
  EXPECT_EQ(shuffled, doc.findings);
  for (std::size_t i = 1; i < shuffled.size(); ++i) {
    const Finding& a = shuffled[i - 1];
    const Finding& b = shuffled[i];
    EXPECT_TRUE(std::tie(a.path, a.span, a.id) <
                std::tie(b.path, b.span, b.id));
  }
}

// Round trip over findings from many generated files, covering every shape,
// literal sources and derived sources.
TEST(FindingsTest, RoundTripOverGeneratedCorpus) {
  FindingsDocument doc;
  std::set<FlowShape> shapes;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Language lang = kAllLanguages[seed % 3];
    std::string path = fmt::format("gen/f{}.{}", seed,
                                   lang == Language::kJava ? "java" : "ts");
    auto f =
        testing::ScanText(path, testing::GenerateCorpusFile(seed, lang, 120));
    doc.findings.insert(doc.findings.end(), f.begin(), f.end());
  }
  SortFindings(doc.findings);
  for (const Finding& f : doc.findings) shapes.insert(f.instance.shape);
  EXPECT_EQ(shapes.size(), kAllShapes.size());
  std::string text = EmitFindingsJson(doc);
  auto back = LoadFindingsJson(text);
  ASSERT_TRUE(back.ok()) << back.status();
  EXPECT_EQ(*back, doc);
  EXPECT_EQ(EmitFindingsJson(*back), text);
}

}  // namespace
}  // namespace pdflow
