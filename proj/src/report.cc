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

#include "pdflow/report.h"

#include <algorithm>
#include <map>
#include <utility>

#include "fmt/format.h"
#include "nlohmann/json.hpp"

namespace pdflow {
namespace {

using nlohmann::json;

constexpr std::string_view kSarifSchema =
    "https://json.schemastore.org/sarif-2.1.0.json";

bool IsUnreserved(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '-' || c == '.' || c == '_' ||
         c == '~' || c == '/';
}

// Percent-encodes everything but unreserved characters and '/', which turns
// any relative path into a valid URI reference.
std::string PathToUri(std::string_view path) {
  std::string out;
  for (unsigned char c : path) {
    if (c == '\\') c = '/';
    if (IsUnreserved(c)) {
      out += static_cast<char>(c);
    } else {
      out += fmt::format("%{:02X}", c);
    }
  }
  return out;
}

std::string SourceCategoryLabel(const SourceRef& source) {
  return source.categories.empty()
             ? std::string("?")
             : std::string(Abbreviation(source.categories.front()));
}

std::string ResultMessage(const Finding& f) {
  std::string origin =
      f.source.origin == TaintOrigin::kDerived
          ? fmt::format(", derived from {}", f.source.derived_from)
          : std::string();
  return fmt::format(
      "Personal data source '{}' ({}{}) flows into sink '{}' ({}): {}",
      f.source.display, SourceCategoryLabel(f.source), origin, f.sink.text,
      Abbreviation(f.sink.category), f.instance.rendered);
}

json RuleEntry(const Finding& f, const std::string& id) {
  std::string source_cat = SourceCategoryLabel(f.source);
  std::string source_name =
      f.source.categories.empty()
          ? std::string("unknown")
          : std::string(DisplayName(f.source.categories.front()));
  std::string text =
      fmt::format("{} data flows into a {} sink ({} pattern)", source_name,
                  DisplayName(f.sink.category), ShapeName(f.instance.shape));
  return json{
      {"id", id},
      {"name", fmt::format("{}To{}{}", source_cat,
                           Abbreviation(f.sink.category) == "C/D"
                               ? std::string("CD")
                               : std::string(Abbreviation(f.sink.category)),
                           ShapeName(f.instance.shape))},
      {"shortDescription", {{"text", text}}},
      {"defaultConfiguration", {{"level", "note"}}},
      {"properties",
       {{"sourceCategory", source_cat},
        {"sinkCategory", std::string(Abbreviation(f.sink.category))},
        {"pattern", std::string(ShapeName(f.instance.shape))}}}};
}

std::string EscapeMermaid(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '"':
        out += "#quot;";
        break;
      case '<':
        out += "#lt;";
        break;
      case '>':
        out += "#gt;";
        break;
      case '#':
        out += "#35;";
        break;
      case '\n':
      case '\r':
        out += ' ';
        break;
      default:
        out += c;
    }
  }
  return out;
}

void EmitNode(const TypeNode& node, int& next_id, std::string& nodes,
              std::string& edges) {
  int id = next_id++;
  nodes += fmt::format("  n{}[\"{} ({})\"]\n", id, EscapeMermaid(node.name),
                       node.count);
  for (const TypeNode& child : node.children) {
    edges += fmt::format("  n{} --> n{}\n", id, next_id);
    EmitNode(child, next_id, nodes, edges);
  }
}

}  // namespace

std::string SarifRuleId(const Finding& f) {
  return fmt::format("pdflow/{}/{}/{}", SourceCategoryLabel(f.source),
                     Abbreviation(f.sink.category),
                     ShapeName(f.instance.shape));
}

std::string EmitSarif(const FindingsDocument& doc) {
  std::map<std::string, const Finding*> rule_examples;
  for (const Finding& f : doc.findings) {
    rule_examples.emplace(SarifRuleId(f), &f);
  }
  json rules = json::array();
  std::map<std::string, int> rule_index;
  for (const auto& [id, example] : rule_examples) {
    rule_index[id] = static_cast<int>(rules.size());
    rules.push_back(RuleEntry(*example, id));
  }
  json results = json::array();
  for (const Finding& f : doc.findings) {
    std::string rule_id = SarifRuleId(f);
    json region = {{"startLine", std::max(1, f.span.start.line)},
                   {"startColumn", std::max(1, f.span.start.column)},
                   {"endLine", std::max(1, f.span.end.line)},
                   {"endColumn", std::max(1, f.span.end.column)},
                   {"snippet", {{"text", f.snippet}}}};
    results.push_back(json{
        {"ruleId", rule_id},
        {"ruleIndex", rule_index[rule_id]},
        {"level", f.confidence == Confidence::kHigh ? "warning" : "note"},
        {"message", {{"text", ResultMessage(f)}}},
        {"locations",
         json::array({{{"physicalLocation",
                        {{"artifactLocation", {{"uri", PathToUri(f.path)}}},
                         {"region", std::move(region)}}}}})},
        {"partialFingerprints", {{"pdflowFindingId/v1", f.id}}},
        {"properties",
         {{"findingId", f.id},
          {"source", f.source.display},
          {"sourceStem", f.source.stem},
          {"sink", f.sink.text},
          {"flowInstance", f.instance.rendered},
          {"confidence", std::string(ConfidenceName(f.confidence))}}}});
  }
  json driver = {
      {"name", doc.tool.name},
      {"version", doc.tool.version},
      {"rules", std::move(rules)},
      {"properties", {{"rulepackVersion", doc.tool.rulepack_version}}}};
  json sarif = {
      {"$schema", std::string(kSarifSchema)},
      {"version", "2.1.0"},
      {"runs", json::array({{{"tool", {{"driver", std::move(driver)}}},
                             {"columnKind", "unicodeCodePoints"},
                             {"results", std::move(results)}}})}};
  return sarif.dump(2, ' ', false, json::error_handler_t::replace) + "\n";
}

std::string EmitMermaid(const DataTypeTree& tree) {
  std::string nodes;
  std::string edges;
  int next_id = 0;
  EmitNode(tree.root, next_id, nodes, edges);
  return "flowchart TD\n" + nodes + edges;
}

}  // namespace pdflow
