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

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <map>
#include <set>
#include <tuple>
#include <utility>

#include "absl/strings/str_join.h"
#include "fmt/format.h"
#include "pdflow/status.h"

namespace pdflow {
namespace {

struct KeyName {
  ViewKey key;
  std::string_view name;
};

// Canonical names first; ViewKeyName returns the first hit.
constexpr std::array<KeyName, 13> kKeyNames = {{
    {ViewKey::kNone, "none"},
    {ViewKey::kSourceStem, "source-stem"},
    {ViewKey::kSourceCategory, "source-category"},
    {ViewKey::kSinkCategory, "sink-category"},
    {ViewKey::kSinkName, "sink-name"},
    {ViewKey::kFile, "file"},
    {ViewKey::kPatternShape, "pattern-shape"},
    {ViewKey::kConfidence, "confidence"},
    {ViewKey::kSourceStem, "stem"},
    {ViewKey::kSourceCategory, "category"},
    {ViewKey::kSinkName, "sink"},
    {ViewKey::kFile, "path"},
    {ViewKey::kPatternShape, "shape"},
}};

// Orders children by count desc, then name asc, recursively.
void SortTree(TypeNode& node) {
  std::sort(node.children.begin(), node.children.end(),
            [](const TypeNode& a, const TypeNode& b) {
              return std::tie(b.count, a.name) < std::tie(a.count, b.name);
            });
  for (TypeNode& child : node.children) SortTree(child);
}

std::string VariantName(const SourceRef& source) {
  return source.matched.empty() ? source.display : source.matched;
}

std::vector<CategoryCount> ToCounts(
    const std::array<std::int64_t, kNumSourceCategories>& counts) {
  std::vector<CategoryCount> out;
  for (SourceCategory c : kAllSourceCategories) {
    if (counts[Index(c)] > 0) out.push_back({c, counts[Index(c)]});
  }
  return out;
}

}  // namespace

DataTypeTree BuildTypeView(const std::vector<Finding>& findings) {
  std::map<SourceCategory, std::map<std::string, std::map<std::string, int>>>
      counts;
  DataTypeTree tree;
  tree.root.name = std::string(kTypeTreeRoot);
  for (const Finding& f : findings) {
    if (f.source.categories.empty()) continue;
    ++tree.root.count;
    for (SourceCategory c : f.source.categories) {
      ++counts[c][f.source.stem][VariantName(f.source)];
    }
  }
  for (const auto& [category, stems] : counts) {
    TypeNode cat{std::string(Abbreviation(category)), 0, {}};
    for (const auto& [stem, variants] : stems) {
      TypeNode stem_node{stem, 0, {}};
      for (const auto& [variant, n] : variants) {
        stem_node.children.push_back({variant, n, {}});
        stem_node.count += n;
      }
      cat.count += stem_node.count;
      cat.children.push_back(std::move(stem_node));
    }
    tree.root.children.push_back(std::move(cat));
  }
  SortTree(tree.root);
  return tree;
}

std::string_view ViewKeyName(ViewKey key) {
  for (const KeyName& k : kKeyNames) {
    if (k.key == key) return k.name;
  }
  return "none";
}

absl::StatusOr<ViewKey> ParseViewKey(std::string_view name) {
  for (const KeyName& k : kKeyNames) {
    if (k.name == name) return k.key;
  }
  return MakeError(ErrorKind::kUnknownKey,
                   fmt::format("unknown key '{}'", name));
}

absl::StatusOr<FlowFilter> ParseFlowFilter(std::string_view text) {
  std::size_t sep = text.find_first_of("=:");
  if (sep == std::string_view::npos) {
    return MakeError(ErrorKind::kUnknownKey,
                     fmt::format("filter '{}' is not key=value", text));
  }
  absl::StatusOr<ViewKey> key = ParseViewKey(text.substr(0, sep));
  if (!key.ok()) return key.status();
  if (*key == ViewKey::kNone) {
    return MakeError(ErrorKind::kUnknownKey, "cannot filter on 'none'");
  }
  FlowFilter filter{*key, std::string(text.substr(sep + 1))};
  auto bad_value = [&] {
    return MakeError(ErrorKind::kUnknownKey,
                     fmt::format("unknown value '{}' for key '{}'",
                                 filter.value, ViewKeyName(*key)));
  };
  switch (*key) {
    case ViewKey::kSourceCategory: {
      auto source = ParseSourceCategory(filter.value);
      if (!source) return bad_value();
      filter.value = std::string(Abbreviation(*source));
      break;
    }
    case ViewKey::kSinkCategory: {
      auto sink = ParseSinkCategory(filter.value);
      if (!sink) return bad_value();
      filter.value = std::string(Abbreviation(*sink));
      break;
    }
    case ViewKey::kPatternShape: {
      auto shape = ParseShape(filter.value);
      if (!shape) return bad_value();
      filter.value = std::string(ShapeName(*shape));
      break;
    }
    case ViewKey::kConfidence:
      if (filter.value != ConfidenceName(Confidence::kHigh) &&
          filter.value != ConfidenceName(Confidence::kLow)) {
        return bad_value();
      }
      break;
    default:
      break;
  }
  return filter;
}

std::vector<std::string> KeyValues(const Finding& f, ViewKey key) {
  switch (key) {
    case ViewKey::kNone:
      return {""};
    case ViewKey::kSourceStem:
      return {f.source.stem};
    case ViewKey::kSourceCategory: {
      std::vector<std::string> out;
      for (SourceCategory c : f.source.categories) {
        out.emplace_back(Abbreviation(c));
      }
      return out;
    }
    case ViewKey::kSinkCategory:
      return {std::string(Abbreviation(f.sink.category))};
    case ViewKey::kSinkName:
      return {f.sink.callee};
    case ViewKey::kFile:
      return {f.path};
    case ViewKey::kPatternShape:
      return {std::string(ShapeName(f.instance.shape))};
    case ViewKey::kConfidence:
      return {std::string(ConfidenceName(f.confidence))};
  }
  return {};
}

bool MatchesFilters(const Finding& f, const std::vector<FlowFilter>& filters) {
  std::map<ViewKey, bool> matched;
  for (const FlowFilter& filter : filters) {
    bool& any = matched[filter.key];
    if (any) continue;
    for (const std::string& v : KeyValues(f, filter.key)) {
      if (v == filter.value) any = true;
    }
  }
  return std::all_of(matched.begin(), matched.end(),
                     [](const auto& entry) { return entry.second; });
}

std::size_t FlowTable::row_count() const {
  std::size_t n = 0;
  for (const FlowGroup& g : groups) n += g.rows.size();
  return n;
}

FlowTableRow MakeFlowRow(const Finding& f) {
  FlowTableRow row;
  row.path = f.path;
  row.source = f.source.display;
  row.sink = f.sink.text.empty() ? f.sink.callee : f.sink.text;
  row.sink_type = std::string(Abbreviation(f.sink.category));
  row.instance = f.instance.rendered;
  row.id = f.id;
  row.confidence = std::string(ConfidenceName(f.confidence));
  row.stem = f.source.stem;
  row.span = f.span;
  return row;
}

absl::StatusOr<FlowTable> BuildFlowTable(
    const std::vector<Finding>& findings, ViewKey group_by,
    const std::vector<FlowFilter>& filters) {
  if (group_by == ViewKey::kConfidence) {
    return MakeError(ErrorKind::kUnknownKey, "cannot group by confidence");
  }
  std::map<std::string, std::vector<FlowTableRow>> groups;
  std::map<std::string, std::int64_t> stem_counts;
  for (const Finding& f : findings) {
    if (!MatchesFilters(f, filters)) continue;
    std::vector<std::string> keys = KeyValues(f, group_by);
    groups[keys.empty() ? std::string() : keys.front()].push_back(
        MakeFlowRow(f));
    ++stem_counts[f.source.stem];
  }
  FlowTable table;
  table.group_by = group_by;
  for (auto& [key, rows] : groups) {
    std::sort(rows.begin(), rows.end(),
              [&](const FlowTableRow& a, const FlowTableRow& b) {
                bool a_low = a.confidence != ConfidenceName(Confidence::kHigh);
                bool b_low = b.confidence != ConfidenceName(Confidence::kHigh);
                std::int64_t an = stem_counts[a.stem];
                std::int64_t bn = stem_counts[b.stem];
                return std::tie(a_low, bn, a.stem, a.path, a.span, a.id) <
                       std::tie(b_low, an, b.stem, b.path, b.span, b.id);
              });
    table.groups.push_back({key, std::move(rows)});
  }
  std::stable_sort(table.groups.begin(), table.groups.end(),
                   [](const FlowGroup& a, const FlowGroup& b) {
                     return a.rows.size() > b.rows.size();
                   });
  return table;
}

HeatmapStats BuildHeatmap(const std::vector<Finding>& findings) {
  HeatmapStats h;
  for (const Finding& f : findings) {
    ++h.findings;
    if (f.source.categories.size() > 1) ++h.multi_category_findings;
    for (SourceCategory c : f.source.categories) {
      ++h.cells[Index(c)][Index(f.sink.category)];
      ++h.row_totals[Index(c)];
      ++h.column_totals[Index(f.sink.category)];
      ++h.total;
    }
  }
  return h;
}

RopaSummary BuildRopa(const std::vector<Finding>& findings) {
  HeatmapStats h = BuildHeatmap(findings);
  RopaSummary ropa;
  for (SourceCategory c : kAllSourceCategories) {
    if (h.row_totals[Index(c)] > 0)
      ropa.categories_of_personal_data.push_back(c);
  }
  auto column = [&](SinkCategory sink) {
    std::array<std::int64_t, kNumSourceCategories> counts{};
    for (SourceCategory c : kAllSourceCategories) {
      counts[Index(c)] = h.cells[Index(c)][Index(sink)];
    }
    return counts;
  };
  std::array<std::int64_t, kNumSinkCategories> sink_findings{};
  for (const Finding& f : findings) {
    if (!f.source.categories.empty()) ++sink_findings[Index(f.sink.category)];
  }
  for (SinkCategory sink : kAllSinkCategories) {
    if (sink_findings[Index(sink)] == 0) continue;
    ProcessingEntry entry{sink, sink_findings[Index(sink)],
                          ToCounts(column(sink))};
    if (sink == SinkCategory::kDatabase ||
        sink == SinkCategory::kTransportation) {
      ropa.database_or_third_party_transfers.push_back(entry);
    }
    ropa.categories_of_processing.push_back(std::move(entry));
  }
  ropa.encryption_or_anonymization =
      ToCounts(column(SinkCategory::kEncryption));
  ropa.logging = ToCounts(column(SinkCategory::kLog));
  return ropa;
}

absl::StatusOr<std::vector<SourceCategory>> ParseDeclaredCategories(
    std::string_view yaml) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml));
  } catch (const YAML::Exception& e) {
    return MakeError(ErrorKind::kParseError,
                     fmt::format("declared categories: {}", e.what()));
  }
  YAML::Node list = root;
  if (root.IsMap()) {
    for (const auto& entry : root) {
      std::string key = entry.first.as<std::string>("");
      if (key != "declared") {
        return MakeError(
            ErrorKind::kParseError,
            fmt::format("declared categories: unexpected key '{}'", key));
      }
    }
    list = root["declared"];
  }
  if (root.IsNull() || (list && list.IsNull())) {
    return std::vector<SourceCategory>{};
  }
  if (!list || !list.IsSequence()) {
    return MakeError(ErrorKind::kParseError,
                     "declared categories: expected a list of abbreviations");
  }
  std::set<SourceCategory> out;
  for (const YAML::Node& item : list) {
    if (!item.IsScalar()) {
      return MakeError(ErrorKind::kParseError,
                       "declared categories: entries must be scalars");
    }
    std::string abbr = item.as<std::string>();
    auto parsed = ParseSourceCategory(abbr);
    if (!parsed) {
      return MakeError(ErrorKind::kUnknownKey,
                       fmt::format("unknown category '{}'", abbr));
    }
    out.insert(*parsed);
  }
  return std::vector<SourceCategory>(out.begin(), out.end());
}

CoverageDiff DiffCoverage(const RopaSummary& ropa,
                          const std::vector<SourceCategory>& declared) {
  std::set<SourceCategory> found(ropa.categories_of_personal_data.begin(),
                                 ropa.categories_of_personal_data.end());
  std::set<SourceCategory> decl(declared.begin(), declared.end());
  CoverageDiff diff;
  std::set_difference(found.begin(), found.end(), decl.begin(), decl.end(),
                      std::back_inserter(diff.undisclosed));
  std::set_difference(decl.begin(), decl.end(), found.begin(), found.end(),
                      std::back_inserter(diff.unused));
  if (diff.undisclosed.empty()) {
    diff.notation = "+";
  } else {
    std::vector<std::string> parts;
    for (SourceCategory c : diff.undisclosed) {
      parts.push_back(fmt::format("-{}", Abbreviation(c)));
    }
    diff.notation = absl::StrJoin(parts, ", ");
  }
  return diff;
}

}  // namespace pdflow
