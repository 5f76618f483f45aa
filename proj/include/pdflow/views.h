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

#ifndef PDFLOW_VIEWS_H_
#define PDFLOW_VIEWS_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "pdflow/categories.h"
#include "pdflow/patterns.h"

namespace pdflow {

// Every view files a finding under the categories of its primary source.
// A multi-category source (possible after propagation) counts once in each
// of its categories.

// Personal data type view: root -> category -> stem -> variant.
struct TypeNode {
  std::string name;
  std::int64_t count = 0;  // distinct findings below this node
  std::vector<TypeNode> children;

  bool operator==(const TypeNode&) const = default;
};

struct DataTypeTree {
  TypeNode root;  // root.count is the number of findings

  bool operator==(const DataTypeTree&) const = default;
};

inline constexpr std::string_view kTypeTreeRoot = "personal data";

// Children are ordered by count desc, then name asc. Category nodes are
// named by abbreviation; empty categories are omitted.
DataTypeTree BuildTypeView(const std::vector<Finding>& findings);

// Keys accepted by --group-by and --filter.
enum class ViewKey {
  kNone,
  kSourceStem,
  kSourceCategory,
  kSinkCategory,
  kSinkName,
  kFile,
  kPatternShape,
  kConfidence,
};

std::string_view ViewKeyName(ViewKey key);

// Canonical names plus the short aliases stem, category, sink, path, shape.
// Errors: kUnknownKey.
absl::StatusOr<ViewKey> ParseViewKey(std::string_view name);

struct FlowFilter {
  ViewKey key = ViewKey::kNone;
  std::string value;  // canonicalized (e.g. sink category "D" -> "DB")
};

// `key=value` or `key:value`. Confidence is filterable but not groupable.
// Errors: kUnknownKey for unknown keys or enumerated values.
absl::StatusOr<FlowFilter> ParseFlowFilter(std::string_view text);

// The values a finding has under `key`. Only kSourceCategory can yield more
// than one.
std::vector<std::string> KeyValues(const Finding& finding, ViewKey key);

// Filters on the same key are alternatives; different keys must all match.
bool MatchesFilters(const Finding& finding,
                    const std::vector<FlowFilter>& filters);

struct FlowTableRow {
  std::string path;
  std::string source;
  std::string sink;
  std::string sink_type;
  std::string instance;
  // Not shown in the table itself.
  std::string id;
  std::string confidence;
  std::string stem;
  Span span;

  bool operator==(const FlowTableRow&) const = default;
};

struct FlowGroup {
  std::string key;  // empty when ungrouped
  std::vector<FlowTableRow> rows;

  bool operator==(const FlowGroup&) const = default;
};

struct FlowTable {
  ViewKey group_by = ViewKey::kNone;
  std::vector<FlowGroup> groups;

  std::size_t row_count() const;
  bool operator==(const FlowTable&) const = default;
};

FlowTableRow MakeFlowRow(const Finding& finding);

// Filters, then groups, then orders. Groups are ordered by size desc, then
// key. Rows within a group rank high confidence first, then stems with more
// findings, then (path, span). Grouping by source category uses the first
// category so that groups partition the rows.
absl::StatusOr<FlowTable> BuildFlowTable(
    const std::vector<Finding>& findings, ViewKey group_by,
    const std::vector<FlowFilter>& filters);

struct HeatmapStats {
  std::array<std::array<std::int64_t, kNumSinkCategories>, kNumSourceCategories>
      cells{};
  std::array<std::int64_t, kNumSourceCategories> row_totals{};
  std::array<std::int64_t, kNumSinkCategories> column_totals{};
  std::int64_t total = 0;  // sum of cells
  std::int64_t findings = 0;
  std::int64_t multi_category_findings = 0;

  bool operator==(const HeatmapStats&) const = default;
};

HeatmapStats BuildHeatmap(const std::vector<Finding>& findings);

struct CategoryCount {
  SourceCategory source = SourceCategory::kAccount;
  std::int64_t count = 0;

  bool operator==(const CategoryCount&) const = default;
};

struct ProcessingEntry {
  SinkCategory sink = SinkCategory::kManipulation;
  std::int64_t findings = 0;
  std::vector<CategoryCount> sources;  // in category order

  bool operator==(const ProcessingEntry&) const = default;
};

struct RopaSummary {
  std::vector<SourceCategory> categories_of_personal_data;
  // Only sink categories with at least one finding, in category order.
  std::vector<ProcessingEntry> categories_of_processing;
  // Database and transfer sinks (DB, T).
  std::vector<ProcessingEntry> database_or_third_party_transfers;
  std::vector<CategoryCount> encryption_or_anonymization;
  std::vector<CategoryCount> logging;

  bool operator==(const RopaSummary&) const = default;
};

RopaSummary BuildRopa(const std::vector<Finding>& findings);

// Declared-categories file: YAML with a `declared` list of abbreviations,
// or a bare list. Errors: kParseError, kUnknownKey for unknown
// abbreviations.
absl::StatusOr<std::vector<SourceCategory>> ParseDeclaredCategories(
    std::string_view yaml);

struct CoverageDiff {
  std::vector<SourceCategory> undisclosed;  // found but not declared
  std::vector<SourceCategory> unused;       // declared but not found
  // "+" for full coverage, otherwise "-ACC, -LOC".
  std::string notation;

  bool operator==(const CoverageDiff&) const = default;
};

CoverageDiff DiffCoverage(const RopaSummary& ropa,
                          const std::vector<SourceCategory>& declared);

}  // namespace pdflow

#endif  // PDFLOW_VIEWS_H_
