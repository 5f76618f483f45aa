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

#ifndef PDFLOW_TRIAGE_H_
#define PDFLOW_TRIAGE_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "pdflow/categories.h"
#include "pdflow/findings.h"

namespace pdflow {

enum class Verdict { kUnreviewed, kTruePositive, kFalsePositive };

std::string_view VerdictName(Verdict verdict);  // "Unreviewed", "TP", "FP"
std::optional<Verdict> ParseVerdict(std::string_view name);

struct TriageLabel {
  std::string finding_id;
  Verdict verdict = Verdict::kUnreviewed;
  std::string note;       // optional, empty when absent
  std::string reviewer;   // optional, empty when absent
  std::string timestamp;  // RFC 3339, set by whoever records the label

  bool operator==(const TriageLabel&) const = default;
};

// Labels file: a JSON array of label objects. Errors: kSchemaMismatch.
absl::StatusOr<std::vector<TriageLabel>> ParseLabelsJson(std::string_view text);
// One entry per finding id (last write wins), sorted by id.
std::string EmitLabelsJson(const std::vector<TriageLabel>& labels);

// A missing file is an empty label list. Errors: kIoError, kSchemaMismatch.
absl::StatusOr<std::vector<TriageLabel>> LoadLabelsFile(
    const std::string& path);
// Writes a temporary file next to `path` and renames it into place, so
// readers see either the old or the new contents. Errors: kIoError.
absl::Status SaveLabelsFile(const std::string& path,
                            const std::vector<TriageLabel>& labels);

// Keeps the last label per finding id, in first-seen id order.
std::vector<TriageLabel> CollapseLabels(const std::vector<TriageLabel>& labels);

struct LabeledDocument {
  const FindingsDocument* doc = nullptr;
  std::vector<Verdict> verdicts;      // index-aligned with doc->findings
  std::vector<std::string> warnings;  // one per label with an unknown id
};

LabeledDocument ApplyLabels(const FindingsDocument& doc,
                            const std::vector<TriageLabel>& labels);

inline constexpr std::int64_t kDefaultSuppressionThreshold = 20;

struct PrecisionCell {
  SourceCategory source = SourceCategory::kAccount;
  SinkCategory sink = SinkCategory::kManipulation;
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::optional<double> precision;  // tp / (tp + fp) when reviewed
  bool suppressed = true;           // tp + fp below the threshold

  bool operator==(const PrecisionCell&) const = default;
};

struct PrecisionTable {
  std::array<std::array<PrecisionCell, kNumSinkCategories>,
             kNumSourceCategories>
      cells;
  std::int64_t threshold = kDefaultSuppressionThreshold;
  std::int64_t findings = 0;
  std::int64_t reviewed = 0;
  // Reviewed findings left out of the cells because their source spans
  // several categories.
  std::int64_t reviewed_multi_category = 0;

  // reviewed / findings, 0 for an empty document.
  double coverage() const;
};

// Unreviewed findings are ignored. Only single-category sources enter a
// cell, so the cells never double count a finding.
PrecisionTable BuildPrecisionTable(
    const LabeledDocument& labeled,
    std::int64_t threshold = kDefaultSuppressionThreshold);

// "-" for suppressed cells, otherwise the precision with two decimals.
std::string FormatPrecision(const PrecisionCell& cell);

}  // namespace pdflow

#endif  // PDFLOW_TRIAGE_H_
