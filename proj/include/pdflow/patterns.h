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

#ifndef PDFLOW_PATTERNS_H_
#define PDFLOW_PATTERNS_H_

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "pdflow/categories.h"
#include "pdflow/rulepack.h"
#include "pdflow/statement.h"
#include "pdflow/taint.h"

namespace pdflow {

// The eight flow shapes. Each entry notes its canonical notation.
enum class FlowShape {
  kP1,  // E[_] -m-> v
  kP2,  // v2 + E[_] -m-> v1
  kP3,  // v2(E[_]) -m-> v1
  kP4,  // v ~m~> E[_]       (dashed)
  kP5,  // v -m-> E[_]       (solid; the target becomes a source)
  kP6,  // v1 + v2 -m-> v1
  kP7,  // v + E[_] -m-> v
  kP8,  // v -m-> m(v)
};

inline constexpr std::array<FlowShape, 8> kAllShapes = {
    FlowShape::kP1, FlowShape::kP2, FlowShape::kP3, FlowShape::kP4,
    FlowShape::kP5, FlowShape::kP6, FlowShape::kP7, FlowShape::kP8};

std::string_view ShapeName(FlowShape shape);  // "P1".."P8"
// Accepts "P3" or "p3".
std::optional<FlowShape> ParseShape(std::string_view name);

enum class ArrowKind { kSolid, kDashed };

std::string_view ArrowName(ArrowKind arrow);

inline constexpr std::string_view kPlaceholder = "_";

struct FlowInstance {
  FlowShape shape = FlowShape::kP1;
  ArrowKind arrow = ArrowKind::kSolid;
  // Display names and `_` placeholders joined by '+' on the left-hand side.
  // P3 receivers appear as "recv(_)".
  std::vector<std::string> lhs_parts;
  std::string sink_name;
  std::string rhs;
  std::string rendered;

  bool operator==(const FlowInstance&) const = default;
};

// `lhs ("+" lhs)* arrow rhs`, arrow being " -m-> " or " ~m~> ".
std::string Render(const std::vector<std::string>& lhs_parts,
                   std::string_view sink_name, ArrowKind arrow,
                   std::string_view rhs);

// Applies the decision table over (assignment, target-is-source,
// receiver-is-source, some-argument-is-source). An assignment whose target
// also appears among the source arguments updates itself and takes the P6
// (other sources present) or P7 form. Errors: kUnclassifiable.
absl::StatusOr<FlowInstance> Classify(const RawFlow& flow);

struct SinkInfo {
  std::string callee;
  std::string text;  // access path as written
  SinkCategory category = SinkCategory::kManipulation;
  std::string rule_id;
  Certainty certainty = Certainty::kSolid;

  bool operator==(const SinkInfo&) const = default;
};

struct Finding {
  std::string id;
  std::string path;
  Span span;
  std::string snippet;
  SourceRef source;  // the primary source, used for grouping and filters
  std::vector<SourceRef> participants;
  SinkInfo sink;
  FlowInstance instance;
  Confidence confidence = Confidence::kHigh;

  bool operator==(const Finding&) const = default;
};

// The source a flow is "about": the first argument source that is not the
// assignment target itself, else the receiver, else the target.
const SourceRef& PrimarySource(const RawFlow& flow);

// Stable 16-hex-digit FNV-1a hash of path, span and rule ids.
std::string FindingId(std::string_view path, const Span& span,
                      const std::vector<std::string>& rule_ids);

absl::StatusOr<Finding> MakeFinding(const RawFlow& flow);

// Union of the categories of all participants, sorted.
std::vector<SourceCategory> ParticipantCategories(
    const std::vector<SourceRef>& sources);

}  // namespace pdflow

#endif  // PDFLOW_PATTERNS_H_
