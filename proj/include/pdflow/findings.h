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

#ifndef PDFLOW_FINDINGS_H_
#define PDFLOW_FINDINGS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "nlohmann/json.hpp"
#include "pdflow/patterns.h"

namespace pdflow {

inline constexpr int kFindingsSchemaVersion = 1;
inline constexpr std::string_view kToolName = "pdflow";
inline constexpr std::string_view kToolVersion = "0.3.0";

struct ToolInfo {
  std::string name{kToolName};
  std::string version{kToolVersion};
  std::string rulepack_version;

  bool operator==(const ToolInfo&) const = default;
};

struct ScanStats {
  std::int64_t files = 0;
  std::int64_t files_skipped = 0;
  std::int64_t statements = 0;
  std::int64_t source_only = 0;
  std::int64_t sink_only = 0;
  // Sink matches on calls nested inside another call; never flows.
  std::int64_t inner_sink_matches = 0;
  std::int64_t unclassifiable = 0;
  // Wall-clock time. Left unset unless timing was requested, so that the
  // document stays a pure function of its inputs.
  std::optional<std::int64_t> elapsed_ms;

  bool operator==(const ScanStats&) const = default;
};

// Everything a view, report or reviewer needs; no other input is required.
struct FindingsDocument {
  ToolInfo tool;
  ScanStats stats;
  std::vector<Finding> findings;

  bool operator==(const FindingsDocument&) const = default;
};

// Canonical form: keys sorted, two-space indent, trailing newline.
std::string EmitFindingsJson(const FindingsDocument& doc);

// Errors: kSchemaMismatch for malformed JSON, a wrong schema_version, missing
// or mistyped fields, and unknown enum values.
absl::StatusOr<FindingsDocument> LoadFindingsJson(std::string_view text);

nlohmann::json FindingToJson(const Finding& finding);
absl::StatusOr<Finding> FindingFromJson(const nlohmann::json& j);

// Sorts by (path, span, id), the order every emitter relies on.
void SortFindings(std::vector<Finding>& findings);

}  // namespace pdflow

#endif  // PDFLOW_FINDINGS_H_
