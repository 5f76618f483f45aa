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

#ifndef PDFLOW_CATEGORIES_H_
#define PDFLOW_CATEGORIES_H_

#include <array>
#include <optional>
#include <string_view>

namespace pdflow {

// Personal-data categories a source can belong to. Declaration order is the
// canonical display order (rows of the heatmap and precision tables).
enum class SourceCategory {
  kAccount,
  kContact,
  kPersonalId,
  kOnlineIdentifier,
  kLocation,
  kFeedback,
  kHealth,
  kNationalId,
  kTechnical,
  kFinancial,
};

// Processing categories a sink can belong to, in display order.
enum class SinkCategory {
  kManipulation,
  kTransportation,
  kCreationDeletion,
  kDatabase,
  kEncryption,
  kLog,
};

inline constexpr std::size_t kNumSourceCategories = 10;
inline constexpr std::size_t kNumSinkCategories = 6;

inline constexpr std::array<SourceCategory, kNumSourceCategories>
    kAllSourceCategories = {
        SourceCategory::kAccount,    SourceCategory::kContact,
        SourceCategory::kPersonalId, SourceCategory::kOnlineIdentifier,
        SourceCategory::kLocation,   SourceCategory::kFeedback,
        SourceCategory::kHealth,     SourceCategory::kNationalId,
        SourceCategory::kTechnical,  SourceCategory::kFinancial,
};

inline constexpr std::array<SinkCategory, kNumSinkCategories>
    kAllSinkCategories = {
        SinkCategory::kManipulation,     SinkCategory::kTransportation,
        SinkCategory::kCreationDeletion, SinkCategory::kDatabase,
        SinkCategory::kEncryption,       SinkCategory::kLog,
};

// Three-letter codes (ACC, CON, ...).
std::string_view Abbreviation(SourceCategory category);
// M, T, C/D, DB, E, L.
std::string_view Abbreviation(SinkCategory category);

std::string_view DisplayName(SourceCategory category);
std::string_view DisplayName(SinkCategory category);

// Case-sensitive lookups by abbreviation. The sink parser also accepts "D"
// as an alias for DB.
std::optional<SourceCategory> ParseSourceCategory(std::string_view abbr);
std::optional<SinkCategory> ParseSinkCategory(std::string_view abbr);

inline std::size_t Index(SourceCategory c) {
  return static_cast<std::size_t>(c);
}
inline std::size_t Index(SinkCategory c) { return static_cast<std::size_t>(c); }

}  // namespace pdflow

#endif  // PDFLOW_CATEGORIES_H_
