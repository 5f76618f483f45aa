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

#include "pdflow/categories.h"

namespace pdflow {
namespace {

constexpr std::array<std::string_view, kNumSourceCategories> kSourceAbbr = {
    "ACC", "CON", "PID", "OID", "LOC", "FEE", "HEA", "NID", "TEC", "FIN"};
constexpr std::array<std::string_view, kNumSourceCategories> kSourceNames = {
    "Account",  "Contact", "Personal ID", "Online identifier", "Location",
    "Feedback", "Health",  "National ID", "Technical",         "Financial"};

constexpr std::array<std::string_view, kNumSinkCategories> kSinkAbbr = {
    "M", "T", "C/D", "DB", "E", "L"};
constexpr std::array<std::string_view, kNumSinkCategories> kSinkNames = {
    "Manipulation", "Transportation", "Creation/Deletion",
    "Database",     "Encryption",     "Log"};

}  // namespace

std::string_view Abbreviation(SourceCategory category) {
  return kSourceAbbr[Index(category)];
}

std::string_view Abbreviation(SinkCategory category) {
  return kSinkAbbr[Index(category)];
}

std::string_view DisplayName(SourceCategory category) {
  return kSourceNames[Index(category)];
}

std::string_view DisplayName(SinkCategory category) {
  return kSinkNames[Index(category)];
}

std::optional<SourceCategory> ParseSourceCategory(std::string_view abbr) {
  for (SourceCategory c : kAllSourceCategories) {
    if (kSourceAbbr[Index(c)] == abbr) return c;
  }
  return std::nullopt;
}

std::optional<SinkCategory> ParseSinkCategory(std::string_view abbr) {
  if (abbr == "D") return SinkCategory::kDatabase;
  for (SinkCategory c : kAllSinkCategories) {
    if (kSinkAbbr[Index(c)] == abbr) return c;
  }
  return std::nullopt;
}

}  // namespace pdflow
