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

// Test-only reference implementations. Nothing here shares code with the
// library beyond its public data types, so agreement between the two is
// evidence rather than tautology.

#ifndef PDFLOW_TESTS_SUPPORT_ORACLE_H_
#define PDFLOW_TESTS_SUPPORT_ORACLE_H_

#include <regex>
#include <string>
#include <string_view>
#include <vector>

#include "pdflow/rulepack.h"
#include "support/corpus.h"

namespace pdflow::testing {

// Identifier normalization by regex rewriting: camel boundaries become '_',
// separator runs collapse, everything is lowercased.
std::string OracleNormalize(std::string_view identifier);

// Rule matching with std::regex. A pattern matches when it matches a run of
// whole '_'-separated words of the normalized identifier.
class OracleMatcher {
 public:
  explicit OracleMatcher(const RulePack& pack);

  const RulePack& pack() const { return *pack_; }

  // Indices of every variable-name rule matching the identifier.
  std::vector<int> AllSourceMatches(std::string_view identifier) const;
  // Indices of every sink rule matching the callee.
  std::vector<int> AllSinkMatches(std::string_view callee) const;

  const SourceRule* FirstSource(std::string_view identifier) const;
  const SinkRule* FirstSink(std::string_view callee) const;

 private:
  bool Matches(const std::regex& re, const std::string& normalized) const;

  const RulePack* pack_;
  std::vector<std::vector<std::regex>> source_res_;  // empty for literals
  std::vector<std::regex> sink_res_;
};

struct OracleFlow {
  int statement = 0;  // index within the scope
  std::string shape;  // "P1".."P8"
  std::string rendered;
  std::string primary;  // display of the primary source
  bool primary_derived = false;
  std::string sink_rule;
  std::string confidence;  // "high" / "low"

  bool operator==(const OracleFlow&) const = default;
};

// Brute force: enumerates every (identifier, rule) pair of each statement,
// resolves sources by rule order, applies the decision table from a lookup
// table and carries derived taint forward.
std::vector<OracleFlow> OracleAnalyze(const GenScope& scope,
                                      const OracleMatcher& matcher,
                                      bool propagate);

// Scans the rendered scope with pdflow and compares every flow with
// OracleAnalyze. Returns an empty string on agreement, else a description of
// the first difference.
std::string DiffAgainstOracle(const GenScope& scope, Language language,
                              const OracleMatcher& matcher, bool propagate);

}  // namespace pdflow::testing

#endif  // PDFLOW_TESTS_SUPPORT_ORACLE_H_
