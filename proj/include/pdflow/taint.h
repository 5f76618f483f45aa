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

#ifndef PDFLOW_TAINT_H_
#define PDFLOW_TAINT_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pdflow/categories.h"
#include "pdflow/rulepack.h"
#include "pdflow/statement.h"

namespace pdflow {

enum class Confidence { kHigh, kLow };
enum class TaintOrigin { kSeeded, kDerived };

std::string_view ConfidenceName(Confidence confidence);
std::string_view TaintOriginName(TaintOrigin origin);

// A variable that became a source through a solid flow into it.
struct TaintedVar {
  std::string name;                        // chain display
  std::vector<SourceCategory> categories;  // sorted, unique, non-empty
  std::string stem;
  TaintOrigin origin = TaintOrigin::kDerived;
  std::string derived_from;  // finding id
  Confidence confidence = Confidence::kHigh;
};

// Scope-local taint set keyed by chain display.
using TaintSet = std::map<std::string, TaintedVar, std::less<>>;

enum class SourcePosition { kTarget, kReceiver, kArg, kLiteralArg };

std::string_view SourcePositionName(SourcePosition position);

// One personal-data participant of a statement.
struct SourceRef {
  SourcePosition position = SourcePosition::kArg;
  int index = 0;  // argument index for kArg/kLiteralArg
  // What the flow view shows: the full access chain ("users.email_addr"),
  // or the quoted literal.
  std::string display;
  // The identifier segment or literal text that matched.
  std::string matched;
  std::string stem;
  std::vector<SourceCategory> categories;  // sorted, unique
  std::string rule_id;                     // source rule, or "derived"
  TaintOrigin origin = TaintOrigin::kSeeded;
  std::string derived_from;
  Confidence confidence = Confidence::kHigh;

  bool operator==(const SourceRef&) const = default;
};

struct RawFlow {
  const Statement* statement = nullptr;
  // Ordered: target, receiver, then arguments by index.
  std::vector<SourceRef> sources;
  const SinkRule* sink = nullptr;
};

// Resolves a chain in a value position (target or argument): the final
// segment against the rules, then earlier segments from last to first, then
// the taint set on the whole chain and its prefixes, longest first.
std::optional<SourceRef> CategoryOf(const Chain& chain, const TaintSet& taint,
                                    MatchCache& cache);

// Receivers only consider their final segment and the taint set, so a
// collection like `user.organizationUsers` is not a source merely because
// its owner is.
std::optional<SourceRef> ReceiverCategoryOf(const Chain& chain,
                                            const TaintSet& taint,
                                            MatchCache& cache);

struct AnalysisOptions {
  // Derive new sources from solid flows into non-source targets.
  bool propagate = true;
};

// Counters for things that do not become findings.
struct ScopeStats {
  std::size_t statements = 0;
  std::size_t other_statements = 0;
  std::size_t source_only = 0;
  std::size_t sink_only = 0;
  std::size_t inner_sink_matches = 0;
  std::size_t unclassifiable = 0;
  std::size_t flows = 0;

  ScopeStats& operator+=(const ScopeStats& o);
};

// Single forward pass over one scope's statements (source order).
std::vector<RawFlow> AnalyzeScope(const std::vector<const Statement*>& scope,
                                  MatchCache& cache,
                                  const AnalysisOptions& options,
                                  ScopeStats* stats = nullptr);

}  // namespace pdflow

#endif  // PDFLOW_TAINT_H_
