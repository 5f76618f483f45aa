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

#ifndef PDFLOW_RULEPACK_H_
#define PDFLOW_RULEPACK_H_

#include <boost/regex.hpp>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "absl/status/statusor.h"
#include "pdflow/categories.h"

namespace pdflow {

enum class SourceKind { kVariableName, kLiteralValue };

// Solid: the value reaches the result. Dashed: the sink may reduce it
// (predicates such as check/match).
enum class Certainty { kSolid, kDashed };

enum class SinkOrigin { kDpvVerb, kApiMethod };

struct SourceRule {
  std::string id;
  SourceCategory category = SourceCategory::kAccount;
  // Canonical grouping key, lowercase and separator-free ("email").
  std::string stem;
  std::vector<std::string> patterns;
  SourceKind kind = SourceKind::kVariableName;

  bool operator==(const SourceRule&) const = default;
};

struct SinkRule {
  std::string id;
  SinkCategory category = SinkCategory::kManipulation;
  std::string pattern;
  Certainty certainty = Certainty::kSolid;
  SinkOrigin origin = SinkOrigin::kDpvVerb;
  // Library/vendor name for kApiMethod rules; empty otherwise.
  std::string provider;

  bool operator==(const SinkRule&) const = default;
};

// An immutable, validated set of identification rules. Rule order is match
// priority: the first matching rule wins.
//
// Variable-name and sink patterns are case-insensitive and are matched
// against NormalizeIdentifier() output with word-boundary anchoring, so a
// pattern `log` matches `log`, `logError` and `audit_log` but never `login`
// or `blog`. Literal patterns are matched as written (case-sensitive)
// against raw string-literal contents.
//
// Thread-safe for concurrent reads.
class RulePack {
 public:
  // Validates rules (unique ids, non-empty patterns, lowercase stems) and
  // compiles every pattern. Errors: kDuplicateRuleId, kInvalidRegex,
  // kParseError for structural problems.
  static absl::StatusOr<RulePack> Create(std::string version,
                                         std::vector<SourceRule> sources,
                                         std::vector<SinkRule> sinks);

  RulePack() = default;

  const std::string& version() const { return version_; }
  const std::vector<SourceRule>& sources() const { return sources_; }
  const std::vector<SinkRule>& sinks() const { return sinks_; }

  const SourceRule* FindSource(std::string_view id) const;
  const SinkRule* FindSink(std::string_view id) const;

 private:
  friend struct RulePackMatchers;

  std::string version_;
  std::vector<SourceRule> sources_;
  std::vector<SinkRule> sinks_;
  // Index-aligned with sources_ / sinks_.
  std::vector<std::vector<boost::regex>> source_regex_;
  std::vector<boost::regex> sink_regex_;
};

// Raw contents of a rule-pack file before merging.
struct RulePackFile {
  std::string version;
  bool replace = false;
  std::vector<SourceRule> sources;
  std::vector<SinkRule> sinks;
};

// Parses rule-pack YAML. Errors: kParseError, kDuplicateRuleId (within the
// file).
absl::StatusOr<RulePackFile> ParseRulePackFile(std::string_view yaml);

// Overlays `file` on `base`: rules with an existing id are replaced in place,
// new ids are appended in file order. With `file.replace` the base is
// ignored. Merging a pack's own rules over itself is the identity.
absl::StatusOr<RulePack> MergeRulePack(const RulePack& base,
                                       const RulePackFile& file);

// The embedded default pack, parsed once.
const RulePack& DefaultRulePack();
std::string_view DefaultRulePackYaml();

// "default" returns the embedded pack; anything else is read as a YAML file
// and merged over the default. Errors: kIoError plus everything from
// ParseRulePackFile / MergeRulePack.
absl::StatusOr<RulePack> LoadRulePack(std::string_view path_or_default);

struct SourceMatch {
  const SourceRule* rule = nullptr;
  std::string_view stem;
};

struct LiteralMatch {
  const SourceRule* rule = nullptr;
  // Byte offsets into the literal text, [begin, end).
  std::size_t begin = 0;
  std::size_t end = 0;
  std::string text;
};

// First kVariableName rule, in pack order, whose pattern matches the
// identifier. Returned pointers are valid for the lifetime of `pack`.
std::optional<SourceMatch> MatchSource(std::string_view identifier,
                                       const RulePack& pack);

// Every kLiteralValue match in `text`, ordered by rule then position.
std::vector<LiteralMatch> MatchLiteral(std::string_view text,
                                       const RulePack& pack);

// First sink rule, in pack order, matching the callee name.
const SinkRule* MatchSink(std::string_view callee, const RulePack& pack);

// Memoizing front-end for MatchSource/MatchSink. Not thread-safe: give each
// worker its own cache.
class MatchCache {
 public:
  explicit MatchCache(const RulePack& pack) : pack_(&pack) {}

  const RulePack& pack() const { return *pack_; }
  const SourceRule* Source(std::string_view identifier);
  const SinkRule* Sink(std::string_view callee);

 private:
  const RulePack* pack_;
  std::unordered_map<std::string, const SourceRule*> sources_;
  std::unordered_map<std::string, const SinkRule*> sinks_;
};

std::string_view SourceKindName(SourceKind kind);
std::string_view CertaintyName(Certainty certainty);
std::string_view SinkOriginName(SinkOrigin origin);

}  // namespace pdflow

#endif  // PDFLOW_RULEPACK_H_
