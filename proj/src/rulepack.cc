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

#include "pdflow/rulepack.h"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "absl/strings/ascii.h"
#include "fmt/format.h"
#include "pdflow/identifier.h"
#include "pdflow/status.h"

namespace pdflow {

struct RulePackMatchers {
  static const std::vector<std::vector<boost::regex>>& Sources(
      const RulePack& pack) {
    return pack.source_regex_;
  }
  static const std::vector<boost::regex>& Sinks(const RulePack& pack) {
    return pack.sink_regex_;
  }
};

namespace {

constexpr auto kSyntax =
    boost::regex_constants::perl | boost::regex_constants::no_mod_m;

// Anchors a pattern at '_' boundaries of a normalized identifier.
std::string WordAnchored(std::string_view pattern) {
  return fmt::format("(?<![^_])(?:{})(?![^_])", pattern);
}

absl::StatusOr<boost::regex> Compile(
    std::string_view rule_id, const std::string& pattern,
    boost::regex_constants::syntax_option_type flags) {
  try {
    return boost::regex(pattern, flags);
  } catch (const boost::regex_error& e) {
    return MakeError(ErrorKind::kInvalidRegex,
                     fmt::format("rule '{}': pattern '{}' does not compile: {}",
                                 rule_id, pattern, e.what()));
  }
}

bool IsValidStem(std::string_view stem) {
  if (stem.empty()) return false;
  for (char c : stem) {
    if (!absl::ascii_islower(c) && !absl::ascii_isdigit(c)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// YAML decoding

absl::Status NodeError(const YAML::Node& node, std::string_view what) {
  const auto mark = node.Mark();
  if (mark.is_null()) return MakeError(ErrorKind::kParseError, what);
  return MakeError(ErrorKind::kParseError,
                   fmt::format("line {}: {}", mark.line + 1, what));
}

absl::StatusOr<std::string> RequiredScalar(const YAML::Node& map,
                                           const char* key,
                                           std::string_view context) {
  const YAML::Node value = map[key];
  if (!value || !value.IsScalar()) {
    return NodeError(
        map, fmt::format("{}: missing or non-scalar '{}'", context, key));
  }
  return value.Scalar();
}

std::string OptionalScalar(const YAML::Node& map, const char* key) {
  const YAML::Node value = map[key];
  if (value && value.IsScalar()) return value.Scalar();
  return "";
}

absl::StatusOr<SourceRule> DecodeSource(const YAML::Node& node) {
  if (!node.IsMap()) return NodeError(node, "source rule must be a mapping");
  SourceRule rule;
  auto id = RequiredScalar(node, "id", "source rule");
  if (!id.ok()) return id.status();
  rule.id = *std::move(id);

  auto category = RequiredScalar(node, "category", rule.id);
  if (!category.ok()) return category.status();
  auto parsed_category = ParseSourceCategory(*category);
  if (!parsed_category) {
    return NodeError(
        node, fmt::format("rule '{}': unknown source category '{}'", rule.id,
                          *category));
  }
  rule.category = *parsed_category;

  auto stem = RequiredScalar(node, "stem", rule.id);
  if (!stem.ok()) return stem.status();
  rule.stem = *std::move(stem);

  const std::string kind = OptionalScalar(node, "kind");
  if (kind.empty() || kind == "variable") {
    rule.kind = SourceKind::kVariableName;
  } else if (kind == "literal") {
    rule.kind = SourceKind::kLiteralValue;
  } else {
    return NodeError(
        node, fmt::format("rule '{}': kind must be variable|literal", rule.id));
  }

  const YAML::Node patterns = node["patterns"];
  if (patterns && patterns.IsScalar()) {
    rule.patterns.push_back(patterns.Scalar());
  } else if (patterns && patterns.IsSequence()) {
    for (const auto& p : patterns) {
      if (!p.IsScalar()) {
        return NodeError(
            p, fmt::format("rule '{}': patterns must be strings", rule.id));
      }
      rule.patterns.push_back(p.Scalar());
    }
  } else {
    return NodeError(node,
                     fmt::format("rule '{}': missing 'patterns'", rule.id));
  }
  return rule;
}

absl::StatusOr<SinkRule> DecodeSink(const YAML::Node& node) {
  if (!node.IsMap()) return NodeError(node, "sink rule must be a mapping");
  SinkRule rule;
  auto id = RequiredScalar(node, "id", "sink rule");
  if (!id.ok()) return id.status();
  rule.id = *std::move(id);

  auto category = RequiredScalar(node, "category", rule.id);
  if (!category.ok()) return category.status();
  auto parsed_category = ParseSinkCategory(*category);
  if (!parsed_category) {
    return NodeError(node, fmt::format("rule '{}': unknown sink category '{}'",
                                       rule.id, *category));
  }
  rule.category = *parsed_category;

  auto pattern = RequiredScalar(node, "pattern", rule.id);
  if (!pattern.ok()) return pattern.status();
  rule.pattern = *std::move(pattern);

  const std::string certainty = OptionalScalar(node, "certainty");
  if (certainty.empty() || certainty == "solid") {
    rule.certainty = Certainty::kSolid;
  } else if (certainty == "dashed") {
    rule.certainty = Certainty::kDashed;
  } else {
    return NodeError(
        node,
        fmt::format("rule '{}': certainty must be solid|dashed", rule.id));
  }

  const std::string origin = OptionalScalar(node, "origin");
  if (origin.empty() || origin == "dpv") {
    rule.origin = SinkOrigin::kDpvVerb;
  } else if (origin == "api") {
    rule.origin = SinkOrigin::kApiMethod;
  } else {
    return NodeError(node,
                     fmt::format("rule '{}': origin must be dpv|api", rule.id));
  }
  rule.provider = OptionalScalar(node, "provider");
  return rule;
}

absl::Status CheckUniqueIds(const std::vector<SourceRule>& sources,
                            const std::vector<SinkRule>& sinks) {
  std::set<std::string_view> seen;
  for (const auto& r : sources) {
    if (!seen.insert(r.id).second) {
      return MakeError(ErrorKind::kDuplicateRuleId,
                       fmt::format("rule id '{}' appears twice", r.id));
    }
  }
  for (const auto& r : sinks) {
    if (!seen.insert(r.id).second) {
      return MakeError(ErrorKind::kDuplicateRuleId,
                       fmt::format("rule id '{}' appears twice", r.id));
    }
  }
  return absl::OkStatus();
}

template <typename Rule>
void Overlay(std::vector<Rule>& base, const std::vector<Rule>& overlay) {
  for (const auto& rule : overlay) {
    auto it = std::find_if(base.begin(), base.end(),
                           [&](const Rule& r) { return r.id == rule.id; });
    if (it != base.end()) {
      *it = rule;
    } else {
      base.push_back(rule);
    }
  }
}

}  // namespace

absl::StatusOr<RulePack> RulePack::Create(std::string version,
                                          std::vector<SourceRule> sources,
                                          std::vector<SinkRule> sinks) {
  if (auto s = CheckUniqueIds(sources, sinks); !s.ok()) return s;

  RulePack pack;
  pack.version_ = std::move(version);
  pack.source_regex_.reserve(sources.size());
  for (const auto& rule : sources) {
    if (rule.id.empty()) {
      return MakeError(ErrorKind::kParseError, "source rule with empty id");
    }
    if (!IsValidStem(rule.stem)) {
      return MakeError(
          ErrorKind::kParseError,
          fmt::format("rule '{}': stem '{}' must be lowercase [a-z0-9]+",
                      rule.id, rule.stem));
    }
    if (rule.patterns.empty()) {
      return MakeError(ErrorKind::kParseError,
                       fmt::format("rule '{}': no patterns", rule.id));
    }
    std::vector<boost::regex> compiled;
    for (const auto& pattern : rule.patterns) {
      if (pattern.empty()) {
        return MakeError(ErrorKind::kInvalidRegex,
                         fmt::format("rule '{}': empty pattern", rule.id));
      }
      // Check the pattern alone first so errors quote what the user wrote.
      auto alone = Compile(rule.id, pattern, kSyntax);
      if (!alone.ok()) return alone.status();
      if (rule.kind == SourceKind::kLiteralValue) {
        compiled.push_back(*std::move(alone));
      } else {
        auto anchored = Compile(rule.id, WordAnchored(pattern),
                                kSyntax | boost::regex_constants::icase);
        if (!anchored.ok()) return anchored.status();
        compiled.push_back(*std::move(anchored));
      }
    }
    pack.source_regex_.push_back(std::move(compiled));
  }
  pack.sink_regex_.reserve(sinks.size());
  for (const auto& rule : sinks) {
    if (rule.id.empty()) {
      return MakeError(ErrorKind::kParseError, "sink rule with empty id");
    }
    if (rule.pattern.empty()) {
      return MakeError(ErrorKind::kInvalidRegex,
                       fmt::format("rule '{}': empty pattern", rule.id));
    }
    auto alone = Compile(rule.id, rule.pattern, kSyntax);
    if (!alone.ok()) return alone.status();
    auto anchored = Compile(rule.id, WordAnchored(rule.pattern),
                            kSyntax | boost::regex_constants::icase);
    if (!anchored.ok()) return anchored.status();
    pack.sink_regex_.push_back(*std::move(anchored));
  }
  pack.sources_ = std::move(sources);
  pack.sinks_ = std::move(sinks);
  return pack;
}

const SourceRule* RulePack::FindSource(std::string_view id) const {
  for (const auto& r : sources_) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

const SinkRule* RulePack::FindSink(std::string_view id) const {
  for (const auto& r : sinks_) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

absl::StatusOr<RulePackFile> ParseRulePackFile(std::string_view yaml) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml));
  } catch (const YAML::Exception& e) {
    return MakeError(ErrorKind::kParseError, e.what());
  }
  RulePackFile file;
  if (root.IsNull()) return file;
  if (!root.IsMap()) {
    return MakeError(ErrorKind::kParseError,
                     "rule pack must be a mapping with sources/sinks");
  }
  try {
    for (const auto& entry : root) {
      const std::string key = entry.first.as<std::string>();
      if (key != "version" && key != "replace" && key != "sources" &&
          key != "sinks") {
        return NodeError(entry.first,
                         fmt::format("unknown top-level key '{}'", key));
      }
    }
    file.version = OptionalScalar(root, "version");
    if (const YAML::Node replace = root["replace"]) {
      file.replace = replace.as<bool>();
    }
    if (const YAML::Node sources = root["sources"]) {
      if (!sources.IsSequence()) {
        return NodeError(sources, "'sources' must be a list");
      }
      for (const auto& node : sources) {
        auto rule = DecodeSource(node);
        if (!rule.ok()) return rule.status();
        file.sources.push_back(*std::move(rule));
      }
    }
    if (const YAML::Node sinks = root["sinks"]) {
      if (!sinks.IsSequence()) {
        return NodeError(sinks, "'sinks' must be a list");
      }
      for (const auto& node : sinks) {
        auto rule = DecodeSink(node);
        if (!rule.ok()) return rule.status();
        file.sinks.push_back(*std::move(rule));
      }
    }
  } catch (const YAML::Exception& e) {
    return MakeError(ErrorKind::kParseError, e.what());
  }
  if (auto s = CheckUniqueIds(file.sources, file.sinks); !s.ok()) return s;
  return file;
}

absl::StatusOr<RulePack> MergeRulePack(const RulePack& base,
                                       const RulePackFile& file) {
  if (file.replace) {
    return RulePack::Create(file.version, file.sources, file.sinks);
  }
  std::vector<SourceRule> sources = base.sources();
  std::vector<SinkRule> sinks = base.sinks();
  Overlay(sources, file.sources);
  Overlay(sinks, file.sinks);
  std::string version = file.version.empty() ? base.version() : file.version;
  return RulePack::Create(std::move(version), std::move(sources),
                          std::move(sinks));
}

const RulePack& DefaultRulePack() {
  static const RulePack* const pack = [] {
    auto file = ParseRulePackFile(DefaultRulePackYaml());
    if (!file.ok()) {
      std::fprintf(stderr, "embedded rule pack is broken: %s\n",
                   std::string(file.status().message()).c_str());
      std::abort();
    }
    auto created = RulePack::Create(file->version, file->sources, file->sinks);
    if (!created.ok()) {
      std::fprintf(stderr, "embedded rule pack is broken: %s\n",
                   std::string(created.status().message()).c_str());
      std::abort();
    }
    return new RulePack(*std::move(created));
  }();
  return *pack;
}

absl::StatusOr<RulePack> LoadRulePack(std::string_view path_or_default) {
  if (path_or_default == "default") return DefaultRulePack();
  std::ifstream in{std::string(path_or_default), std::ios::binary};
  if (!in) {
    return MakeError(
        ErrorKind::kIoError,
        fmt::format("cannot read rule pack '{}'", path_or_default));
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  auto file = ParseRulePackFile(buffer.str());
  if (!file.ok()) return file.status();
  return MergeRulePack(DefaultRulePack(), *file);
}

std::optional<SourceMatch> MatchSource(std::string_view identifier,
                                       const RulePack& pack) {
  const std::string normalized = NormalizeIdentifier(identifier);
  if (normalized.empty()) return std::nullopt;
  const auto& regexes = RulePackMatchers::Sources(pack);
  for (std::size_t i = 0; i < pack.sources().size(); ++i) {
    const SourceRule& rule = pack.sources()[i];
    if (rule.kind != SourceKind::kVariableName) continue;
    for (const auto& re : regexes[i]) {
      if (boost::regex_search(normalized, re)) {
        return SourceMatch{&rule, rule.stem};
      }
    }
  }
  return std::nullopt;
}

std::vector<LiteralMatch> MatchLiteral(std::string_view text,
                                       const RulePack& pack) {
  std::vector<LiteralMatch> matches;
  if (text.empty()) return matches;
  const auto& regexes = RulePackMatchers::Sources(pack);
  for (std::size_t i = 0; i < pack.sources().size(); ++i) {
    const SourceRule& rule = pack.sources()[i];
    if (rule.kind != SourceKind::kLiteralValue) continue;
    for (const auto& re : regexes[i]) {
      boost::cregex_iterator it(text.data(), text.data() + text.size(), re);
      for (; it != boost::cregex_iterator(); ++it) {
        const auto& m = *it;
        if (m[0].first == m[0].second) continue;
        const auto begin = static_cast<std::size_t>(m[0].first - text.data());
        const auto end = static_cast<std::size_t>(m[0].second - text.data());
        matches.push_back(
            LiteralMatch{&rule, begin, end, std::string(m.str(0))});
      }
    }
  }
  return matches;
}

const SinkRule* MatchSink(std::string_view callee, const RulePack& pack) {
  const std::string normalized = NormalizeIdentifier(callee);
  if (normalized.empty()) return nullptr;
  const auto& regexes = RulePackMatchers::Sinks(pack);
  for (std::size_t i = 0; i < pack.sinks().size(); ++i) {
    if (boost::regex_search(normalized, regexes[i])) return &pack.sinks()[i];
  }
  return nullptr;
}

const SourceRule* MatchCache::Source(std::string_view identifier) {
  auto it = sources_.find(std::string(identifier));
  if (it != sources_.end()) return it->second;
  auto match = MatchSource(identifier, *pack_);
  const SourceRule* rule = match ? match->rule : nullptr;
  sources_.emplace(std::string(identifier), rule);
  return rule;
}

const SinkRule* MatchCache::Sink(std::string_view callee) {
  auto it = sinks_.find(std::string(callee));
  if (it != sinks_.end()) return it->second;
  const SinkRule* rule = MatchSink(callee, *pack_);
  sinks_.emplace(std::string(callee), rule);
  return rule;
}

std::string_view SourceKindName(SourceKind kind) {
  return kind == SourceKind::kVariableName ? "variable" : "literal";
}

std::string_view CertaintyName(Certainty certainty) {
  return certainty == Certainty::kSolid ? "solid" : "dashed";
}

std::string_view SinkOriginName(SinkOrigin origin) {
  return origin == SinkOrigin::kDpvVerb ? "dpv" : "api";
}

}  // namespace pdflow
