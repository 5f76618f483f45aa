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

#include "pdflow/taint.h"

#include <algorithm>

#include "pdflow/patterns.h"

namespace pdflow {
namespace {

constexpr std::string_view kDerivedRuleId = "derived";

SourceRef FromRule(const SourceRule& rule, const Chain& chain,
                   std::string_view matched) {
  SourceRef ref;
  ref.display = ChainDisplay(chain);
  ref.matched = std::string(matched);
  ref.stem = rule.stem;
  ref.categories = {rule.category};
  ref.rule_id = rule.id;
  ref.origin = TaintOrigin::kSeeded;
  ref.confidence = Confidence::kHigh;
  return ref;
}

std::optional<SourceRef> FromTaint(const Chain& chain, const TaintSet& taint) {
  for (std::size_t len = chain.size(); len > 0; --len) {
    const Chain prefix(chain.begin(), chain.begin() + len);
    auto it = taint.find(ChainDisplay(prefix));
    if (it == taint.end()) continue;
    const TaintedVar& var = it->second;
    SourceRef ref;
    ref.display = ChainDisplay(chain);
    ref.matched = var.name;
    ref.stem = var.stem;
    ref.categories = var.categories;
    ref.rule_id = std::string(kDerivedRuleId);
    ref.origin = TaintOrigin::kDerived;
    ref.derived_from = var.derived_from;
    ref.confidence = var.confidence;
    return ref;
  }
  return std::nullopt;
}

std::optional<SourceRef> FromLiteral(std::string_view text,
                                     const RulePack& pack) {
  auto matches = MatchLiteral(text, pack);
  if (matches.empty()) return std::nullopt;
  const LiteralMatch& m = matches.front();
  SourceRef ref;
  ref.position = SourcePosition::kLiteralArg;
  ref.display = "\"" + m.text + "\"";
  ref.matched = m.text;
  ref.stem = m.rule->stem;
  ref.categories = {m.rule->category};
  ref.rule_id = m.rule->id;
  ref.origin = TaintOrigin::kSeeded;
  ref.confidence = Confidence::kLow;
  return ref;
}

std::optional<SourceRef> ArgSource(const Arg& arg, int index,
                                   const TaintSet& taint, MatchCache& cache) {
  std::optional<SourceRef> ref;
  switch (arg.kind) {
    case ArgKind::kIdentifier:
      ref = CategoryOf(arg.chain, taint, cache);
      break;
    case ArgKind::kStringLiteral:
      ref = FromLiteral(arg.literal, cache.pack());
      break;
    case ArgKind::kNumberLiteral:
      break;
    case ArgKind::kOther:
      for (const auto& chain : arg.inner_chains) {
        if ((ref = CategoryOf(chain, taint, cache))) break;
      }
      if (!ref) {
        for (const auto& literal : arg.inner_literals) {
          if ((ref = FromLiteral(literal, cache.pack()))) break;
        }
      }
      break;
  }
  if (ref) {
    if (ref->position != SourcePosition::kLiteralArg) {
      ref->position = SourcePosition::kArg;
    }
    ref->index = index;
  }
  return ref;
}

void CountInnerSinks(const std::vector<CallExpr>& calls, MatchCache& cache,
                     std::size_t& count) {
  for (const auto& call : calls) {
    if (cache.Sink(call.callee) != nullptr) ++count;
    CountInnerSinks(call.nested, cache, count);
  }
}

}  // namespace

std::string_view ConfidenceName(Confidence confidence) {
  return confidence == Confidence::kHigh ? "high" : "low";
}

std::string_view TaintOriginName(TaintOrigin origin) {
  return origin == TaintOrigin::kSeeded ? "seeded" : "derived";
}

std::string_view SourcePositionName(SourcePosition position) {
  switch (position) {
    case SourcePosition::kTarget:
      return "target";
    case SourcePosition::kReceiver:
      return "receiver";
    case SourcePosition::kArg:
      return "arg";
    case SourcePosition::kLiteralArg:
      return "literal-arg";
  }
  return "arg";
}

ScopeStats& ScopeStats::operator+=(const ScopeStats& o) {
  statements += o.statements;
  other_statements += o.other_statements;
  source_only += o.source_only;
  sink_only += o.sink_only;
  inner_sink_matches += o.inner_sink_matches;
  unclassifiable += o.unclassifiable;
  flows += o.flows;
  return *this;
}

std::optional<SourceRef> CategoryOf(const Chain& chain, const TaintSet& taint,
                                    MatchCache& cache) {
  if (chain.empty()) return std::nullopt;
  for (std::size_t k = chain.size(); k > 0; --k) {
    if (const SourceRule* rule = cache.Source(chain[k - 1])) {
      return FromRule(*rule, chain, chain[k - 1]);
    }
  }
  return FromTaint(chain, taint);
}

std::optional<SourceRef> ReceiverCategoryOf(const Chain& chain,
                                            const TaintSet& taint,
                                            MatchCache& cache) {
  if (chain.empty()) return std::nullopt;
  std::optional<SourceRef> ref;
  if (const SourceRule* rule = cache.Source(chain.back())) {
    ref = FromRule(*rule, chain, chain.back());
  } else {
    ref = FromTaint(chain, taint);
  }
  if (ref) ref->position = SourcePosition::kReceiver;
  return ref;
}

std::vector<RawFlow> AnalyzeScope(const std::vector<const Statement*>& scope,
                                  MatchCache& cache,
                                  const AnalysisOptions& options,
                                  ScopeStats* stats) {
  ScopeStats local;
  TaintSet taint;
  std::vector<RawFlow> flows;
  for (const Statement* st : scope) {
    ++local.statements;
    if (st->kind == StatementKind::kOther) {
      ++local.other_statements;
      continue;
    }
    RawFlow flow;
    flow.statement = st;
    if (st->kind == StatementKind::kAssignment) {
      if (auto ref = CategoryOf(st->target, taint, cache)) {
        ref->position = SourcePosition::kTarget;
        flow.sources.push_back(*std::move(ref));
      }
    }
    if (st->call) {
      const CallExpr& call = *st->call;
      if (auto ref = ReceiverCategoryOf(call.receiver, taint, cache)) {
        flow.sources.push_back(*std::move(ref));
      }
      for (std::size_t k = 0; k < call.args.size(); ++k) {
        if (auto ref =
                ArgSource(call.args[k], static_cast<int>(k), taint, cache)) {
          flow.sources.push_back(*std::move(ref));
        }
      }
      flow.sink = cache.Sink(call.callee);
      CountInnerSinks(call.nested, cache, local.inner_sink_matches);
    }
    if (flow.sink == nullptr) {
      if (!flow.sources.empty()) ++local.source_only;
      continue;
    }
    if (flow.sources.empty()) {
      ++local.sink_only;
      continue;
    }
    auto instance = Classify(flow);
    if (!instance.ok()) {
      ++local.unclassifiable;
      continue;
    }
    ++local.flows;
    if (options.propagate && instance->shape == FlowShape::kP5) {
      const SourceRef& primary = PrimarySource(flow);
      TaintedVar var;
      var.name = ChainDisplay(st->target);
      var.categories = ParticipantCategories(flow.sources);
      var.stem = primary.stem;
      var.origin = TaintOrigin::kDerived;
      var.confidence = primary.confidence;
      std::vector<std::string> rule_ids;
      for (const auto& s : flow.sources) rule_ids.push_back(s.rule_id);
      rule_ids.push_back(flow.sink->id);
      var.derived_from = FindingId(st->file, st->span, rule_ids);
      // Monotone: the first derivation of a name wins.
      taint.emplace(var.name, std::move(var));
    }
    flows.push_back(std::move(flow));
  }
  if (stats != nullptr) *stats += local;
  return flows;
}

}  // namespace pdflow
