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

#include "pdflow/patterns.h"

#include <algorithm>
#include <cstdint>

#include "absl/strings/str_join.h"
#include "fmt/format.h"
#include "pdflow/status.h"

namespace pdflow {
namespace {

constexpr std::array<std::string_view, 8> kShapeNames = {
    "P1", "P2", "P3", "P4", "P5", "P6", "P7", "P8"};

struct Roles {
  const SourceRef* target = nullptr;
  const SourceRef* receiver = nullptr;
  std::vector<const SourceRef*> args;
};

Roles SplitRoles(const RawFlow& flow) {
  Roles roles;
  for (const auto& s : flow.sources) {
    switch (s.position) {
      case SourcePosition::kTarget:
        if (roles.target == nullptr) roles.target = &s;
        break;
      case SourcePosition::kReceiver:
        if (roles.receiver == nullptr) roles.receiver = &s;
        break;
      case SourcePosition::kArg:
      case SourcePosition::kLiteralArg:
        roles.args.push_back(&s);
        break;
    }
  }
  return roles;
}

}  // namespace

std::string_view ShapeName(FlowShape shape) {
  return kShapeNames[static_cast<std::size_t>(shape)];
}

std::optional<FlowShape> ParseShape(std::string_view name) {
  for (FlowShape s : kAllShapes) {
    std::string_view n = ShapeName(s);
    if (name.size() == n.size() && (name[0] == 'P' || name[0] == 'p') &&
        name.substr(1) == n.substr(1)) {
      return s;
    }
  }
  return std::nullopt;
}

std::string_view ArrowName(ArrowKind arrow) {
  return arrow == ArrowKind::kSolid ? "solid" : "dashed";
}

std::string Render(const std::vector<std::string>& lhs_parts,
                   std::string_view sink_name, ArrowKind arrow,
                   std::string_view rhs) {
  const std::string lhs = absl::StrJoin(lhs_parts, "+");
  if (arrow == ArrowKind::kSolid) {
    return fmt::format("{} -{}-> {}", lhs, sink_name, rhs);
  }
  return fmt::format("{} ~{}~> {}", lhs, sink_name, rhs);
}

absl::StatusOr<FlowInstance> Classify(const RawFlow& flow) {
  if (flow.statement == nullptr || flow.sink == nullptr ||
      !flow.statement->call) {
    return MakeError(ErrorKind::kUnclassifiable, "flow without a sink call");
  }
  const Statement& st = *flow.statement;
  if (st.kind == StatementKind::kOther) {
    return MakeError(ErrorKind::kUnclassifiable, "statement kind is other");
  }
  const Roles roles = SplitRoles(flow);
  const bool a = st.kind == StatementKind::kAssignment;
  const bool t = a && roles.target != nullptr;
  const bool r = roles.receiver != nullptr;
  const bool g = !roles.args.empty();

  FlowInstance out;
  out.sink_name = st.call->callee;
  out.arrow = flow.sink->certainty == Certainty::kDashed ? ArrowKind::kDashed
                                                         : ArrowKind::kSolid;
  const std::string target = a ? ChainDisplay(st.target) : std::string();
  auto arg_names = [&](bool skip_target) {
    std::vector<std::string> names;
    for (const SourceRef* s : roles.args) {
      if (skip_target && s->display == target) continue;
      names.push_back(s->display);
    }
    return names;
  };

  if (a && t) {
    if (r) {
      out.shape = FlowShape::kP3;
      out.lhs_parts.push_back(roles.receiver->display + "(_)");
      for (auto& n : arg_names(false)) out.lhs_parts.push_back(n);
    } else if (g) {
      const bool self_update =
          std::any_of(roles.args.begin(), roles.args.end(),
                      [&](const SourceRef* s) { return s->display == target; });
      if (self_update) {
        auto others = arg_names(true);
        out.lhs_parts.push_back(target);
        if (others.empty()) {
          out.shape = FlowShape::kP7;
          out.lhs_parts.emplace_back(kPlaceholder);
        } else {
          out.shape = FlowShape::kP6;
          for (auto& n : others) out.lhs_parts.push_back(n);
        }
      } else {
        out.shape = FlowShape::kP2;
        out.lhs_parts = arg_names(false);
        out.lhs_parts.emplace_back(kPlaceholder);
      }
    } else {
      out.shape = FlowShape::kP1;
      out.lhs_parts.emplace_back(kPlaceholder);
    }
    out.rhs = target;
  } else if (a) {
    if (!r && !g) {
      return MakeError(ErrorKind::kUnclassifiable, "no source participates");
    }
    out.shape =
        out.arrow == ArrowKind::kDashed ? FlowShape::kP4 : FlowShape::kP5;
    if (r) out.lhs_parts.push_back(roles.receiver->display);
    for (auto& n : arg_names(false)) out.lhs_parts.push_back(n);
    out.rhs = target;
  } else if (r) {
    out.lhs_parts.push_back(roles.receiver->display);
    if (g) {
      out.shape = FlowShape::kP6;
      for (auto& n : arg_names(false)) out.lhs_parts.push_back(n);
    } else {
      out.shape = FlowShape::kP7;
      out.lhs_parts.emplace_back(kPlaceholder);
    }
    out.rhs = roles.receiver->display;
  } else if (g) {
    out.shape = FlowShape::kP8;
    out.lhs_parts = arg_names(false);
    out.rhs =
        fmt::format("{}({})", out.sink_name, absl::StrJoin(out.lhs_parts, "+"));
  } else {
    return MakeError(ErrorKind::kUnclassifiable, "no source participates");
  }
  out.rendered = Render(out.lhs_parts, out.sink_name, out.arrow, out.rhs);
  return out;
}

const SourceRef& PrimarySource(const RawFlow& flow) {
  const Roles roles = SplitRoles(flow);
  const std::string target =
      flow.statement != nullptr &&
              flow.statement->kind == StatementKind::kAssignment
          ? ChainDisplay(flow.statement->target)
          : std::string();
  for (const SourceRef* s : roles.args) {
    if (s->display != target) return *s;
  }
  if (roles.receiver != nullptr) return *roles.receiver;
  if (roles.target != nullptr) return *roles.target;
  return flow.sources.front();
}

std::string FindingId(std::string_view path, const Span& span,
                      const std::vector<std::string>& rule_ids) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::string_view bytes) {
    for (unsigned char c : bytes) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    h ^= 0xff;  // field separator
    h *= 0x100000001b3ULL;
  };
  mix(path);
  mix(fmt::format("{}:{}-{}:{}", span.start.line, span.start.column,
                  span.end.line, span.end.column));
  for (const auto& id : rule_ids) mix(id);
  return fmt::format("{:016x}", h);
}

std::vector<SourceCategory> ParticipantCategories(
    const std::vector<SourceRef>& sources) {
  std::vector<SourceCategory> out;
  for (const auto& s : sources) {
    out.insert(out.end(), s.categories.begin(), s.categories.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

absl::StatusOr<Finding> MakeFinding(const RawFlow& flow) {
  auto instance = Classify(flow);
  if (!instance.ok()) return instance.status();
  const Statement& st = *flow.statement;
  Finding f;
  f.path = st.file;
  f.span = st.span;
  f.snippet = st.text;
  f.source = PrimarySource(flow);
  f.participants = flow.sources;
  f.sink.callee = st.call->callee;
  f.sink.text = st.call->callee_text;
  f.sink.category = flow.sink->category;
  f.sink.rule_id = flow.sink->id;
  f.sink.certainty = flow.sink->certainty;
  f.instance = *std::move(instance);
  f.confidence = f.source.confidence;
  std::vector<std::string> rule_ids;
  for (const auto& s : flow.sources) rule_ids.push_back(s.rule_id);
  rule_ids.push_back(flow.sink->id);
  f.id = FindingId(f.path, f.span, rule_ids);
  return f;
}

}  // namespace pdflow
