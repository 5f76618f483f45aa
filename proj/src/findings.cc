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

#include "pdflow/findings.h"

#include <algorithm>
#include <tuple>
#include <utility>

#include "fmt/format.h"
#include "pdflow/status.h"

namespace pdflow {
namespace {

using nlohmann::json;

json CategoriesToJson(const std::vector<SourceCategory>& categories) {
  json out = json::array();
  for (SourceCategory c : categories)
    out.push_back(std::string(Abbreviation(c)));
  return out;
}

json SpanToJson(const Span& span) {
  return json{
      {"start_line", span.start.line},     {"start_column", span.start.column},
      {"end_line", span.end.line},         {"end_column", span.end.column},
      {"begin_offset", span.begin_offset}, {"end_offset", span.end_offset}};
}

json SourceToJson(const SourceRef& s) {
  return json{{"position", std::string(SourcePositionName(s.position))},
              {"index", s.index},
              {"display", s.display},
              {"matched", s.matched},
              {"stem", s.stem},
              {"categories", CategoriesToJson(s.categories)},
              {"rule_id", s.rule_id},
              {"origin", std::string(TaintOriginName(s.origin))},
              {"derived_from", s.derived_from},
              {"confidence", std::string(ConfidenceName(s.confidence))}};
}

// Reads typed fields from a JSON object and remembers the first problem, so
// decoding code reads straight through without per-field error plumbing.
class Reader {
 public:
  bool ok() const { return error_.empty(); }
  const std::string& error() const { return error_; }

  void Fail(std::string message) {
    if (error_.empty()) error_ = std::move(message);
  }

  const json* Field(const json& obj, const char* key, json::value_t type) {
    if (!obj.is_object()) {
      Fail(fmt::format("expected an object around '{}'", key));
      return nullptr;
    }
    auto it = obj.find(key);
    if (it == obj.end()) {
      Fail(fmt::format("missing field '{}'", key));
      return nullptr;
    }
    bool type_ok = it->type() == type;
    if (type == json::value_t::number_integer)
      type_ok = it->is_number_integer();
    if (!type_ok) {
      Fail(fmt::format("field '{}' has the wrong type", key));
      return nullptr;
    }
    return &*it;
  }

  std::string String(const json& obj, const char* key) {
    const json* v = Field(obj, key, json::value_t::string);
    return v ? v->get<std::string>() : std::string();
  }

  std::int64_t Int(const json& obj, const char* key) {
    const json* v = Field(obj, key, json::value_t::number_integer);
    return v ? v->get<std::int64_t>() : 0;
  }

  std::size_t Size(const json& obj, const char* key) {
    std::int64_t v = Int(obj, key);
    if (v < 0) Fail(fmt::format("field '{}' is negative", key));
    return v < 0 ? 0 : static_cast<std::size_t>(v);
  }

  const json& Object(const json& obj, const char* key) {
    const json* v = Field(obj, key, json::value_t::object);
    return v ? *v : empty_object_;
  }

  const json& Array(const json& obj, const char* key) {
    const json* v = Field(obj, key, json::value_t::array);
    return v ? *v : empty_array_;
  }

  // Maps a string field through `parse`, failing on values it rejects.
  template <typename T, typename Parse>
  T Enum(const json& obj, const char* key, Parse parse) {
    std::string raw = String(obj, key);
    if (!ok()) return T{};
    std::optional<T> value = parse(raw);
    if (!value) {
      Fail(fmt::format("field '{}' has unknown value '{}'", key, raw));
      return T{};
    }
    return *value;
  }

 private:
  std::string error_;
  const json empty_object_ = json::object();
  const json empty_array_ = json::array();
};

template <typename T, std::size_t N>
std::optional<T> ParseNamed(std::string_view raw,
                            const std::array<T, N>& values,
                            std::string_view (*name)(T)) {
  for (T v : values) {
    if (name(v) == raw) return v;
  }
  return std::nullopt;
}

std::optional<SourcePosition> ParsePosition(std::string_view raw) {
  constexpr std::array<SourcePosition, 4> kAll = {
      SourcePosition::kTarget, SourcePosition::kReceiver, SourcePosition::kArg,
      SourcePosition::kLiteralArg};
  return ParseNamed(raw, kAll, &SourcePositionName);
}

std::optional<TaintOrigin> ParseOrigin(std::string_view raw) {
  constexpr std::array<TaintOrigin, 2> kAll = {TaintOrigin::kSeeded,
                                               TaintOrigin::kDerived};
  return ParseNamed(raw, kAll, &TaintOriginName);
}

std::optional<Confidence> ParseConfidence(std::string_view raw) {
  constexpr std::array<Confidence, 2> kAll = {Confidence::kHigh,
                                              Confidence::kLow};
  return ParseNamed(raw, kAll, &ConfidenceName);
}

std::optional<Certainty> ParseCertainty(std::string_view raw) {
  constexpr std::array<Certainty, 2> kAll = {Certainty::kSolid,
                                             Certainty::kDashed};
  return ParseNamed(raw, kAll, &CertaintyName);
}

std::optional<ArrowKind> ParseArrow(std::string_view raw) {
  constexpr std::array<ArrowKind, 2> kAll = {ArrowKind::kSolid,
                                             ArrowKind::kDashed};
  return ParseNamed(raw, kAll, &ArrowName);
}

std::vector<SourceCategory> ReadCategories(Reader& r, const json& obj) {
  std::vector<SourceCategory> out;
  for (const json& c : r.Array(obj, "categories")) {
    auto parsed = c.is_string() ? ParseSourceCategory(c.get<std::string>())
                                : std::nullopt;
    if (!parsed) {
      r.Fail("unknown source category");
      break;
    }
    out.push_back(*parsed);
  }
  return out;
}

Span ReadSpan(Reader& r, const json& obj) {
  Span span;
  span.start.line = static_cast<int>(r.Int(obj, "start_line"));
  span.start.column = static_cast<int>(r.Int(obj, "start_column"));
  span.end.line = static_cast<int>(r.Int(obj, "end_line"));
  span.end.column = static_cast<int>(r.Int(obj, "end_column"));
  span.begin_offset = r.Size(obj, "begin_offset");
  span.end_offset = r.Size(obj, "end_offset");
  return span;
}

SourceRef ReadSource(Reader& r, const json& obj) {
  SourceRef s;
  s.position = r.Enum<SourcePosition>(obj, "position", ParsePosition);
  s.index = static_cast<int>(r.Int(obj, "index"));
  s.display = r.String(obj, "display");
  s.matched = r.String(obj, "matched");
  s.stem = r.String(obj, "stem");
  s.categories = ReadCategories(r, obj);
  s.rule_id = r.String(obj, "rule_id");
  s.origin = r.Enum<TaintOrigin>(obj, "origin", ParseOrigin);
  s.derived_from = r.String(obj, "derived_from");
  s.confidence = r.Enum<Confidence>(obj, "confidence", ParseConfidence);
  return s;
}

Finding ReadFinding(Reader& r, const json& obj) {
  Finding f;
  f.id = r.String(obj, "id");
  f.path = r.String(obj, "path");
  f.span = ReadSpan(r, r.Object(obj, "span"));
  f.snippet = r.String(obj, "snippet");
  f.source = ReadSource(r, r.Object(obj, "source"));
  for (const json& p : r.Array(obj, "participants")) {
    f.participants.push_back(ReadSource(r, p));
  }
  const json& sink = r.Object(obj, "sink");
  f.sink.callee = r.String(sink, "callee");
  f.sink.text = r.String(sink, "text");
  f.sink.category = r.Enum<SinkCategory>(sink, "category", ParseSinkCategory);
  f.sink.rule_id = r.String(sink, "rule_id");
  f.sink.certainty = r.Enum<Certainty>(sink, "certainty", ParseCertainty);
  const json& inst = r.Object(obj, "instance");
  f.instance.shape = r.Enum<FlowShape>(inst, "shape", ParseShape);
  f.instance.arrow = r.Enum<ArrowKind>(inst, "arrow", ParseArrow);
  for (const json& part : r.Array(inst, "lhs")) {
    if (!part.is_string()) {
      r.Fail("lhs entries must be strings");
      break;
    }
    f.instance.lhs_parts.push_back(part.get<std::string>());
  }
  f.instance.sink_name = r.String(inst, "sink");
  f.instance.rhs = r.String(inst, "rhs");
  f.instance.rendered = r.String(inst, "rendered");
  f.confidence = r.Enum<Confidence>(obj, "confidence", ParseConfidence);
  return f;
}

}  // namespace

json FindingToJson(const Finding& f) {
  json participants = json::array();
  for (const SourceRef& p : f.participants)
    participants.push_back(SourceToJson(p));
  return json{
      {"id", f.id},
      {"path", f.path},
      {"span", SpanToJson(f.span)},
      {"snippet", f.snippet},
      {"source", SourceToJson(f.source)},
      {"participants", std::move(participants)},
      {"sink",
       {{"callee", f.sink.callee},
        {"text", f.sink.text},
        {"category", std::string(Abbreviation(f.sink.category))},
        {"rule_id", f.sink.rule_id},
        {"certainty", std::string(CertaintyName(f.sink.certainty))}}},
      {"instance",
       {{"shape", std::string(ShapeName(f.instance.shape))},
        {"arrow", std::string(ArrowName(f.instance.arrow))},
        {"lhs", f.instance.lhs_parts},
        {"sink", f.instance.sink_name},
        {"rhs", f.instance.rhs},
        {"rendered", f.instance.rendered}}},
      {"confidence", std::string(ConfidenceName(f.confidence))},
  };
}

absl::StatusOr<Finding> FindingFromJson(const json& j) {
  Reader r;
  Finding f = ReadFinding(r, j);
  if (!r.ok()) return MakeError(ErrorKind::kSchemaMismatch, r.error());
  return f;
}

std::string EmitFindingsJson(const FindingsDocument& doc) {
  json findings = json::array();
  for (const Finding& f : doc.findings) findings.push_back(FindingToJson(f));
  json stats = {{"files", doc.stats.files},
                {"files_skipped", doc.stats.files_skipped},
                {"statements", doc.stats.statements},
                {"source_only", doc.stats.source_only},
                {"sink_only", doc.stats.sink_only},
                {"inner_sink_matches", doc.stats.inner_sink_matches},
                {"unclassifiable", doc.stats.unclassifiable},
                {"findings", doc.findings.size()}};
  if (doc.stats.elapsed_ms) stats["elapsed_ms"] = *doc.stats.elapsed_ms;
  json root = {{"schema_version", kFindingsSchemaVersion},
               {"tool",
                {{"name", doc.tool.name},
                 {"version", doc.tool.version},
                 {"rulepack_version", doc.tool.rulepack_version}}},
               {"stats", std::move(stats)},
               {"findings", std::move(findings)}};
  // nlohmann's default object type is an ordered std::map, so keys come out
  // sorted. Invalid UTF-8 is replaced rather than thrown on.
  return root.dump(2, ' ', false, json::error_handler_t::replace) + "\n";
}

absl::StatusOr<FindingsDocument> LoadFindingsJson(std::string_view text) {
  json root = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (root.is_discarded()) {
    return MakeError(ErrorKind::kSchemaMismatch,
                     "findings file is not valid JSON");
  }
  Reader r;
  std::int64_t version = r.Int(root, "schema_version");
  if (r.ok() && version != kFindingsSchemaVersion) {
    return MakeError(ErrorKind::kSchemaMismatch,
                     fmt::format("unsupported schema_version {} (expected {})",
                                 version, kFindingsSchemaVersion));
  }
  FindingsDocument doc;
  const json& tool = r.Object(root, "tool");
  doc.tool.name = r.String(tool, "name");
  doc.tool.version = r.String(tool, "version");
  doc.tool.rulepack_version = r.String(tool, "rulepack_version");
  const json& stats = r.Object(root, "stats");
  doc.stats.files = r.Int(stats, "files");
  doc.stats.files_skipped = r.Int(stats, "files_skipped");
  doc.stats.statements = r.Int(stats, "statements");
  doc.stats.source_only = r.Int(stats, "source_only");
  doc.stats.sink_only = r.Int(stats, "sink_only");
  doc.stats.inner_sink_matches = r.Int(stats, "inner_sink_matches");
  doc.stats.unclassifiable = r.Int(stats, "unclassifiable");
  if (stats.is_object() && stats.contains("elapsed_ms")) {
    doc.stats.elapsed_ms = r.Int(stats, "elapsed_ms");
  }
  const json& findings = r.Array(root, "findings");
  for (const json& f : findings) {
    doc.findings.push_back(ReadFinding(r, f));
    if (!r.ok()) break;
  }
  if (r.ok() && static_cast<std::size_t>(r.Int(stats, "findings")) !=
                    doc.findings.size()) {
    r.Fail("stats.findings does not match the findings array");
  }
  if (!r.ok()) return MakeError(ErrorKind::kSchemaMismatch, r.error());
  return doc;
}

void SortFindings(std::vector<Finding>& findings) {
  std::sort(
      findings.begin(), findings.end(), [](const Finding& a, const Finding& b) {
        return std::tie(a.path, a.span, a.id) < std::tie(b.path, b.span, b.id);
      });
}

}  // namespace pdflow
