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

#include "pdflow/triage.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <system_error>
#include <unordered_map>
#include <utility>

#include "fmt/format.h"
#include "nlohmann/json.hpp"
#include "pdflow/status.h"

namespace pdflow {
namespace {

using nlohmann::json;

constexpr std::array<Verdict, 3> kAllVerdicts = {
    Verdict::kUnreviewed, Verdict::kTruePositive, Verdict::kFalsePositive};

absl::Status LabelError(std::string_view message) {
  return MakeError(ErrorKind::kSchemaMismatch,
                   fmt::format("labels: {}", message));
}

}  // namespace

std::string_view VerdictName(Verdict verdict) {
  switch (verdict) {
    case Verdict::kUnreviewed:
      return "Unreviewed";
    case Verdict::kTruePositive:
      return "TP";
    case Verdict::kFalsePositive:
      return "FP";
  }
  return "Unreviewed";
}

std::optional<Verdict> ParseVerdict(std::string_view name) {
  for (Verdict v : kAllVerdicts) {
    if (VerdictName(v) == name) return v;
  }
  return std::nullopt;
}

absl::StatusOr<std::vector<TriageLabel>> ParseLabelsJson(
    std::string_view text) {
  json root = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (root.is_discarded()) return LabelError("not valid JSON");
  if (!root.is_array()) return LabelError("expected a JSON array");
  std::vector<TriageLabel> labels;
  for (const json& item : root) {
    if (!item.is_object()) return LabelError("entries must be objects");
    TriageLabel label;
    auto id = item.find("finding_id");
    auto verdict = item.find("verdict");
    if (id == item.end() || !id->is_string()) {
      return LabelError("missing string field 'finding_id'");
    }
    if (verdict == item.end() || !verdict->is_string()) {
      return LabelError("missing string field 'verdict'");
    }
    label.finding_id = id->get<std::string>();
    auto parsed = ParseVerdict(verdict->get<std::string>());
    if (!parsed) {
      return LabelError(
          fmt::format("unknown verdict '{}'", verdict->get<std::string>()));
    }
    label.verdict = *parsed;
    for (auto [key, field] : {std::pair{"note", &label.note},
                              std::pair{"reviewer", &label.reviewer},
                              std::pair{"timestamp", &label.timestamp}}) {
      auto it = item.find(key);
      if (it == item.end() || it->is_null()) continue;
      if (!it->is_string()) {
        return LabelError(fmt::format("field '{}' must be a string", key));
      }
      *field = it->get<std::string>();
    }
    labels.push_back(std::move(label));
  }
  return labels;
}

std::vector<TriageLabel> CollapseLabels(
    const std::vector<TriageLabel>& labels) {
  std::vector<TriageLabel> out;
  std::unordered_map<std::string, std::size_t> index;
  for (const TriageLabel& label : labels) {
    auto [it, inserted] = index.emplace(label.finding_id, out.size());
    if (inserted) {
      out.push_back(label);
    } else {
      out[it->second] = label;
    }
  }
  return out;
}

std::string EmitLabelsJson(const std::vector<TriageLabel>& labels) {
  std::map<std::string, const TriageLabel*> by_id;
  for (const TriageLabel& label : labels) by_id[label.finding_id] = &label;
  json out = json::array();
  for (const auto& [id, label] : by_id) {
    json item = {{"finding_id", id},
                 {"verdict", std::string(VerdictName(label->verdict))}};
    if (!label->note.empty()) item["note"] = label->note;
    if (!label->reviewer.empty()) item["reviewer"] = label->reviewer;
    if (!label->timestamp.empty()) item["timestamp"] = label->timestamp;
    out.push_back(std::move(item));
  }
  return out.dump(2, ' ', false, json::error_handler_t::replace) + "\n";
}

absl::StatusOr<std::vector<TriageLabel>> LoadLabelsFile(
    const std::string& path) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) return std::vector<TriageLabel>{};
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return MakeError(ErrorKind::kIoError,
                     fmt::format("cannot read labels file {}", path));
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseLabelsJson(buffer.str());
}

absl::Status SaveLabelsFile(const std::string& path,
                            const std::vector<TriageLabel>& labels) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      return MakeError(ErrorKind::kIoError,
                       fmt::format("cannot write {}", tmp.string()));
    }
    out << EmitLabelsJson(labels);
    out.flush();
    if (!out) {
      return MakeError(ErrorKind::kIoError,
                       fmt::format("short write to {}", tmp.string()));
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    return MakeError(ErrorKind::kIoError,
                     fmt::format("cannot replace {}", path));
  }
  return absl::OkStatus();
}

LabeledDocument ApplyLabels(const FindingsDocument& doc,
                            const std::vector<TriageLabel>& labels) {
  LabeledDocument out;
  out.doc = &doc;
  out.verdicts.assign(doc.findings.size(), Verdict::kUnreviewed);
  std::unordered_map<std::string_view, std::size_t> index;
  for (std::size_t i = 0; i < doc.findings.size(); ++i) {
    index.emplace(doc.findings[i].id, i);
  }
  for (const TriageLabel& label : labels) {
    auto it = index.find(label.finding_id);
    if (it == index.end()) {
      out.warnings.push_back(
          fmt::format("label for unknown finding id {}", label.finding_id));
      continue;
    }
    out.verdicts[it->second] = label.verdict;
  }
  return out;
}

double PrecisionTable::coverage() const {
  return findings == 0
             ? 0.0
             : static_cast<double>(reviewed) / static_cast<double>(findings);
}

PrecisionTable BuildPrecisionTable(const LabeledDocument& labeled,
                                   std::int64_t threshold) {
  PrecisionTable table;
  table.threshold = threshold;
  for (SourceCategory src : kAllSourceCategories) {
    for (SinkCategory sink : kAllSinkCategories) {
      PrecisionCell& cell = table.cells[Index(src)][Index(sink)];
      cell.source = src;
      cell.sink = sink;
    }
  }
  const std::vector<Finding>& findings = labeled.doc->findings;
  table.findings = static_cast<std::int64_t>(findings.size());
  for (std::size_t i = 0; i < findings.size(); ++i) {
    Verdict v = labeled.verdicts[i];
    if (v == Verdict::kUnreviewed) continue;
    ++table.reviewed;
    const Finding& f = findings[i];
    if (f.source.categories.size() != 1) {
      ++table.reviewed_multi_category;
      continue;
    }
    PrecisionCell& cell =
        table.cells[Index(f.source.categories.front())][Index(f.sink.category)];
    ++(v == Verdict::kTruePositive ? cell.tp : cell.fp);
  }
  for (auto& row : table.cells) {
    for (PrecisionCell& cell : row) {
      std::int64_t n = cell.tp + cell.fp;
      if (n > 0) {
        cell.precision = static_cast<double>(cell.tp) / static_cast<double>(n);
      }
      cell.suppressed = n < threshold;
    }
  }
  return table;
}

std::string FormatPrecision(const PrecisionCell& cell) {
  if (cell.suppressed || !cell.precision) return "-";
  return fmt::format("{:.2f}", *cell.precision);
}

}  // namespace pdflow
