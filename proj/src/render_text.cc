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

#include "pdflow/render_text.h"

#include <algorithm>
#include <utility>

#include "absl/strings/str_join.h"
#include "fmt/format.h"
#include "pdflow/status.h"

namespace pdflow {
namespace {

std::size_t Width(std::string_view s) {
  return static_cast<std::size_t>(std::count_if(
      s.begin(), s.end(), [](char c) { return (c & 0xC0) != 0x80; }));
}

std::string EscapeCell(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '|') {
      out += "\\|";
    } else if (c == '\n' || c == '\r') {
      out += ' ';
    } else {
      out += c;
    }
  }
  return out;
}

std::string SourceList(const std::vector<CategoryCount>& counts) {
  std::vector<std::string> parts;
  for (const CategoryCount& c : counts) {
    parts.push_back(fmt::format("{} ({})", Abbreviation(c.source), c.count));
  }
  return parts.empty() ? std::string("none") : absl::StrJoin(parts, ", ");
}

void RenderTreeNode(const TypeNode& node, int depth, TextFormat format,
                    std::string& out) {
  if (format == TextFormat::kMarkdown) {
    out += fmt::format("{}- {} ({})\n", std::string(2 * depth, ' '),
                       EscapeCell(node.name), node.count);
  } else {
    out += fmt::format("{}{} ({})\n", std::string(2 * depth, ' '), node.name,
                       node.count);
  }
  for (const TypeNode& child : node.children) {
    RenderTreeNode(child, depth + 1, format, out);
  }
}

}  // namespace

absl::StatusOr<TextFormat> ParseTextFormat(std::string_view name) {
  if (name == "text") return TextFormat::kText;
  if (name == "markdown" || name == "md") return TextFormat::kMarkdown;
  return MakeError(ErrorKind::kUnknownKey,
                   fmt::format("unknown format '{}'", name));
}

std::string RenderTable(const std::vector<std::string>& header,
                        const std::vector<std::vector<std::string>>& rows,
                        TextFormat format) {
  std::vector<std::vector<std::string>> all;
  all.push_back(header);
  for (const auto& row : rows) all.push_back(row);
  for (auto& row : all) {
    row.resize(header.size());
    if (format == TextFormat::kMarkdown) {
      for (std::string& cell : row) cell = EscapeCell(cell);
    }
  }
  std::vector<std::size_t> widths(header.size(), 3);
  for (const auto& row : all) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      widths[i] = std::max(widths[i], Width(row[i]));
    }
  }
  auto line = [&](const std::vector<std::string>& row) {
    std::string out = format == TextFormat::kMarkdown ? "| " : "";
    for (std::size_t i = 0; i < row.size(); ++i) {
      bool last = i + 1 == row.size();
      out += row[i];
      if (!last || format == TextFormat::kMarkdown) {
        out += std::string(widths[i] - Width(row[i]), ' ');
      }
      if (format == TextFormat::kMarkdown) {
        out += last ? " |" : " | ";
      } else if (!last) {
        out += "  ";
      }
    }
    return out + "\n";
  };
  std::string out = line(all.front());
  std::vector<std::string> rule;
  for (std::size_t w : widths) rule.emplace_back(w, '-');
  out += line(rule);
  for (std::size_t i = 1; i < all.size(); ++i) out += line(all[i]);
  return out;
}

std::string RenderFlowTable(const FlowTable& table, TextFormat format) {
  const std::vector<std::string> header = {
      "Path", "Source", "Sink", "Sink Type", "Flow Pattern Instance"};
  std::string out;
  for (const FlowGroup& group : table.groups) {
    if (table.group_by != ViewKey::kNone) {
      if (!out.empty()) out += "\n";
      out +=
          format == TextFormat::kMarkdown
              ? fmt::format("### {} = {} ({})\n\n", ViewKeyName(table.group_by),
                            EscapeCell(group.key), group.rows.size())
              : fmt::format("== {} = {} ({})\n", ViewKeyName(table.group_by),
                            group.key, group.rows.size());
    }
    std::vector<std::vector<std::string>> rows;
    for (const FlowTableRow& r : group.rows) {
      rows.push_back({r.path, r.source, r.sink, r.sink_type, r.instance});
    }
    out += RenderTable(header, rows, format);
  }
  if (table.groups.empty()) out = RenderTable(header, {}, format);
  return out;
}

std::string RenderTypeTree(const DataTypeTree& tree, TextFormat format) {
  std::string out;
  RenderTreeNode(tree.root, 0, format, out);
  return out;
}

std::string RenderHeatmap(const HeatmapStats& h, TextFormat format) {
  std::vector<std::string> header = {"Source \\ Sink"};
  for (SinkCategory sink : kAllSinkCategories) {
    header.emplace_back(Abbreviation(sink));
  }
  header.emplace_back("Total");
  std::vector<std::vector<std::string>> rows;
  for (SourceCategory src : kAllSourceCategories) {
    std::vector<std::string> row = {std::string(Abbreviation(src))};
    for (SinkCategory sink : kAllSinkCategories) {
      row.push_back(fmt::format("{}", h.cells[Index(src)][Index(sink)]));
    }
    row.push_back(fmt::format("{}", h.row_totals[Index(src)]));
    rows.push_back(std::move(row));
  }
  std::vector<std::string> totals = {"Total"};
  for (SinkCategory sink : kAllSinkCategories) {
    totals.push_back(fmt::format("{}", h.column_totals[Index(sink)]));
  }
  totals.push_back(fmt::format("{}", h.total));
  rows.push_back(std::move(totals));
  std::string out = RenderTable(header, rows, format);
  if (h.multi_category_findings > 0) {
    out += fmt::format(
        "\n{} finding(s) have a multi-category source and count once per "
        "category.\n",
        h.multi_category_findings);
  }
  return out;
}

std::string RenderPrecisionTable(const PrecisionTable& table,
                                 TextFormat format) {
  std::vector<std::string> header = {"Source \\ Sink"};
  for (SinkCategory sink : kAllSinkCategories) {
    header.emplace_back(Abbreviation(sink));
  }
  std::vector<std::vector<std::string>> rows;
  for (SourceCategory src : kAllSourceCategories) {
    std::vector<std::string> row = {std::string(Abbreviation(src))};
    for (SinkCategory sink : kAllSinkCategories) {
      row.push_back(FormatPrecision(table.cells[Index(src)][Index(sink)]));
    }
    rows.push_back(std::move(row));
  }
  std::string out = RenderTable(header, rows, format);
  out += fmt::format(
      "\nreviewed {} of {} findings (coverage {:.2f}); cells with fewer than "
      "{} reviewed findings show \"-\"\n",
      table.reviewed, table.findings, table.coverage(), table.threshold);
  if (table.reviewed_multi_category > 0) {
    out += fmt::format(
        "{} reviewed finding(s) with multi-category sources are not "
        "counted in any cell\n",
        table.reviewed_multi_category);
  }
  return out;
}

std::string RenderRopa(const RopaSummary& ropa, const CoverageDiff* coverage) {
  std::string out = "# Record of processing activities (code-derived)\n\n";
  out += "## Categories of personal data\n\n";
  if (ropa.categories_of_personal_data.empty()) out += "None found.\n";
  for (SourceCategory c : ropa.categories_of_personal_data) {
    out += fmt::format("- {} ({})\n", DisplayName(c), Abbreviation(c));
  }
  out += "\n## Categories of processing\n\n";
  if (ropa.categories_of_processing.empty()) out += "None found.\n";
  for (const ProcessingEntry& e : ropa.categories_of_processing) {
    out +=
        fmt::format("- {} ({}): {} finding(s) from {}\n", DisplayName(e.sink),
                    Abbreviation(e.sink), e.findings, SourceList(e.sources));
  }
  out += "\n## Transfer to a database or third-party APIs\n\n";
  if (ropa.database_or_third_party_transfers.empty()) out += "None found.\n";
  for (const ProcessingEntry& e : ropa.database_or_third_party_transfers) {
    out += fmt::format("- {} <- {}\n", Abbreviation(e.sink),
                       SourceList(e.sources));
  }
  out += "\n## Data encryption or anonymization\n\n";
  out += ropa.encryption_or_anonymization.empty()
             ? "None found.\n"
             : fmt::format("- E <- {}\n",
                           SourceList(ropa.encryption_or_anonymization));
  out += "\n## Personal data logging\n\n";
  if (ropa.logging.empty()) out += "None found.\n";
  for (const CategoryCount& c : ropa.logging) {
    out += fmt::format("- {}: {}\n", Abbreviation(c.source), c.count);
  }
  out +=
      "\n## Manual entries\n\n"
      "These fields cannot be derived from code.\n\n"
      "- Purposes of processing: _to be completed_\n"
      "- Categories of data subjects: _to be completed_\n"
      "- Recipients of personal data: _to be completed_\n"
      "- Transfers to third countries: _to be completed_\n"
      "- Retention schedule: _to be completed_\n"
      "- Technical and organisational security measures: _to be "
      "completed_\n";
  if (coverage != nullptr) {
    out += "\n## Coverage against declared categories\n\n";
    out += fmt::format("Coverage: {}\n", coverage->notation);
    if (!coverage->unused.empty()) {
      std::vector<std::string> unused;
      for (SourceCategory c : coverage->unused) {
        unused.emplace_back(Abbreviation(c));
      }
      out += fmt::format("\nDeclared but not found in code: {}\n",
                         absl::StrJoin(unused, ", "));
    }
  }
  return out;
}

std::string RenderScanSummary(const FindingsDocument& doc) {
  std::string out = fmt::format(
      "files: {}\nfiles skipped: {}\nstatements: {}\nfindings: {}\n"
      "source-only statements: {}\nsink-only statements: {}\n"
      "unclassifiable: {}\n",
      doc.stats.files, doc.stats.files_skipped, doc.stats.statements,
      doc.findings.size(), doc.stats.source_only, doc.stats.sink_only,
      doc.stats.unclassifiable);
  if (doc.stats.elapsed_ms) {
    out += fmt::format("elapsed: {} ms\n", *doc.stats.elapsed_ms);
  }
  return out;
}

}  // namespace pdflow
