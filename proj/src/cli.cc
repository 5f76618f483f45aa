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

#include "pdflow/cli.h"

#include <algorithm>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "fmt/chrono.h"
#include "fmt/format.h"
#include "pdflow/findings.h"
#include "pdflow/render_text.h"
#include "pdflow/report.h"
#include "pdflow/rulepack.h"
#include "pdflow/scanner.h"
#include "pdflow/server.h"
#include "pdflow/status.h"
#include "pdflow/triage.h"
#include "pdflow/views.h"

namespace pdflow {
namespace {

constexpr const char* kRulesEnv = "PDFLOW_RULES";

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return MakeError(ErrorKind::kIoError, fmt::format("cannot read {}", path));
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// "-" writes to `out`.
absl::Status WriteOutput(const std::string& path, const std::string& text,
                         std::ostream& out) {
  if (path == "-") {
    out << text;
    return absl::OkStatus();
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  file << text;
  file.close();
  if (!file) {
    return MakeError(ErrorKind::kIoError, fmt::format("cannot write {}", path));
  }
  return absl::OkStatus();
}

absl::StatusOr<FindingsDocument> LoadDocument(const std::string& path) {
  absl::StatusOr<std::string> text = ReadFile(path);
  if (!text.ok()) return text.status();
  absl::StatusOr<FindingsDocument> doc = LoadFindingsJson(*text);
  if (!doc.ok()) {
    return MakeError(
        ErrorKind::kSchemaMismatch,
        fmt::format("{}: {}", path, std::string(doc.status().message())));
  }
  return doc;
}

struct ScanFlags {
  std::vector<std::string> paths;
  std::string output = "pdflow-findings.json";
  std::string sarif;
  std::string rules;
  std::vector<std::string> languages;
  std::vector<std::string> exclude;
  bool no_propagation = false;
  int workers = 1;
  bool timing = false;
  bool fail_on_findings = false;
  bool quiet = false;
};

struct ViewFlags {
  std::string kind;
  std::string findings;
  std::string group_by = "none";
  std::vector<std::string> filters;
  std::string format = "text";
};

struct ExportFlags {
  std::string kind;
  std::string findings;
  std::string declared;
  std::string output = "-";
};

struct TriageFlags {
  std::string findings;
  std::string labels;
  std::vector<std::string> set;
  std::string note;
  std::string reviewer;
  std::int64_t threshold = kDefaultSuppressionThreshold;
  std::string format = "text";
};

struct ServeFlags {
  std::string findings;
  std::string labels;
  std::string root = ".";
  std::string ui;
  std::string host = "127.0.0.1";
  int port = 8765;
  std::int64_t threshold = kDefaultSuppressionThreshold;
};

struct RulesFlags {
  std::string rules;
  bool yaml = false;
};

std::string RulesPath(const std::string& flag) {
  if (!flag.empty()) return flag;
  const char* env = std::getenv(kRulesEnv);
  return env != nullptr && *env != '\0' ? env : "default";
}

absl::StatusOr<int> CmdScan(const ScanFlags& flags, std::ostream& out,
                            std::ostream& err) {
  ScanConfig config;
  config.paths = flags.paths;
  config.propagate = !flags.no_propagation;
  config.workers = flags.workers;
  config.timing = flags.timing;
  config.exclude_dirs.insert(config.exclude_dirs.end(), flags.exclude.begin(),
                             flags.exclude.end());
  for (const std::string& name : flags.languages) {
    auto lang =
        std::find_if(kAllLanguages.begin(), kAllLanguages.end(),
                     [&](Language l) { return LanguageName(l) == name; });
    if (lang == kAllLanguages.end()) {
      return MakeError(ErrorKind::kConfigError,
                       fmt::format("unknown language '{}'", name));
    }
    config.languages.push_back(*lang);
  }
  absl::StatusOr<RulePack> pack = LoadRulePack(RulesPath(flags.rules));
  if (!pack.ok()) return pack.status();
  absl::StatusOr<ScanResult> result = Scan(config, *pack);
  if (!result.ok()) return result.status();
  for (const std::string& d : result->diagnostics)
    err << "warning: " << d << "\n";
  absl::Status written =
      WriteOutput(flags.output, EmitFindingsJson(result->doc), out);
  if (!written.ok()) return written;
  if (!flags.sarif.empty()) {
    written = WriteOutput(flags.sarif, EmitSarif(result->doc), out);
    if (!written.ok()) return written;
  }
  if (!flags.quiet) {
    // Keep stdout clean when the document itself goes there.
    std::ostream& summary =
        flags.output == "-" || flags.sarif == "-" ? err : out;
    summary << RenderScanSummary(result->doc);
  }
  return flags.fail_on_findings && !result->doc.findings.empty() ? kExitFindings
                                                                 : kExitOk;
}

absl::StatusOr<int> CmdView(const ViewFlags& flags, std::ostream& out) {
  absl::StatusOr<FindingsDocument> doc = LoadDocument(flags.findings);
  if (!doc.ok()) return doc.status();
  const bool mermaid = flags.format == "mermaid";
  TextFormat format = TextFormat::kText;
  if (!mermaid) {
    absl::StatusOr<TextFormat> parsed = ParseTextFormat(flags.format);
    if (!parsed.ok()) return parsed.status();
    format = *parsed;
  } else if (flags.kind != "types") {
    return MakeError(ErrorKind::kConfigError,
                     "--format mermaid is only available for the types view");
  }
  if (flags.kind == "types") {
    DataTypeTree tree = BuildTypeView(doc->findings);
    out << (mermaid ? EmitMermaid(tree) : RenderTypeTree(tree, format));
  } else if (flags.kind == "heatmap") {
    out << RenderHeatmap(BuildHeatmap(doc->findings), format);
  } else {
    absl::StatusOr<ViewKey> key = ParseViewKey(flags.group_by);
    if (!key.ok()) return key.status();
    std::vector<FlowFilter> filters;
    for (const std::string& f : flags.filters) {
      absl::StatusOr<FlowFilter> parsed = ParseFlowFilter(f);
      if (!parsed.ok()) return parsed.status();
      filters.push_back(*parsed);
    }
    absl::StatusOr<FlowTable> table =
        BuildFlowTable(doc->findings, *key, filters);
    if (!table.ok()) return table.status();
    out << RenderFlowTable(*table, format);
  }
  return kExitOk;
}

absl::StatusOr<int> CmdExport(const ExportFlags& flags, std::ostream& out) {
  absl::StatusOr<FindingsDocument> doc = LoadDocument(flags.findings);
  if (!doc.ok()) return doc.status();
  std::string text;
  if (flags.kind == "sarif") {
    text = EmitSarif(*doc);
  } else if (flags.kind == "mermaid") {
    text = EmitMermaid(BuildTypeView(doc->findings));
  } else {
    RopaSummary ropa = BuildRopa(doc->findings);
    std::optional<CoverageDiff> coverage;
    if (!flags.declared.empty()) {
      absl::StatusOr<std::string> yaml = ReadFile(flags.declared);
      if (!yaml.ok()) return yaml.status();
      absl::StatusOr<std::vector<SourceCategory>> declared =
          ParseDeclaredCategories(*yaml);
      if (!declared.ok()) return declared.status();
      coverage = DiffCoverage(ropa, *declared);
    }
    text = RenderRopa(ropa, coverage ? &*coverage : nullptr);
  }
  absl::Status written = WriteOutput(flags.output, text, out);
  if (!written.ok()) return written;
  return kExitOk;
}

absl::StatusOr<int> CmdTriage(const TriageFlags& flags, std::ostream& out,
                              std::ostream& err) {
  absl::StatusOr<FindingsDocument> doc = LoadDocument(flags.findings);
  if (!doc.ok()) return doc.status();
  absl::StatusOr<TextFormat> format = ParseTextFormat(flags.format);
  if (!format.ok()) return format.status();
  absl::StatusOr<std::vector<TriageLabel>> labels =
      LoadLabelsFile(flags.labels);
  if (!labels.ok()) return labels.status();
  if (!flags.set.empty()) {
    const std::string now =
        fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", fmt::gmtime(std::time(nullptr)));
    for (const std::string& entry : flags.set) {
      std::size_t eq = entry.find('=');
      auto verdict = eq == std::string::npos
                         ? std::nullopt
                         : ParseVerdict(entry.substr(eq + 1));
      if (!verdict) {
        return MakeError(
            ErrorKind::kConfigError,
            fmt::format("--set expects ID=TP|FP|Unreviewed, got '{}'", entry));
      }
      std::string id = entry.substr(0, eq);
      if (std::none_of(doc->findings.begin(), doc->findings.end(),
                       [&](const Finding& f) { return f.id == id; })) {
        return MakeError(ErrorKind::kUnknownKey,
                         fmt::format("unknown finding id {}", id));
      }
      labels->push_back({id, *verdict, flags.note, flags.reviewer, now});
    }
    *labels = CollapseLabels(*labels);
    absl::Status saved = SaveLabelsFile(flags.labels, *labels);
    if (!saved.ok()) return saved;
  }
  LabeledDocument labeled = ApplyLabels(*doc, *labels);
  for (const std::string& w : labeled.warnings) err << "warning: " << w << "\n";
  out << RenderPrecisionTable(BuildPrecisionTable(labeled, flags.threshold),
                              *format);
  return kExitOk;
}

absl::StatusOr<int> CmdServe(const ServeFlags& flags, std::ostream& out) {
  absl::StatusOr<FindingsDocument> doc = LoadDocument(flags.findings);
  if (!doc.ok()) return doc.status();
  ServerOptions options;
  options.labels_path =
      flags.labels.empty() ? flags.findings + ".labels.json" : flags.labels;
  options.root = flags.root;
  options.ui_dir = flags.ui;
  options.host = flags.host;
  options.port = flags.port;
  options.threshold = flags.threshold;
  absl::StatusOr<std::unique_ptr<ApiServer>> server =
      ApiServer::Create(*std::move(doc), options);
  if (!server.ok()) return server.status();
  absl::StatusOr<int> port = (*server)->Bind();
  if (!port.ok()) return port.status();
  out << fmt::format("serving http://{}:{}/ (labels: {})\n", flags.host, *port,
                     options.labels_path)
      << std::flush;
  absl::Status served = (*server)->Serve();
  if (!served.ok()) return served;
  return kExitOk;
}

absl::StatusOr<int> CmdRules(const RulesFlags& flags, std::ostream& out) {
  if (flags.yaml) {
    out << DefaultRulePackYaml();
    return kExitOk;
  }
  absl::StatusOr<RulePack> pack = LoadRulePack(RulesPath(flags.rules));
  if (!pack.ok()) return pack.status();
  std::vector<std::vector<std::string>> rows;
  for (const SourceRule& r : pack->sources()) {
    rows.push_back({r.id, "source", std::string(Abbreviation(r.category)),
                    std::string(SourceKindName(r.kind)),
                    fmt::format("{}", fmt::join(r.patterns, " | "))});
  }
  for (const SinkRule& r : pack->sinks()) {
    rows.push_back({r.id, "sink", std::string(Abbreviation(r.category)),
                    std::string(CertaintyName(r.certainty)), r.pattern});
  }
  out << fmt::format("rule pack version {}\n", pack->version());
  out << RenderTable({"Id", "Role", "Category", "Kind", "Pattern"}, rows,
                     TextFormat::kText);
  return kExitOk;
}

}  // namespace

int ExitCodeFor(const absl::Status& status) {
  if (status.ok()) return kExitOk;
  auto kind = GetErrorKind(status);
  if (!kind || *kind == ErrorKind::kUnclassifiable) return kExitInternal;
  return kExitConfig;
}

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{
      "pdflow: find personal data flows in Java, JavaScript and "
      "TypeScript code"};
  app.name("pdflow");
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  ScanFlags scan;
  CLI::App* scan_cmd = app.add_subcommand("scan", "Scan files or directories");
  scan_cmd->add_option("paths", scan.paths, "Files or directories")->required();
  scan_cmd
      ->add_option("-o,--output", scan.output,
                   "Findings JSON path, '-' for stdout")
      ->capture_default_str();
  scan_cmd->add_option("--sarif", scan.sarif, "Also write SARIF 2.1.0 here");
  scan_cmd->add_option("--rules", scan.rules,
                       "Rule pack YAML merged over the default (env: "
                       "PDFLOW_RULES)");
  scan_cmd
      ->add_option("--lang", scan.languages,
                   "Only these languages: java, javascript, typescript")
      ->delimiter(',');
  scan_cmd->add_option("--exclude", scan.exclude,
                       "Extra directory names to skip");
  scan_cmd->add_flag("--no-propagation", scan.no_propagation,
                     "Do not derive new sources from solid flows");
  scan_cmd->add_option("-j,--workers", scan.workers, "Worker threads")
      ->check(CLI::Range(1, 256))
      ->capture_default_str();
  scan_cmd->add_flag("--timing", scan.timing,
                     "Record elapsed time (makes output run-dependent)");
  scan_cmd->add_flag("--fail-on-findings", scan.fail_on_findings,
                     "Exit 1 when there are findings");
  scan_cmd->add_flag("-q,--quiet", scan.quiet, "No summary");

  ViewFlags view;
  CLI::App* view_cmd = app.add_subcommand("view", "Render a view of findings");
  view_cmd->add_option("kind", view.kind, "types, flows or heatmap")
      ->required()
      ->check(CLI::IsMember({"types", "flows", "heatmap"}));
  view_cmd->add_option("findings", view.findings, "Findings JSON")->required();
  view_cmd
      ->add_option("-g,--group-by", view.group_by,
                   "none, source-stem, source-category, sink-category, "
                   "sink-name, file, pattern-shape")
      ->capture_default_str();
  view_cmd->add_option("-f,--filter", view.filters,
                       "key=value, repeatable; confidence is also a key");
  view_cmd->add_option("--format", view.format, "text, markdown or mermaid")
      ->capture_default_str();

  ExportFlags exp;
  CLI::App* export_cmd = app.add_subcommand("export", "Export a report");
  export_cmd->add_option("kind", exp.kind, "ropa, sarif or mermaid")
      ->required()
      ->check(CLI::IsMember({"ropa", "sarif", "mermaid"}));
  export_cmd->add_option("findings", exp.findings, "Findings JSON")->required();
  export_cmd->add_option("--declared", exp.declared,
                         "Declared categories YAML for the coverage diff");
  export_cmd
      ->add_option("-o,--output", exp.output, "Output path, '-' for stdout")
      ->capture_default_str();

  TriageFlags triage;
  CLI::App* triage_cmd =
      app.add_subcommand("triage", "Record review labels and show precision");
  triage_cmd->add_option("findings", triage.findings, "Findings JSON")
      ->required();
  triage_cmd->add_option("-l,--labels", triage.labels, "Labels JSON file")
      ->required();
  triage_cmd->add_option("--set", triage.set,
                         "ID=TP|FP|Unreviewed, repeatable");
  triage_cmd->add_option("--note", triage.note, "Note for labels set now");
  triage_cmd->add_option("--reviewer", triage.reviewer,
                         "Reviewer for labels set now");
  triage_cmd
      ->add_option("--threshold", triage.threshold,
                   "Minimum reviewed findings before a cell shows")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  triage_cmd->add_option("--format", triage.format, "text or markdown")
      ->capture_default_str();

  ServeFlags serve;
  CLI::App* serve_cmd = app.add_subcommand("serve", "Serve the review API");
  serve_cmd->add_option("findings", serve.findings, "Findings JSON")
      ->required();
  serve_cmd->add_option("-l,--labels", serve.labels,
                        "Labels JSON file (default: <findings>.labels.json)");
  serve_cmd
      ->add_option("--root", serve.root,
                   "Directory finding paths are relative to")
      ->capture_default_str();
  serve_cmd->add_option("--ui", serve.ui, "Static UI bundle directory");
  serve_cmd->add_option("--host", serve.host)->capture_default_str();
  serve_cmd->add_option("-p,--port", serve.port)
      ->check(CLI::Range(0, 65535))
      ->capture_default_str();
  serve_cmd->add_option("--threshold", serve.threshold)
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  RulesFlags rules;
  CLI::App* rules_cmd = app.add_subcommand("rules", "List the effective rules");
  rules_cmd->add_option("--rules", rules.rules, "Rule pack YAML");
  rules_cmd->add_flag("--default-yaml", rules.yaml,
                      "Print the embedded default pack");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  absl::StatusOr<int> result = kExitOk;
  if (scan_cmd->parsed()) {
    result = CmdScan(scan, out, err);
  } else if (view_cmd->parsed()) {
    result = CmdView(view, out);
  } else if (export_cmd->parsed()) {
    result = CmdExport(exp, out);
  } else if (triage_cmd->parsed()) {
    result = CmdTriage(triage, out, err);
  } else if (serve_cmd->parsed()) {
    result = CmdServe(serve, out);
  } else if (rules_cmd->parsed()) {
    result = CmdRules(rules, out);
  }
  if (!result.ok()) {
    auto kind = GetErrorKind(result.status());
    err << "error";
    if (kind) err << " [" << ErrorKindName(*kind) << "]";
    err << ": " << result.status().message() << "\n";
    return ExitCodeFor(result.status());
  }
  return *result;
}

}  // namespace pdflow
