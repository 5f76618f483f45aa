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

#include "pdflow/server.h"

#include <sys/socket.h>

#include <algorithm>
#include <charconv>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <unordered_map>
#include <utility>

#include "fmt/chrono.h"
#include "fmt/format.h"
#include "httplib.h"
#include "pdflow/render_text.h"
#include "pdflow/status.h"
#include "pdflow/views.h"

namespace pdflow {
namespace {

using nlohmann::json;

constexpr std::int64_t kMaxPageSize = 1000;
constexpr int kMaxContext = 200;

constexpr std::string_view kPlaceholderPage =
    "<!doctype html><title>pdflow</title>"
    "<p>pdflow review API. No UI bundle is mounted; see /api/findings.</p>\n";

json TreeToJson(const TypeNode& node) {
  json children = json::array();
  for (const TypeNode& c : node.children) children.push_back(TreeToJson(c));
  return {{"name", node.name}, {"count", node.count}, {"children", children}};
}

json CountsToJson(const std::vector<CategoryCount>& counts) {
  json out = json::array();
  for (const CategoryCount& c : counts) {
    out.push_back(
        {{"source", std::string(Abbreviation(c.source))}, {"count", c.count}});
  }
  return out;
}

json EntriesToJson(const std::vector<ProcessingEntry>& entries) {
  json out = json::array();
  for (const ProcessingEntry& e : entries) {
    out.push_back({{"sink", std::string(Abbreviation(e.sink))},
                   {"findings", e.findings},
                   {"sources", CountsToJson(e.sources)}});
  }
  return out;
}

int HttpStatusFor(const absl::Status& status) {
  switch (GetErrorKind(status).value_or(ErrorKind::kIoError)) {
    case ErrorKind::kUnknownKey:
    case ErrorKind::kSchemaMismatch:
    case ErrorKind::kParseError:
    case ErrorKind::kConfigError:
      return 400;
    default:
      return 500;
  }
}

json ErrorBody(const absl::Status& status) {
  auto kind = GetErrorKind(status);
  return {{"error", std::string(status.message())},
          {"kind", kind ? std::string(ErrorKindName(*kind)) : "Internal"}};
}

void Reply(httplib::Response& res, int code, const json& body) {
  res.status = code;
  res.set_content(body.dump(-1, ' ', false, json::error_handler_t::replace),
                  "application/json");
}

std::string NowUtc() {
  return fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", fmt::gmtime(std::time(nullptr)));
}

// Parses a non-negative integer query parameter, or returns `fallback` when
// absent.
absl::StatusOr<std::int64_t> IntParam(const httplib::Request& req,
                                      const char* name, std::int64_t fallback) {
  if (!req.has_param(name)) return fallback;
  std::string raw = req.get_param_value(name);
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), value);
  if (ec != std::errc() || ptr != raw.data() + raw.size() || value < 0) {
    return MakeError(ErrorKind::kConfigError,
                     fmt::format("'{}' must be a non-negative integer", name));
  }
  return value;
}

}  // namespace

absl::StatusOr<std::unique_ptr<ApiServer>> ApiServer::Create(
    FindingsDocument doc, ServerOptions options) {
  std::vector<TriageLabel> labels;
  if (!options.labels_path.empty()) {
    absl::StatusOr<std::vector<TriageLabel>> loaded =
        LoadLabelsFile(options.labels_path);
    if (!loaded.ok()) return loaded.status();
    labels = CollapseLabels(*loaded);
  }
  return std::unique_ptr<ApiServer>(
      new ApiServer(std::move(doc), std::move(options), std::move(labels)));
}

ApiServer::ApiServer(FindingsDocument doc, ServerOptions options,
                     std::vector<TriageLabel> labels)
    : doc_(std::move(doc)),
      options_(std::move(options)),
      labels_(std::move(labels)),
      http_(std::make_unique<httplib::Server>()) {
  // httplib enables SO_REUSEPORT by default, which would let a second
  // server share a busy port instead of failing.
  http_->set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
  });
  Routes();
}

ApiServer::~ApiServer() { Stop(); }

const Finding* ApiServer::FindById(const std::string& id) const {
  for (const Finding& f : doc_.findings) {
    if (f.id == id) return &f;
  }
  return nullptr;
}

absl::StatusOr<json> ApiServer::Findings(
    const std::string& group_by, const std::vector<std::string>& filters,
    std::int64_t page, std::int64_t page_size) const {
  ViewKey key = ViewKey::kNone;
  if (!group_by.empty()) {
    absl::StatusOr<ViewKey> parsed = ParseViewKey(group_by);
    if (!parsed.ok()) return parsed.status();
    key = *parsed;
  }
  std::vector<FlowFilter> parsed_filters;
  for (const std::string& f : filters) {
    absl::StatusOr<FlowFilter> parsed = ParseFlowFilter(f);
    if (!parsed.ok()) return parsed.status();
    parsed_filters.push_back(*parsed);
  }
  if (page < 1 || page_size < 1 || page_size > kMaxPageSize) {
    return MakeError(ErrorKind::kConfigError,
                     fmt::format("page must be >= 1 and page_size in [1, {}]",
                                 kMaxPageSize));
  }
  absl::StatusOr<FlowTable> table =
      BuildFlowTable(doc_.findings, key, parsed_filters);
  if (!table.ok()) return table.status();

  LabeledDocument labeled;
  {
    std::shared_lock lock(labels_mu_);
    labeled = ApplyLabels(doc_, labels_);
  }
  std::unordered_map<std::string_view, std::size_t> index;
  for (std::size_t i = 0; i < doc_.findings.size(); ++i) {
    index.emplace(doc_.findings[i].id, i);
  }

  json groups = json::array();
  json items = json::array();
  const std::int64_t first = (page - 1) * page_size;
  std::int64_t position = 0;
  for (const FlowGroup& g : table->groups) {
    groups.push_back({{"key", g.key}, {"count", g.rows.size()}});
    for (const FlowTableRow& row : g.rows) {
      if (position >= first && position < first + page_size) {
        std::size_t i = index.at(row.id);
        items.push_back(
            {{"group", g.key},
             {"row",
              {{"path", row.path},
               {"source", row.source},
               {"sink", row.sink},
               {"sink_type", row.sink_type},
               {"instance", row.instance}}},
             {"finding", FindingToJson(doc_.findings[i])},
             {"verdict", std::string(VerdictName(labeled.verdicts[i]))}});
      }
      ++position;
    }
  }
  return json{
      {"total", position},      {"page", page},
      {"page_size", page_size}, {"group_by", std::string(ViewKeyName(key))},
      {"groups", groups},       {"items", items}};
}

json ApiServer::TypeView() const {
  return TreeToJson(BuildTypeView(doc_.findings).root);
}

json ApiServer::Heatmap() const {
  HeatmapStats h = BuildHeatmap(doc_.findings);
  json sources = json::array();
  json sinks = json::array();
  json cells = json::array();
  for (SourceCategory s : kAllSourceCategories) {
    sources.push_back(std::string(Abbreviation(s)));
    cells.push_back(h.cells[Index(s)]);
  }
  for (SinkCategory s : kAllSinkCategories) {
    sinks.push_back(std::string(Abbreviation(s)));
  }
  return {{"sources", sources},
          {"sinks", sinks},
          {"cells", cells},
          {"row_totals", h.row_totals},
          {"column_totals", h.column_totals},
          {"total", h.total},
          {"findings", h.findings},
          {"multi_category_findings", h.multi_category_findings}};
}

json ApiServer::Ropa() const {
  RopaSummary ropa = BuildRopa(doc_.findings);
  json personal = json::array();
  for (SourceCategory c : ropa.categories_of_personal_data) {
    personal.push_back(std::string(Abbreviation(c)));
  }
  return {{"categories_of_personal_data", personal},
          {"categories_of_processing",
           EntriesToJson(ropa.categories_of_processing)},
          {"database_or_third_party_transfers",
           EntriesToJson(ropa.database_or_third_party_transfers)},
          {"encryption_or_anonymization",
           CountsToJson(ropa.encryption_or_anonymization)},
          {"logging", CountsToJson(ropa.logging)},
          {"markdown", RenderRopa(ropa, nullptr)}};
}

json ApiServer::Metrics() const {
  PrecisionTable table;
  {
    std::shared_lock lock(labels_mu_);
    table = BuildPrecisionTable(ApplyLabels(doc_, labels_), options_.threshold);
  }
  json cells = json::array();
  for (const auto& row : table.cells) {
    for (const PrecisionCell& c : row) {
      cells.push_back(
          {{"source", std::string(Abbreviation(c.source))},
           {"sink", std::string(Abbreviation(c.sink))},
           {"tp", c.tp},
           {"fp", c.fp},
           {"precision", c.precision ? json(*c.precision) : json(nullptr)},
           {"suppressed", c.suppressed},
           {"display", FormatPrecision(c)}});
    }
  }
  return {{"threshold", table.threshold},
          {"findings", table.findings},
          {"reviewed", table.reviewed},
          {"reviewed_multi_category", table.reviewed_multi_category},
          {"coverage", table.coverage()},
          {"cells", cells}};
}

json ApiServer::Labels() const {
  std::shared_lock lock(labels_mu_);
  return json::parse(EmitLabelsJson(labels_));
}

absl::StatusOr<json> ApiServer::Snippet(const std::string& id,
                                        int context) const {
  const Finding* f = FindById(id);
  if (f == nullptr) {
    return MakeError(ErrorKind::kUnknownKey,
                     fmt::format("unknown finding id {}", id));
  }
  std::filesystem::path file = std::filesystem::path(options_.root) / f->path;
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    return MakeError(ErrorKind::kIoError,
                     fmt::format("{} is no longer present", f->path));
  }
  context = std::clamp(context, 0, kMaxContext);
  const int first = std::max(1, f->span.start.line - context);
  const int last = f->span.end.line + context;
  json lines = json::array();
  std::string line;
  for (int number = 1; number <= last && std::getline(in, line); ++number) {
    if (number < first) continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back({{"number", number}, {"text", line}});
  }
  return json{{"id", f->id},
              {"path", f->path},
              {"start_line", f->span.start.line},
              {"end_line", f->span.end.line},
              {"lines", lines}};
}

absl::StatusOr<json> ApiServer::PostLabel(const std::string& body) {
  json parsed = json::parse(body, nullptr, /*allow_exceptions=*/false);
  if (parsed.is_discarded() || !parsed.is_object()) {
    return MakeError(ErrorKind::kSchemaMismatch, "body must be a JSON object");
  }
  parsed["timestamp"] = NowUtc();
  absl::StatusOr<std::vector<TriageLabel>> labels =
      ParseLabelsJson(json::array({parsed}).dump());
  if (!labels.ok()) return labels.status();
  TriageLabel label = labels->front();
  if (FindById(label.finding_id) == nullptr) {
    return MakeError(ErrorKind::kUnknownKey,
                     fmt::format("unknown finding id {}", label.finding_id));
  }
  std::unique_lock lock(labels_mu_);
  std::vector<TriageLabel> next = labels_;
  next.push_back(label);
  next = CollapseLabels(next);
  if (!options_.labels_path.empty()) {
    absl::Status saved = SaveLabelsFile(options_.labels_path, next);
    if (!saved.ok()) return saved;
  }
  labels_ = std::move(next);
  return json{{"finding_id", label.finding_id},
              {"verdict", std::string(VerdictName(label.verdict))},
              {"timestamp", label.timestamp}};
}

void ApiServer::Routes() {
  httplib::Server& s = *http_;
  s.Get("/api/findings", [this](const httplib::Request& req,
                                httplib::Response& res) {
    std::vector<std::string> filters;
    for (std::size_t i = 0; i < req.get_param_value_count("filter"); ++i) {
      filters.push_back(req.get_param_value("filter", i));
    }
    absl::StatusOr<std::int64_t> page = IntParam(req, "page", 1);
    absl::StatusOr<std::int64_t> size = IntParam(req, "page_size", 50);
    absl::StatusOr<json> body =
        !page.ok() ? absl::StatusOr<json>(page.status())
        : !size.ok()
            ? absl::StatusOr<json>(size.status())
            : Findings(req.get_param_value("group_by"), filters, *page, *size);
    if (!body.ok())
      return Reply(res, HttpStatusFor(body.status()), ErrorBody(body.status()));
    Reply(res, 200, *body);
  });
  s.Get("/api/views/types",
        [this](const httplib::Request&, httplib::Response& res) {
          Reply(res, 200, TypeView());
        });
  s.Get("/api/views/heatmap",
        [this](const httplib::Request&, httplib::Response& res) {
          Reply(res, 200, Heatmap());
        });
  s.Get("/api/ropa", [this](const httplib::Request&, httplib::Response& res) {
    Reply(res, 200, Ropa());
  });
  s.Get("/api/metrics",
        [this](const httplib::Request&, httplib::Response& res) {
          Reply(res, 200, Metrics());
        });
  s.Get("/api/labels", [this](const httplib::Request&, httplib::Response& res) {
    Reply(res, 200, Labels());
  });
  s.Get(R"(/api/snippet/([^/]+))",
        [this](const httplib::Request& req, httplib::Response& res) {
          absl::StatusOr<std::int64_t> context = IntParam(req, "context", 3);
          if (!context.ok()) {
            return Reply(res, 400, ErrorBody(context.status()));
          }
          absl::StatusOr<json> body = Snippet(
              req.matches[1],
              static_cast<int>(std::min<std::int64_t>(*context, kMaxContext)));
          if (!body.ok()) return Reply(res, 404, ErrorBody(body.status()));
          Reply(res, 200, *body);
        });
  s.Post("/api/labels",
         [this](const httplib::Request& req, httplib::Response& res) {
           absl::StatusOr<json> body = PostLabel(req.body);
           if (!body.ok()) {
             int code = IsErrorKind(body.status(), ErrorKind::kUnknownKey)
                            ? 404
                            : HttpStatusFor(body.status());
             return Reply(res, code, ErrorBody(body.status()));
           }
           Reply(res, 200, *body);
         });
  if (!options_.ui_dir.empty() && s.set_mount_point("/", options_.ui_dir)) {
    return;
  }
  s.Get("/", [](const httplib::Request&, httplib::Response& res) {
    res.set_content(std::string(kPlaceholderPage), "text/html");
  });
}

absl::StatusOr<int> ApiServer::Bind() {
  int port = options_.port;
  if (port == 0) {
    port = http_->bind_to_any_port(options_.host);
    if (port < 0) port = 0;
  } else if (!http_->bind_to_port(options_.host, port)) {
    port = 0;
  }
  if (port == 0) {
    return MakeError(
        ErrorKind::kPortInUse,
        fmt::format("cannot bind {}:{}", options_.host, options_.port));
  }
  return port;
}

absl::Status ApiServer::Serve() {
  serving_ = true;
  bool ok = stop_requested_ || http_->listen_after_bind();
  serving_ = false;
  if (!ok) return MakeError(ErrorKind::kIoError, "server stopped unexpectedly");
  return absl::OkStatus();
}

void ApiServer::Stop() {
  stop_requested_ = true;
  if (!http_) return;
  // A Serve() already past its check is about to listen; stop() is a no-op
  // until it does.
  if (serving_) http_->wait_until_ready();
  http_->stop();
}

}  // namespace pdflow
