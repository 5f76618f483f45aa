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

#include "pdflow/scanner.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <system_error>
#include <thread>

#include "fmt/format.h"
#include "pdflow/status.h"

namespace pdflow {
namespace {

namespace fs = std::filesystem;

std::string Spell(const fs::path& p) {
  std::string s = p.lexically_normal().generic_string();
  while (s.starts_with("./")) s.erase(0, 2);
  return s;
}

bool Wanted(const fs::path& p, const ScanConfig& config) {
  auto lang = LanguageFromPath(p.generic_string());
  if (!lang) return false;
  return config.languages.empty() ||
         std::find(config.languages.begin(), config.languages.end(), *lang) !=
             config.languages.end();
}

struct FileOutcome {
  FileScan scan;
  bool scanned = false;
  std::string diagnostic;
};

FileOutcome ScanPath(const std::string& path, const ScanConfig& config,
                     MatchCache& cache, const AnalysisOptions& options) {
  FileOutcome out;
  std::error_code ec;
  std::uintmax_t size = fs::file_size(path, ec);
  if (ec) {
    out.diagnostic = fmt::format("{}: cannot stat: {}", path, ec.message());
    return out;
  }
  if (size > config.max_file_bytes) {
    out.diagnostic =
        fmt::format("{}: skipped, {} bytes exceeds the {} byte limit", path,
                    size, config.max_file_bytes);
    return out;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    out.diagnostic = fmt::format("{}: cannot read", path);
    return out;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  absl::StatusOr<SourceFile> file = MakeSourceFile(path, buffer.str());
  if (!file.ok()) {
    out.diagnostic = fmt::format("{}: skipped, {}", path,
                                 std::string(file.status().message()));
    return out;
  }
  out.scan = ScanSourceFile(*file, cache, options);
  out.scanned = true;
  return out;
}

}  // namespace

FileScan ScanSourceFile(const SourceFile& file, MatchCache& cache,
                        const AnalysisOptions& options) {
  FileScan out;
  std::vector<Statement> statements = ExtractStatements(file);
  std::map<int, std::vector<const Statement*>> scopes;
  for (const Statement& st : statements) scopes[st.scope_id].push_back(&st);
  for (const auto& [id, scope] : scopes) {
    for (const RawFlow& flow :
         AnalyzeScope(scope, cache, options, &out.stats)) {
      absl::StatusOr<Finding> finding = MakeFinding(flow);
      if (finding.ok()) out.findings.push_back(*std::move(finding));
    }
  }
  SortFindings(out.findings);
  return out;
}

absl::StatusOr<std::vector<std::string>> CollectFiles(
    const ScanConfig& config) {
  std::set<std::string> files;
  for (const std::string& root : config.paths) {
    std::error_code ec;
    fs::file_status status = fs::status(root, ec);
    if (ec || !fs::exists(status)) {
      return MakeError(ErrorKind::kIoError,
                       fmt::format("no such file or directory: {}", root));
    }
    if (!fs::is_directory(status)) {
      if (Wanted(root, config)) files.insert(Spell(root));
      continue;
    }
    fs::recursive_directory_iterator it(
        root, fs::directory_options::skip_permission_denied, ec);
    if (ec) {
      return MakeError(ErrorKind::kIoError,
                       fmt::format("cannot list {}: {}", root, ec.message()));
    }
    for (; it != fs::recursive_directory_iterator(); it.increment(ec)) {
      if (ec) break;
      const fs::directory_entry& entry = *it;
      std::error_code entry_ec;
      if (entry.is_directory(entry_ec)) {
        std::string name = entry.path().filename().string();
        if (entry.is_symlink(entry_ec) ||
            std::find(config.exclude_dirs.begin(), config.exclude_dirs.end(),
                      name) != config.exclude_dirs.end()) {
          it.disable_recursion_pending();
        }
        continue;
      }
      if (entry.is_regular_file(entry_ec) && Wanted(entry.path(), config)) {
        files.insert(Spell(entry.path()));
      }
    }
  }
  return std::vector<std::string>(files.begin(), files.end());
}

absl::StatusOr<ScanResult> Scan(const ScanConfig& config,
                                const RulePack& pack) {
  if (config.paths.empty()) {
    return MakeError(ErrorKind::kConfigError, "no input paths");
  }
  if (config.workers < 1) {
    return MakeError(ErrorKind::kConfigError,
                     "worker count must be at least 1");
  }
  auto started = std::chrono::steady_clock::now();
  absl::StatusOr<std::vector<std::string>> files = CollectFiles(config);
  if (!files.ok()) return files.status();

  AnalysisOptions options;
  options.propagate = config.propagate;
  std::vector<FileOutcome> outcomes(files->size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    MatchCache cache(pack);
    for (std::size_t i = next++; i < files->size(); i = next++) {
      outcomes[i] = ScanPath((*files)[i], config, cache, options);
    }
  };
  std::size_t n_threads =
      std::min<std::size_t>(static_cast<std::size_t>(config.workers),
                            std::max<std::size_t>(files->size(), 1));
  if (n_threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }

  ScanResult result;
  result.doc.tool.rulepack_version = pack.version();
  ScopeStats totals;
  for (FileOutcome& o : outcomes) {
    if (!o.scanned) {
      ++result.doc.stats.files_skipped;
      result.diagnostics.push_back(std::move(o.diagnostic));
      continue;
    }
    ++result.doc.stats.files;
    totals += o.scan.stats;
    for (Finding& f : o.scan.findings) {
      result.doc.findings.push_back(std::move(f));
    }
  }
  SortFindings(result.doc.findings);
  ScanStats& stats = result.doc.stats;
  stats.statements = static_cast<std::int64_t>(totals.statements);
  stats.source_only = static_cast<std::int64_t>(totals.source_only);
  stats.sink_only = static_cast<std::int64_t>(totals.sink_only);
  stats.inner_sink_matches =
      static_cast<std::int64_t>(totals.inner_sink_matches);
  stats.unclassifiable = static_cast<std::int64_t>(totals.unclassifiable);
  if (config.timing) {
    stats.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - started)
                           .count();
  }
  return result;
}

}  // namespace pdflow
