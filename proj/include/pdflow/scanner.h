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

#ifndef PDFLOW_SCANNER_H_
#define PDFLOW_SCANNER_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "pdflow/findings.h"
#include "pdflow/lexer.h"
#include "pdflow/rulepack.h"
#include "pdflow/taint.h"

namespace pdflow {

struct ScanConfig {
  std::vector<std::string> paths;
  std::vector<Language> languages;  // empty means all supported languages
  bool propagate = true;
  int workers = 1;
  bool timing = false;  // record elapsed_ms in the document
  // Directory names never descended into.
  std::vector<std::string> exclude_dirs = {".git", "node_modules"};
  std::uintmax_t max_file_bytes = 8u << 20;
};

struct FileScan {
  std::vector<Finding> findings;
  ScopeStats stats;
};

// Extracts, analyzes and classifies one file. Pure given the pack.
FileScan ScanSourceFile(const SourceFile& file, MatchCache& cache,
                        const AnalysisOptions& options);

// Files under `config.paths` with a supported extension, in sorted order,
// without duplicates. Finding paths use the same spelling: lexically
// normalized, '/'-separated, no leading "./". Directory symlinks are not
// followed. Errors: kIoError for a path that does not exist.
absl::StatusOr<std::vector<std::string>> CollectFiles(const ScanConfig& config);

struct ScanResult {
  FindingsDocument doc;
  std::vector<std::string> diagnostics;  // skipped files and why
};

// Scans with a pool of `config.workers` threads. Output does not depend on
// the worker count. Errors: kConfigError, kIoError.
absl::StatusOr<ScanResult> Scan(const ScanConfig& config, const RulePack& pack);

}  // namespace pdflow

#endif  // PDFLOW_SCANNER_H_
