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

#include "support/test_util.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "fmt/format.h"
#include "pdflow/rulepack.h"
#include "pdflow/scanner.h"

namespace pdflow::testing {

namespace fs = std::filesystem;

std::string TestdataPath(const std::string& name) {
  return (fs::path(PDFLOW_TESTDATA_DIR) / name).string();
}

std::string ReadFileOrDie(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<Finding> ScanText(const std::string& path, const std::string& text,
                              bool propagate) {
  auto file = MakeSourceFile(path, text);
  if (!file.ok())
    throw std::runtime_error(std::string(file.status().message()));
  MatchCache cache(DefaultRulePack());
  AnalysisOptions options;
  options.propagate = propagate;
  return ScanSourceFile(*file, cache, options).findings;
}

std::vector<Statement> Extract(const std::string& path,
                               const std::string& text) {
  auto file = MakeSourceFile(path, text);
  if (!file.ok())
    throw std::runtime_error(std::string(file.status().message()));
  return ExtractStatements(*file);
}

TempDir::TempDir() {
  std::random_device rd;
  for (int attempt = 0; attempt < 100; ++attempt) {
    fs::path p = fs::temp_directory_path() /
                 fmt::format("pdflow-test-{:016x}",
                             (static_cast<std::uint64_t>(rd()) << 32) | rd());
    std::error_code ec;
    if (fs::create_directory(p, ec)) {
      path_ = p.string();
      return;
    }
  }
  throw std::runtime_error("cannot create a temporary directory");
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

std::string TempDir::File(const std::string& name) const {
  return (fs::path(path_) / name).string();
}

std::string TempDir::Write(const std::string& name,
                           const std::string& text) const {
  fs::path p = fs::path(path_) / name;
  fs::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary) << text;
  return p.string();
}

}  // namespace pdflow::testing
