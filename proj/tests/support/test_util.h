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

#ifndef PDFLOW_TESTS_SUPPORT_TEST_UTIL_H_
#define PDFLOW_TESTS_SUPPORT_TEST_UTIL_H_

#include <string>
#include <vector>

#include "pdflow/patterns.h"
#include "pdflow/statement.h"

namespace pdflow::testing {

std::string TestdataPath(const std::string& name);
std::string ReadFileOrDie(const std::string& path);

// Extracts and scans one in-memory file with the default pack.
std::vector<Finding> ScanText(const std::string& path, const std::string& text,
                              bool propagate = true);
std::vector<Statement> Extract(const std::string& path,
                               const std::string& text);

// A fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::string& path() const { return path_; }
  std::string File(const std::string& name) const;
  // Writes `text` to `name` (creating parent directories) and returns the
  // full path.
  std::string Write(const std::string& name, const std::string& text) const;

 private:
  std::string path_;
};

}  // namespace pdflow::testing

#endif  // PDFLOW_TESTS_SUPPORT_TEST_UTIL_H_
