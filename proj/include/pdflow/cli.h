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

#ifndef PDFLOW_CLI_H_
#define PDFLOW_CLI_H_

#include <ostream>
#include <string>
#include <vector>

#include "absl/status/status.h"

namespace pdflow {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFindings = 1;  // only with --fail-on-findings
inline constexpr int kExitConfig = 2;    // configuration, input or IO error
inline constexpr int kExitInternal = 3;

// Maps a status to an exit code: domain input errors give kExitConfig,
// everything else kExitInternal.
int ExitCodeFor(const absl::Status& status);

// Runs `pdflow <args...>`; `args` excludes the program name.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace pdflow

#endif  // PDFLOW_CLI_H_
