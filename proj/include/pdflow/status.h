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

#ifndef PDFLOW_STATUS_H_
#define PDFLOW_STATUS_H_

#include <optional>
#include <string_view>

#include "absl/status/status.h"

namespace pdflow {

// Domain error kinds. Each maps onto a canonical absl status code and is
// additionally attached to the status as a payload so callers can tell, say,
// a DuplicateRuleId from an InvalidRegex even though both are
// InvalidArgument.
enum class ErrorKind {
  kParseError,
  kInvalidRegex,
  kDuplicateRuleId,
  kUnsupportedLanguage,
  kUndecodable,
  kUnclassifiable,
  kSchemaMismatch,
  kUnknownKey,
  kConfigError,
  kIoError,
  kPortInUse,
};

std::string_view ErrorKindName(ErrorKind kind);

absl::Status MakeError(ErrorKind kind, std::string_view message);

// Returns the kind attached by MakeError, or nullopt for foreign statuses.
std::optional<ErrorKind> GetErrorKind(const absl::Status& status);

inline bool IsErrorKind(const absl::Status& status, ErrorKind kind) {
  return GetErrorKind(status) == kind;
}

}  // namespace pdflow

#endif  // PDFLOW_STATUS_H_
