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

#include "pdflow/status.h"

#include <array>
#include <string>

#include "absl/strings/cord.h"
#include "fmt/format.h"

namespace pdflow {
namespace {

constexpr absl::string_view kPayloadUrl = "type.pdflow.dev/error-kind";

struct KindInfo {
  ErrorKind kind;
  std::string_view name;
  absl::StatusCode code;
};

constexpr std::array<KindInfo, 11> kKinds = {{
    {ErrorKind::kParseError, "ParseError", absl::StatusCode::kInvalidArgument},
    {ErrorKind::kInvalidRegex, "InvalidRegex",
     absl::StatusCode::kInvalidArgument},
    {ErrorKind::kDuplicateRuleId, "DuplicateRuleId",
     absl::StatusCode::kAlreadyExists},
    {ErrorKind::kUnsupportedLanguage, "UnsupportedLanguage",
     absl::StatusCode::kUnimplemented},
    {ErrorKind::kUndecodable, "Undecodable", absl::StatusCode::kDataLoss},
    {ErrorKind::kUnclassifiable, "Unclassifiable",
     absl::StatusCode::kFailedPrecondition},
    {ErrorKind::kSchemaMismatch, "SchemaMismatch",
     absl::StatusCode::kInvalidArgument},
    {ErrorKind::kUnknownKey, "UnknownKey", absl::StatusCode::kInvalidArgument},
    {ErrorKind::kConfigError, "ConfigError",
     absl::StatusCode::kInvalidArgument},
    {ErrorKind::kIoError, "IoError", absl::StatusCode::kUnavailable},
    {ErrorKind::kPortInUse, "PortInUse", absl::StatusCode::kUnavailable},
}};

const KindInfo& Info(ErrorKind kind) {
  for (const auto& info : kKinds) {
    if (info.kind == kind) return info;
  }
  return kKinds[0];
}

}  // namespace

std::string_view ErrorKindName(ErrorKind kind) { return Info(kind).name; }

absl::Status MakeError(ErrorKind kind, std::string_view message) {
  const KindInfo& info = Info(kind);
  absl::Status status(info.code, fmt::format("{}: {}", info.name, message));
  status.SetPayload(kPayloadUrl, absl::Cord(std::string(info.name)));
  return status;
}

std::optional<ErrorKind> GetErrorKind(const absl::Status& status) {
  auto payload = status.GetPayload(kPayloadUrl);
  if (!payload.has_value()) return std::nullopt;
  const std::string name(*payload);
  for (const auto& info : kKinds) {
    if (info.name == name) return info.kind;
  }
  return std::nullopt;
}

}  // namespace pdflow
