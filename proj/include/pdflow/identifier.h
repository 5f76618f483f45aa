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

#ifndef PDFLOW_IDENTIFIER_H_
#define PDFLOW_IDENTIFIER_H_

#include <string>
#include <string_view>
#include <vector>

namespace pdflow {

// Splits an identifier into lowercase word tokens. Separators are any ASCII
// character outside [A-Za-z0-9] (so `_`, `-`, `$`, `.`), plus camelCase
// boundaries: "isFemale" -> {is, female}, "IPAddress" -> {ip, address}.
// Non-ASCII bytes are kept inside tokens unchanged.
std::vector<std::string> SplitIdentifierWords(std::string_view identifier);

// The words of SplitIdentifierWords joined with '_'. Rule patterns are
// matched against this form, which makes them separator tolerant.
std::string NormalizeIdentifier(std::string_view identifier);

}  // namespace pdflow

#endif  // PDFLOW_IDENTIFIER_H_
