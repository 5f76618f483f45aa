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

#include "pdflow/identifier.h"

#include "absl/strings/ascii.h"
#include "absl/strings/str_join.h"

namespace pdflow {
namespace {

bool IsWordByte(unsigned char c) { return absl::ascii_isalnum(c) || c >= 0x80; }

}  // namespace

std::vector<std::string> SplitIdentifierWords(std::string_view identifier) {
  std::vector<std::string> words;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) words.push_back(std::move(current));
    current.clear();
  };
  const std::size_t n = identifier.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto c = static_cast<unsigned char>(identifier[i]);
    if (!IsWordByte(c)) {
      flush();
      continue;
    }
    if (absl::ascii_isupper(c) && !current.empty()) {
      const auto prev = static_cast<unsigned char>(identifier[i - 1]);
      const bool next_lower =
          i + 1 < n &&
          absl::ascii_islower(static_cast<unsigned char>(identifier[i + 1]));
      // aB -> a|B, 1B -> 1|B, ABc -> A|Bc.
      if (absl::ascii_islower(prev) || absl::ascii_isdigit(prev) ||
          (absl::ascii_isupper(prev) && next_lower)) {
        flush();
      }
    }
    current.push_back(static_cast<char>(absl::ascii_tolower(c)));
  }
  flush();
  return words;
}

std::string NormalizeIdentifier(std::string_view identifier) {
  return absl::StrJoin(SplitIdentifierWords(identifier), "_");
}

}  // namespace pdflow
