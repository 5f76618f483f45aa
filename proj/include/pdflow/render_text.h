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

#ifndef PDFLOW_RENDER_TEXT_H_
#define PDFLOW_RENDER_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "pdflow/findings.h"
#include "pdflow/triage.h"
#include "pdflow/views.h"

namespace pdflow {

enum class TextFormat { kText, kMarkdown };

// "text" or "markdown". Errors: kUnknownKey.
absl::StatusOr<TextFormat> ParseTextFormat(std::string_view name);

// Columns: Path, Source, Sink, Sink Type, Flow Pattern Instance.
std::string RenderFlowTable(const FlowTable& table, TextFormat format);
std::string RenderTypeTree(const DataTypeTree& tree, TextFormat format);
// Source categories as rows, sink categories as columns, with totals.
std::string RenderHeatmap(const HeatmapStats& heatmap, TextFormat format);
std::string RenderPrecisionTable(const PrecisionTable& table,
                                 TextFormat format);

// Markdown record-of-processing summary. `coverage` may be null.
std::string RenderRopa(const RopaSummary& ropa, const CoverageDiff* coverage);

// One line per counter, for the end of a scan.
std::string RenderScanSummary(const FindingsDocument& doc);

// Aligned plain-text or pipe table. Widths count code points.
std::string RenderTable(const std::vector<std::string>& header,
                        const std::vector<std::vector<std::string>>& rows,
                        TextFormat format);

}  // namespace pdflow

#endif  // PDFLOW_RENDER_TEXT_H_
