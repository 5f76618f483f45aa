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

#ifndef PDFLOW_REPORT_H_
#define PDFLOW_REPORT_H_

#include <string>

#include "pdflow/findings.h"
#include "pdflow/views.h"

namespace pdflow {

// `pdflow/<source>/<sink>/<shape>`, e.g. `pdflow/CON/DB/P2`. A source with
// several categories uses the first.
std::string SarifRuleId(const Finding& finding);

// SARIF 2.1.0 log with one run, one rule per rule id present and one result
// per finding, in document order. Columns are Unicode code points.
std::string EmitSarif(const FindingsDocument& doc);

// `flowchart TD` with nodes labelled `name (count)`. Node ids are n0, n1, ...
// in preorder, so equal trees give equal text.
std::string EmitMermaid(const DataTypeTree& tree);

}  // namespace pdflow

#endif  // PDFLOW_REPORT_H_
