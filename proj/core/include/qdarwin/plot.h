// Copyright 2026 The qdarwin Authors
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

#pragma once

// Static SVG rendering of sweep tables.

#include <string>
#include <vector>

#include "qdarwin/table.h"

namespace qdarwin {

/// Layouts: fig1 … fig5, or the generic "series", "scan_p", "scan_ratio",
/// "pointer". Throws std::invalid_argument for anything else.
std::string render_plot(const std::vector<SweepRecord>& records, const std::string& layout);
void emit_plot(const std::vector<SweepRecord>& records, const std::string& layout,
               const std::string& path);

bool is_known_layout(const std::string& layout);

}  // namespace qdarwin
