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

// Text configuration for custom sweeps. The schema is documented in
// docs/sweep_config.md.

#include <stdexcept>
#include <string>

#include "qdarwin/experiments.h"

namespace qdarwin::cli {

/// Raised for unreadable, malformed or semantically invalid configs.
/// The message carries a line/column for syntax errors and a field path for
/// validation errors.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses a YAML config document into a validated sweep spec.
SweepSpec parse_sweep_config(const std::string& text);

/// Reads and parses a config file. Files containing NUL bytes or invalid
/// UTF-8 are rejected as binary.
SweepSpec load_sweep_config(const std::string& path);

/// True when `name` can be used as an output basename inside the output
/// directory (no separators, no leading dot).
bool is_safe_basename(const std::string& name);

}  // namespace qdarwin::cli
