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

#include <iosfwd>
#include <optional>
#include <string>

#include "qdarwin/experiments.h"
#include "selftest.h"

namespace qdarwin::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

struct RunOptions {
  std::string out_dir = "out";
  int workers = 0;  // 0 = available parallelism
  std::optional<ThresholdMode> threshold_mode;
  std::optional<Quantifier> quantifier;
};

std::string usage();

/// Writes <tag>.csv and <tag>.svg for a built-in figure.
int cmd_figure(const std::string& tag, const RunOptions& options, std::ostream& out, std::ostream& err);
/// Same for a sweep described by a config file; outputs are named after its `name`.
int cmd_sweep(const std::string& config_path, const RunOptions& options, std::ostream& out,
              std::ostream& err);
int cmd_selftest(const SelftestOptions& options, std::ostream& out, std::ostream& err);

/// Parses arguments and dispatches. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qdarwin::cli
