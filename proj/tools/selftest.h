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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace qdarwin::cli {

struct SelftestOptions {
  std::uint64_t seed = 20260101;
  /// Log base of the reference entropy used by the entropy checks. Anything
  /// other than 2 is a deliberate fault for exercising the failure path.
  double entropy_log_base = 2.0;
  int workers = 1;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SelftestReport {
  std::vector<CheckResult> checks;
  bool all_passed() const;
  std::vector<std::string> failures() const;
};

SelftestReport run_selftest(const SelftestOptions& options);

/// One line per check followed by a summary line.
void print_report(const SelftestReport& report, std::ostream& out);

}  // namespace qdarwin::cli
