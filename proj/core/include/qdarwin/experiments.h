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

// Declarative parameter sweeps over the model and the built-in figure specs.

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qdarwin/model.h"
#include "qdarwin/redundancy.h"
#include "qdarwin/table.h"

namespace qdarwin {

enum class Quantity {
  kEntropyS,
  kChiE1,
  kAccMiE1,
  kRedundancy,
  kPointerFidelity,
  kSbsReport,
};

std::string to_string(Quantity q);
std::optional<Quantity> parse_quantity(std::string_view s);

enum class Sampling {
  kSeries,         // every grid time
  kMaxRedundancy,  // the selected redundancy-peak time only
};

std::string to_string(Sampling s);
std::optional<Sampling> parse_sampling(std::string_view s);

struct SweepPanel {
  std::string name;
  std::vector<InitialScenario> scenarios;
  std::vector<double> p;
  std::vector<double> omega;
  std::vector<double> gamma;
  std::vector<int> n;
};

struct TimeGridSpec {
  int points = kDefaultTimePoints;
  double gamma_t_max = 6.283185307179586;  // 2π
};

struct SweepSpec {
  std::string figure;
  std::string layout;  // plot layout; defaults to `figure`
  std::vector<SweepPanel> panels;
  TimeGridSpec time_grid;
  RedundancyConfig redundancy;
  std::vector<Quantity> quantities;
  Sampling sampling = Sampling::kSeries;

  /// Throws std::invalid_argument with a field path, e.g. "panels[0].p: empty grid".
  void validate() const;
  std::string grid_id() const;
  bool wants(Quantity q) const;
};

struct SweepOptions {
  int workers = 1;
  std::function<void(const std::string&)> progress;
};

inline constexpr const char* kPointerConvention = "phi0_nearest_0";

/// Runs every parameter point of the spec. Rows are ordered by point, then time.
/// Degenerate points produce flagged rows; they never abort the sweep.
std::vector<SweepRecord> run_sweep(const SweepSpec& spec, const SweepOptions& options = {});

/// fig1 … fig5.
std::vector<SweepSpec> builtin_figures();
std::optional<SweepSpec> builtin_figure(std::string_view tag);

std::string library_version();

}  // namespace qdarwin
