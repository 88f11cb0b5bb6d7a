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

// One row of sweep output and its comma-separated text serialization.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qdarwin {

struct SweepRecord {
  std::string figure;
  std::string panel;
  int point = 0;
  std::string scenario;
  std::optional<double> x0;
  std::optional<double> phase_angle;
  double omega = 0.0;
  double gamma = 0.0;
  double p = 0.0;
  int n = 0;
  double delta = 0.0;
  std::string sampling;  // "series" or "max_redundancy"
  std::optional<double> time;
  std::optional<double> entropy_s;
  std::optional<double> chi_e1;
  std::optional<double> chi_e1_norm;
  std::optional<double> acc_mi_e1;
  std::optional<double> acc_mi_e1_norm;
  std::optional<int> redundancy;
  std::optional<int> fraction_size;
  std::optional<bool> redundancy_defined;
  std::optional<double> pointer_fidelity;
  std::optional<double> pointer_theta;
  std::optional<double> pointer_phi;
  std::optional<double> pointer_axis_deviation;
  std::optional<double> sbs_reconstruction_error;
  std::optional<double> sbs_max_distinguishability;
  std::optional<double> sbs_decoherence_residual;
  std::optional<bool> sbs_like;
  std::string flag;  // ';'-joined reasons, empty when clean
  // Provenance.
  std::string threshold_mode;
  std::string quantifier;
  std::string pointer_convention;
  std::string time_selection;
  std::string grid_id;
  std::string version;

  double omega_over_gamma() const { return omega / gamma; }
  std::optional<double> gamma_t() const;

  friend bool operator==(const SweepRecord&, const SweepRecord&) = default;
};

/// Column names in output order.
const std::vector<std::string>& table_columns();

/// Header plus one line per record; floats at 12 significant digits.
void write_table(const std::vector<SweepRecord>& records, std::ostream& out);
std::string format_table(const std::vector<SweepRecord>& records);
/// Parses text produced by write_table. Throws std::runtime_error with the
/// line number on malformed input.
std::vector<SweepRecord> read_table(std::istream& in);

/// Writes the table to `path`. Throws std::runtime_error if it cannot be written.
void emit_table(const std::vector<SweepRecord>& records, const std::string& path);

/// %.12g formatting shared by every numeric field.
std::string format_number(double v);

}  // namespace qdarwin
