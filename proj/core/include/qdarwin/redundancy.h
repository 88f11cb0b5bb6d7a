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

// Redundancy: the largest number of disjoint environment fractions that each
// hold (nearly) full information about the system.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qdarwin/bloch_search.h"
#include "qdarwin/infotheory.h"
#include "qdarwin/model.h"
#include "qdarwin/qcore.h"
#include "qdarwin/tolerances.h"

namespace qdarwin {

enum class ThresholdMode {
  kLiteral,  // I ≥ (1 − δ) S(ρ_S)
  kStrict,   // I ≥ δ S(ρ_S)
};

enum class Quantifier {
  kHolevo,
  kTwoSided,  // two-sided accessible MI for qubit fractions, χ for larger ones
};

std::string to_string(ThresholdMode mode);
std::string to_string(Quantifier q);
std::optional<ThresholdMode> parse_threshold_mode(std::string_view s);
std::optional<Quantifier> parse_quantifier(std::string_view s);

struct RedundancyConfig {
  double delta = 0.9;
  ThresholdMode threshold_mode = ThresholdMode::kLiteral;
  Quantifier quantifier = Quantifier::kHolevo;
  double min_entropy = tol::kMinEntropy;
  SphereSearchConfig search;
  TwoSidedConfig two_sided;

  void validate() const;
  /// Information a fraction needs, given the system entropy.
  double threshold(double system_entropy) const;
};

struct RedundancyResult {
  int r = 0;
  int fraction_size = 0;
  /// Environment fractions of the winning partition, as layout factor indices.
  std::vector<std::vector<std::size_t>> fractions;
  std::vector<double> per_fraction_info;
  double system_entropy = 0.0;
  bool defined = false;
};

/// k-qubit contiguous blocks over environment factors 1..n; ⌊n/k⌋ blocks with
/// leftover qubits appended to the last one.
std::vector<std::vector<std::size_t>> contiguous_fractions(int n, int k);

/// Redundancy over contiguous equal-block partitions.
RedundancyResult redundancy(const DensityMatrix& rho_SE, const RedundancyConfig& config);
/// Same for a pure joint state, without forming the full density matrix.
RedundancyResult redundancy(const StateVector& psi, const RedundancyConfig& config);
/// Same r, fraction_size and fractions without per_fraction_info, which is
/// the expensive part when bounds already decide the threshold tests.
RedundancyResult redundancy_decision(const StateVector& psi, const RedundancyConfig& config);

/// Exhaustive search over all set partitions of the environment (n ≤ 6).
RedundancyResult redundancy_brute_oracle(const DensityMatrix& rho_SE, const RedundancyConfig& config);
inline constexpr int kBruteOracleMaxQubits = 6;

struct RedundancySample {
  double time = 0.0;
  RedundancyResult red;  // decision only; per_fraction_info is empty
  double chi_e1 = 0.0;  // χ(S:E1)
};

/// From max_redundancy_time, `red` also carries per_fraction_info.
struct RedundancyPeak {
  std::size_t index = 0;
  double time = 0.0;
  RedundancyResult red;
  double chi_e1 = 0.0;
};

RedundancySample evaluate_sample(const StateVector& psi, double time, const RedundancyConfig& config);
std::vector<RedundancySample> scan_redundancy(const Trajectory& trajectory,
                                              const RedundancyConfig& config, int workers = 1);

/// Picks the redundancy maximum inside the first window where the system
/// carries entropy: from the first defined sample up to (excluding) the first
/// later undefined one, else to the end. Ties in r go to the larger χ(S:E1),
/// then to the earlier time. nullopt if no sample is defined.
std::optional<RedundancyPeak> select_redundancy_peak(std::span<const RedundancySample> samples);

std::optional<RedundancyPeak> max_redundancy_time(const Trajectory& trajectory,
                                                  const RedundancyConfig& config, int workers = 1);

}  // namespace qdarwin
