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

// Information shared between the system qubit (first factor) and an
// environment fraction: Holevo χ optimized over system measurements,
// two-sided accessible mutual information, and quantum mutual information.

#include <array>
#include <optional>
#include <span>

#include "qdarwin/bloch_search.h"
#include "qdarwin/qcore.h"

namespace qdarwin {

struct ConditionedFraction {
  std::array<double, 2> probs{};
  /// Empty for degenerate outcomes (p ≤ tol::kDegenerateOutcome).
  std::array<std::optional<DensityMatrix>, 2> states;
};

/// Measures the first (qubit) factor of rho_SF and returns the outcome
/// probabilities with the normalized post-measurement states of the rest.
ConditionedFraction condition_on_system(const DensityMatrix& rho_SF, const MeasurementBasis& basis);

struct HolevoResult {
  double value = 0.0;  // bits
  MeasurementBasis argmax_basis;
  std::array<double, 2> outcome_probs{};
  std::array<std::optional<DensityMatrix>, 2> conditional_states;
  int evaluations = 0;
};

/// Basis-dependent ensemble {p_a, ρ_{F|a}} produced by measuring the system.
///
/// With |n> = c|0> + s e^{iφ}|1>, the unnormalized conditional state is
/// c²ρ₀₀ + cs e^{iφ}ρ₀₁ + cs e^{−iφ}ρ₁₀ + s²ρ₁₁, where ρ_ab = <a|ρ|b> are
/// operator blocks on the fraction. For a pure joint state the blocks are
/// taken on whichever of the fraction or its complement is smaller; the
/// conditional entropies agree because each conditioned state is pure.
class BranchEnsemble {
 public:
  static BranchEnsemble from_density(const DensityMatrix& rho_SF);
  /// Fraction given by sorted environment factor indices (≥ 1) of psi.
  static BranchEnsemble from_pure(const StateVector& psi, std::span<const std::size_t> fraction);

  double system_entropy() const { return system_entropy_; }
  double fraction_entropy() const { return fraction_entropy_; }
  double joint_entropy() const { return joint_entropy_; }
  double quantum_mi() const { return system_entropy_ + fraction_entropy_ - joint_entropy_; }

  struct Outcomes {
    std::array<double, 2> probs{};
    std::array<double, 2> entropies{};  // zero for degenerate outcomes
  };
  Outcomes measure(const MeasurementBasis& basis) const;
  /// S(ρ_F) − Σ_a p_a S(ρ_{F|a}).
  double chi(const MeasurementBasis& basis) const;

 private:
  Matrix b00_, b01_, b11_;
  double system_entropy_ = 0.0;
  double fraction_entropy_ = 0.0;
  double joint_entropy_ = 0.0;
};

/// χ at a fixed basis.
double holevo_at(const DensityMatrix& rho_SF, const MeasurementBasis& basis);

/// max over system measurements of S(ρ_F) − Σ_a p_a S(ρ_{F|a}).
HolevoResult holevo_chi(const DensityMatrix& rho_SF, const SphereSearchConfig& config = {});
/// Same, for the fraction of a pure joint state; never forms the full density matrix.
HolevoResult holevo_chi(const StateVector& psi, std::span<const std::size_t> fraction,
                        const SphereSearchConfig& config = {});

struct TwoSidedConfig {
  int grid_theta = 5;   // per side, over [0, π/2]; outcome relabeling covers the rest
  int grid_phi = 16;
  int refine_starts = 3;
  double simplex_tolerance = 1e-8;
  int max_evaluations = 2000;
};

/// Classical mutual information (bits) of a 2×2 joint distribution.
double classical_mi(const Eigen::Matrix2d& joint);

/// Outcome distribution P(a, b) = Tr[(Π_a ⊗ Π_b) ρ] for a two-qubit state.
Eigen::Matrix2d joint_outcomes(const DensityMatrix& rho_SF, const MeasurementBasis& system,
                               const MeasurementBasis& fraction);

/// max over both bases of the classical mutual information of the outcomes.
/// Requires a single-qubit fraction.
double accessible_mi_two_sided(const DensityMatrix& rho_SF, const TwoSidedConfig& config = {});

/// S(ρ_S) + S(ρ_F) − S(ρ_SF), splitting off the first factor.
double quantum_mi(const DensityMatrix& rho_SF);

}  // namespace qdarwin
