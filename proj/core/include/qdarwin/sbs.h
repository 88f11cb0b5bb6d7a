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

// Spectrum broadcast structure: pointer-basis extraction, decomposition of a
// joint state into Σ_i p_i |ψ_i><ψ_i| ⊗_j R_i^j, and its quality metrics.

#include <array>
#include <optional>
#include <vector>

#include "qdarwin/bloch_search.h"
#include "qdarwin/qcore.h"

namespace qdarwin {

struct PointerBasis {
  MeasurementBasis measurement;
  /// |φ⁰>, |φ¹>, labeled so that |<φ⁰|0>|² ≥ ½.
  std::array<StateVector, 2> states;
  /// Mean χ(S:E_j) over single-qubit fractions at this basis.
  double mean_fraction_info = 0.0;
  /// Diagnostic: angle (radians) between each fraction's own χ argmax axis
  /// and the pointer axis. Filled only on request.
  std::vector<double> fraction_axis_deviation;
};

/// Labels the eigenstates of a measurement as (|φ⁰>, |φ¹>) with the state
/// closer to |0> first; exact ties keep the "+" state first.
std::array<StateVector, 2> label_pointer_states(const MeasurementBasis& basis);

/// System basis maximizing the mean Holevo information over the
/// single-qubit environment fractions. nullopt when S(ρ_S) < tol::kMinEntropy.
std::optional<PointerBasis> extract_pointer_basis(const DensityMatrix& rho_SE,
                                                  const SphereSearchConfig& config = {},
                                                  bool with_diagnostics = false);
std::optional<PointerBasis> extract_pointer_basis(const StateVector& psi,
                                                  const SphereSearchConfig& config = {},
                                                  bool with_diagnostics = false);

struct SbsReport {
  std::array<StateVector, 2> pointer_basis;
  std::array<double, 2> branch_probs{};
  std::vector<std::vector<std::size_t>> fractions;  // layout factor indices
  /// R_i^j per fraction j and branch i; empty for an absent branch.
  std::vector<std::array<std::optional<DensityMatrix>, 2>> conditional_env;
  /// Uhlmann fidelity F(R_0^j, R_1^j) per fraction; empty when rank deficient.
  std::vector<double> distinguishability;
  double decoherence_residual = 0.0;  // |<ψ0|ρ_S|ψ1>|
  double reconstruction_error = 0.0;  // trace distance to the assembled SBS state
  bool rank_deficient = false;

  double max_distinguishability() const;
  /// Every fraction's branch states overlap less than tol::kSbsDistinguishable.
  bool sbs_like() const;
};

/// Decomposes rho_SE along `basis` with contiguous environment fractions of
/// `fraction_size` qubits (leftovers join the last fraction).
SbsReport sbs_decompose(const DensityMatrix& rho_SE, const std::array<StateVector, 2>& basis,
                        int fraction_size);

/// |<φ⁰|0>|² of the extracted pointer basis, in [½, 1].
std::optional<double> pointer_fidelity(const DensityMatrix& rho_SE, const SphereSearchConfig& config = {});
std::optional<double> pointer_fidelity(const StateVector& psi, const SphereSearchConfig& config = {});

}  // namespace qdarwin
