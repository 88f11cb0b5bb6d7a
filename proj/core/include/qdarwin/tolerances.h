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

// Numerical tolerances shared by every module. Kept in one table so that
// checks and algorithms agree on what "equal", "zero" and "degenerate" mean.

namespace qdarwin::tol {

/// Max deviation of Σ|ψ_k|² from one for a valid state vector.
inline constexpr double kNorm = 1e-10;
/// Max elementwise |ρ − ρ†| for a valid density matrix.
inline constexpr double kHermitian = 1e-10;
/// Max |Tr ρ − 1| for a valid density matrix.
inline constexpr double kTrace = 1e-10;
/// Most negative eigenvalue tolerated in a density matrix.
inline constexpr double kNegativeEigenvalue = 1e-10;
/// Hermiticity required of herm_eig input before symmetrization.
inline constexpr double kHermitianInput = 1e-8;
/// Outcome probabilities at or below this are treated as absent.
inline constexpr double kDegenerateOutcome = 1e-12;
/// Below this system entropy (bits) nothing is known about the system.
inline constexpr double kMinEntropy = 1e-6;
/// Values closer than this are ties for deterministic tie-breaking.
inline constexpr double kTie = 1e-12;
/// Max |φ| − 1 for a unit phase.
inline constexpr double kUnitPhase = 1e-12;
/// Uhlmann fidelity below which two conditional states count as distinguishable.
inline constexpr double kSbsDistinguishable = 0.05;

}  // namespace qdarwin::tol
