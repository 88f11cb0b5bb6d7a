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

// Projective qubit measurements parametrized by Bloch angles, and the
// deterministic maximizer used to optimize information quantities over them.

#include <array>
#include <functional>
#include <vector>

#include "qdarwin/qcore.h"

namespace qdarwin {

/// Two-outcome projective measurement along n = (sinθ cosφ, sinθ sinφ, cosθ).
/// Outcome 0 ("+") projects onto the +1 eigenstate of n·σ, outcome 1 ("−")
/// onto the −1 eigenstate.
struct MeasurementBasis {
  double theta = 0.0;
  double phi = 0.0;

  static MeasurementBasis z() { return {0.0, 0.0}; }
  static MeasurementBasis x();
  static MeasurementBasis y();

  /// cos(θ/2)|0> + e^{iφ} sin(θ/2)|1>.
  StateVector plus_state() const;
  /// sin(θ/2)|0> − e^{iφ} cos(θ/2)|1>.
  StateVector minus_state() const;
  std::array<StateVector, 2> states() const { return {plus_state(), minus_state()}; }
  Matrix projector(int outcome) const;

  /// Same measurement with θ ∈ [0, π/2], φ ∈ [0, 2π). Outcomes swap when the
  /// direction is folded into the upper hemisphere.
  MeasurementBasis canonical() const;
};

/// (cos(θ/2), e^{iφ} sin(θ/2)) without building a StateVector.
std::array<Complex, 2> plus_amplitudes(double theta, double phi);

struct SphereSearchConfig {
  int grid_theta = 24;  // θ samples over [0, π], poles included
  int grid_phi = 48;    // φ samples over [0, 2π)
  int refine_starts = 3;
  double simplex_tolerance = 1e-7;  // radians
  int max_evaluations = 500;        // per refinement
};

struct SphereSearchResult {
  MeasurementBasis basis;
  double value = 0.0;
  int evaluations = 0;
};

/// Maximizes f over measurement directions: coarse grid, then Nelder–Mead
/// refinement from the best grid points. Deterministic; values within
/// tol::kTie are ties, broken toward lower canonical θ, then lower φ.
/// f must be invariant under outcome relabeling (θ, φ) → (π − θ, φ + π).
SphereSearchResult maximize_on_sphere(const std::function<double(const MeasurementBasis&)>& f,
                                      const SphereSearchConfig& config = {});

struct SimplexResult {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;
};

/// Nelder–Mead minimization in R^d starting from an axis-aligned simplex of
/// the given step sizes. Stops when the simplex diameter drops below
/// `tolerance` or after `max_evaluations`.
SimplexResult nelder_mead_minimize(const std::function<double(const std::vector<double>&)>& f,
                                   std::vector<double> start, const std::vector<double>& steps,
                                   double tolerance, int max_evaluations);

}  // namespace qdarwin
