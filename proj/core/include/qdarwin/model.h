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

// Spin-star dephasing model: one system qubit coupled to n environment qubits,
//
//   H = ω(p σx + (1−p) σz)_S ⊗ I_E + Σ_i γ σz_S ⊗ σx_{E_i},
//
// in the interaction picture (no environment self-Hamiltonian), ħ = 1.

#include <string>
#include <variant>
#include <vector>

#include "qdarwin/qcore.h"

namespace qdarwin {

struct ModelParams {
  double omega = 0.1;
  double gamma = 0.1;
  double p = 0.0;
  int n = 1;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

class InitialScenario {
 public:
  struct Amplitude {
    double x0;
  };
  struct Phase {
    Complex phi;
  };
  struct CircleLeft {};
  using Variant = std::variant<Amplitude, Phase, CircleLeft>;

  /// sqrt(x0)|0> + i sqrt(1−x0)|1>.
  static InitialScenario amplitude(double x0);
  /// (|0> + φ|1>)/sqrt(2) with |φ| = 1.
  static InitialScenario phase(Complex phi);
  static InitialScenario phase_angle(double angle);
  /// σy eigenstate (|0> + i|1>)/sqrt(2).
  static InitialScenario circle_left();

  const Variant& variant() const { return variant_; }
  /// System qubit state for this scenario.
  StateVector system_state() const;
  /// Short identifier, e.g. "amplitude(x0=0.7)".
  std::string describe() const;
  std::string kind() const;

 private:
  explicit InitialScenario(Variant v) : variant_(v) {}
  Variant variant_;
};

/// Full Hamiltonian over the layout (S, E1, ..., En).
Matrix build_hamiltonian(const ModelParams& params);
/// H_S ⊗ I_E.
Matrix system_hamiltonian(const ModelParams& params);
/// Σ_i γ σz_S ⊗ σx_{E_i}.
Matrix interaction_hamiltonian(const ModelParams& params);

/// Frobenius norm of [H_S ⊗ I_E, H_I]; linear in p.
double commutator_norm(const ModelParams& params);

/// System state for `scenario` tensored with |0>^⊗n. n = 0 gives the bare system qubit.
StateVector initial_state(const InitialScenario& scenario, int n);

struct Trajectory {
  std::vector<double> times;
  std::vector<StateVector> states;
  ModelParams params;
  InitialScenario scenario;
};

/// exp(−iHt)|Ψ(0)> on every time of the grid, from a single eigendecomposition.
Trajectory evolve_trajectory(const ModelParams& params, const InitialScenario& scenario,
                             std::vector<double> times);

/// `points` uniform times covering γt ∈ [0, gamma_t_max], endpoints included.
std::vector<double> uniform_time_grid(double gamma, int points, double gamma_t_max);

inline constexpr int kDefaultTimePoints = 400;

}  // namespace qdarwin
