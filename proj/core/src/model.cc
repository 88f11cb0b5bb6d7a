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

#include "qdarwin/model.h"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qdarwin/tolerances.h"

namespace qdarwin {

void ModelParams::validate() const {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw std::invalid_argument("omega: must be positive");
  }
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw std::invalid_argument("gamma: must be positive");
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("p: out of range [0, 1]");
  }
  if (n < 1) {
    throw std::invalid_argument("n: must be at least 1");
  }
}

InitialScenario InitialScenario::amplitude(double x0) {
  if (!(x0 >= 0.0 && x0 <= 1.0)) {
    throw std::invalid_argument("x0: out of range [0, 1]");
  }
  return InitialScenario(Amplitude{x0});
}

InitialScenario InitialScenario::phase(Complex phi) {
  if (std::abs(std::abs(phi) - 1.0) > tol::kUnitPhase) {
    throw std::invalid_argument("phase: |phi| must be 1");
  }
  return InitialScenario(Phase{phi});
}

InitialScenario InitialScenario::phase_angle(double angle) {
  return phase(std::polar(1.0, angle));
}

InitialScenario InitialScenario::circle_left() { return InitialScenario(CircleLeft{}); }

StateVector InitialScenario::system_state() const {
  const double r = std::numbers::sqrt2 / 2.0;
  if (const auto* a = std::get_if<Amplitude>(&variant_)) {
    return StateVector::qubit(std::sqrt(a->x0), Complex(0.0, std::sqrt(1.0 - a->x0)));
  }
  if (const auto* ph = std::get_if<Phase>(&variant_)) {
    return StateVector::qubit(r, r * ph->phi);
  }
  return StateVector::qubit(r, Complex(0.0, r));
}

std::string InitialScenario::kind() const {
  if (std::holds_alternative<Amplitude>(variant_)) return "amplitude";
  if (std::holds_alternative<Phase>(variant_)) return "phase";
  return "circle_left";
}

std::string InitialScenario::describe() const {
  std::ostringstream out;
  out.precision(12);
  if (const auto* a = std::get_if<Amplitude>(&variant_)) {
    out << "amplitude(x0=" << a->x0 << ")";
  } else if (const auto* ph = std::get_if<Phase>(&variant_)) {
    out << "phase(angle=" << std::arg(ph->phi) << ")";
  } else {
    out << "circle_left";
  }
  return out.str();
}

Matrix system_hamiltonian(const ModelParams& params) {
  params.validate();
  const Eigen::Index env_dim = Eigen::Index{1} << params.n;
  const Matrix hs = params.omega * (params.p * pauli_x() + (1.0 - params.p) * pauli_z());
  return kron(hs, identity(env_dim));
}

Matrix interaction_hamiltonian(const ModelParams& params) {
  params.validate();
  const int n = params.n;
  const Eigen::Index env_dim = Eigen::Index{1} << n;
  const Eigen::Index dim = 2 * env_dim;
  Matrix h = Matrix::Zero(dim, dim);
  // σz_S ⊗ σx_{E_i} flips bit (n − i) of the environment index, signed by the system bit.
  for (Eigen::Index x = 0; x < dim; ++x) {
    const double sign = x < env_dim ? 1.0 : -1.0;
    for (int i = 1; i <= n; ++i) {
      const Eigen::Index y = x ^ (Eigen::Index{1} << (n - i));
      h(y, x) += sign * params.gamma;
    }
  }
  return h;
}

Matrix build_hamiltonian(const ModelParams& params) {
  return system_hamiltonian(params) + interaction_hamiltonian(params);
}

double commutator_norm(const ModelParams& params) {
  const Matrix hs = system_hamiltonian(params);
  const Matrix hi = interaction_hamiltonian(params);
  return (hs * hi - hi * hs).norm();
}

StateVector initial_state(const InitialScenario& scenario, int n) {
  if (n < 0) {
    throw std::invalid_argument("initial_state: negative environment size");
  }
  const StateVector sys = scenario.system_state();
  if (n == 0) {
    return sys;
  }
  SubsystemLayout layout = SubsystemLayout::system_environment(n);
  const Eigen::Index env_dim = Eigen::Index{1} << n;
  Vector amps = Vector::Zero(2 * env_dim);
  amps[0] = sys[0];
  amps[env_dim] = sys[1];
  return StateVector(detail::Trusted{}, std::move(amps), std::move(layout));
}

Trajectory evolve_trajectory(const ModelParams& params, const InitialScenario& scenario,
                             std::vector<double> times) {
  params.validate();
  if (times.empty()) {
    throw std::invalid_argument("evolve_trajectory: empty time grid");
  }
  for (std::size_t k = 1; k < times.size(); ++k) {
    if (!(times[k] > times[k - 1])) {
      throw std::invalid_argument("evolve_trajectory: times must be strictly increasing");
    }
  }
  const HermitianEig eig = herm_eig(build_hamiltonian(params));
  const StateVector psi0 = initial_state(scenario, params.n);
  const Vector coeffs = eig.eigenvectors.adjoint() * psi0.amplitudes();

  Trajectory traj{times, {}, params, scenario};
  traj.states.reserve(times.size());
  Vector rotated(coeffs.size());
  for (double t : times) {
    for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
      rotated[k] = std::polar(1.0, -eig.eigenvalues[k] * t) * coeffs[k];
    }
    Vector amps = eig.eigenvectors * rotated;
    // Unitary up to rounding; renormalize so the state invariant holds exactly.
    amps.normalize();
    traj.states.emplace_back(detail::Trusted{}, std::move(amps), psi0.layout());
  }
  return traj;
}

std::vector<double> uniform_time_grid(double gamma, int points, double gamma_t_max) {
  if (!(gamma > 0.0)) {
    throw std::invalid_argument("uniform_time_grid: gamma must be positive");
  }
  if (points < 1) {
    throw std::invalid_argument("uniform_time_grid: need at least one point");
  }
  if (!(gamma_t_max > 0.0)) {
    throw std::invalid_argument("uniform_time_grid: gamma_t_max must be positive");
  }
  std::vector<double> out(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) {
    const double frac = points == 1 ? 0.0 : static_cast<double>(k) / (points - 1);
    out[static_cast<std::size_t>(k)] = frac * gamma_t_max / gamma;
  }
  return out;
}

}  // namespace qdarwin
