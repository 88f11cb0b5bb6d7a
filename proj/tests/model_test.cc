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

#include <gtest/gtest.h>

#include <numbers>

#include "oracles.h"

namespace qdarwin {
namespace {

const Complex kI(0.0, 1.0);

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

TEST(ModelParams, ValidateNamesField) {
  auto message = [](ModelParams p) {
    try {
      p.validate();
    } catch (const std::invalid_argument& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  EXPECT_NE(message({0.1, 0.1, 1.5, 2}).find("p"), std::string::npos);
  EXPECT_NE(message({-1.0, 0.1, 0.5, 2}).find("omega"), std::string::npos);
  EXPECT_NE(message({0.1, 0.0, 0.5, 2}).find("gamma"), std::string::npos);
  EXPECT_NE(message({0.1, 0.1, 0.5, 0}).find("n"), std::string::npos);
  EXPECT_EQ(message({0.1, 0.1, 0.5, 2}), "");
}

TEST(Hamiltonian, MatchesBasisActionOracle) {
  for (int n = 1; n <= 4; ++n) {
    for (double p : {0.0, 0.3, 1.0}) {
      const ModelParams params{0.7, 0.2, p, n};
      EXPECT_LT(max_abs(build_hamiltonian(params) - testing::naive_hamiltonian(0.7, 0.2, p, n)), 1e-15)
          << "n=" << n << " p=" << p;
    }
  }
}

TEST(Hamiltonian, IsHermitianAndSplits) {
  const ModelParams params{0.3, 0.1, 0.4, 3};
  const Matrix h = build_hamiltonian(params);
  EXPECT_LT(max_abs(h - h.adjoint()), 1e-15);
  EXPECT_LT(max_abs(h - system_hamiltonian(params) - interaction_hamiltonian(params)), 1e-15);
}

TEST(Hamiltonian, FourByFourCommutator) {
  // n = 1: [ωpσx ⊗ I, γσz ⊗ σx] = −2iωpγ σy ⊗ σx.
  const double omega = 0.3, gamma = 0.2, p = 0.6;
  const ModelParams params{omega, gamma, p, 1};
  const Matrix hs = system_hamiltonian(params);
  const Matrix hi = interaction_hamiltonian(params);
  const Matrix comm = hs * hi - hi * hs;
  const Matrix want = Complex(0.0, -2.0 * omega * p * gamma) * testing::naive_kron(pauli_y(), pauli_x());
  EXPECT_LT(max_abs(comm - want), 1e-15);
  EXPECT_NEAR(commutator_norm(params), 4.0 * omega * p * gamma, 1e-14);
}

TEST(Hamiltonian, CommutatorNormLinearInP) {
  // ‖[H_S, H_I]‖_F = 2ωpγ sqrt(n 2^{n+1}).
  for (int n : {1, 2, 3}) {
    EXPECT_NEAR(commutator_norm({0.1, 0.1, 0.0, n}), 0.0, 1e-15);
    for (double p : {0.25, 1.0}) {
      const double want = 2.0 * 0.1 * p * 0.1 * std::sqrt(n * std::pow(2.0, n + 1));
      EXPECT_NEAR(commutator_norm({0.1, 0.1, p, n}), want, 1e-13);
    }
  }
}

TEST(InitialState, CircleLeftWithOneEnvironmentQubit) {
  const auto psi = initial_state(InitialScenario::circle_left(), 1);
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(psi[0] - Complex(r, 0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(psi[1]), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(psi[2] - Complex(0, r)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(psi[3]), 0.0, 1e-15);
}

TEST(InitialState, PhaseOneIsPlus) {
  const auto psi = initial_state(InitialScenario::phase(1.0), 0);
  ASSERT_EQ(psi.dim(), 2);
  EXPECT_NEAR(std::abs(psi[0] - 1.0 / std::sqrt(2.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(psi[1] - 1.0 / std::sqrt(2.0)), 0.0, 1e-15);
}

TEST(InitialState, EquivalentScenarios) {
  const Vector a = initial_state(InitialScenario::circle_left(), 2).amplitudes();
  const Vector b = initial_state(InitialScenario::amplitude(0.5), 2).amplitudes();
  const Vector c = initial_state(InitialScenario::phase(kI), 2).amplitudes();
  const Vector d = initial_state(InitialScenario::phase_angle(std::numbers::pi / 2), 2).amplitudes();
  EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((a - c).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((a - d).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(InitialState, RejectsBadParameters) {
  EXPECT_THROW(InitialScenario::amplitude(1.2), std::invalid_argument);
  EXPECT_THROW(InitialScenario::phase(Complex(0.5, 0.0)), std::invalid_argument);
}

TEST(InitialState, Describe) {
  EXPECT_EQ(InitialScenario::circle_left().describe(), "circle_left");
  EXPECT_EQ(InitialScenario::amplitude(0.7).kind(), "amplitude");
  EXPECT_EQ(InitialScenario::phase_angle(1.0).kind(), "phase");
}

TEST(TimeGrid, UniformWithEndpoints) {
  const auto t = uniform_time_grid(0.1, 5, 2.0);
  ASSERT_EQ(t.size(), 5u);
  EXPECT_DOUBLE_EQ(t.front(), 0.0);
  EXPECT_NEAR(t.back(), 20.0, 1e-12);
  EXPECT_NEAR(t[1], 5.0, 1e-12);
  EXPECT_THROW(uniform_time_grid(0.1, 0, 1.0), std::invalid_argument);
}

TEST(Evolution, RejectsBadTimeGrids) {
  const ModelParams params{0.1, 0.1, 0.0, 1};
  EXPECT_THROW(evolve_trajectory(params, InitialScenario::circle_left(), {}), std::invalid_argument);
  EXPECT_THROW(evolve_trajectory(params, InitialScenario::circle_left(), {1.0, 1.0}), std::invalid_argument);
}

TEST(Evolution, DephasingCoherenceOracle) {
  const double gamma = 0.1;
  const auto times = uniform_time_grid(gamma, kDefaultTimePoints, 2.0 * std::numbers::pi);
  for (int n : {1, 4, 8}) {
    const auto traj = evolve_trajectory({0.1, gamma, 0.0, n}, InitialScenario::circle_left(), times);
    const std::vector<std::size_t> sys{0};
    double worst = 0.0;
    for (std::size_t k = 0; k < times.size(); ++k) {
      const double got = std::abs(reduced_state(traj.states[k], sys)(0, 1));
      worst = std::max(worst, std::abs(got - testing::dephasing_coherence(gamma, times[k], n)));
    }
    EXPECT_LT(worst, 1e-9) << "n=" << n;
  }
}

// Commuting case in closed form: each system branch drives every environment
// qubit to cos(γt)|0> − i z sin(γt)|1>, z = ±1.
Vector commuting_state(const Complex a0, const Complex a1, double omega, double gamma, double t, int n) {
  const int env = 1 << n;
  Vector psi = Vector::Zero(2 * env);
  for (int s = 0; s < 2; ++s) {
    const double z = s == 0 ? 1.0 : -1.0;
    const Complex amp = (s == 0 ? a0 : a1) * std::exp(Complex(0.0, -omega * z * t));
    for (int e = 0; e < env; ++e) {
      Complex v = amp;
      for (int i = 0; i < n; ++i) {
        const bool one = (e >> (n - 1 - i)) & 1;
        v *= one ? Complex(0.0, -z * std::sin(gamma * t)) : Complex(std::cos(gamma * t), 0.0);
      }
      psi(s * env + e) = v;
    }
  }
  return psi;
}

TEST(Evolution, CommutingClosedFormState) {
  const double omega = 0.13, gamma = 0.1;
  const std::vector<double> times{0.0, 1.0, 3.3, 7.85, 20.0};
  for (int n : {1, 3, 5}) {
    const auto traj = evolve_trajectory({omega, gamma, 0.0, n}, InitialScenario::amplitude(0.3), times);
    for (std::size_t k = 0; k < times.size(); ++k) {
      const Vector want =
          commuting_state(std::sqrt(0.3), Complex(0, std::sqrt(0.7)), omega, gamma, times[k], n);
      EXPECT_LT((traj.states[k].amplitudes() - want).cwiseAbs().maxCoeff(), 1e-11);
    }
  }
}

TEST(Evolution, NormPreservedAndMatchesDirectPropagator) {
  const ModelParams params{0.2, 0.1, 0.8, 3};
  const std::vector<double> times{0.0, 0.5, 4.0, 30.0};
  const auto traj = evolve_trajectory(params, InitialScenario::phase_angle(0.4), times);
  const Vector psi0 = initial_state(InitialScenario::phase_angle(0.4), 3).amplitudes();
  for (std::size_t k = 0; k < times.size(); ++k) {
    EXPECT_NEAR(traj.states[k].amplitudes().norm(), 1.0, 1e-12);
    const Vector direct = propagator(testing::naive_hamiltonian(0.2, 0.1, 0.8, 3), times[k]) * psi0;
    EXPECT_LT((traj.states[k].amplitudes() - direct).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(Evolution, CommutingCaseConservesSystemPopulations) {
  const auto times = uniform_time_grid(0.1, 40, 6.0);
  const auto traj = evolve_trajectory({0.1, 0.1, 0.0, 4}, InitialScenario::amplitude(0.8), times);
  const std::vector<std::size_t> sys{0};
  for (const auto& psi : traj.states) {
    EXPECT_NEAR(reduced_state(psi, sys)(0, 0).real(), 0.8, 1e-12);
  }
}

}  // namespace
}  // namespace qdarwin
