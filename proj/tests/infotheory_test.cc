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

#include "qdarwin/infotheory.h"

#include <gtest/gtest.h>

#include <numbers>

#include "oracles.h"
#include "qdarwin/model.h"

namespace qdarwin {
namespace {

using testing::Rng;

const SubsystemLayout kTwo = SubsystemLayout::qubits({"S", "F"});

DensityMatrix bell() {
  Vector v = Vector::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return DensityMatrix::from_pure(StateVector(v, kTwo));
}

DensityMatrix snapshot(int n, double gamma_t, double p = 0.0) {
  const double gamma = 0.1;
  const auto traj = evolve_trajectory({0.1, gamma, p, n}, InitialScenario::circle_left(), {gamma_t / gamma});
  const std::vector<std::size_t> keep{0, 1};
  return reduced_state(traj.states[0], keep);
}

TEST(ConditionOnSystem, ProductWithZeroSystem) {
  Matrix sigma(2, 2);
  sigma << 0.7, Complex(0.1, 0.2), Complex(0.1, -0.2), 0.3;
  Matrix zero = Matrix::Zero(2, 2);
  zero(0, 0) = 1.0;
  const DensityMatrix rho(testing::naive_kron(zero, sigma), kTwo);
  const auto cf = condition_on_system(rho, MeasurementBasis::z());
  EXPECT_NEAR(cf.probs[0], 1.0, 1e-15);
  EXPECT_NEAR(cf.probs[1], 0.0, 1e-15);
  ASSERT_TRUE(cf.states[0].has_value());
  EXPECT_FALSE(cf.states[1].has_value());
  EXPECT_LT((cf.states[0]->matrix() - sigma).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(ConditionOnSystem, BellStateInZ) {
  const auto cf = condition_on_system(bell(), MeasurementBasis::z());
  EXPECT_NEAR(cf.probs[0], 0.5, 1e-15);
  EXPECT_NEAR(cf.probs[1], 0.5, 1e-15);
  EXPECT_NEAR(cf.states[0]->matrix()(0, 0).real(), 1.0, 1e-15);
  EXPECT_NEAR(cf.states[1]->matrix()(1, 1).real(), 1.0, 1e-15);
}

TEST(ConditionOnSystem, MixtureReconstructsFraction) {
  Rng rng(53);
  for (int trial = 0; trial < 100; ++trial) {
    const int fraction_qubits = 1 + trial % 2;
    const auto layout = SubsystemLayout::system_environment(fraction_qubits);
    const DensityMatrix rho(testing::random_density_matrix(rng, 2 << fraction_qubits, 2), layout);
    const auto cf = condition_on_system(rho, testing::random_basis(rng));
    const int fd = 1 << fraction_qubits;
    Matrix sum = Matrix::Zero(fd, fd);
    for (int a = 0; a < 2; ++a) {
      if (cf.states[a]) sum += cf.probs[a] * cf.states[a]->matrix();
    }
    std::vector<int> keep;
    for (int q = 1; q <= fraction_qubits; ++q) keep.push_back(q);
    EXPECT_LT((sum - testing::naive_partial_trace(rho.matrix(), fraction_qubits + 1, keep)).cwiseAbs().maxCoeff(),
              1e-10);
    EXPECT_NEAR(cf.probs[0] + cf.probs[1], 1.0, 1e-12);
  }
}

TEST(HolevoAt, MatchesProjectorOracle) {
  Rng rng(59);
  for (int trial = 0; trial < 40; ++trial) {
    const int fraction_qubits = 1 + trial % 3;
    const int fd = 1 << fraction_qubits;
    const DensityMatrix rho(testing::random_density_matrix(rng, 2 * fd, 1 + trial % 4),
                            SubsystemLayout::system_environment(fraction_qubits));
    const auto b = testing::random_basis(rng);
    EXPECT_NEAR(holevo_at(rho, b), testing::reference_holevo_at(rho.matrix(), fd, b.theta, b.phi), 1e-10);
  }
}

TEST(HolevoChi, ProductStateCarriesNoInformation) {
  Rng rng(61);
  Matrix a = testing::random_density_matrix(rng, 2, 2);
  Matrix f = testing::random_density_matrix(rng, 2, 2);
  const DensityMatrix rho(testing::naive_kron(a, f), kTwo);
  for (int trial = 0; trial < 20; ++trial) {
    EXPECT_NEAR(holevo_at(rho, testing::random_basis(rng)), 0.0, 1e-8);
  }
  EXPECT_NEAR(holevo_chi(rho).value, 0.0, 1e-8);
}

TEST(HolevoChi, MatchesDenseGridOracle) {
  Rng rng(67);
  for (int trial = 0; trial < 4; ++trial) {
    const auto rho = testing::random_two_qubit(rng, 1 + trial % 4);
    const double want = testing::grid_holevo(rho.matrix(), 2);
    EXPECT_NEAR(holevo_chi(rho).value, want, 1e-5);
  }
}

TEST(HolevoChi, OrthogonalBranchesGiveOneBit) {
  // γt = π/4: branch states of E1 are (|0> ∓ i|1>)/√2.
  const auto rho = snapshot(8, std::numbers::pi / 4.0);
  const auto r = holevo_chi(rho);
  EXPECT_NEAR(r.value, 1.0, 1e-6);
  EXPECT_LT(r.argmax_basis.theta, 1e-3);
}

TEST(HolevoChi, EighthPeriodValue) {
  // γt = π/8 at p = 0: z-basis conditionals are pure with overlap 1/√2, so
  // χ = h2((1 + 1/√2)/2); the grid oracle confirms no basis beats it.
  const auto rho = snapshot(8, std::numbers::pi / 8.0);
  const double oracle = testing::grid_holevo(rho.matrix(), 2);
  EXPECT_NEAR(oracle, 0.6008760366928562, 1e-9);
  EXPECT_NEAR(holevo_chi(rho).value, oracle, 1e-6);
  EXPECT_NEAR(holevo_at(rho, MeasurementBasis::z()), 0.6008760366928562, 1e-10);
}

TEST(BranchEnsemble, PureRouteMatchesDensityRoute) {
  Rng rng(71);
  const auto layout = SubsystemLayout::system_environment(4);
  for (int trial = 0; trial < 5; ++trial) {
    const StateVector psi(testing::random_pure(rng, 32), layout);
    const auto rho = DensityMatrix::from_pure(psi);
    for (const std::vector<std::size_t>& fraction :
         {std::vector<std::size_t>{1}, {2, 3}, {1, 2, 4}, {1, 2, 3, 4}}) {
      std::vector<std::size_t> keep{0};
      keep.insert(keep.end(), fraction.begin(), fraction.end());
      const auto dense = BranchEnsemble::from_density(partial_trace_factors(rho, keep));
      const auto pure = BranchEnsemble::from_pure(psi, fraction);
      EXPECT_NEAR(dense.quantum_mi(), pure.quantum_mi(), 1e-10);
      EXPECT_NEAR(dense.fraction_entropy(), pure.fraction_entropy(), 1e-10);
      for (int k = 0; k < 5; ++k) {
        const auto b = testing::random_basis(rng);
        EXPECT_NEAR(dense.chi(b), pure.chi(b), 1e-10);
      }
      const auto hp = holevo_chi(psi, fraction);
      const auto hd = holevo_chi(partial_trace_factors(rho, keep));
      EXPECT_NEAR(hp.value, hd.value, 1e-9);
    }
  }
}

TEST(ClassicalMi, Extremes) {
  Eigen::Matrix2d independent;
  independent << 0.12, 0.28, 0.18, 0.42;
  EXPECT_NEAR(classical_mi(independent), 0.0, 1e-14);
  Eigen::Matrix2d correlated;
  correlated << 0.5, 0.0, 0.0, 0.5;
  EXPECT_NEAR(classical_mi(correlated), 1.0, 1e-14);
}

TEST(JointOutcomes, IsDistribution) {
  Rng rng(73);
  const auto rho = testing::random_two_qubit(rng, 3);
  const auto p = joint_outcomes(rho, testing::random_basis(rng), testing::random_basis(rng));
  EXPECT_NEAR(p.sum(), 1.0, 1e-12);
  EXPECT_GE(p.minCoeff(), -1e-15);
}

TEST(AccessibleMi, BellAndProductAndShape) {
  EXPECT_NEAR(accessible_mi_two_sided(bell()), 1.0, 1e-8);
  Matrix z = Matrix::Zero(2, 2);
  z(0, 0) = 1.0;
  EXPECT_NEAR(accessible_mi_two_sided(DensityMatrix(testing::naive_kron(z, z), kTwo)), 0.0, 1e-12);
  const DensityMatrix three = DensityMatrix::maximally_mixed(SubsystemLayout::system_environment(2));
  EXPECT_THROW(accessible_mi_two_sided(three), std::invalid_argument);
}

TEST(QuantumMi, BellAndProduct) {
  EXPECT_NEAR(quantum_mi(bell()), 2.0, 1e-10);
  EXPECT_NEAR(quantum_mi(DensityMatrix::maximally_mixed(kTwo)), 0.0, 1e-12);
}

TEST(InformationHierarchy, RandomStates) {
  Rng rng(79);
  for (int trial = 0; trial < 30; ++trial) {
    const auto rho = testing::random_two_qubit(rng, 1 + trial % 4);
    const double acc = accessible_mi_two_sided(rho);
    const double chi = holevo_chi(rho).value;
    const double qmi = quantum_mi(rho);
    EXPECT_LE(acc, chi + 1e-6);
    EXPECT_LE(chi, qmi + 1e-6);
    EXPECT_GE(acc, -1e-12);
    // χ is bounded by the fraction entropy and by the outcome entropy (≤ 1 bit).
    EXPECT_LE(chi, entropy(partial_trace(rho, {"F"})) + 1e-9);
    EXPECT_LE(chi, 1.0 + 1e-9);
  }
}

TEST(InformationHierarchy, TrajectorySnapshots) {
  for (double p : {0.0, 0.5, 1.0}) {
    for (double gt : {0.2, 0.7, 1.3, 2.9}) {
      const auto rho = snapshot(4, gt, p);
      const double acc = accessible_mi_two_sided(rho);
      const double chi = holevo_chi(rho).value;
      EXPECT_LE(acc, chi + 1e-6);
      EXPECT_LE(chi, quantum_mi(rho) + 1e-6);
    }
  }
}

}  // namespace
}  // namespace qdarwin
