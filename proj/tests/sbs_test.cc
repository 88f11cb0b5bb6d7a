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

#include "qdarwin/sbs.h"

#include <gtest/gtest.h>

#include <numbers>

#include "oracles.h"
#include "qdarwin/model.h"

namespace qdarwin {
namespace {

constexpr double kPi = std::numbers::pi;

Matrix projector(const Vector& v) { return v * v.adjoint(); }

Vector qubit(Complex a0, Complex a1) {
  Vector v(2);
  v << a0, a1;
  return v / v.norm();
}

StateVector snapshot(const InitialScenario& s, int n, double gamma_t, double p, double omega = 0.1) {
  return evolve_trajectory({omega, 0.1, p, n}, s, {gamma_t / 0.1}).states[0];
}

// Σ_i p_i |ψ_i><ψ_i| ⊗ R_i^1 ⊗ R_i^2 with pure R's of chosen overlaps.
struct HandSbs {
  DensityMatrix rho;
  std::array<StateVector, 2> basis;
  std::array<double, 2> overlaps;  // |<r_0^j|r_1^j>|² per fraction j
};

HandSbs hand_sbs(const MeasurementBasis& b, double p0) {
  const auto basis = label_pointer_states(b);
  const std::array<std::array<Vector, 2>, 2> env{{
      {qubit(1.0, 0.0), qubit(0.0, 1.0)},                   // fraction 1: orthogonal
      {qubit(1.0, 0.0), qubit(std::cos(0.4), std::sin(0.4))},  // fraction 2: overlap cos²(0.4)
  }};
  Matrix rho = Matrix::Zero(8, 8);
  for (int i = 0; i < 2; ++i) {
    rho += (i == 0 ? p0 : 1.0 - p0) *
           testing::naive_kron(testing::naive_kron(projector(basis[i].amplitudes()), projector(env[0][i])),
                               projector(env[1][i]));
  }
  return {DensityMatrix(rho, SubsystemLayout::system_environment(2)), basis,
          {0.0, std::pow(std::cos(0.4), 2)}};
}

TEST(LabelPointerStates, NearestToZeroFirst) {
  const auto z = label_pointer_states(MeasurementBasis::z());
  EXPECT_NEAR(std::norm(z[0][0]), 1.0, 1e-15);
  const auto flipped = label_pointer_states({2.5, 0.3});
  EXPECT_GE(std::norm(flipped[0][0]), 0.5);
  const auto equator = label_pointer_states(MeasurementBasis::x());
  const auto plus = MeasurementBasis::x().plus_state();
  EXPECT_NEAR(fidelity_pure(equator[0], plus), 1.0, 1e-15);
}

TEST(SbsDecompose, HandAssembledFixedPoint) {
  for (const MeasurementBasis b : {MeasurementBasis{0.0, 0.0}, {0.9, 2.0}, {2.2, 4.0}}) {
    const auto sbs = hand_sbs(b, 0.3);
    const auto report = sbs_decompose(sbs.rho, sbs.basis, 1);
    EXPECT_LT(report.reconstruction_error, 1e-10);
    ASSERT_EQ(report.distinguishability.size(), 2u);
    EXPECT_NEAR(report.distinguishability[0], sbs.overlaps[0], 1e-8);
    EXPECT_NEAR(report.distinguishability[1], sbs.overlaps[1], 1e-8);
    EXPECT_NEAR(report.branch_probs[0], 0.3, 1e-12);
    EXPECT_LT(report.decoherence_residual, 1e-12);
    EXPECT_FALSE(report.rank_deficient);
    EXPECT_FALSE(report.sbs_like());

    const auto extracted = extract_pointer_basis(sbs.rho);
    ASSERT_TRUE(extracted.has_value());
    EXPECT_GE(fidelity_pure(extracted->states[0], sbs.basis[0]), 1.0 - 1e-6);
    EXPECT_GE(fidelity_pure(extracted->states[1], sbs.basis[1]), 1.0 - 1e-6);
  }
}

TEST(SbsDecompose, CommutingQuarterPeriodIsExactSbs) {
  // S plus E1..E4 of eight; the unobserved half carries away the coherence.
  const auto psi = snapshot(InitialScenario::circle_left(), 8, kPi / 4.0, 0.0);
  const std::vector<std::size_t> keep{0, 1, 2, 3, 4};
  const auto report = sbs_decompose(reduced_state(psi, keep), label_pointer_states(MeasurementBasis::z()), 1);
  EXPECT_LT(report.reconstruction_error, 1e-8);
  ASSERT_EQ(report.distinguishability.size(), 4u);
  for (double d : report.distinguishability) EXPECT_LT(d, 1e-8);
  EXPECT_LT(report.decoherence_residual, 1e-8);
  EXPECT_TRUE(report.sbs_like());
}

TEST(SbsDecompose, PureGlobalStateIsNotSbs) {
  // Σ p_i |ψ_i><ψ_i| ⊗ ... has no S coherence; the pure state keeps |c0 c1| = 1/2.
  const auto psi = snapshot(InitialScenario::circle_left(), 4, kPi / 4.0, 0.0);
  const auto report = sbs_decompose(DensityMatrix::from_pure(psi), label_pointer_states(MeasurementBasis::z()), 1);
  EXPECT_NEAR(report.reconstruction_error, 0.5, 1e-9);
  EXPECT_LT(report.decoherence_residual, 1e-12);
}

TEST(SbsDecompose, CommutingEighthPeriodOverlap) {
  const auto psi = snapshot(InitialScenario::circle_left(), 4, kPi / 8.0, 0.0);
  const auto report = sbs_decompose(DensityMatrix::from_pure(psi), label_pointer_states(MeasurementBasis::z()), 1);
  ASSERT_EQ(report.distinguishability.size(), 4u);
  for (double d : report.distinguishability) EXPECT_NEAR(d, 0.5, 1e-9);
}

TEST(SbsDecompose, LeftoverQubitsJoinLastFraction) {
  const auto psi = snapshot(InitialScenario::circle_left(), 5, 0.5, 0.3);
  const auto report = sbs_decompose(DensityMatrix::from_pure(psi), label_pointer_states(MeasurementBasis::z()), 2);
  ASSERT_EQ(report.fractions.size(), 2u);
  EXPECT_EQ(report.fractions[1], (std::vector<std::size_t>{3, 4, 5}));
}

TEST(SbsDecompose, RankDeficientBranch) {
  const auto psi = initial_state(InitialScenario::amplitude(1.0), 2);
  const auto report = sbs_decompose(DensityMatrix::from_pure(psi), label_pointer_states(MeasurementBasis::z()), 1);
  EXPECT_TRUE(report.rank_deficient);
  EXPECT_TRUE(report.distinguishability.empty());
  EXPECT_FALSE(report.conditional_env[0][1].has_value());
  EXPECT_FALSE(report.sbs_like());
}

TEST(SbsDecompose, RejectsBadInput) {
  const auto rho = DensityMatrix::from_pure(initial_state(InitialScenario::circle_left(), 2));
  const auto z = label_pointer_states(MeasurementBasis::z());
  const std::array<StateVector, 2> same{z[0], z[0]};
  EXPECT_THROW(sbs_decompose(rho, same, 1), std::invalid_argument);
  EXPECT_THROW(sbs_decompose(rho, z, 0), std::invalid_argument);
  EXPECT_THROW(sbs_decompose(rho, z, 3), std::invalid_argument);
}

TEST(PointerBasis, UndefinedWithoutSystemEntropy) {
  const auto psi = initial_state(InitialScenario::circle_left(), 3);
  EXPECT_FALSE(extract_pointer_basis(psi).has_value());
  EXPECT_FALSE(pointer_fidelity(psi).has_value());
}

TEST(PointerFidelity, CommutingDynamicsSelectsZ) {
  for (const auto& s : {InitialScenario::circle_left(), InitialScenario::amplitude(0.7),
                        InitialScenario::phase_angle(0.9)}) {
    for (double gt : {0.3, 0.785, 1.2}) {
      const auto f = pointer_fidelity(snapshot(s, 6, gt, 0.0));
      ASSERT_TRUE(f.has_value());
      EXPECT_NEAR(*f, 1.0, 1e-6) << s.describe() << " gt=" << gt;
    }
  }
}

TEST(PointerFidelity, InRangeAndRoutesAgree) {
  testing::Rng rng(83);
  for (int trial = 0; trial < 6; ++trial) {
    const StateVector psi(testing::random_pure(rng, 16), SubsystemLayout::system_environment(3));
    const auto a = pointer_fidelity(psi);
    const auto b = pointer_fidelity(DensityMatrix::from_pure(psi));
    ASSERT_TRUE(a && b);
    EXPECT_GE(*a, 0.5 - 1e-12);
    EXPECT_LE(*a, 1.0 + 1e-12);
    EXPECT_NEAR(*a, *b, 1e-8);
  }
}

TEST(PointerBasis, DiagnosticsReportPerFractionDeviation) {
  const auto psi = snapshot(InitialScenario::circle_left(), 4, 0.6, 0.0);
  const auto pb = extract_pointer_basis(psi, {}, true);
  ASSERT_TRUE(pb.has_value());
  ASSERT_EQ(pb->fraction_axis_deviation.size(), 4u);
  for (double d : pb->fraction_axis_deviation) EXPECT_LT(d, 1e-3);
  EXPECT_GT(pb->mean_fraction_info, 0.0);
}

}  // namespace
}  // namespace qdarwin
