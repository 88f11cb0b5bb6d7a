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

#include "qdarwin/redundancy.h"

#include <gtest/gtest.h>

#include <numbers>

#include "oracles.h"

namespace qdarwin {
namespace {

constexpr double kPi = std::numbers::pi;

std::string validation_message(RedundancyConfig cfg) {
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    return e.what();
  }
  return "";
}

StateVector ghz(int n) {
  const int dim = 2 << n;
  Vector v = Vector::Zero(dim);
  v(0) = v(dim - 1) = 1.0 / std::sqrt(2.0);
  return StateVector(v, SubsystemLayout::system_environment(n));
}

StateVector snapshot(int n, double gamma_t, double p) {
  const auto traj = evolve_trajectory({0.1, 0.1, p, n}, InitialScenario::circle_left(), {gamma_t / 0.1});
  return traj.states[0];
}

TEST(RedundancyConfig, Validation) {
  RedundancyConfig cfg;
  cfg.delta = 1.5;
  EXPECT_NE(validation_message(cfg).find("delta out of range"), std::string::npos);
  cfg.delta = 0.0;
  EXPECT_NE(validation_message(cfg).find("delta out of range"), std::string::npos);
  cfg.delta = 0.9;
  EXPECT_EQ(validation_message(cfg), "");
}

TEST(RedundancyConfig, ThresholdModes) {
  RedundancyConfig cfg;
  cfg.delta = 0.9;
  EXPECT_NEAR(cfg.threshold(0.8), 0.1 * 0.8, 1e-15);
  cfg.threshold_mode = ThresholdMode::kStrict;
  EXPECT_NEAR(cfg.threshold(0.8), 0.9 * 0.8, 1e-15);
}

TEST(RedundancyConfig, Parsing) {
  EXPECT_EQ(parse_threshold_mode("literal"), ThresholdMode::kLiteral);
  EXPECT_EQ(parse_threshold_mode("strict"), ThresholdMode::kStrict);
  EXPECT_FALSE(parse_threshold_mode("loose").has_value());
  EXPECT_EQ(parse_quantifier("holevo"), Quantifier::kHolevo);
  EXPECT_EQ(parse_quantifier("two-sided"), Quantifier::kTwoSided);
  EXPECT_FALSE(parse_quantifier("quantum").has_value());
  EXPECT_EQ(to_string(ThresholdMode::kStrict), "strict");
  EXPECT_EQ(to_string(Quantifier::kTwoSided), "two-sided");
}

TEST(ContiguousFractions, LeftoversJoinLastBlock) {
  using F = std::vector<std::vector<std::size_t>>;
  EXPECT_EQ(contiguous_fractions(4, 1), (F{{1}, {2}, {3}, {4}}));
  EXPECT_EQ(contiguous_fractions(5, 2), (F{{1, 2}, {3, 4, 5}}));
  EXPECT_EQ(contiguous_fractions(3, 3), (F{{1, 2, 3}}));
}

TEST(Redundancy, UndefinedWithoutSystemEntropy) {
  const auto psi = initial_state(InitialScenario::circle_left(), 3);
  const auto r = redundancy(psi, RedundancyConfig{});
  EXPECT_FALSE(r.defined);
  EXPECT_EQ(r.r, 0);
  EXPECT_FALSE(redundancy_brute_oracle(DensityMatrix::from_pure(psi), RedundancyConfig{}).defined);
}

TEST(Redundancy, GhzStateIsFullyRedundant) {
  for (int n = 1; n <= 5; ++n) {
    for (auto mode : {ThresholdMode::kLiteral, ThresholdMode::kStrict}) {
      RedundancyConfig cfg;
      cfg.threshold_mode = mode;
      const auto r = redundancy(ghz(n), cfg);
      EXPECT_TRUE(r.defined);
      EXPECT_EQ(r.r, n);
      EXPECT_EQ(r.fraction_size, 1);
      EXPECT_NEAR(r.system_entropy, 1.0, 1e-12);
    }
  }
}

TEST(Redundancy, OrthogonalBranchesAtQuarterPeriod) {
  const auto psi = snapshot(4, kPi / 4.0, 0.0);
  RedundancyConfig cfg;
  cfg.threshold_mode = ThresholdMode::kStrict;
  const auto r = redundancy(psi, cfg);
  EXPECT_EQ(r.r, 4);
  ASSERT_EQ(r.per_fraction_info.size(), 4u);
  for (double v : r.per_fraction_info) EXPECT_NEAR(v, 1.0, 1e-6);
}

TEST(Redundancy, PureAndDensityRoutesAgree) {
  for (double p : {0.0, 0.5, 1.0}) {
    for (double gt : {0.3, 0.6, 1.1, 2.4}) {
      const auto psi = snapshot(4, gt, p);
      for (auto mode : {ThresholdMode::kLiteral, ThresholdMode::kStrict}) {
        RedundancyConfig cfg;
        cfg.threshold_mode = mode;
        const auto a = redundancy(psi, cfg);
        const auto b = redundancy(DensityMatrix::from_pure(psi), cfg);
        EXPECT_EQ(a.r, b.r);
        EXPECT_EQ(a.fraction_size, b.fraction_size);
        EXPECT_EQ(a.defined, b.defined);
      }
    }
  }
}

TEST(Redundancy, EqualsBruteOracleOnTrajectorySnapshots) {
  // 20 snapshots spanning p ∈ {0, 0.5, 1}, n ≤ 4, both threshold modes.
  int compared = 0;
  for (int n : {2, 3, 4}) {
    for (double p : {0.0, 0.5, 1.0}) {
      for (double gt : {0.15, 0.45, 0.8, 1.6, 2.7}) {
        if (n == 2 && gt > 1.0) continue;
        const auto rho = DensityMatrix::from_pure(snapshot(n, gt, p));
        for (auto mode : {ThresholdMode::kLiteral, ThresholdMode::kStrict}) {
          RedundancyConfig cfg;
          cfg.threshold_mode = mode;
          const auto fast = redundancy(rho, cfg);
          const auto brute = redundancy_brute_oracle(rho, cfg);
          EXPECT_EQ(fast.r, brute.r) << "n=" << n << " p=" << p << " gt=" << gt;
          EXPECT_EQ(fast.defined, brute.defined);
          ++compared;
        }
      }
    }
  }
  EXPECT_GE(compared, 40);
}

TEST(Redundancy, TwoSidedNeverExceedsHolevo) {
  for (double p : {0.0, 1.0}) {
    for (double gt : {0.4, 0.9}) {
      const auto psi = snapshot(4, gt, p);
      RedundancyConfig holevo;
      holevo.threshold_mode = ThresholdMode::kStrict;
      RedundancyConfig two = holevo;
      two.quantifier = Quantifier::kTwoSided;
      EXPECT_LE(redundancy(psi, two).r, redundancy(psi, holevo).r);
      const auto rho = DensityMatrix::from_pure(psi);
      EXPECT_EQ(redundancy(rho, two).r, redundancy_brute_oracle(rho, two).r);
    }
  }
}

TEST(Redundancy, DecisionMatchesFullResultWithoutInfo) {
  for (double p : {0.0, 1.0}) {
    for (double gt : {0.3, 1.4}) {
      const auto psi = snapshot(5, gt, p);
      RedundancyConfig cfg;
      cfg.threshold_mode = ThresholdMode::kStrict;
      const auto full = redundancy(psi, cfg);
      const auto decision = redundancy_decision(psi, cfg);
      EXPECT_EQ(decision.r, full.r);
      EXPECT_EQ(decision.fraction_size, full.fraction_size);
      EXPECT_EQ(decision.fractions, full.fractions);
      EXPECT_TRUE(decision.per_fraction_info.empty());
      EXPECT_EQ(full.per_fraction_info.size(), static_cast<std::size_t>(full.r));
    }
  }
}

TEST(Redundancy, StrictNeverExceedsLiteral) {
  for (double p : {0.0, 0.5, 1.0}) {
    for (double gt : {0.2, 0.5, 0.9, 1.9}) {
      const auto psi = snapshot(5, gt, p);
      RedundancyConfig literal;
      RedundancyConfig strict;
      strict.threshold_mode = ThresholdMode::kStrict;
      EXPECT_LE(redundancy(psi, strict).r, redundancy(psi, literal).r);
    }
  }
}

TEST(Redundancy, BruteOracleRejectsLargeEnvironments) {
  const auto rho = DensityMatrix::from_pure(ghz(7));
  EXPECT_THROW(redundancy_brute_oracle(rho, RedundancyConfig{}), std::invalid_argument);
}

RedundancySample sample(double t, bool defined, int r, double chi) {
  RedundancySample s;
  s.time = t;
  s.red.defined = defined;
  s.red.r = r;
  s.chi_e1 = chi;
  return s;
}

TEST(PeakSelection, FirstDefinedWindowOnly) {
  const std::vector<RedundancySample> s{sample(0, false, 0, 0), sample(1, true, 2, 0.5), sample(2, true, 3, 0.4),
                                        sample(3, false, 0, 0), sample(4, true, 5, 0.9)};
  const auto peak = select_redundancy_peak(s);
  ASSERT_TRUE(peak.has_value());
  EXPECT_EQ(peak->index, 2u);
  EXPECT_EQ(peak->red.r, 3);
}

TEST(PeakSelection, TiesPreferLargerChiThenEarliest) {
  const std::vector<RedundancySample> s{sample(0, true, 3, 0.5), sample(1, true, 3, 0.7), sample(2, true, 3, 0.7),
                                        sample(3, true, 3, 0.7 + 1e-14)};
  const auto peak = select_redundancy_peak(s);
  ASSERT_TRUE(peak.has_value());
  EXPECT_EQ(peak->index, 1u);
}

TEST(PeakSelection, NoDefinedSamples) {
  const std::vector<RedundancySample> s{sample(0, false, 0, 0), sample(1, false, 0, 0)};
  EXPECT_FALSE(select_redundancy_peak(s).has_value());
  EXPECT_FALSE(select_redundancy_peak({}).has_value());
}

TEST(MaxRedundancyTime, CommutingPeakAtQuarterPeriod) {
  const double gamma = 0.1;
  const auto times = uniform_time_grid(gamma, 101, 2.0 * kPi);
  const auto traj = evolve_trajectory({0.1, gamma, 0.0, 4}, InitialScenario::circle_left(), times);
  const auto peak = max_redundancy_time(traj, RedundancyConfig{});
  ASSERT_TRUE(peak.has_value());
  EXPECT_EQ(peak->red.r, 4);
  // Grid spacing is 2π/100 in γt; index 12 is the grid point closest to π/4.
  EXPECT_EQ(peak->index, 12u);
  EXPECT_NEAR(gamma * peak->time, 2.0 * kPi * 12.0 / 100.0, 1e-12);
  EXPECT_GT(peak->chi_e1, 0.99);
  EXPECT_EQ(peak->red.per_fraction_info.size(), 4u);
}

TEST(ScanRedundancy, WorkerCountDoesNotChangeResults) {
  const auto times = uniform_time_grid(0.1, 16, 3.0);
  const auto traj = evolve_trajectory({0.1, 0.1, 0.7, 4}, InitialScenario::amplitude(0.6), times);
  const auto a = scan_redundancy(traj, RedundancyConfig{}, 1);
  const auto b = scan_redundancy(traj, RedundancyConfig{}, 3);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].red.r, b[k].red.r);
    EXPECT_EQ(a[k].red.per_fraction_info, b[k].red.per_fraction_info);
    EXPECT_EQ(a[k].chi_e1, b[k].chi_e1);
  }
}

}  // namespace
}  // namespace qdarwin
