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

#include "qdarwin/bloch_search.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "qdarwin/tolerances.h"

namespace qdarwin {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_angle(double a) {
  a = std::fmod(a, 2.0 * kPi);
  if (a < 0.0) {
    a += 2.0 * kPi;
  }
  // fmod can land exactly on 2π after the shift.
  return a >= 2.0 * kPi ? 0.0 : a;
}

// Strict ordering used for deterministic selection among candidates.
bool better(double value, const MeasurementBasis& b, double best_value,
            const MeasurementBasis& best) {
  if (value > best_value + tol::kTie) return true;
  if (value < best_value - tol::kTie) return false;
  if (b.theta < best.theta - tol::kTie) return true;
  if (b.theta > best.theta + tol::kTie) return false;
  return b.phi < best.phi - tol::kTie;
}

}  // namespace

MeasurementBasis MeasurementBasis::x() { return {kPi / 2.0, 0.0}; }
MeasurementBasis MeasurementBasis::y() { return {kPi / 2.0, kPi / 2.0}; }

std::array<Complex, 2> plus_amplitudes(double theta, double phi) {
  return {Complex(std::cos(theta / 2.0), 0.0), std::polar(std::sin(theta / 2.0), phi)};
}

StateVector MeasurementBasis::plus_state() const {
  const auto a = plus_amplitudes(theta, phi);
  return StateVector::qubit(a[0], a[1]);
}

StateVector MeasurementBasis::minus_state() const {
  return StateVector::qubit(std::sin(theta / 2.0), -std::polar(std::cos(theta / 2.0), phi));
}

Matrix MeasurementBasis::projector(int outcome) const {
  if (outcome != 0 && outcome != 1) {
    throw std::invalid_argument("MeasurementBasis::projector: outcome must be 0 or 1");
  }
  const StateVector s = outcome == 0 ? plus_state() : minus_state();
  return s.amplitudes() * s.amplitudes().adjoint();
}

MeasurementBasis MeasurementBasis::canonical() const {
  double t = wrap_angle(theta);
  double f = phi;
  if (t > kPi) {
    t = 2.0 * kPi - t;
    f += kPi;
  }
  if (t > kPi / 2.0) {
    t = kPi - t;
    f += kPi;
  }
  if (t < tol::kTie) {
    // At the pole φ is meaningless; pin it.
    return {0.0, 0.0};
  }
  return {t, wrap_angle(f)};
}

SimplexResult nelder_mead_minimize(const std::function<double(const std::vector<double>&)>& f,
                                   std::vector<double> start, const std::vector<double>& steps,
                                   double tolerance, int max_evaluations) {
  const std::size_t d = start.size();
  if (steps.size() != d || d == 0) {
    throw std::invalid_argument("nelder_mead_minimize: steps must match the dimension");
  }
  constexpr double kReflect = 1.0;
  constexpr double kExpand = 2.0;
  constexpr double kContract = 0.5;
  constexpr double kShrink = 0.5;

  std::vector<std::vector<double>> pts(d + 1, start);
  for (std::size_t i = 0; i < d; ++i) {
    pts[i + 1][i] += steps[i];
  }
  std::vector<double> vals(d + 1);
  int evals = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evals;
    return f(x);
  };
  for (std::size_t i = 0; i <= d; ++i) {
    vals[i] = eval(pts[i]);
  }
  std::vector<std::size_t> order(d + 1);

  auto diameter = [&]() {
    double diam = 0.0;
    for (std::size_t i = 1; i <= d; ++i) {
      double dist = 0.0;
      for (std::size_t k = 0; k < d; ++k) {
        dist = std::max(dist, std::abs(pts[i][k] - pts[0][k]));
      }
      diam = std::max(diam, dist);
    }
    return diam;
  };
  auto affine = [&](const std::vector<double>& c, const std::vector<double>& w, double coef) {
    std::vector<double> out(d);
    for (std::size_t k = 0; k < d; ++k) {
      out[k] = c[k] + coef * (w[k] - c[k]);
    }
    return out;
  };

  while (true) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    {
      std::vector<std::vector<double>> p2;
      std::vector<double> v2;
      for (std::size_t i : order) {
        p2.push_back(pts[i]);
        v2.push_back(vals[i]);
      }
      pts = std::move(p2);
      vals = std::move(v2);
    }
    if (diameter() < tolerance || evals >= max_evaluations) {
      break;
    }
    std::vector<double> centroid(d, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t k = 0; k < d; ++k) {
        centroid[k] += pts[i][k] / static_cast<double>(d);
      }
    }
    const auto reflected = affine(centroid, pts[d], -kReflect);
    const double fr = eval(reflected);
    if (fr < vals[0]) {
      const auto expanded = affine(centroid, pts[d], -kExpand);
      const double fe = eval(expanded);
      if (fe < fr) {
        pts[d] = expanded;
        vals[d] = fe;
      } else {
        pts[d] = reflected;
        vals[d] = fr;
      }
      continue;
    }
    if (fr < vals[d - 1]) {
      pts[d] = reflected;
      vals[d] = fr;
      continue;
    }
    const bool outside = fr < vals[d];
    const auto contracted =
        outside ? affine(centroid, reflected, kContract) : affine(centroid, pts[d], kContract);
    const double fc = eval(contracted);
    if (fc < std::min(fr, vals[d])) {
      pts[d] = contracted;
      vals[d] = fc;
      continue;
    }
    for (std::size_t i = 1; i <= d; ++i) {
      pts[i] = affine(pts[0], pts[i], kShrink);
      vals[i] = eval(pts[i]);
    }
  }
  return SimplexResult{pts[0], vals[0], evals};
}

SphereSearchResult maximize_on_sphere(const std::function<double(const MeasurementBasis&)>& f,
                                      const SphereSearchConfig& config) {
  if (config.grid_theta < 2 || config.grid_phi < 1 || config.refine_starts < 0) {
    throw std::invalid_argument("maximize_on_sphere: invalid grid configuration");
  }
  struct Candidate {
    MeasurementBasis basis;
    double value;
  };
  const double dtheta = kPi / (config.grid_theta - 1);
  const double dphi = 2.0 * kPi / config.grid_phi;

  std::vector<Candidate> grid;
  grid.reserve(static_cast<std::size_t>(config.grid_theta * config.grid_phi));
  int evaluations = 0;
  for (int i = 0; i < config.grid_theta; ++i) {
    for (int j = 0; j < config.grid_phi; ++j) {
      const MeasurementBasis b{i * dtheta, j * dphi};
      grid.push_back({b, f(b)});
      ++evaluations;
    }
  }
  std::vector<std::size_t> order(grid.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return grid[a].value > grid[b].value;
  });

  SphereSearchResult best{grid[order[0]].basis.canonical(), grid[order[0]].value, 0};
  const auto starts = std::min<std::size_t>(static_cast<std::size_t>(config.refine_starts), order.size());
  for (std::size_t s = 0; s < starts; ++s) {
    const Candidate& c = grid[order[s]];
    auto neg = [&](const std::vector<double>& x) { return -f(MeasurementBasis{x[0], x[1]}); };
    const SimplexResult r = nelder_mead_minimize(neg, {c.basis.theta, c.basis.phi}, {dtheta, dphi},
                                                 config.simplex_tolerance, config.max_evaluations);
    evaluations += r.evaluations;
    const MeasurementBasis refined = MeasurementBasis{r.x[0], r.x[1]}.canonical();
    if (better(-r.value, refined, best.value, best.basis)) {
      best.basis = refined;
      best.value = -r.value;
    }
  }
  // Canonical grid points can tie with the refined optimum; prefer the lower angles.
  for (const Candidate& c : grid) {
    const MeasurementBasis cb = c.basis.canonical();
    if (better(c.value, cb, best.value, best.basis)) {
      best.basis = cb;
      best.value = c.value;
    }
  }
  best.evaluations = evaluations;
  return best;
}

}  // namespace qdarwin
