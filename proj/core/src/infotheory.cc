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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "qdarwin/tolerances.h"

namespace qdarwin {

namespace {

void require_system_qubit(const SubsystemLayout& layout, const char* what) {
  if (layout.size() < 2 || layout.dim(0) != 2) {
    throw std::invalid_argument(std::string(what) +
                                ": first factor must be the system qubit, followed by a fraction");
  }
}

std::vector<std::size_t> rest_factors(const SubsystemLayout& layout) {
  std::vector<std::size_t> out(layout.size() - 1);
  std::iota(out.begin(), out.end(), 1);
  return out;
}

Matrix conditional_block(const Matrix& b00, const Matrix& b01, const Matrix& b11,
                         const std::array<Complex, 2>& amp) {
  // <n|ρ|n> with |n> = amp[0]|0> + amp[1]|1>.
  const Complex cross = std::conj(amp[0]) * amp[1];
  Matrix g = std::norm(amp[0]) * b00 + std::norm(amp[1]) * b11;
  g += cross * b01;
  g += std::conj(cross) * b01.adjoint();
  return g;
}

std::array<std::array<Complex, 2>, 2> basis_amplitudes(const MeasurementBasis& basis) {
  const double c = std::cos(basis.theta / 2.0);
  const double s = std::sin(basis.theta / 2.0);
  const Complex e = std::polar(1.0, basis.phi);
  return {{{Complex(c, 0.0), s * e}, {Complex(s, 0.0), -c * e}}};
}

Matrix system_block(const Matrix& rho, int a, int b) {
  const Eigen::Index d = rho.rows() / 2;
  return rho.block(a * d, b * d, d, d);
}

}  // namespace

ConditionedFraction condition_on_system(const DensityMatrix& rho_SF, const MeasurementBasis& basis) {
  require_system_qubit(rho_SF.layout(), "condition_on_system");
  const Eigen::Index rest_dim = rho_SF.dim() / 2;
  const auto rest = rest_factors(rho_SF.layout());
  ConditionedFraction out;
  for (int a = 0; a < 2; ++a) {
    const Matrix proj = kron(basis.projector(a), identity(rest_dim));
    const Matrix post = proj * rho_SF.matrix() * proj;
    const double p = post.trace().real();
    out.probs[a] = std::max(p, 0.0);
    if (p > tol::kDegenerateOutcome) {
      const DensityMatrix normalized(detail::Trusted{}, post / p, rho_SF.layout());
      out.states[a] = partial_trace_factors(normalized, rest);
    }
  }
  return out;
}

BranchEnsemble BranchEnsemble::from_density(const DensityMatrix& rho_SF) {
  require_system_qubit(rho_SF.layout(), "BranchEnsemble");
  const Matrix& m = rho_SF.matrix();
  BranchEnsemble e;
  e.b00_ = system_block(m, 0, 0);
  e.b01_ = system_block(m, 0, 1);
  e.b11_ = system_block(m, 1, 1);
  Matrix rho_s(2, 2);
  rho_s << e.b00_.trace(), e.b01_.trace(), e.b01_.trace(), e.b11_.trace();
  rho_s(1, 0) = std::conj(rho_s(0, 1));
  e.system_entropy_ = entropy_of_spectrum(herm_eigenvalues(rho_s));
  e.fraction_entropy_ = entropy_of_spectrum(herm_eigenvalues(e.b00_ + e.b11_));
  e.joint_entropy_ = entropy(rho_SF);
  return e;
}

BranchEnsemble BranchEnsemble::from_pure(const StateVector& psi, std::span<const std::size_t> fraction) {
  require_system_qubit(psi.layout(), "BranchEnsemble");
  const std::size_t nf = psi.layout().size();
  std::vector<bool> in_fraction(nf, false);
  for (std::size_t f : fraction) {
    if (f == 0 || f >= nf) {
      throw std::invalid_argument("BranchEnsemble: fraction must name environment factors");
    }
    in_fraction[f] = true;
  }
  std::vector<std::size_t> frac, comp;
  std::size_t frac_dim = 1, comp_dim = 1;
  for (std::size_t f = 1; f < nf; ++f) {
    if (in_fraction[f]) {
      frac.push_back(f);
      frac_dim *= static_cast<std::size_t>(psi.layout().dim(f));
    } else {
      comp.push_back(f);
      comp_dim *= static_cast<std::size_t>(psi.layout().dim(f));
    }
  }
  if (frac.empty()) {
    throw std::invalid_argument("BranchEnsemble: empty fraction");
  }
  const bool use_fraction = frac_dim <= comp_dim;
  std::vector<std::size_t> keep{0};
  const auto& side = use_fraction ? frac : comp;
  keep.insert(keep.end(), side.begin(), side.end());

  const DensityMatrix rho_sx = reduced_state(psi, keep);
  const Matrix& m = rho_sx.matrix();
  BranchEnsemble e;
  e.b00_ = system_block(m, 0, 0);
  e.b01_ = system_block(m, 0, 1);
  e.b11_ = system_block(m, 1, 1);
  Matrix rho_s(2, 2);
  rho_s << e.b00_.trace(), e.b01_.trace(), std::conj(e.b01_.trace()), e.b11_.trace();
  e.system_entropy_ = entropy_of_spectrum(herm_eigenvalues(rho_s));
  const double s_side = entropy_of_spectrum(herm_eigenvalues(e.b00_ + e.b11_));
  const double s_system_side = entropy(rho_sx);
  // Pure joint state: S(F) = S(S ∪ complement) and S(S ∪ F) = S(complement).
  if (use_fraction) {
    e.fraction_entropy_ = s_side;
    e.joint_entropy_ = s_system_side;
  } else {
    e.fraction_entropy_ = s_system_side;
    e.joint_entropy_ = s_side;
  }
  return e;
}

BranchEnsemble::Outcomes BranchEnsemble::measure(const MeasurementBasis& basis) const {
  Outcomes out;
  const auto amps = basis_amplitudes(basis);
  for (int a = 0; a < 2; ++a) {
    const Matrix g = conditional_block(b00_, b01_, b11_, amps[a]);
    const double p = g.trace().real();
    out.probs[a] = std::max(p, 0.0);
    out.entropies[a] = p > tol::kDegenerateOutcome ? entropy_of_spectrum(herm_eigenvalues(g) / p) : 0.0;
  }
  return out;
}

double BranchEnsemble::chi(const MeasurementBasis& basis) const {
  const Outcomes o = measure(basis);
  return fraction_entropy_ - o.probs[0] * o.entropies[0] - o.probs[1] * o.entropies[1];
}

double holevo_at(const DensityMatrix& rho_SF, const MeasurementBasis& basis) {
  return BranchEnsemble::from_density(rho_SF).chi(basis);
}

HolevoResult holevo_chi(const DensityMatrix& rho_SF, const SphereSearchConfig& config) {
  const BranchEnsemble ens = BranchEnsemble::from_density(rho_SF);
  const SphereSearchResult r =
      maximize_on_sphere([&](const MeasurementBasis& b) { return ens.chi(b); }, config);
  const ConditionedFraction cond = condition_on_system(rho_SF, r.basis);
  HolevoResult out;
  out.value = std::max(r.value, 0.0);
  out.argmax_basis = r.basis;
  out.outcome_probs = cond.probs;
  out.conditional_states = cond.states;
  out.evaluations = r.evaluations;
  return out;
}

HolevoResult holevo_chi(const StateVector& psi, std::span<const std::size_t> fraction,
                        const SphereSearchConfig& config) {
  const BranchEnsemble ens = BranchEnsemble::from_pure(psi, fraction);
  const SphereSearchResult r =
      maximize_on_sphere([&](const MeasurementBasis& b) { return ens.chi(b); }, config);
  HolevoResult out;
  out.value = std::max(r.value, 0.0);
  out.argmax_basis = r.basis;
  out.evaluations = r.evaluations;

  // Conditional fraction states at the optimum: project the system, then reduce.
  std::vector<std::size_t> sorted(fraction.begin(), fraction.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::size_t> env(psi.layout().size() - 1);
  std::iota(env.begin(), env.end(), 1);
  const SubsystemLayout env_layout = psi.layout().select(env);
  std::vector<std::size_t> frac_in_env;
  for (std::size_t f : sorted) {
    frac_in_env.push_back(f - 1);
  }
  const Eigen::Index env_dim = psi.dim() / 2;
  const auto amps = basis_amplitudes(r.basis);
  for (int a = 0; a < 2; ++a) {
    Vector branch = std::conj(amps[a][0]) * psi.amplitudes().head(env_dim) +
                    std::conj(amps[a][1]) * psi.amplitudes().tail(env_dim);
    const double p = branch.squaredNorm();
    out.outcome_probs[a] = p;
    if (p > tol::kDegenerateOutcome) {
      branch /= std::sqrt(p);
      const StateVector conditioned(detail::Trusted{}, std::move(branch), env_layout);
      out.conditional_states[a] = reduced_state(conditioned, frac_in_env);
    }
  }
  return out;
}

double classical_mi(const Eigen::Matrix2d& joint) {
  Eigen::Matrix2d p = joint.cwiseMax(0.0);
  const double total = p.sum();
  if (!(total > 0.0)) {
    return 0.0;
  }
  p /= total;
  double mi = 0.0;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const double pab = p(a, b);
      const double pa = p.row(a).sum();
      const double pb = p.col(b).sum();
      if (pab > 0.0) {
        mi += pab * std::log2(pab / (pa * pb));
      }
    }
  }
  return std::max(mi, 0.0);
}

namespace {

Eigen::Matrix2d joint_outcomes_raw(const Eigen::Matrix4cd& rho, double ts, double ps, double tf,
                                   double pf) {
  const auto sa = basis_amplitudes({ts, ps});
  const auto fa = basis_amplitudes({tf, pf});
  Eigen::Matrix2d out;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      Eigen::Vector4cd v;
      v << sa[a][0] * fa[b][0], sa[a][0] * fa[b][1], sa[a][1] * fa[b][0], sa[a][1] * fa[b][1];
      out(a, b) = std::max((v.adjoint() * rho * v)(0, 0).real(), 0.0);
    }
  }
  return out;
}

}  // namespace

Eigen::Matrix2d joint_outcomes(const DensityMatrix& rho_SF, const MeasurementBasis& system,
                               const MeasurementBasis& fraction) {
  if (rho_SF.dim() != 4) {
    throw std::invalid_argument("joint_outcomes: requires a two-qubit state");
  }
  const Eigen::Matrix4cd rho = rho_SF.matrix();
  return joint_outcomes_raw(rho, system.theta, system.phi, fraction.theta, fraction.phi);
}

double accessible_mi_two_sided(const DensityMatrix& rho_SF, const TwoSidedConfig& config) {
  require_system_qubit(rho_SF.layout(), "accessible_mi_two_sided");
  if (rho_SF.dim() != 4) {
    throw std::invalid_argument(
        "accessible_mi_two_sided: fraction must be a single qubit (use holevo_chi)");
  }
  if (config.grid_theta < 2 || config.grid_phi < 1) {
    throw std::invalid_argument("accessible_mi_two_sided: invalid grid configuration");
  }
  const Eigen::Matrix4cd rho = rho_SF.matrix();
  auto mi = [&](const std::vector<double>& x) {
    return classical_mi(joint_outcomes_raw(rho, x[0], x[1], x[2], x[3]));
  };

  const double half_pi = std::numbers::pi / 2.0;
  const double dtheta = half_pi / (config.grid_theta - 1);
  const double dphi = 2.0 * std::numbers::pi / config.grid_phi;
  std::vector<std::pair<double, std::vector<double>>> grid;
  std::vector<std::pair<double, double>> sphere;
  for (int i = 0; i < config.grid_theta; ++i) {
    for (int j = 0; j < (i == 0 ? 1 : config.grid_phi); ++j) {
      sphere.emplace_back(i * dtheta, j * dphi);
    }
  }
  for (const auto& s : sphere) {
    for (const auto& f : sphere) {
      std::vector<double> x{s.first, s.second, f.first, f.second};
      grid.emplace_back(mi(x), std::move(x));
    }
  }
  std::stable_sort(grid.begin(), grid.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  double best = grid.front().first;
  const auto starts = std::min<std::size_t>(static_cast<std::size_t>(config.refine_starts), grid.size());
  for (std::size_t k = 0; k < starts; ++k) {
    auto neg = [&](const std::vector<double>& x) { return -mi(x); };
    const SimplexResult r = nelder_mead_minimize(neg, grid[k].second, {dtheta, dphi, dtheta, dphi},
                                                 config.simplex_tolerance, config.max_evaluations);
    best = std::max(best, -r.value);
  }
  return best;
}

double quantum_mi(const DensityMatrix& rho_SF) {
  require_system_qubit(rho_SF.layout(), "quantum_mi");
  const std::vector<std::size_t> sys{0};
  const auto rest = rest_factors(rho_SF.layout());
  const double s_s = entropy(partial_trace_factors(rho_SF, sys));
  const double s_f = entropy(partial_trace_factors(rho_SF, rest));
  return s_s + s_f - entropy(rho_SF);
}

}  // namespace qdarwin
