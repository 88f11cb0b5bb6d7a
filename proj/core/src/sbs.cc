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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qdarwin/infotheory.h"
#include "qdarwin/redundancy.h"
#include "qdarwin/tolerances.h"

namespace qdarwin {

namespace {

Eigen::Vector3d bloch_axis(const MeasurementBasis& b) {
  return {std::sin(b.theta) * std::cos(b.phi), std::sin(b.theta) * std::sin(b.phi), std::cos(b.theta)};
}

double axis_angle(const MeasurementBasis& a, const MeasurementBasis& b) {
  const double c = std::clamp(std::abs(bloch_axis(a).dot(bloch_axis(b))), 0.0, 1.0);
  return std::acos(c);
}

std::optional<PointerBasis> extract_from(std::vector<BranchEnsemble> ensembles, double system_entropy,
                                         const SphereSearchConfig& config, bool with_diagnostics) {
  if (system_entropy < tol::kMinEntropy || ensembles.empty()) {
    return std::nullopt;
  }
  const double weight = 1.0 / static_cast<double>(ensembles.size());
  auto mean_chi = [&](const MeasurementBasis& b) {
    double acc = 0.0;
    for (const auto& e : ensembles) {
      acc += e.chi(b);
    }
    return weight * acc;
  };
  const SphereSearchResult r = maximize_on_sphere(mean_chi, config);
  PointerBasis out{r.basis, label_pointer_states(r.basis), r.value, {}};
  if (with_diagnostics) {
    for (const auto& e : ensembles) {
      const SphereSearchResult own =
          maximize_on_sphere([&](const MeasurementBasis& b) { return e.chi(b); }, config);
      out.fraction_axis_deviation.push_back(axis_angle(own.basis, r.basis));
    }
  }
  return out;
}

}  // namespace

std::array<StateVector, 2> label_pointer_states(const MeasurementBasis& basis) {
  StateVector plus = basis.plus_state();
  StateVector minus = basis.minus_state();
  if (std::norm(minus[0]) > std::norm(plus[0]) + tol::kTie) {
    return {minus, plus};
  }
  return {plus, minus};
}

std::optional<PointerBasis> extract_pointer_basis(const DensityMatrix& rho_SE,
                                                  const SphereSearchConfig& config,
                                                  bool with_diagnostics) {
  if (rho_SE.layout().size() < 2 || rho_SE.layout().dim(0) != 2) {
    throw std::invalid_argument("extract_pointer_basis: first factor must be the system qubit");
  }
  const std::vector<std::size_t> sys{0};
  const double s = entropy(partial_trace_factors(rho_SE, sys));
  std::vector<BranchEnsemble> ensembles;
  if (s >= tol::kMinEntropy) {
    for (std::size_t f = 1; f < rho_SE.layout().size(); ++f) {
      const std::vector<std::size_t> keep{0, f};
      ensembles.push_back(BranchEnsemble::from_density(partial_trace_factors(rho_SE, keep)));
    }
  }
  return extract_from(std::move(ensembles), s, config, with_diagnostics);
}

std::optional<PointerBasis> extract_pointer_basis(const StateVector& psi,
                                                  const SphereSearchConfig& config,
                                                  bool with_diagnostics) {
  if (psi.layout().size() < 2 || psi.layout().dim(0) != 2) {
    throw std::invalid_argument("extract_pointer_basis: first factor must be the system qubit");
  }
  const std::vector<std::size_t> sys{0};
  const double s = entropy(reduced_state(psi, sys));
  std::vector<BranchEnsemble> ensembles;
  if (s >= tol::kMinEntropy) {
    for (std::size_t f = 1; f < psi.layout().size(); ++f) {
      const std::vector<std::size_t> frac{f};
      ensembles.push_back(BranchEnsemble::from_pure(psi, frac));
    }
  }
  return extract_from(std::move(ensembles), s, config, with_diagnostics);
}

double SbsReport::max_distinguishability() const {
  if (distinguishability.empty()) {
    return 0.0;
  }
  return *std::max_element(distinguishability.begin(), distinguishability.end());
}

bool SbsReport::sbs_like() const {
  return !rank_deficient && max_distinguishability() < tol::kSbsDistinguishable;
}

SbsReport sbs_decompose(const DensityMatrix& rho_SE, const std::array<StateVector, 2>& basis,
                        int fraction_size) {
  const SubsystemLayout& layout = rho_SE.layout();
  if (layout.size() < 2 || layout.dim(0) != 2) {
    throw std::invalid_argument("sbs_decompose: first factor must be the system qubit");
  }
  if (basis[0].dim() != 2 || basis[1].dim() != 2) {
    throw std::invalid_argument("sbs_decompose: basis states must be qubit states");
  }
  if (std::abs(basis[0].amplitudes().dot(basis[1].amplitudes())) > tol::kNorm) {
    throw std::invalid_argument("sbs_decompose: basis is not orthonormal");
  }
  const int n = static_cast<int>(layout.size()) - 1;
  if (fraction_size < 1 || fraction_size > n) {
    throw std::invalid_argument("sbs_decompose: fraction_size out of range");
  }

  SbsReport out{basis, {}, contiguous_fractions(n, fraction_size), {}, {}, 0.0, 0.0, false};
  const Matrix& m = rho_SE.matrix();
  const Eigen::Index env_dim = rho_SE.dim() / 2;
  std::vector<std::size_t> env(static_cast<std::size_t>(n));
  std::iota(env.begin(), env.end(), 1);
  const SubsystemLayout env_layout = layout.select(env);

  // Unnormalized conditional environment operators <ψ_i|ρ|ψ_i>.
  std::array<Matrix, 2> branch;
  for (int i = 0; i < 2; ++i) {
    const Vector& v = basis[static_cast<std::size_t>(i)].amplitudes();
    branch[static_cast<std::size_t>(i)] = Matrix::Zero(env_dim, env_dim);
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        branch[static_cast<std::size_t>(i)] +=
            std::conj(v[a]) * v[b] * m.block(a * env_dim, b * env_dim, env_dim, env_dim);
      }
    }
    out.branch_probs[static_cast<std::size_t>(i)] =
        std::max(branch[static_cast<std::size_t>(i)].trace().real(), 0.0);
  }

  Matrix rho_s(2, 2);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      rho_s(a, b) = m.block(a * env_dim, b * env_dim, env_dim, env_dim).trace();
    }
  }
  out.decoherence_residual =
      std::abs(basis[0].amplitudes().dot(rho_s * basis[1].amplitudes()));

  Matrix assembled = Matrix::Zero(rho_SE.dim(), rho_SE.dim());
  out.conditional_env.resize(out.fractions.size());
  for (int i = 0; i < 2; ++i) {
    const auto ii = static_cast<std::size_t>(i);
    const double p = out.branch_probs[ii];
    if (p <= tol::kDegenerateOutcome) {
      out.rank_deficient = true;
      continue;
    }
    const DensityMatrix env_state(detail::Trusted{}, branch[ii] / p, env_layout);
    Matrix product = basis[ii].amplitudes() * basis[ii].amplitudes().adjoint();
    for (std::size_t j = 0; j < out.fractions.size(); ++j) {
      std::vector<std::size_t> in_env;
      for (std::size_t f : out.fractions[j]) {
        in_env.push_back(f - 1);
      }
      DensityMatrix r = partial_trace_factors(env_state, in_env);
      product = kron(product, r.matrix());
      out.conditional_env[j][ii] = std::move(r);
    }
    assembled += p * product;
  }
  if (!out.rank_deficient) {
    for (const auto& pair : out.conditional_env) {
      out.distinguishability.push_back(uhlmann_fidelity(*pair[0], *pair[1]));
    }
  }
  const DensityMatrix sigma(detail::Trusted{}, std::move(assembled), layout);
  out.reconstruction_error = trace_distance(rho_SE, sigma);
  return out;
}

std::optional<double> pointer_fidelity(const DensityMatrix& rho_SE, const SphereSearchConfig& config) {
  const auto basis = extract_pointer_basis(rho_SE, config);
  if (!basis) {
    return std::nullopt;
  }
  return std::norm(basis->states[0][0]);
}

std::optional<double> pointer_fidelity(const StateVector& psi, const SphereSearchConfig& config) {
  const auto basis = extract_pointer_basis(psi, config);
  if (!basis) {
    return std::nullopt;
  }
  return std::norm(basis->states[0][0]);
}

}  // namespace qdarwin
