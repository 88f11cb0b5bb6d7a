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

#include "selftest.h"

#include <cmath>
#include <functional>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "qdarwin/experiments.h"
#include "qdarwin/infotheory.h"
#include "qdarwin/model.h"
#include "qdarwin/qcore.h"
#include "qdarwin/redundancy.h"
#include "qdarwin/sbs.h"

namespace qdarwin::cli {

namespace {

using Rng = std::mt19937_64;

std::string sci(double v) {
  std::ostringstream out;
  out << std::scientific << std::setprecision(2) << v;
  return out.str();
}

Matrix random_density(Rng& rng, int dim, int rank) {
  std::normal_distribution<double> g;
  Matrix a(dim, rank);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < rank; ++j) a(i, j) = Complex(g(rng), g(rng));
  }
  Matrix rho = a * a.adjoint();
  rho /= rho.trace().real();
  return (rho + rho.adjoint()) / 2.0;
}

DensityMatrix random_two_qubit(Rng& rng) {
  std::uniform_int_distribution<int> rank(1, 4);
  return {random_density(rng, 4, rank(rng)), SubsystemLayout::qubits({"S", "F"})};
}

MeasurementBasis random_basis(Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return {std::acos(1.0 - 2.0 * u(rng)), 2.0 * std::numbers::pi * u(rng)};
}

// Reference entropy in bits through an explicit log base.
double reference_entropy(const Matrix& rho, double log_base) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
  double s = 0.0;
  for (double x : es.eigenvalues()) {
    if (x > 1e-300) s -= x * std::log(x) / std::log(log_base);
  }
  return s;
}

double coherence(const StateVector& psi) {
  const std::vector<std::size_t> sys{0};
  return std::abs(reduced_state(psi, sys)(0, 1));
}

CheckResult dephasing_oracle() {
  double worst = 0.0;
  const double gamma = 0.1;
  for (int n : {1, 4, 8}) {
    const auto times = uniform_time_grid(gamma, kDefaultTimePoints, 2.0 * std::numbers::pi);
    const auto traj = evolve_trajectory({0.1, gamma, 0.0, n}, InitialScenario::circle_left(), times);
    for (std::size_t k = 0; k < times.size(); ++k) {
      const double expected = 0.5 * std::pow(std::cos(2.0 * gamma * times[k]), n);
      worst = std::max(worst, std::abs(coherence(traj.states[k]) - std::abs(expected)));
    }
  }
  return {"dephasing_coherence_oracle", worst <= 1e-9, "max error " + sci(worst)};
}

CheckResult quarter_period_chi() {
  const double gamma = 0.1;
  const double t = std::numbers::pi / (4.0 * gamma);
  const auto traj = evolve_trajectory({0.1, gamma, 0.0, 4}, InitialScenario::circle_left(), {t});
  const std::vector<std::size_t> e1{1};
  const double chi = holevo_chi(traj.states[0], e1).value;
  return {"chi_e1_quarter_period", std::abs(chi - 1.0) <= 1e-6, "chi " + std::to_string(chi)};
}

CheckResult entropy_reference(Rng& rng, double log_base) {
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const int dim = 2 << (trial % 3);
    const Matrix m = random_density(rng, dim, 1 + trial % dim);
    const DensityMatrix rho(m, SubsystemLayout(std::vector<int>{dim}, {"A"}));
    worst = std::max(worst, std::abs(entropy(rho) - reference_entropy(m, log_base)));
  }
  const double x = 0.9;
  const double h2 = -(x * std::log(x) + (1 - x) * std::log(1 - x)) / std::log(log_base);
  worst = std::max(worst, std::abs(binary_entropy(x) - h2));
  return {"entropy_reference", worst <= 1e-10, "max error " + sci(worst)};
}

CheckResult redundancy_oracle() {
  int compared = 0;
  int mismatches = 0;
  RedundancyConfig cfg;
  for (int n : {2, 3, 4}) {
    for (double p : {0.0, 0.5, 1.0}) {
      const double gamma = 0.1;
      const auto times = uniform_time_grid(gamma, 7, 2.0 * std::numbers::pi);
      const auto traj = evolve_trajectory({0.1, gamma, p, n}, InitialScenario::circle_left(), times);
      for (const auto& psi : traj.states) {
        const auto rho = DensityMatrix::from_pure(psi);
        const auto fast = redundancy(rho, cfg);
        const auto brute = redundancy_brute_oracle(rho, cfg);
        ++compared;
        if (fast.r != brute.r || fast.defined != brute.defined) ++mismatches;
      }
    }
  }
  return {"redundancy_brute_oracle", mismatches == 0,
          std::to_string(mismatches) + " mismatches of " + std::to_string(compared)};
}

// Dense grid plus local refinement, independent of the library optimizer.
double dense_chi(const DensityMatrix& rho) {
  const int nt = 100;
  const int np = 200;
  double best = -1.0;
  double bt = 0.0;
  double bp = 0.0;
  for (int i = 0; i <= nt; ++i) {
    for (int j = 0; j < np; ++j) {
      const double th = std::numbers::pi * i / nt;
      const double ph = 2.0 * std::numbers::pi * j / np;
      const double v = holevo_at(rho, {th, ph});
      if (v > best) {
        best = v;
        bt = th;
        bp = ph;
      }
    }
  }
  double step = std::numbers::pi / nt;
  while (step > 1e-9) {
    bool moved = false;
    for (auto [dt, dp] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) {
      const double v = holevo_at(rho, {bt + dt * step, bp + dp * step});
      if (v > best) {
        best = v;
        bt += dt * step;
        bp += dp * step;
        moved = true;
      }
    }
    if (!moved) step /= 2.0;
  }
  return best;
}

CheckResult optimizer_vs_grid(Rng& rng) {
  double worst = 0.0;
  for (int trial = 0; trial < 8; ++trial) {
    const auto rho = random_two_qubit(rng);
    worst = std::max(worst, std::abs(holevo_chi(rho).value - dense_chi(rho)));
  }
  return {"holevo_optimizer_vs_grid", worst <= 1e-5, "max gap " + sci(worst)};
}

CheckResult information_hierarchy(Rng& rng) {
  int violations = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto rho = random_two_qubit(rng);
    const double acc = accessible_mi_two_sided(rho);
    const double chi = holevo_chi(rho).value;
    const double qmi = quantum_mi(rho);
    worst = std::max({worst, acc - chi, chi - qmi});
    if (acc > chi + 1e-6 || chi > qmi + 1e-6) ++violations;
  }
  return {"information_hierarchy", violations == 0, "max excess " + sci(std::max(worst, 0.0))};
}

CheckResult mixture_reconstruction(Rng& rng) {
  double worst = 0.0;
  const auto rho = random_two_qubit(rng);
  const std::vector<std::size_t> f{1};
  const Matrix rho_f = partial_trace_factors(rho, f).matrix();
  for (int trial = 0; trial < 100; ++trial) {
    const auto cf = condition_on_system(rho, random_basis(rng));
    Matrix sum = Matrix::Zero(2, 2);
    for (int a = 0; a < 2; ++a) {
      if (cf.states[a]) sum += cf.probs[a] * cf.states[a]->matrix();
    }
    worst = std::max(worst, (sum - rho_f).cwiseAbs().maxCoeff());
  }
  return {"mixture_reconstruction", worst <= 1e-10, "max error " + sci(worst)};
}

CheckResult evolution_invariants() {
  double unitarity = 0.0;
  double norm = 0.0;
  const ModelParams params{0.1, 0.1, 0.7, 3};
  const Matrix u = propagator(build_hamiltonian(params), 3.7);
  unitarity = (u.adjoint() * u - identity(u.rows())).cwiseAbs().maxCoeff();
  const auto traj = evolve_trajectory(params, InitialScenario::amplitude(0.3),
                                      uniform_time_grid(0.1, 50, 2.0 * std::numbers::pi));
  for (const auto& psi : traj.states) norm = std::max(norm, std::abs(psi.amplitudes().norm() - 1.0));
  const double comm0 = commutator_norm({0.1, 0.1, 0.0, 3});
  const bool ok = unitarity <= 1e-10 && norm <= 1e-10 && comm0 <= 1e-12;
  return {"evolution_invariants", ok,
          "unitarity " + sci(unitarity) + ", norm " + sci(norm) + ", [H_S,H_I](p=0) " + sci(comm0)};
}

CheckResult partial_trace_invariants(Rng& rng) {
  double worst = 0.0;
  const auto layout = SubsystemLayout::system_environment(3);
  const DensityMatrix rho(random_density(rng, 16, 3), layout);
  for (std::vector<std::size_t> keep : {std::vector<std::size_t>{0}, {1, 3}, {0, 2, 3}}) {
    const auto red = partial_trace_factors(rho, keep);
    worst = std::max(worst, std::abs(red.matrix().trace() - 1.0));
    worst = std::max(worst, (red.matrix() - red.matrix().adjoint()).cwiseAbs().maxCoeff());
  }
  return {"partial_trace_invariants", worst <= 1e-10, "max error " + sci(worst)};
}

CheckResult sbs_fixed_point() {
  // p|ψ0><ψ0| ⊗ R0 ⊗ R0' + (1 − p)|ψ1><ψ1| ⊗ R1 ⊗ R1' with orthogonal R's.
  const MeasurementBasis basis{1.1, 0.4};
  const auto states = label_pointer_states(basis);
  const auto env = [](int a) {
    Matrix r = Matrix::Zero(2, 2);
    r(a, a) = 1.0;
    return r;
  };
  const double p0 = 0.35;
  Matrix rho = Matrix::Zero(8, 8);
  for (int i = 0; i < 2; ++i) {
    const Vector v = states[i].amplitudes();
    const Matrix ps = v * v.adjoint();
    rho += (i == 0 ? p0 : 1.0 - p0) * kron(kron(ps, env(i)), env(1 - i));
  }
  const DensityMatrix joint(rho, SubsystemLayout::system_environment(2));
  const auto report = sbs_decompose(joint, states, 1);
  const auto extracted = extract_pointer_basis(joint);
  double fid = 0.0;
  if (extracted) {
    fid = std::min(fidelity_pure(extracted->states[0], states[0]), fidelity_pure(extracted->states[1], states[1]));
  }
  const bool ok = report.reconstruction_error < 1e-10 && fid >= 1.0 - 1e-6;
  return {"sbs_fixed_point", ok, "reconstruction " + sci(report.reconstruction_error) + ", basis fidelity " +
                                     std::to_string(fid)};
}

CheckResult worker_determinism(int workers) {
  SweepSpec spec;
  spec.figure = "selftest";
  spec.layout = "series";
  spec.panels = {{"", {InitialScenario::circle_left()}, {0.0, 1.0}, {0.1}, {0.1}, {3}}};
  spec.time_grid.points = 12;
  spec.quantities = {Quantity::kEntropyS, Quantity::kChiE1, Quantity::kRedundancy};
  SweepOptions one;
  one.workers = 1;
  SweepOptions many;
  many.workers = std::max(2, workers);
  const bool ok = format_table(run_sweep(spec, one)) == format_table(run_sweep(spec, many));
  return {"worker_determinism", ok, ok ? "identical tables" : "tables differ"};
}

}  // namespace

bool SelftestReport::all_passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

std::vector<std::string> SelftestReport::failures() const {
  std::vector<std::string> out;
  for (const auto& c : checks) {
    if (!c.passed) out.push_back(c.name);
  }
  return out;
}

SelftestReport run_selftest(const SelftestOptions& options) {
  Rng rng(options.seed);
  SelftestReport report;
  const std::vector<std::pair<std::string, std::function<CheckResult()>>> checks{
      {"dephasing_coherence_oracle", [] { return dephasing_oracle(); }},
      {"chi_e1_quarter_period", [] { return quarter_period_chi(); }},
      {"entropy_reference", [&] { return entropy_reference(rng, options.entropy_log_base); }},
      {"redundancy_brute_oracle", [] { return redundancy_oracle(); }},
      {"holevo_optimizer_vs_grid", [&] { return optimizer_vs_grid(rng); }},
      {"information_hierarchy", [&] { return information_hierarchy(rng); }},
      {"mixture_reconstruction", [&] { return mixture_reconstruction(rng); }},
      {"evolution_invariants", [] { return evolution_invariants(); }},
      {"partial_trace_invariants", [&] { return partial_trace_invariants(rng); }},
      {"sbs_fixed_point", [] { return sbs_fixed_point(); }},
      {"worker_determinism", [&] { return worker_determinism(options.workers); }},
  };
  for (const auto& [name, check] : checks) {
    try {
      report.checks.push_back(check());
    } catch (const std::exception& e) {
      report.checks.push_back({name, false, std::string("exception: ") + e.what()});
    }
  }
  return report;
}

void print_report(const SelftestReport& report, std::ostream& out) {
  for (const auto& c : report.checks) {
    out << (c.passed ? "PASS" : "FAIL") << "  " << std::left << std::setw(28) << c.name << c.detail << "\n";
  }
  const auto failed = report.failures();
  if (failed.empty()) {
    out << "selftest: all " << report.checks.size() << " checks passed\n";
  } else {
    out << "selftest: " << failed.size() << " of " << report.checks.size() << " checks failed:";
    for (const auto& name : failed) out << " " << name;
    out << "\n";
  }
}

}  // namespace qdarwin::cli
