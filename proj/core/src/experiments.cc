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

#include "qdarwin/experiments.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "qdarwin/infotheory.h"
#include "qdarwin/parallel.h"
#include "qdarwin/sbs.h"
#include "qdarwin/tolerances.h"

namespace qdarwin {

namespace {

struct PointParams {
  const SweepPanel* panel;
  InitialScenario scenario;
  ModelParams model;
};

std::vector<PointParams> expand_points(const SweepSpec& spec) {
  std::vector<PointParams> out;
  for (const auto& panel : spec.panels) {
    for (const auto& scenario : panel.scenarios) {
      for (double omega : panel.omega) {
        for (double gamma : panel.gamma) {
          for (int n : panel.n) {
            for (double p : panel.p) {
              out.push_back({&panel, scenario, ModelParams{omega, gamma, p, n}});
            }
          }
        }
      }
    }
  }
  return out;
}

void add_flag(SweepRecord& r, const std::string& reason) {
  r.flag += (r.flag.empty() ? "" : ";") + reason;
}

SweepRecord base_record(const SweepSpec& spec, const PointParams& pt, int index) {
  SweepRecord r;
  r.figure = spec.figure;
  r.panel = pt.panel->name;
  r.point = index;
  r.scenario = pt.scenario.describe();
  if (const auto* a = std::get_if<InitialScenario::Amplitude>(&pt.scenario.variant())) {
    r.x0 = a->x0;
  }
  if (const auto* ph = std::get_if<InitialScenario::Phase>(&pt.scenario.variant())) {
    r.phase_angle = std::arg(ph->phi);
  }
  r.omega = pt.model.omega;
  r.gamma = pt.model.gamma;
  r.p = pt.model.p;
  r.n = pt.model.n;
  r.delta = spec.redundancy.delta;
  r.sampling = to_string(spec.sampling);
  r.threshold_mode = to_string(spec.redundancy.threshold_mode);
  r.quantifier = to_string(spec.redundancy.quantifier);
  r.pointer_convention = kPointerConvention;
  r.time_selection = spec.sampling == Sampling::kSeries ? "grid" : "first_window_max_redundancy";
  r.grid_id = spec.grid_id();
  r.version = library_version();
  return r;
}

// Requested quantities of one joint state. `red` is reused when already known.
void fill_quantities(const SweepSpec& spec, const StateVector& psi, SweepRecord& r,
                     const RedundancyResult* known_red) {
  const std::vector<std::size_t> sys{0};
  const std::vector<std::size_t> e1{1};
  const double s = entropy(reduced_state(psi, sys));
  const bool informative = s >= spec.redundancy.min_entropy;
  if (!informative) {
    add_flag(r, "zero_system_entropy");
  }
  if (spec.wants(Quantity::kEntropyS)) {
    r.entropy_s = s;
  }
  if (spec.wants(Quantity::kChiE1)) {
    r.chi_e1 = holevo_chi(psi, e1, spec.redundancy.search).value;
    if (informative) {
      r.chi_e1_norm = *r.chi_e1 / s;
    }
  }
  if (spec.wants(Quantity::kAccMiE1)) {
    const std::vector<std::size_t> keep{0, 1};
    r.acc_mi_e1 = accessible_mi_two_sided(reduced_state(psi, keep), spec.redundancy.two_sided);
    if (informative) {
      r.acc_mi_e1_norm = *r.acc_mi_e1 / s;
    }
  }
  std::optional<RedundancyResult> red;
  if (known_red) {
    red = *known_red;
  } else if (spec.wants(Quantity::kRedundancy) || spec.wants(Quantity::kSbsReport)) {
    red = redundancy_decision(psi, spec.redundancy);
  }
  if (spec.wants(Quantity::kRedundancy) && red) {
    r.redundancy = red->r;
    r.fraction_size = red->fraction_size;
    r.redundancy_defined = red->defined;
    if (!red->defined) {
      add_flag(r, "redundancy_undefined");
    }
  }
  if (spec.wants(Quantity::kPointerFidelity) || spec.wants(Quantity::kSbsReport)) {
    const auto pointer = extract_pointer_basis(psi, spec.redundancy.search, true);
    if (!pointer) {
      add_flag(r, "pointer_undefined");
      return;
    }
    if (spec.wants(Quantity::kPointerFidelity)) {
      r.pointer_fidelity = std::norm(pointer->states[0][0]);
      r.pointer_theta = pointer->measurement.theta;
      r.pointer_phi = pointer->measurement.phi;
      if (!pointer->fraction_axis_deviation.empty()) {
        r.pointer_axis_deviation = *std::max_element(pointer->fraction_axis_deviation.begin(),
                                                     pointer->fraction_axis_deviation.end());
      }
    }
    if (spec.wants(Quantity::kSbsReport)) {
      // A pure global state keeps S–E coherences, so the structure is tested on S
      // plus the first half of the environment with the remainder traced out.
      const int n = static_cast<int>(psi.layout().size()) - 1;
      const int observed = std::max(1, n / 2);
      std::vector<std::size_t> keep(static_cast<std::size_t>(observed) + 1);
      std::iota(keep.begin(), keep.end(), 0);
      int size = red && red->defined && red->fraction_size > 0 ? red->fraction_size : 1;
      if (size > observed) size = 1;
      const SbsReport rep = sbs_decompose(reduced_state(psi, keep), pointer->states, size);
      r.sbs_reconstruction_error = rep.reconstruction_error;
      r.sbs_decoherence_residual = rep.decoherence_residual;
      if (rep.rank_deficient) {
        add_flag(r, "sbs_rank_deficient");
      } else {
        r.sbs_max_distinguishability = rep.max_distinguishability();
      }
      r.sbs_like = rep.sbs_like();
    }
  }
}

void report(const SweepOptions& options, const std::string& msg) {
  if (options.progress) {
    options.progress(msg);
  }
}

}  // namespace

std::string to_string(Quantity q) {
  switch (q) {
    case Quantity::kEntropyS: return "entropy_s";
    case Quantity::kChiE1: return "chi_e1";
    case Quantity::kAccMiE1: return "acc_mi_e1";
    case Quantity::kRedundancy: return "redundancy";
    case Quantity::kPointerFidelity: return "pointer_fidelity";
    case Quantity::kSbsReport: return "sbs_report";
  }
  return "?";
}

std::optional<Quantity> parse_quantity(std::string_view s) {
  for (Quantity q : {Quantity::kEntropyS, Quantity::kChiE1, Quantity::kAccMiE1, Quantity::kRedundancy,
                     Quantity::kPointerFidelity, Quantity::kSbsReport}) {
    if (to_string(q) == s) {
      return q;
    }
  }
  return std::nullopt;
}

std::string to_string(Sampling s) { return s == Sampling::kSeries ? "series" : "max_redundancy"; }

std::optional<Sampling> parse_sampling(std::string_view s) {
  if (s == "series") return Sampling::kSeries;
  if (s == "max_redundancy") return Sampling::kMaxRedundancy;
  return std::nullopt;
}

std::string library_version() { return QDARWIN_VERSION; }

void SweepSpec::validate() const {
  if (figure.empty()) {
    throw std::invalid_argument("figure: empty tag");
  }
  if (panels.empty()) {
    throw std::invalid_argument("panels: no panels");
  }
  if (quantities.empty()) {
    throw std::invalid_argument("quantities: empty set");
  }
  if (time_grid.points < 1) {
    throw std::invalid_argument("time_grid.points: empty time grid");
  }
  if (!(time_grid.gamma_t_max > 0.0) || !std::isfinite(time_grid.gamma_t_max)) {
    throw std::invalid_argument("time_grid.gamma_t_max: must be positive");
  }
  try {
    redundancy.validate();
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("redundancy.") + e.what());
  }
  for (std::size_t i = 0; i < panels.size(); ++i) {
    const auto& pn = panels[i];
    const std::string path = "panels[" + std::to_string(i) + "].";
    if (pn.scenarios.empty()) throw std::invalid_argument(path + "scenario: empty grid");
    if (pn.p.empty()) throw std::invalid_argument(path + "p: empty grid");
    if (pn.omega.empty()) throw std::invalid_argument(path + "omega: empty grid");
    if (pn.gamma.empty()) throw std::invalid_argument(path + "gamma: empty grid");
    if (pn.n.empty()) throw std::invalid_argument(path + "n: empty grid");
    for (double p : pn.p) {
      if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument(path + "p: out of range [0, 1]");
    }
    for (double w : pn.omega) {
      if (!(w > 0.0)) throw std::invalid_argument(path + "omega: must be positive");
    }
    for (double g : pn.gamma) {
      if (!(g > 0.0)) throw std::invalid_argument(path + "gamma: must be positive");
    }
    for (int n : pn.n) {
      if (n < 1 || n > 10) throw std::invalid_argument(path + "n: must be in [1, 10]");
    }
  }
}

std::string SweepSpec::grid_id() const {
  std::ostringstream out;
  out << "t" << time_grid.points << "_gt" << format_number(time_grid.gamma_t_max) << "_b"
      << redundancy.search.grid_theta << "x" << redundancy.search.grid_phi;
  return out.str();
}

bool SweepSpec::wants(Quantity q) const {
  return std::find(quantities.begin(), quantities.end(), q) != quantities.end();
}

std::vector<SweepRecord> run_sweep(const SweepSpec& spec, const SweepOptions& options) {
  spec.validate();
  const auto points = expand_points(spec);
  std::vector<SweepRecord> rows;
  for (std::size_t k = 0; k < points.size(); ++k) {
    const PointParams& pt = points[k];
    const int index = static_cast<int>(k);
    {
      std::ostringstream msg;
      msg << spec.figure << ": point " << k + 1 << "/" << points.size() << " ("
          << pt.scenario.describe() << ", omega=" << pt.model.omega << ", gamma=" << pt.model.gamma
          << ", p=" << pt.model.p << ", n=" << pt.model.n << ")";
      report(options, msg.str());
    }
    const auto times = uniform_time_grid(pt.model.gamma, spec.time_grid.points, spec.time_grid.gamma_t_max);
    const Trajectory traj = evolve_trajectory(pt.model, pt.scenario, times);

    if (spec.sampling == Sampling::kSeries) {
      std::vector<SweepRecord> series(traj.times.size(), base_record(spec, pt, index));
      parallel_for(series.size(), options.workers, [&](std::size_t t) {
        series[t].time = traj.times[t];
        fill_quantities(spec, traj.states[t], series[t], nullptr);
      });
      rows.insert(rows.end(), series.begin(), series.end());
      continue;
    }

    SweepRecord row = base_record(spec, pt, index);
    const auto samples = scan_redundancy(traj, spec.redundancy, options.workers);
    const auto peak = select_redundancy_peak(samples);
    if (!peak) {
      add_flag(row, "no_redundancy_peak");
      row.redundancy_defined = false;
      rows.push_back(std::move(row));
      continue;
    }
    row.time = peak->time;
    fill_quantities(spec, traj.states[peak->index], row, &peak->red);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<SweepSpec> builtin_figures() {
  const std::vector<double> p_fine{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  const InitialScenario circle = InitialScenario::circle_left();

  SweepSpec fig1;
  fig1.figure = "fig1";
  fig1.panels = {{"", {circle}, {0.0, 0.25, 0.5, 0.75, 1.0}, {0.1}, {0.1}, {8}}};
  fig1.quantities = {Quantity::kEntropyS, Quantity::kChiE1, Quantity::kAccMiE1};
  fig1.sampling = Sampling::kSeries;

  SweepSpec fig2;
  fig2.figure = "fig2";
  fig2.panels = {{"", {circle}, p_fine, {0.1}, {0.1}, {8}}};
  fig2.quantities = {Quantity::kEntropyS, Quantity::kRedundancy, Quantity::kChiE1, Quantity::kAccMiE1};
  fig2.sampling = Sampling::kMaxRedundancy;

  // ω/γ ∈ {0.1, 1, 10} at γ = 0.1.
  SweepSpec fig3;
  fig3.figure = "fig3";
  fig3.panels = {{"", {circle}, {1.0}, {0.01, 0.1, 1.0}, {0.1}, {8}}};
  fig3.quantities = {Quantity::kEntropyS, Quantity::kChiE1, Quantity::kAccMiE1};
  fig3.sampling = Sampling::kSeries;

  // ω/γ ∈ {0.1, 0.2, 0.5, 1, 2, 5, 10} at γ = 0.1.
  SweepSpec fig4;
  fig4.figure = "fig4";
  fig4.panels = {{"", {circle}, {1.0}, {0.01, 0.02, 0.05, 0.1, 0.2, 0.5, 1.0}, {0.1}, {8}}};
  fig4.quantities = {Quantity::kEntropyS, Quantity::kRedundancy, Quantity::kChiE1, Quantity::kAccMiE1};
  fig4.sampling = Sampling::kMaxRedundancy;

  SweepSpec fig5;
  fig5.figure = "fig5";
  std::vector<InitialScenario> amplitudes;
  for (double x0 : {0.5, 0.6, 0.7, 0.8, 0.9}) {
    amplitudes.push_back(InitialScenario::amplitude(x0));
  }
  std::vector<InitialScenario> phases;
  for (int k = 0; k < 8; ++k) {
    phases.push_back(InitialScenario::phase_angle(2.0 * std::numbers::pi * k / 8.0));
  }
  fig5.panels = {
      {"a", amplitudes, p_fine, {0.1}, {0.1}, {6}},
      {"b", phases, p_fine, {0.1}, {0.1}, {6}},
      // ω/γ ∈ {0.1, 0.5, 1, 2, 10} at γ = 0.1.
      {"c", {circle}, p_fine, {0.01, 0.05, 0.1, 0.2, 1.0}, {0.1}, {6}},
  };
  fig5.quantities = {Quantity::kEntropyS, Quantity::kRedundancy, Quantity::kChiE1,
                     Quantity::kPointerFidelity, Quantity::kSbsReport};
  fig5.sampling = Sampling::kMaxRedundancy;

  std::vector<SweepSpec> all{fig1, fig2, fig3, fig4, fig5};
  for (auto& s : all) {
    s.layout = s.figure;
  }
  return all;
}

std::optional<SweepSpec> builtin_figure(std::string_view tag) {
  for (auto& s : builtin_figures()) {
    if (s.figure == tag) {
      return s;
    }
  }
  return std::nullopt;
}

}  // namespace qdarwin
