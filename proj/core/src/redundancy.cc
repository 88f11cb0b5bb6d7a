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

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

#include "qdarwin/parallel.h"

namespace qdarwin {

namespace {

// Slack around the threshold inside which the bounds are not trusted and the
// full optimization decides.
constexpr double kBoundMargin = 1e-9;

// Access to fraction ensembles of one joint state, by density matrix or by
// pure state vector.
class InfoSource {
 public:
  virtual ~InfoSource() = default;
  virtual int env_size() const = 0;
  virtual double system_entropy() const = 0;
  virtual BranchEnsemble ensemble(const std::vector<std::size_t>& fraction) const = 0;
  virtual DensityMatrix system_and(std::size_t env_factor) const = 0;
};

std::vector<std::size_t> with_system(const std::vector<std::size_t>& fraction) {
  std::vector<std::size_t> keep{0};
  keep.insert(keep.end(), fraction.begin(), fraction.end());
  return keep;
}

class DensitySource final : public InfoSource {
 public:
  explicit DensitySource(const DensityMatrix& rho) : rho_(rho) {
    if (rho.layout().size() < 2 || rho.layout().dim(0) != 2) {
      throw std::invalid_argument("redundancy: first factor must be the system qubit");
    }
  }
  int env_size() const override { return static_cast<int>(rho_.layout().size()) - 1; }
  double system_entropy() const override {
    const std::vector<std::size_t> sys{0};
    return entropy(partial_trace_factors(rho_, sys));
  }
  BranchEnsemble ensemble(const std::vector<std::size_t>& fraction) const override {
    return BranchEnsemble::from_density(partial_trace_factors(rho_, with_system(fraction)));
  }
  DensityMatrix system_and(std::size_t env_factor) const override {
    const std::vector<std::size_t> keep{0, env_factor};
    return partial_trace_factors(rho_, keep);
  }

 private:
  const DensityMatrix& rho_;
};

class PureSource final : public InfoSource {
 public:
  explicit PureSource(const StateVector& psi) : psi_(psi) {
    if (psi.layout().size() < 2 || psi.layout().dim(0) != 2) {
      throw std::invalid_argument("redundancy: first factor must be the system qubit");
    }
  }
  int env_size() const override { return static_cast<int>(psi_.layout().size()) - 1; }
  double system_entropy() const override {
    const std::vector<std::size_t> sys{0};
    return entropy(reduced_state(psi_, sys));
  }
  BranchEnsemble ensemble(const std::vector<std::size_t>& fraction) const override {
    return BranchEnsemble::from_pure(psi_, fraction);
  }
  DensityMatrix system_and(std::size_t env_factor) const override {
    const std::vector<std::size_t> keep{0, env_factor};
    return reduced_state(psi_, keep);
  }

 private:
  const StateVector& psi_;
};

bool uses_two_sided(const InfoSource& src, const std::vector<std::size_t>& fraction,
                    const RedundancyConfig& config) {
  (void)src;
  return config.quantifier == Quantifier::kTwoSided && fraction.size() == 1;
}

double probe_lower_bound(const BranchEnsemble& ens) {
  return std::max({ens.chi(MeasurementBasis::z()), ens.chi(MeasurementBasis::x()),
                   ens.chi(MeasurementBasis::y())});
}

// Full information value of one fraction under the configured quantifier.
double full_information(const InfoSource& src, const std::vector<std::size_t>& fraction,
                        const BranchEnsemble& ens, const RedundancyConfig& config) {
  if (uses_two_sided(src, fraction, config)) {
    const DensityMatrix rho = src.system_and(fraction.front());
    if (rho.dim() == 4) {
      return accessible_mi_two_sided(rho, config.two_sided);
    }
  }
  const SphereSearchResult r =
      maximize_on_sphere([&](const MeasurementBasis& b) { return ens.chi(b); }, config.search);
  return std::max({r.value, probe_lower_bound(ens), 0.0});
}

// Threshold test, short-circuited by certified bounds where they decide it.
bool fraction_passes(const InfoSource& src, const std::vector<std::size_t>& fraction,
                     double threshold, const RedundancyConfig& config) {
  const BranchEnsemble ens = src.ensemble(fraction);
  const double upper =
      std::min({ens.system_entropy(), ens.fraction_entropy(), ens.quantum_mi()});
  if (upper < threshold - kBoundMargin) {
    return false;
  }
  if (!uses_two_sided(src, fraction, config) && probe_lower_bound(ens) >= threshold + kBoundMargin) {
    return true;
  }
  return full_information(src, fraction, ens, config) >= threshold;
}

RedundancyResult contiguous_redundancy(const InfoSource& src, const RedundancyConfig& config,
                                       bool with_info) {
  config.validate();
  const int n = src.env_size();
  RedundancyResult out;
  out.system_entropy = src.system_entropy();
  if (out.system_entropy < config.min_entropy) {
    return out;
  }
  out.defined = true;
  const double threshold = config.threshold(out.system_entropy);

  std::vector<int> sizes;
  for (int k = 1; k <= n / 2; ++k) {
    sizes.push_back(k);
  }
  sizes.push_back(n);  // every k > n/2 yields the single whole-environment fraction
  for (int k : sizes) {
    const auto fractions = contiguous_fractions(n, k);
    const bool all_pass = std::all_of(fractions.begin(), fractions.end(), [&](const auto& f) {
      return fraction_passes(src, f, threshold, config);
    });
    if (!all_pass) {
      continue;
    }
    out.r = static_cast<int>(fractions.size());
    out.fraction_size = k;
    out.fractions = fractions;
    if (with_info) {
      for (const auto& f : fractions) {
        out.per_fraction_info.push_back(full_information(src, f, src.ensemble(f), config));
      }
    }
    return out;
  }
  return out;
}

}  // namespace

std::string to_string(ThresholdMode mode) {
  return mode == ThresholdMode::kLiteral ? "literal" : "strict";
}

std::string to_string(Quantifier q) { return q == Quantifier::kHolevo ? "holevo" : "two-sided"; }

std::optional<ThresholdMode> parse_threshold_mode(std::string_view s) {
  if (s == "literal") return ThresholdMode::kLiteral;
  if (s == "strict") return ThresholdMode::kStrict;
  return std::nullopt;
}

std::optional<Quantifier> parse_quantifier(std::string_view s) {
  if (s == "holevo") return Quantifier::kHolevo;
  if (s == "two-sided" || s == "two_sided") return Quantifier::kTwoSided;
  return std::nullopt;
}

void RedundancyConfig::validate() const {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("delta out of range (0, 1)");
  }
  if (!(min_entropy >= 0.0)) {
    throw std::invalid_argument("min_entropy must be nonnegative");
  }
}

double RedundancyConfig::threshold(double system_entropy) const {
  const double fraction = threshold_mode == ThresholdMode::kLiteral ? 1.0 - delta : delta;
  return fraction * system_entropy;
}

std::vector<std::vector<std::size_t>> contiguous_fractions(int n, int k) {
  if (n < 1 || k < 1 || k > n) {
    throw std::invalid_argument("contiguous_fractions: need 1 ≤ k ≤ n");
  }
  const int r = n / k;
  std::vector<std::vector<std::size_t>> out(static_cast<std::size_t>(r));
  for (int q = 0; q < n; ++q) {
    const int block = std::min(q / k, r - 1);
    out[static_cast<std::size_t>(block)].push_back(static_cast<std::size_t>(q + 1));
  }
  return out;
}

RedundancyResult redundancy(const DensityMatrix& rho_SE, const RedundancyConfig& config) {
  return contiguous_redundancy(DensitySource(rho_SE), config, true);
}

RedundancyResult redundancy(const StateVector& psi, const RedundancyConfig& config) {
  return contiguous_redundancy(PureSource(psi), config, true);
}

RedundancyResult redundancy_decision(const StateVector& psi, const RedundancyConfig& config) {
  return contiguous_redundancy(PureSource(psi), config, false);
}

RedundancyResult redundancy_brute_oracle(const DensityMatrix& rho_SE, const RedundancyConfig& config) {
  config.validate();
  const DensitySource src(rho_SE);
  const int n = src.env_size();
  if (n > kBruteOracleMaxQubits) {
    throw std::invalid_argument("redundancy_brute_oracle: at most 6 environment qubits");
  }
  RedundancyResult out;
  out.system_entropy = src.system_entropy();
  if (out.system_entropy < config.min_entropy) {
    return out;
  }
  out.defined = true;
  const double threshold = config.threshold(out.system_entropy);

  auto factors_of = [](unsigned mask) {
    std::vector<std::size_t> f;
    for (std::size_t q = 0; mask != 0; ++q, mask >>= 1) {
      if (mask & 1u) {
        f.push_back(q + 1);
      }
    }
    return f;
  };
  std::map<unsigned, double> info;  // every nonempty subset, full optimization
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    const auto f = factors_of(mask);
    info[mask] = full_information(src, f, src.ensemble(f), config);
  }

  // Set partitions as restricted growth strings: block[q] ≤ 1 + max(block[0..q)).
  std::vector<int> block(static_cast<std::size_t>(n), 0);
  std::vector<unsigned> best_masks;
  std::function<void(int, int)> visit = [&](int q, int blocks) {
    if (q == n) {
      std::vector<unsigned> masks(static_cast<std::size_t>(blocks), 0u);
      for (int i = 0; i < n; ++i) {
        masks[static_cast<std::size_t>(block[static_cast<std::size_t>(i)])] |= 1u << i;
      }
      const bool ok = std::all_of(masks.begin(), masks.end(),
                                  [&](unsigned m) { return info.at(m) >= threshold; });
      if (ok && masks.size() > best_masks.size()) {
        best_masks = masks;
      }
      return;
    }
    for (int b = 0; b <= blocks; ++b) {
      block[static_cast<std::size_t>(q)] = b;
      visit(q + 1, std::max(blocks, b + 1));
    }
  };
  visit(0, 0);

  out.r = static_cast<int>(best_masks.size());
  int smallest = n;
  for (unsigned m : best_masks) {
    auto f = factors_of(m);
    smallest = std::min(smallest, static_cast<int>(f.size()));
    out.per_fraction_info.push_back(info.at(m));
    out.fractions.push_back(std::move(f));
  }
  out.fraction_size = best_masks.empty() ? 0 : smallest;
  return out;
}

RedundancySample evaluate_sample(const StateVector& psi, double time, const RedundancyConfig& config) {
  RedundancySample s;
  s.time = time;
  s.red = redundancy_decision(psi, config);
  const std::vector<std::size_t> e1{1};
  s.chi_e1 = holevo_chi(psi, e1, config.search).value;
  return s;
}

std::vector<RedundancySample> scan_redundancy(const Trajectory& trajectory,
                                              const RedundancyConfig& config, int workers) {
  config.validate();
  std::vector<RedundancySample> out(trajectory.states.size());
  parallel_for(out.size(), workers, [&](std::size_t k) {
    out[k] = evaluate_sample(trajectory.states[k], trajectory.times[k], config);
  });
  return out;
}

std::optional<RedundancyPeak> select_redundancy_peak(std::span<const RedundancySample> samples) {
  std::size_t first = 0;
  while (first < samples.size() && !samples[first].red.defined) {
    ++first;
  }
  if (first == samples.size()) {
    return std::nullopt;
  }
  std::size_t end = first;
  while (end < samples.size() && samples[end].red.defined) {
    ++end;
  }
  std::size_t best = first;
  for (std::size_t k = first + 1; k < end; ++k) {
    const auto& c = samples[k];
    const auto& b = samples[best];
    if (c.red.r > b.red.r || (c.red.r == b.red.r && c.chi_e1 > b.chi_e1 + tol::kTie)) {
      best = k;
    }
  }
  return RedundancyPeak{best, samples[best].time, samples[best].red, samples[best].chi_e1};
}

std::optional<RedundancyPeak> max_redundancy_time(const Trajectory& trajectory,
                                                  const RedundancyConfig& config, int workers) {
  if (trajectory.states.empty()) {
    throw std::invalid_argument("max_redundancy_time: empty trajectory");
  }
  const auto samples = scan_redundancy(trajectory, config, workers);
  auto peak = select_redundancy_peak(samples);
  if (peak) {
    peak->red = redundancy(trajectory.states[peak->index], config);
  }
  return peak;
}

}  // namespace qdarwin
