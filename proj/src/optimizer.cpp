// Copyright 2026 The gqfi Authors
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

#include "gqfi/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <random>
#include <thread>

#include <fmt/format.h>

#include "gqfi/nelder_mead.hpp"

namespace gqfi {

namespace {

constexpr double kPi = std::numbers::pi;

double sq(double x) { return x * x; }

double halton(std::uint64_t index, std::uint64_t base) {
  double f = 1.0;
  double r = 0.0;
  while (index > 0) {
    f /= static_cast<double>(base);
    r += f * static_cast<double>(index % base);
    index /= base;
  }
  return r;
}

constexpr std::uint64_t kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

struct ModeEnergy {
  double lambda = 1.0;
  double r = 0.0;
  double d = 0.0;
  ModeSplit split;
};

// sinh^2 r = cos^2(a) n_k / lambda keeps the sign of cos(a) on r, so the map is smooth.
ModeEnergy mode_energy(double n_k, double n_total, double a, double b) {
  ModeEnergy m;
  const double n_d = n_k * sq(std::sin(a)) * sq(std::cos(b));
  const double n_th = n_k * sq(std::sin(a)) * sq(std::sin(b));
  m.lambda = 1.0 + 2.0 * n_th;
  m.r = std::asinh(std::cos(a) * std::sqrt(n_k / m.lambda));
  m.d = std::sqrt(n_d);
  m.split = {n_k, n_d / n_total, n_th / n_total, (n_k - n_d - n_th) / n_total};
  return m;
}

ModeEnergy coherent_mode(double n_k, double n_total) { return mode_energy(n_k, n_total, kPi / 2, 0.0); }
ModeEnergy squeezed_mode(double n_k, double n_total) { return mode_energy(n_k, n_total, 0.0, 0.0); }

void check_family(const ChannelSpec& channel, ProbeFamily family) {
  const int m = channel.modes();
  if (family != ProbeFamily::kOneMode && m != 2) {
    throw Error(ErrorKind::kInvalidFamily,
                fmt::format("two-mode probe family needs a two-mode channel, got {} modes", m));
  }
  if (family == ProbeFamily::kOneMode && m > 2) {
    throw Error(ErrorKind::kInvalidFamily, fmt::format("one-mode probe family on a {}-mode channel", m));
  }
}

void check_budget(const EnergyBudget& budget) {
  if (!std::isfinite(budget.n_total) || budget.n_total < 0.0) {
    throw Error(ErrorKind::kInvalidInput, fmt::format("energy budget {} is not a finite non-negative number",
                                                      budget.n_total));
  }
  if (budget.n_total == 0.0) throw Error(ErrorKind::kDegenerateBudget, "energy budget is zero");
}

void check_config(const OptimizerConfig& c) {
  if (c.restarts < 1 || c.max_iter < 1 || !(c.tol > 0.0)) {
    throw Error(ErrorKind::kInvalidInput, "optimizer needs restarts >= 1, max_iter >= 1 and tol > 0");
  }
}

// Indices of energy-like coordinates, which live naturally on [0, pi/2].
bool is_energy_coordinate(ProbeFamily family, EnergyStrategy strategy, int k) {
  if (family == ProbeFamily::kOneMode) return strategy == EnergyStrategy::kFree && k < 2;
  // Two-mode families: mode split first, then (a, b) per mode when free.
  if (strategy == EnergyStrategy::kFree) return k < 5;
  return k == 0;
}

// Angles at which cataloged channels reach their Heisenberg limit, with all
// energy in squeezing split evenly between modes.
struct Recipe {
  double theta = 0.0;
  double psi = 0.0;
  double phi1 = 0.0;
  double phi2 = 0.0;
};

std::optional<Recipe> recipe_for(const ChannelSpec& channel, ProbeFamily family) {
  const int m = channel.modes();
  if (family == ProbeFamily::kOneMode && m == 1) {
    switch (channel.kind) {
      case ChannelKind::kPhase: return Recipe{};
      case ChannelKind::kSqueezeMode1: return Recipe{kPi / 4 - channel.chi / 2};
      case ChannelKind::kCombinedOneMode: return Recipe{-channel.chi / 2 - kPi / 4};
      default: return std::nullopt;
    }
  }
  if (family == ProbeFamily::kTwoModeRestricted && m == 2) {
    switch (channel.kind) {
      case ChannelKind::kBeamsplit: return Recipe{kPi / 4, kPi / 4, -kPi / 2, 0.0};
      case ChannelKind::kTwoModeSqueeze: return Recipe{0.0, 0.0, kPi / 2 - channel.chi, 0.0};
      default: return std::nullopt;
    }
  }
  if (family == ProbeFamily::kTwoModeSeparable && m == 2) {
    switch (channel.kind) {
      // Both channels peak at phi1 - phi2 + chi = pi/2 with r1 = r2.
      case ChannelKind::kBeamsplit:
      case ChannelKind::kTwoModeSqueeze: return Recipe{0.0, 0.0, kPi / 2 - channel.chi, 0.0};
      default: return std::nullopt;
    }
  }
  return std::nullopt;
}

std::vector<double> recipe_coordinates(const Recipe& r, ProbeFamily family, EnergyStrategy strategy) {
  if (family == ProbeFamily::kOneMode) {
    switch (strategy) {
      case EnergyStrategy::kFree: return {0.0, 0.0, r.theta, 0.0};
      case EnergyStrategy::kSqueezeOnly: return {r.theta};
      case EnergyStrategy::kCoherentOnly: return {0.0};
    }
  }
  if (family == ProbeFamily::kTwoModeSeparable) {
    switch (strategy) {
      case EnergyStrategy::kFree: return {kPi / 4, 0.0, 0.0, 0.0, 0.0, r.phi1, r.phi2, 0.0, 0.0};
      case EnergyStrategy::kSqueezeOnly: return {kPi / 4, r.phi1, r.phi2};
      case EnergyStrategy::kCoherentOnly: return {kPi / 4, 0.0, 0.0};
    }
  }
  switch (strategy) {
    case EnergyStrategy::kFree: return {kPi / 4, 0.0, 0.0, 0.0, 0.0, r.theta, r.psi, r.phi1, r.phi2, 0.0, 0.0};
    case EnergyStrategy::kSqueezeOnly: return {kPi / 4, r.theta, r.psi, r.phi1, r.phi2};
    case EnergyStrategy::kCoherentOnly: return {kPi / 4, 0.0, 0.0};
  }
  return {};
}

struct StartOutcome {
  bool aborted = false;
  bool converged = false;
  double qfi = -1.0;
  std::vector<double> x;
  std::vector<TracePoint> trace;
  std::string message;
};

StartOutcome run_start(const ChannelSpec& channel, ProbeFamily family, const EnergyBudget& budget,
                       const OptimizerConfig& config, int start, std::vector<double> x0) {
  StartOutcome out;
  const int modes = channel.modes();
  auto objective = [&](const std::vector<double>& x) {
    const double h = qfi_unitary(decode_candidate(family, budget, modes, x).probe(), channel).total;
    if (!std::isfinite(h)) throw Error(ErrorKind::kNumericalInstability, "non-finite QFI");
    return -h;
  };

  double best = -INFINITY;
  int used = 0;
  auto on_iter = [&](int it, double f) {
    if (-f > best) {
      best = -f;
      out.trace.push_back({start, used + it, best});
    }
  };

  try {
    NelderMeadOptions opt;
    opt.max_iter = config.max_iter;
    opt.x_tol = config.tol;
    auto res = nelder_mead(objective, std::move(x0), opt, on_iter);
    used = res.iterations;
    // Polish from the best vertex with a smaller simplex while it keeps paying off.
    for (int polish = 0; polish < 2 && used < config.max_iter; ++polish) {
      opt.step = 0.05;
      opt.max_iter = config.max_iter - used;
      auto again = nelder_mead(objective, res.x, opt, on_iter);
      used += again.iterations;
      const bool gained = again.fx < res.fx - 1e-13 * std::abs(res.fx);
      if (again.fx <= res.fx) res = std::move(again);
      if (!gained) break;
    }
    out.qfi = -res.fx;
    out.x = std::move(res.x);
    out.converged = res.converged;
    if (out.trace.empty() || out.trace.back().qfi < out.qfi) out.trace.push_back({start, used, out.qfi});
  } catch (const Error& e) {
    out.aborted = true;
    out.message = fmt::format("start {} aborted: {}", start, e.what());
  }
  return out;
}

std::vector<std::vector<double>> starting_points(const ChannelSpec& channel, ProbeFamily family,
                                                 EnergyStrategy strategy, const OptimizerConfig& config) {
  const int dim = search_dimension(family, strategy);
  std::vector<std::vector<double>> pts;
  if (config.warm_starts) {
    if (auto r = recipe_for(channel, family)) pts.push_back(recipe_coordinates(*r, family, strategy));
  }
  for (int s = 0; static_cast<int>(pts.size()) < config.restarts; ++s) {
    std::mt19937_64 gen(config.seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(s + 1));
    std::uniform_real_distribution<double> jitter(-0.05, 0.05);
    std::vector<double> x(dim);
    for (int k = 0; k < dim; ++k) {
      const double h = halton(static_cast<std::uint64_t>(s + 1), kPrimes[k]);
      const double span = is_energy_coordinate(family, strategy, k) ? kPi / 2 : 2 * kPi;
      x[k] = span * h + jitter(gen);
    }
    pts.push_back(std::move(x));
  }
  return pts;
}

}  // namespace

std::string_view to_string(ProbeFamily f) {
  switch (f) {
    case ProbeFamily::kOneMode: return "one-mode";
    case ProbeFamily::kTwoModeRestricted: return "two-mode-restricted";
    case ProbeFamily::kTwoModeSeparable: return "two-mode-separable";
  }
  return "unknown";
}

std::string_view to_string(EnergyStrategy s) {
  switch (s) {
    case EnergyStrategy::kFree: return "free";
    case EnergyStrategy::kCoherentOnly: return "coherent-only";
    case EnergyStrategy::kSqueezeOnly: return "squeeze-only";
  }
  return "unknown";
}

ProbeFamily parse_probe_family(std::string_view name) {
  if (name == "one-mode") return ProbeFamily::kOneMode;
  if (name == "two-mode-restricted" || name == "two-mode") return ProbeFamily::kTwoModeRestricted;
  if (name == "two-mode-separable") return ProbeFamily::kTwoModeSeparable;
  throw Error(ErrorKind::kInvalidInput, fmt::format("unknown probe family '{}'", name));
}

EnergyStrategy parse_energy_strategy(std::string_view name) {
  if (name == "free") return EnergyStrategy::kFree;
  if (name == "coherent-only" || name == "coherent") return EnergyStrategy::kCoherentOnly;
  if (name == "squeeze-only" || name == "optimal-squeezing") return EnergyStrategy::kSqueezeOnly;
  throw Error(ErrorKind::kInvalidInput, fmt::format("unknown energy strategy '{}'", name));
}

ProbeState ProbeCandidate::probe() const {
  if (family != ProbeFamily::kOneMode) return make_two_mode_probe(two);
  return modes == 1 ? make_one_mode_probe(one) : make_one_mode_probe_embedded(one);
}

int search_dimension(ProbeFamily family, EnergyStrategy strategy) {
  if (family == ProbeFamily::kOneMode) return strategy == EnergyStrategy::kFree ? 4 : 1;
  const bool separable = family == ProbeFamily::kTwoModeSeparable;
  switch (strategy) {
    case EnergyStrategy::kFree: return separable ? 9 : 11;
    case EnergyStrategy::kCoherentOnly: return 3;
    case EnergyStrategy::kSqueezeOnly: return separable ? 3 : 5;
  }
  return 0;
}

ProbeCandidate decode_candidate(ProbeFamily family, const EnergyBudget& budget, int channel_modes,
                                const std::vector<double>& x) {
  const int dim = search_dimension(family, budget.strategy);
  if (static_cast<int>(x.size()) != dim) {
    throw Error(ErrorKind::kInvalidDimension,
                fmt::format("expected {} search coordinates, got {}", dim, x.size()));
  }
  const double n = budget.n_total;
  const auto strategy = budget.strategy;
  ProbeCandidate c;
  c.family = family;
  c.modes = channel_modes;

  auto energy = [&](double n_k, const double* ab) {
    switch (strategy) {
      case EnergyStrategy::kFree: return mode_energy(n_k, n, ab[0], ab[1]);
      case EnergyStrategy::kCoherentOnly: return coherent_mode(n_k, n);
      case EnergyStrategy::kSqueezeOnly: return squeezed_mode(n_k, n);
    }
    return ModeEnergy{};
  };

  if (family == ProbeFamily::kOneMode) {
    const auto m = energy(n, x.data());
    c.one.lambda1 = m.lambda;
    c.one.r = m.r;
    c.one.d_mag = m.d;
    if (strategy == EnergyStrategy::kFree) {
      c.one.theta = x[2];
      c.one.phi_d = x[3];
    } else if (strategy == EnergyStrategy::kSqueezeOnly) {
      c.one.theta = x[0];
    } else {
      c.one.phi_d = x[0];
    }
    c.split = {m.split};
    if (channel_modes == 2) c.split.push_back({});
    return c;
  }

  const double n1 = n * sq(std::cos(x[0]));
  const double n2 = n * sq(std::sin(x[0]));
  const auto m1 = energy(n1, x.data() + 1);
  const auto m2 = energy(n2, x.data() + 3);
  auto& p = c.two;
  p.lambda1 = m1.lambda;
  p.lambda2 = m2.lambda;
  p.r1 = m1.r;
  p.r2 = m2.r;
  p.d1_mag = m1.d;
  p.d2_mag = m2.d;
  // The separable family pins theta = psi = 0 and drops both coordinates.
  const std::size_t shift = family == ProbeFamily::kTwoModeSeparable ? 2 : 0;
  switch (strategy) {
    case EnergyStrategy::kFree:
      if (shift == 0) {
        p.theta = x[5];
        p.psi = x[6];
      }
      p.phi1 = x[7 - shift];
      p.phi2 = x[8 - shift];
      p.phi_d1 = x[9 - shift];
      p.phi_d2 = x[10 - shift];
      break;
    case EnergyStrategy::kSqueezeOnly:
      if (shift == 0) {
        p.theta = x[1];
        p.psi = x[2];
      }
      p.phi1 = x[3 - shift];
      p.phi2 = x[4 - shift];
      break;
    case EnergyStrategy::kCoherentOnly:
      p.phi_d1 = x[1];
      p.phi_d2 = x[2];
      break;
  }
  c.split = {m1.split, m2.split};
  return c;
}

std::optional<ProbeCandidate> analytic_probe(const ChannelSpec& channel, ProbeFamily family, double n) {
  const auto r = recipe_for(channel, family);
  if (!r) return std::nullopt;
  const EnergyBudget budget{n, EnergyStrategy::kSqueezeOnly};
  check_budget(budget);
  return decode_candidate(family, budget, channel.modes(),
                          recipe_coordinates(*r, family, EnergyStrategy::kSqueezeOnly));
}

OptimizationResult optimize_probe(const ChannelSpec& channel, ProbeFamily family,
                                  const EnergyBudget& budget, const OptimizerConfig& config) {
  check_budget(budget);
  check_family(channel, family);
  check_config(config);

  const auto starts = starting_points(channel, family, budget.strategy, config);
  const int total = static_cast<int>(starts.size());
  std::vector<StartOutcome> outcomes(static_cast<std::size_t>(total));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int s = next++; s < total; s = next++) {
      outcomes[static_cast<std::size_t>(s)] = run_start(channel, family, budget, config, s, starts[s]);
    }
  };
  const int jobs = std::clamp(config.jobs > 0 ? config.jobs : static_cast<int>(std::thread::hardware_concurrency()),
                              1, total);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }

  // Merge in start order so the winner does not depend on scheduling.
  OptimizationResult res;
  res.restarts = total;
  int winner = -1;
  for (int s = 0; s < total; ++s) {
    auto& o = outcomes[static_cast<std::size_t>(s)];
    if (o.aborted) {
      ++res.aborted;
      res.log.push_back(o.message);
      continue;
    }
    res.trace.insert(res.trace.end(), o.trace.begin(), o.trace.end());
    if (winner < 0 || o.qfi > outcomes[static_cast<std::size_t>(winner)].qfi) winner = s;
  }
  if (winner < 0) throw Error(ErrorKind::kNumericalInstability, "every optimizer start was aborted");
  const auto& w = outcomes[static_cast<std::size_t>(winner)];
  res.best_params = w.x;
  res.best = decode_candidate(family, budget, channel.modes(), w.x);
  res.best_qfi = w.qfi;
  res.converged = w.converged;
  return res;
}

ScalingFit fit_scaling(const std::vector<double>& n, const std::vector<double>& qfi) {
  if (n.size() != qfi.size() || n.size() < 4) {
    throw Error(ErrorKind::kInvalidInput, "scaling fit needs at least four (n, H) points");
  }
  std::vector<std::size_t> idx(n.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return n[a] < n[b]; });
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (!(n[i] > 0.0) || !std::isfinite(n[i])) throw Error(ErrorKind::kInvalidInput, "grid values must be positive");
    if (!(qfi[i] > 0.0)) {
      throw Error(ErrorKind::kInvalidFamily, fmt::format("QFI {} at n = {} is not positive", qfi[i], n[i]));
    }
  }
  if (n[idx.back()] < 10.0 * n[idx.front()]) {
    throw Error(ErrorKind::kInvalidInput, "scaling grid must span at least one decade");
  }
  const std::size_t first = idx.size() / 2;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double m = static_cast<double>(idx.size() - first);
  for (std::size_t i = first; i < idx.size(); ++i) {
    const double lx = std::log(n[idx[i]]);
    const double ly = std::log(qfi[idx[i]]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  ScalingFit fit;
  fit.exponent = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  fit.prefactor = std::exp((sy - fit.exponent * sx) / m);
  for (auto i : idx) {
    fit.n.push_back(n[i]);
    fit.qfi.push_back(qfi[i]);
  }
  return fit;
}

ScalingFit scaling_exponent(const ChannelSpec& channel, ProbeFamily family, ScalingStrategy strategy,
                            const std::vector<double>& n_grid, const OptimizerConfig& config) {
  check_family(channel, family);
  if (n_grid.size() < 4) throw Error(ErrorKind::kInvalidInput, "scaling grid needs at least four points");
  std::vector<double> h;
  for (double n : n_grid) {
    if (!(n > 0.0) || !std::isfinite(n)) throw Error(ErrorKind::kInvalidInput, "grid values must be positive");
    if (strategy == ScalingStrategy::kOptimalSqueezing) {
      if (auto probe = analytic_probe(channel, family, n)) {
        h.push_back(qfi_unitary(probe->probe(), channel).total);
        continue;
      }
      h.push_back(optimize_probe(channel, family, {n, EnergyStrategy::kFree}, config).best_qfi);
    } else {
      h.push_back(optimize_probe(channel, family, {n, EnergyStrategy::kCoherentOnly}, config).best_qfi);
    }
  }
  return fit_scaling(n_grid, h);
}

ConjectureReport conjecture_probe(const ChannelSpec& channel, ProbeFamily family,
                                  const std::vector<double>& n_grid, const OptimizerConfig& config) {
  ConjectureReport rep;
  for (double n : n_grid) {
    const auto res = optimize_probe(channel, family, {n, EnergyStrategy::kFree}, config);
    ConjectureRow row;
    row.n = n;
    row.best_qfi = res.best_qfi;
    row.split = res.best.split;
    for (const auto& s : row.split) {
      row.max_f_d = std::max(row.max_f_d, s.f_d);
      row.max_f_th = std::max(row.max_f_th, s.f_th);
    }
    row.flagged = row.max_f_d > kConjectureThreshold || row.max_f_th > kConjectureThreshold;
    rep.any_flagged = rep.any_flagged || row.flagged;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace gqfi
