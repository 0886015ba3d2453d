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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gqfi/channels.hpp"
#include "gqfi/probe_params.hpp"
#include "gqfi/qfi.hpp"

namespace gqfi {

enum class ProbeFamily {
  /// D R S rho_th on one mode; on a two-mode channel the second mode is vacuum.
  kOneMode,
  /// R1 R2 B R_as S1 S2 on a product thermal state, plus displacement.
  kTwoModeRestricted,
  /// kTwoModeRestricted with theta = psi = 0: two independent one-mode probes.
  kTwoModeSeparable,
};

enum class EnergyStrategy {
  /// Squeezing, displacement and thermal fractions all free.
  kFree,
  /// All energy in displacement.
  kCoherentOnly,
  /// All energy in squeezing, pure modes.
  kSqueezeOnly,
};

std::string_view to_string(ProbeFamily f);
std::string_view to_string(EnergyStrategy s);
ProbeFamily parse_probe_family(std::string_view name);
EnergyStrategy parse_energy_strategy(std::string_view name);

struct EnergyBudget {
  double n_total = 1.0;
  EnergyStrategy strategy = EnergyStrategy::kFree;
};

struct OptimizerConfig {
  int restarts = 32;
  int max_iter = 2000;
  std::uint64_t seed = 20260101;
  double tol = 1e-10;
  /// Worker threads for independent starts; results do not depend on it.
  int jobs = 1;
  /// Seed the first starts with known optima for cataloged channels.
  bool warm_starts = true;
};

/// Energy held by one mode, as fractions of the total budget.
struct ModeSplit {
  double n = 0.0;
  double f_d = 0.0;
  double f_th = 0.0;
  double f_sq = 0.0;
};

struct ProbeCandidate {
  ProbeFamily family = ProbeFamily::kOneMode;
  /// Channel modes; a one-mode probe on two modes is embedded.
  int modes = 1;
  OneModeProbeParams one;
  TwoModeProbeParams two;
  std::vector<ModeSplit> split;

  ProbeState probe() const;
};

struct TracePoint {
  int start = 0;
  int iteration = 0;
  /// Best-so-far QFI of that start.
  double qfi = 0.0;
};

struct OptimizationResult {
  std::vector<double> best_params;
  ProbeCandidate best;
  double best_qfi = 0.0;
  std::vector<TracePoint> trace;
  int restarts = 0;
  int aborted = 0;
  /// True if the winning start met the simplex tolerance.
  bool converged = false;
  std::vector<std::string> log;
};

/// Number of free coordinates of the search space.
int search_dimension(ProbeFamily family, EnergyStrategy strategy);

/// Maps unconstrained coordinates to a probe that spends exactly n_total.
/// Every real vector is feasible: fractions come from squared sines and cosines.
ProbeCandidate decode_candidate(ProbeFamily family, const EnergyBudget& budget, int channel_modes,
                                const std::vector<double>& x);

/// Closed-form optimal probe for cataloged channels at energy n, or nullopt.
std::optional<ProbeCandidate> analytic_probe(const ChannelSpec& channel, ProbeFamily family, double n);

OptimizationResult optimize_probe(const ChannelSpec& channel, ProbeFamily family,
                                  const EnergyBudget& budget, const OptimizerConfig& config = {});

enum class ScalingStrategy { kOptimalSqueezing, kCoherentOnly };

struct ScalingFit {
  double exponent = 0.0;
  double prefactor = 0.0;
  std::vector<double> n;
  std::vector<double> qfi;
};

/// Least-squares slope of log H against log n over the largest half of the grid.
/// Optimal squeezing uses analytic_probe when available, else the optimizer.
ScalingFit scaling_exponent(const ChannelSpec& channel, ProbeFamily family, ScalingStrategy strategy,
                            const std::vector<double>& n_grid, const OptimizerConfig& config = {});

/// Plain fit on given points, same window rule.
ScalingFit fit_scaling(const std::vector<double>& n, const std::vector<double>& qfi);

struct ConjectureRow {
  double n = 0.0;
  double best_qfi = 0.0;
  std::vector<ModeSplit> split;
  double max_f_d = 0.0;
  double max_f_th = 0.0;
  bool flagged = false;
};

struct ConjectureReport {
  std::vector<ConjectureRow> rows;
  bool any_flagged = false;
};

inline constexpr double kConjectureThreshold = 1e-3;

/// Runs the optimizer with free energy split at each n and records where the energy went.
/// Rows with f_d or f_th above kConjectureThreshold are flagged.
ConjectureReport conjecture_probe(const ChannelSpec& channel, ProbeFamily family,
                                  const std::vector<double>& n_grid, const OptimizerConfig& config = {});

}  // namespace gqfi
