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

#include <array>
#include <functional>
#include <string_view>
#include <vector>

#include "gqfi/probe_params.hpp"

namespace gqfi::closed {

// One-mode probes, channel exp(-i eps omega_p a^+a) with squeezing omega_s along chi.

double qfi_one_mode_combined(const OneModeProbeParams& p, double omega_p, double omega_s,
                             double chi);
double qfi_phase(const OneModeProbeParams& p);
double qfi_squeeze1(const OneModeProbeParams& p, double chi);

/// Maximum over rotation and displacement angles, for r, omega_p, omega_s >= 0.
double combined_max(double lambda1, double r, double d_mag, double omega_p, double omega_s);
/// combined_max rewritten in terms of total energy n and its displacement and thermal parts.
double combined_max_energy(double n, double n_d, double n_th, double omega_p, double omega_s);
/// All energy in squeezing.
double combined_heisenberg(double n, double omega_p, double omega_s);
/// All energy in displacement.
double combined_shot_noise(double n, double omega_p, double omega_s);

// Two-mode restricted probes. Angle abbreviations are channel specific and
// computed inside each function.

double qfi_twomode_squeeze_full(const TwoModeProbeParams& p, double chi);
double qfi_mix_full(const TwoModeProbeParams& p, double chi);

/// theta = 0, psi = 0.
double qfi_twomode_squeeze_separable(const TwoModeProbeParams& p, double chi);
/// theta = pi/4.
double qfi_twomode_squeeze_bs(const TwoModeProbeParams& p, double chi);
/// theta = 0, psi = 0.
double qfi_mix_separable(const TwoModeProbeParams& p, double chi);
/// theta = pi/4.
double qfi_mix_bs(const TwoModeProbeParams& p, double chi);

/// Two-mode squeezing channel, separable probe at its optimal angles.
double twomode_squeeze_separable_max(const TwoModeProbeParams& p);
/// Two-mode squeezing channel, beam-splitter probe, r1, r2 >= 0.
double twomode_squeeze_bs_max(const TwoModeProbeParams& p);
/// Two-mode squeezing channel, beam-splitter probe, r1 <= 0 <= r2.
double twomode_squeeze_bs_max_negative(const TwoModeProbeParams& p);
/// twomode_squeeze_bs_max - twomode_squeeze_separable_max for pure modes.
double twomode_squeeze_bs_advantage(double r1, double r2, double d1_mag, double d2_mag);
/// Mode-mixing channel, separable probe at its optimal angles.
double mix_separable_max(const TwoModeProbeParams& p);

enum class TwoModeChannel { kTwoModeSqueeze, kMix };

/// Mode 1 carries a one-mode probe, mode 2 is vacuum.
double qfi_onemode_probe_on_twomode(TwoModeChannel kind, double lambda1, double r1,
                                    double d1_mag);

/// lambda = 1, r1 = r2 = r, theta = psi = pi/4, phi1 + phi2 + phi_d1 + phi_d2 = -pi/2.
double universal_mix_probe_qfi(double r, double d1_mag, double d2_mag);

// Limits.

enum class LimitChannel { kRotation, kSqueeze, kMix, kTwoModeSqueeze };

std::string_view to_string(LimitChannel c);

struct LimitTable {
  LimitChannel channel;
  std::function<double(double)> heisenberg;
  std::function<double(double)> shot_noise;
};

double heisenberg_limit(LimitChannel c, double n);
double shot_noise_limit(LimitChannel c, double n);
std::array<LimitTable, 4> limit_table();

// Energy bookkeeping.

/// n_d + n_th + (1 + 2 n_th) sinh^2 r.
double one_mode_energy(double n_d, double n_th, double r);
/// asinh(sqrt((n - n_d - n_th) / (1 + 2 n_th))); throws kInvalidInput if n < n_d + n_th.
double squeezing_for_energy(double n, double n_d, double n_th);

// Optimal probe temperature.

enum class OneModeChannel { kPhase, kSqueeze };

/// lambda^3 / (lambda^2 + 1)^2 - d^2 e^{2r} / (2 g(2r)^2) with g = sinh (phase)
/// or cosh (squeeze). Its sign is the sign of dH/dlambda at the optimal angles.
double optimal_temperature_residual(OneModeChannel c, double lambda1, double r, double d_mag);

struct TemperatureRoot {
  double lambda;
  double residual;
  /// Residual goes from + to -, i.e. a local maximum of H in lambda.
  bool is_maximum;
};

/// Every sign change of the residual on [1, 1e3], refined by bisection.
/// Throws kNoInteriorOptimum if there is none.
std::vector<TemperatureRoot> optimal_temperature_roots(OneModeChannel c, double r, double d_mag);

}  // namespace gqfi::closed
