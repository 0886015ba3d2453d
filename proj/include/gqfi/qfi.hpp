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

#include <optional>

#include "gqfi/channels.hpp"
#include "gqfi/probe_params.hpp"

namespace gqfi {

/// Probe in Williamson form: sigma0 = S0 D0 S0^+, displacement d0.
struct ProbeState {
  WilliamsonForm williamson;
  CVec displacement;

  int modes() const { return williamson.symplectic.modes(); }
  CMat covariance() const { return williamson.reconstruct(); }
  GaussianState state() const;
  /// sigma0^{-1} = K S0 K D0^{-1} K S0^+ K.
  CMat inverse_covariance() const;
};

ProbeState make_probe(const SymplecticMatrix& s0, const RVec& lambdas, const CVec& d_tilde);
ProbeState make_one_mode_probe(const OneModeProbeParams& p);
/// One-mode probe on mode 1 of a two-mode system, mode 2 in vacuum.
ProbeState make_one_mode_probe_embedded(const OneModeProbeParams& p);
ProbeState make_two_mode_probe(const TwoModeProbeParams& p);
/// Williamson-decomposes an arbitrary valid state.
ProbeState probe_from_state(const GaussianState& state);

struct PMatrix {
  CMat r;
  CMat q;

  CMat dense() const { return assemble_blocks(r, q); }
  /// max |PK + KP^+|.
  double lie_residual() const;
};

struct QfiBreakdown {
  double r_term = 0.0;
  double q_term = 0.0;
  double eigen_term = 0.0;
  double disp_term = 0.0;
  double total = 0.0;
};

struct TemperatureFactors {
  double f1;
  double f2;
  double f3;
  double f4;
};

/// Below this, lambda_i lambda_j - 1 is treated as zero.
inline constexpr double kPureTolerance = 1e-9;

/// S0^{-1} (iKW) S0.
PMatrix p_matrix(const ProbeState& probe, const GeneratorW& w);
PMatrix p_matrix(const ProbeState& probe, const ChannelSpec& channel);

QfiBreakdown qfi_unitary(const ProbeState& probe, const GeneratorW& w);
QfiBreakdown qfi_unitary(const ProbeState& probe, const ChannelSpec& channel);

struct GeneralQfiInputs {
  RVec lambda;
  RVec lambda_dot;
  /// Needed wherever |lambda_i - 1| < kPureTolerance.
  std::optional<RVec> lambda_ddot;
  CMat s;
  CMat s_dot;
  CVec d;
  CVec d_dot;
  CMat sigma;
};

/// QFI from moments and their first derivatives, with P = S^{-1} dS.
QfiBreakdown qfi_general(const GeneralQfiInputs& in);

TemperatureFactors temperature_factors(double lambda_i, double lambda_j);

}  // namespace gqfi
