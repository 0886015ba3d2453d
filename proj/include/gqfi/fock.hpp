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

#include <string>
#include <variant>
#include <vector>

#include "gqfi/channels.hpp"
#include "gqfi/probe_params.hpp"
#include "gqfi/qfi.hpp"

namespace gqfi {

/// A one-mode probe on a two-mode channel sits in mode 1 with mode 2 in vacuum.
using FockProbe = std::variant<OneModeProbeParams, TwoModeProbeParams>;

/// Density matrix in the number basis, D levels per mode, mode 1 major.
struct FockDensity {
  int cutoff = 0;
  int modes = 1;
  CMat matrix;
  double trace() const { return matrix.trace().real(); }
};

struct FockOptions {
  /// Central-difference step in the channel parameter.
  double h = 1e-4;
  /// Allowed trace lost to truncation.
  double leak_tol = 1e-8;
  /// Thermal components below this weight are dropped (their mass counts as
  /// leakage). The kernel part of the spectral sum divides by these weights, so
  /// much smaller values amplify truncation error.
  double min_weight = 1e-10;
};

/// Largest cutoff select_cutoff will try: 128 for one mode, 40 per mode for two.
int max_cutoff(int modes);

/// D R S rho_th S^+ R^+ D^+ (or the two-mode analog) truncated to `cutoff`
/// levels per mode. Operators are exponentiated on a padded space and
/// truncated once. Throws kCutoffTooSmall when the lost trace exceeds leak_tol.
FockDensity build_fock_state(const FockProbe& probe, int modes, int cutoff, const FockOptions& opt = {});

/// QFI from the symmetric-logarithmic-derivative spectral sum over the
/// probe's eigenbasis, with d rho / d eps by central difference at +-h.
double fock_qfi(const FockProbe& probe, const ChannelSpec& channel, int cutoff, const FockOptions& opt = {});

/// Smallest cutoff in 8, 16, 32, ... (capped at max_cutoff) whose states at
/// 0 and +-h all pass the leakage check.
int select_cutoff(const FockProbe& probe, const ChannelSpec& channel, const FockOptions& opt = {});

/// The phase-space probe matching `probe` on a `modes`-mode system.
ProbeState engine_probe(const FockProbe& probe, int modes);

struct FockPanelCase {
  std::string name;
  FockProbe probe;
  ChannelSpec channel;
};

/// Twelve small-parameter probe/channel pairs (|r| <= 0.6, |d| <= 1.5, lambda <= 3).
std::vector<FockPanelCase> fock_panel();

struct FockPanelRow {
  std::string name;
  int cutoff = 0;
  double fock = 0.0;
  double engine = 0.0;
  /// |fock - engine| / max(1, engine).
  double deviation = 0.0;
  bool pass = false;
};

/// `engine_scale` multiplies the phase-space value (fault injection for the validator).
std::vector<FockPanelRow> run_fock_panel(double tol = 1e-3, const FockOptions& opt = {},
                                         double engine_scale = 1.0);

}  // namespace gqfi
