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
#include <string>
#include <string_view>

#include "gqfi/symplectic.hpp"

namespace gqfi {

enum class ChannelKind {
  kPhase,
  kSqueezeMode1,
  kSqueezeMode2,
  kBeamsplit,
  kTwoModeSqueeze,
  kCombinedOneMode,
  kCustom,
};

std::string_view to_string(ChannelKind kind);
/// Accepts the canonical names plus the aliases "squeeze" and "mix".
ChannelKind parse_channel_kind(std::string_view name);

/// One-parameter Gaussian unitary group U(eps) = exp(eps (i/2 A^+ W A + A^+ K gamma)).
struct ChannelSpec {
  ChannelKind kind = ChannelKind::kCustom;
  GeneratorW generator;
  double chi = 0.0;
  double omega_p = 0.0;
  double omega_s = 0.0;

  int modes() const { return generator.modes(); }
};

/// R(eps) on one mode.
ChannelSpec phase_channel();
/// S(eps, chi) on one mode, or on mode `target` (0 or 1) of a two-mode system.
ChannelSpec squeeze_channel(double chi, int modes = 1, int target = 0);
/// B(eps, chi).
ChannelSpec mix_channel(double chi);
/// S_T(eps, chi).
ChannelSpec twomode_squeeze_channel(double chi);
/// exp(-i eps omega_p a^+a) combined with squeezing at rate omega_s along chi.
ChannelSpec combined_channel(double omega_p, double omega_s, double chi);
ChannelSpec custom_channel(GeneratorW w);

/// exp(iKW eps); closed forms for cataloged kinds.
SymplecticMatrix channel_symplectic(const ChannelSpec& spec, double eps);
/// exp(iKW eps) through the generic matrix exponential.
SymplecticMatrix channel_symplectic_generic(const ChannelSpec& spec, double eps);

/// Symplectic matrices of the named Gaussian unitaries.
namespace ops {

/// exp(-i theta a_k^+ a_k) on mode k of an N-mode system.
SymplecticMatrix rotation(int modes, int k, double theta);
/// exp(-r/2 (e^{i chi} a_k^+2 - h.c.)).
SymplecticMatrix squeezing(int modes, int k, double r, double chi = 0.0);
/// exp(theta (e^{i chi} a_1^+ a_2 - h.c.)).
SymplecticMatrix mode_mixing(double theta, double chi = 0.0);
/// exp(-r (e^{i chi} a_1^+ a_2^+ - h.c.)).
SymplecticMatrix two_mode_squeezing(double r, double chi = 0.0);
/// R_1(psi) R_2(-psi).
SymplecticMatrix asymmetric_rotation(double psi);

}  // namespace ops

}  // namespace gqfi
