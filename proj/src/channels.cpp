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

#include "gqfi/channels.hpp"

#include <cmath>

#include <fmt/format.h>

namespace gqfi {

namespace {

constexpr cplx kI(0.0, 1.0);

CMat zeros(int n) { return CMat::Zero(n, n); }

void check_finite(std::initializer_list<double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) throw Error(ErrorKind::kInvalidInput, "channel parameters must be finite");
  }
}

}  // namespace

std::string_view to_string(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::kPhase: return "phase";
    case ChannelKind::kSqueezeMode1: return "squeeze1-mode1";
    case ChannelKind::kSqueezeMode2: return "squeeze1-mode2";
    case ChannelKind::kBeamsplit: return "beamsplit";
    case ChannelKind::kTwoModeSqueeze: return "two-mode-squeeze";
    case ChannelKind::kCombinedOneMode: return "combined-one-mode";
    case ChannelKind::kCustom: return "custom";
  }
  return "unknown";
}

ChannelKind parse_channel_kind(std::string_view name) {
  if (name == "phase") return ChannelKind::kPhase;
  if (name == "squeeze1-mode1" || name == "squeeze") return ChannelKind::kSqueezeMode1;
  if (name == "squeeze1-mode2") return ChannelKind::kSqueezeMode2;
  if (name == "beamsplit" || name == "mix") return ChannelKind::kBeamsplit;
  if (name == "two-mode-squeeze") return ChannelKind::kTwoModeSqueeze;
  if (name == "combined-one-mode" || name == "combined") return ChannelKind::kCombinedOneMode;
  if (name == "custom") return ChannelKind::kCustom;
  throw Error(ErrorKind::kInvalidInput, fmt::format("unknown channel kind '{}'", name));
}

ChannelSpec phase_channel() {
  CMat x(1, 1);
  x(0, 0) = -1.0;
  return {ChannelKind::kPhase, GeneratorW(x, zeros(1)), 0.0, 1.0, 0.0};
}

ChannelSpec squeeze_channel(double chi, int modes, int target) {
  check_finite({chi});
  if (modes < 1 || modes > 2 || target < 0 || target >= modes) {
    throw Error(ErrorKind::kInvalidDimension, "squeeze channel acts on mode 0 or 1 of at most two modes");
  }
  CMat y = zeros(modes);
  y(target, target) = kI * std::exp(kI * chi);
  const auto kind = target == 0 ? ChannelKind::kSqueezeMode1 : ChannelKind::kSqueezeMode2;
  return {kind, GeneratorW(zeros(modes), y), chi, 0.0, 1.0};
}

ChannelSpec mix_channel(double chi) {
  check_finite({chi});
  CMat x = zeros(2);
  x(0, 1) = -kI * std::exp(kI * chi);
  x(1, 0) = kI * std::exp(-kI * chi);
  return {ChannelKind::kBeamsplit, GeneratorW(x, zeros(2)), chi, 0.0, 0.0};
}

ChannelSpec twomode_squeeze_channel(double chi) {
  check_finite({chi});
  CMat y = zeros(2);
  y(0, 1) = y(1, 0) = kI * std::exp(kI * chi);
  return {ChannelKind::kTwoModeSqueeze, GeneratorW(zeros(2), y), chi, 0.0, 0.0};
}

ChannelSpec combined_channel(double omega_p, double omega_s, double chi) {
  check_finite({omega_p, omega_s, chi});
  CMat x(1, 1);
  CMat y(1, 1);
  x(0, 0) = -omega_p;
  y(0, 0) = kI * omega_s * std::exp(kI * chi);
  return {ChannelKind::kCombinedOneMode, GeneratorW(x, y), chi, omega_p, omega_s};
}

ChannelSpec custom_channel(GeneratorW w) {
  return {ChannelKind::kCustom, std::move(w), 0.0, 0.0, 0.0};
}

SymplecticMatrix channel_symplectic_generic(const ChannelSpec& spec, double eps) {
  return exp_generator(spec.generator.scaled(eps));
}

SymplecticMatrix channel_symplectic(const ChannelSpec& spec, double eps) {
  if (!std::isfinite(eps)) throw Error(ErrorKind::kInvalidInput, "channel parameter must be finite");
  const int n = spec.modes();
  switch (spec.kind) {
    case ChannelKind::kPhase:
      return ops::rotation(n, 0, eps);
    case ChannelKind::kSqueezeMode1:
      return ops::squeezing(n, 0, eps, spec.chi);
    case ChannelKind::kSqueezeMode2:
      return ops::squeezing(n, 1, eps, spec.chi);
    case ChannelKind::kBeamsplit:
      return ops::mode_mixing(eps, spec.chi);
    case ChannelKind::kTwoModeSqueeze:
      return ops::two_mode_squeezing(eps, spec.chi);
    case ChannelKind::kCombinedOneMode: {
      // A = iKW satisfies A^2 = (omega_s^2 - omega_p^2) I, so exp(eps A) = c I + s A.
      const double k2 = spec.omega_s * spec.omega_s - spec.omega_p * spec.omega_p;
      const double x = k2 * eps * eps;
      double c;
      double s;
      if (std::abs(x) < 1e-8) {
        c = 1.0 + x / 2.0 + x * x / 24.0;
        s = eps * (1.0 + x / 6.0 + x * x / 120.0);
      } else if (k2 > 0.0) {
        const double k = std::sqrt(k2);
        c = std::cosh(k * eps);
        s = std::sinh(k * eps) / k;
      } else {
        const double k = std::sqrt(-k2);
        c = std::cos(k * eps);
        s = std::sin(k * eps) / k;
      }
      CMat alpha(1, 1);
      CMat beta(1, 1);
      alpha(0, 0) = c - kI * s * spec.omega_p;
      beta(0, 0) = -s * spec.omega_s * std::exp(kI * spec.chi);
      return {alpha, beta};
    }
    case ChannelKind::kCustom:
      break;
  }
  return channel_symplectic_generic(spec, eps);
}

namespace ops {

SymplecticMatrix rotation(int modes, int k, double theta) {
  if (k < 0 || k >= modes) throw Error(ErrorKind::kInvalidDimension, "rotation mode out of range");
  CMat alpha = CMat::Identity(modes, modes);
  alpha(k, k) = std::exp(-kI * theta);
  return {alpha, zeros(modes)};
}

SymplecticMatrix squeezing(int modes, int k, double r, double chi) {
  if (k < 0 || k >= modes) throw Error(ErrorKind::kInvalidDimension, "squeezing mode out of range");
  CMat alpha = CMat::Identity(modes, modes);
  CMat beta = zeros(modes);
  alpha(k, k) = std::cosh(r);
  beta(k, k) = -std::exp(kI * chi) * std::sinh(r);
  return {alpha, beta};
}

SymplecticMatrix mode_mixing(double theta, double chi) {
  CMat alpha(2, 2);
  alpha << std::cos(theta), std::exp(kI * chi) * std::sin(theta),
      -std::exp(-kI * chi) * std::sin(theta), std::cos(theta);
  return {alpha, zeros(2)};
}

SymplecticMatrix two_mode_squeezing(double r, double chi) {
  CMat beta = zeros(2);
  beta(0, 1) = beta(1, 0) = -std::exp(kI * chi) * std::sinh(r);
  return {std::cosh(r) * CMat::Identity(2, 2), beta};
}

SymplecticMatrix asymmetric_rotation(double psi) {
  return rotation(2, 0, psi) * rotation(2, 1, -psi);
}

}  // namespace ops

}  // namespace gqfi
