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

#include "gqfi/closed_forms.hpp"

#include <cmath>

#include <fmt/format.h>

#include "gqfi/errors.hpp"

namespace gqfi::closed {

namespace {

double sq(double x) { return x * x; }

double f1(double l) { return l * l / (1.0 + l * l); }
double f2(double a, double b) { return sq(a + b) / (a * b + 1.0); }
double f3(double a, double b) {
  const double den = a * b - 1.0;
  return den < 1e-9 ? 0.0 : sq(a - b) / den;
}

// 4/l (e^{2r} x^2 + e^{-2r} y^2).
double disp_pair(double lambda, double r, double x, double y) {
  return 4.0 / lambda * (std::exp(2.0 * r) * sq(x) + std::exp(-2.0 * r) * sq(y));
}

}  // namespace

double qfi_one_mode_combined(const OneModeProbeParams& p, double wp, double ws, double chi) {
  const double a = 2.0 * p.theta + chi;
  const double quad = sq(ws) * (sq(std::cos(a)) + sq(std::cosh(2.0 * p.r)) * sq(std::sin(a))) +
                      sq(wp) * sq(std::sinh(2.0 * p.r)) -
                      ws * wp * std::sin(a) * std::sinh(4.0 * p.r);
  const double x = ws * std::cos(p.theta - p.phi_d + chi) - wp * std::sin(p.theta + p.phi_d);
  const double y = ws * std::sin(p.theta - p.phi_d + chi) + wp * std::cos(p.theta + p.phi_d);
  return 4.0 * f1(p.lambda1) * quad + sq(p.d_mag) * disp_pair(p.lambda1, p.r, x, y);
}

double qfi_phase(const OneModeProbeParams& p) {
  const double t = p.theta + p.phi_d;
  return 4.0 * f1(p.lambda1) * sq(std::sinh(2.0 * p.r)) +
         4.0 * sq(p.d_mag) / p.lambda1 *
             (std::exp(2.0 * p.r) * sq(std::sin(t)) + std::exp(-2.0 * p.r) * sq(std::cos(t)));
}

double qfi_squeeze1(const OneModeProbeParams& p, double chi) {
  const double a = 2.0 * p.theta + chi;
  const double b = p.theta - p.phi_d + chi;
  return 4.0 * f1(p.lambda1) * (sq(std::cos(a)) + sq(std::cosh(2.0 * p.r)) * sq(std::sin(a))) +
         4.0 * sq(p.d_mag) / p.lambda1 *
             (std::exp(2.0 * p.r) * sq(std::cos(b)) + std::exp(-2.0 * p.r) * sq(std::sin(b)));
}

double combined_max(double lambda1, double r, double d_mag, double wp, double ws) {
  return 4.0 * f1(lambda1) * sq(ws * std::cosh(2.0 * r) + wp * std::sinh(2.0 * r)) +
         4.0 * sq(d_mag) / lambda1 * std::exp(2.0 * r) * sq(ws + wp);
}

double combined_max_energy(double n, double n_d, double n_th, double wp, double ws) {
  if (n < n_d + n_th) throw Error(ErrorKind::kInvalidInput, "energy split exceeds the budget");
  const double root = std::sqrt(n - n_d - n_th) * std::sqrt(n + 1.0 - n_d + n_th);
  const double lam = 1.0 + 2.0 * n_th;
  return 2.0 * sq(ws * (2.0 * n - 2.0 * n_d + 1.0) + 2.0 * wp * root) /
             (1.0 + 2.0 * n_th * (1.0 + n_th)) +
         4.0 * n_d * (2.0 * n - 2.0 * n_d + 1.0 + 2.0 * root) / sq(lam) * sq(ws + wp);
}

double combined_heisenberg(double n, double wp, double ws) {
  return 2.0 * sq(ws * (2.0 * n + 1.0) + wp * 2.0 * std::sqrt(n) * std::sqrt(1.0 + n));
}

double combined_shot_noise(double n, double wp, double ws) {
  return 2.0 * sq(ws) + 4.0 * n * sq(ws + wp);
}

double qfi_twomode_squeeze_full(const TwoModeProbeParams& p, double chi) {
  const double pc = p.phi1 + p.phi2 + chi;
  const double p1c = p.phi1 - p.phi_d2 + chi;
  const double p2c = p.phi2 - p.phi_d1 + chi;
  const double c2 = sq(std::cos(pc));
  const double s2 = sq(std::sin(pc));
  const double st = std::sin(p.theta);
  const double ct = std::cos(p.theta);
  double h = 2.0 * sq(std::cos(2.0 * p.theta)) *
             (f2(p.lambda1, p.lambda2) *
                  (c2 * sq(std::cosh(p.r1 - p.r2)) + s2 * sq(std::cosh(p.r1 + p.r2))) +
              f3(p.lambda1, p.lambda2) *
                  (c2 * sq(std::sinh(p.r1 - p.r2)) + s2 * sq(std::sinh(p.r1 + p.r2))));
  h += 4.0 * sq(std::sin(2.0 * p.theta)) *
       (f1(p.lambda1) * (sq(std::cos(pc + 2.0 * p.psi)) +
                         sq(std::sin(pc + 2.0 * p.psi)) * sq(std::cosh(2.0 * p.r1))) +
        f1(p.lambda2) * (sq(std::cos(pc - 2.0 * p.psi)) +
                         sq(std::sin(pc - 2.0 * p.psi)) * sq(std::cosh(2.0 * p.r2))));
  h += disp_pair(p.lambda1, p.r1,
                 p.d1_mag * st * std::cos(p2c + p.psi) - p.d2_mag * ct * std::cos(p1c + p.psi),
                 p.d1_mag * st * std::sin(p2c + p.psi) - p.d2_mag * ct * std::sin(p1c + p.psi));
  h += disp_pair(p.lambda2, p.r2,
                 p.d1_mag * ct * std::cos(p2c - p.psi) + p.d2_mag * st * std::cos(p1c - p.psi),
                 p.d1_mag * ct * std::sin(p2c - p.psi) + p.d2_mag * st * std::sin(p1c - p.psi));
  return h;
}

double qfi_mix_full(const TwoModeProbeParams& p, double chi) {
  const double pc = p.phi1 - p.phi2 + chi;
  const double p1c = p.phi1 + p.phi_d2 + chi;
  const double p2c = p.phi2 + p.phi_d1 - chi;
  const double c2t = std::cos(2.0 * p.theta);
  const double a = c2t * std::sin(pc) * std::sin(2.0 * p.psi) - std::cos(pc) * std::cos(2.0 * p.psi);
  const double b = c2t * std::sin(pc) * std::cos(2.0 * p.psi) + std::cos(pc) * std::sin(2.0 * p.psi);
  const double st = std::sin(p.theta);
  const double ct = std::cos(p.theta);
  double h = 4.0 * sq(std::sin(2.0 * p.theta)) * sq(std::sin(pc)) *
             (f1(p.lambda1) * sq(std::sinh(2.0 * p.r1)) + f1(p.lambda2) * sq(std::sinh(2.0 * p.r2)));
  h += 2.0 * f2(p.lambda1, p.lambda2) *
       (sq(a) * sq(std::sinh(p.r1 - p.r2)) + sq(b) * sq(std::sinh(p.r1 + p.r2)));
  h += 2.0 * f3(p.lambda1, p.lambda2) *
       (sq(a) * sq(std::cosh(p.r1 - p.r2)) + sq(b) * sq(std::cosh(p.r1 + p.r2)));
  h += disp_pair(p.lambda1, p.r1,
                 p.d1_mag * st * std::cos(p2c + p.psi) + p.d2_mag * ct * std::cos(p1c + p.psi),
                 p.d1_mag * st * std::sin(p2c + p.psi) + p.d2_mag * ct * std::sin(p1c + p.psi));
  h += disp_pair(p.lambda2, p.r2,
                 p.d1_mag * ct * std::cos(p2c - p.psi) - p.d2_mag * st * std::cos(p1c - p.psi),
                 p.d1_mag * ct * std::sin(p2c - p.psi) - p.d2_mag * st * std::sin(p1c - p.psi));
  return h;
}

double qfi_twomode_squeeze_separable(const TwoModeProbeParams& p, double chi) {
  const double pc = p.phi1 + p.phi2 + chi;
  const double p1c = p.phi1 - p.phi_d2 + chi;
  const double p2c = p.phi2 - p.phi_d1 + chi;
  const double c2 = sq(std::cos(pc));
  const double s2 = sq(std::sin(pc));
  return 2.0 * f2(p.lambda1, p.lambda2) *
             (c2 * sq(std::cosh(p.r1 - p.r2)) + s2 * sq(std::cosh(p.r1 + p.r2))) +
         2.0 * f3(p.lambda1, p.lambda2) *
             (c2 * sq(std::sinh(p.r1 - p.r2)) + s2 * sq(std::sinh(p.r1 + p.r2))) +
         sq(p.d2_mag) * disp_pair(p.lambda1, p.r1, std::cos(p1c), std::sin(p1c)) +
         sq(p.d1_mag) * disp_pair(p.lambda2, p.r2, std::cos(p2c), std::sin(p2c));
}

double qfi_twomode_squeeze_bs(const TwoModeProbeParams& p, double chi) {
  const double pc = p.phi1 + p.phi2 + chi;
  const double p1c = p.phi1 - p.phi_d2 + chi;
  const double p2c = p.phi2 - p.phi_d1 + chi;
  double h = 4.0 * f1(p.lambda1) *
                 (sq(std::cos(pc + 2.0 * p.psi)) +
                  sq(std::sin(pc + 2.0 * p.psi)) * sq(std::cosh(2.0 * p.r1))) +
             4.0 * f1(p.lambda2) *
                 (sq(std::cos(pc - 2.0 * p.psi)) +
                  sq(std::sin(pc - 2.0 * p.psi)) * sq(std::cosh(2.0 * p.r2)));
  h += 0.5 * disp_pair(p.lambda1, p.r1,
                       p.d1_mag * std::cos(p2c + p.psi) - p.d2_mag * std::cos(p1c + p.psi),
                       p.d1_mag * std::sin(p2c + p.psi) - p.d2_mag * std::sin(p1c + p.psi));
  h += 0.5 * disp_pair(p.lambda2, p.r2,
                       p.d1_mag * std::cos(p2c - p.psi) + p.d2_mag * std::cos(p1c - p.psi),
                       p.d1_mag * std::sin(p2c - p.psi) + p.d2_mag * std::sin(p1c - p.psi));
  return h;
}

double qfi_mix_separable(const TwoModeProbeParams& p, double chi) {
  const double pc = p.phi1 - p.phi2 + chi;
  const double p1c = p.phi1 + p.phi_d2 + chi;
  const double p2c = p.phi2 + p.phi_d1 - chi;
  const double c2 = sq(std::cos(pc));
  const double s2 = sq(std::sin(pc));
  return 2.0 * f2(p.lambda1, p.lambda2) *
             (c2 * sq(std::sinh(p.r1 - p.r2)) + s2 * sq(std::sinh(p.r1 + p.r2))) +
         2.0 * f3(p.lambda1, p.lambda2) *
             (c2 * sq(std::cosh(p.r1 - p.r2)) + s2 * sq(std::cosh(p.r1 + p.r2))) +
         sq(p.d2_mag) * disp_pair(p.lambda1, p.r1, std::cos(p1c), std::sin(p1c)) +
         sq(p.d1_mag) * disp_pair(p.lambda2, p.r2, std::cos(p2c), std::sin(p2c));
}

double qfi_mix_bs(const TwoModeProbeParams& p, double chi) {
  const double pc = p.phi1 - p.phi2 + chi;
  const double p1c = p.phi1 + p.phi_d2 + chi;
  const double p2c = p.phi2 + p.phi_d1 - chi;
  const double c2p = sq(std::cos(2.0 * p.psi));
  const double s2p = sq(std::sin(2.0 * p.psi));
  double h = 4.0 * sq(std::sin(pc)) *
             (f1(p.lambda1) * sq(std::sinh(2.0 * p.r1)) + f1(p.lambda2) * sq(std::sinh(2.0 * p.r2)));
  h += 2.0 * sq(std::cos(pc)) *
       (f2(p.lambda1, p.lambda2) *
            (c2p * sq(std::sinh(p.r1 - p.r2)) + s2p * sq(std::sinh(p.r1 + p.r2))) +
        f3(p.lambda1, p.lambda2) *
            (c2p * sq(std::cosh(p.r1 - p.r2)) + s2p * sq(std::cosh(p.r1 + p.r2))));
  h += 0.5 * disp_pair(p.lambda1, p.r1,
                       p.d1_mag * std::cos(p2c + p.psi) + p.d2_mag * std::cos(p1c + p.psi),
                       p.d1_mag * std::sin(p2c + p.psi) + p.d2_mag * std::sin(p1c + p.psi));
  h += 0.5 * disp_pair(p.lambda2, p.r2,
                       p.d1_mag * std::cos(p2c - p.psi) - p.d2_mag * std::cos(p1c - p.psi),
                       p.d1_mag * std::sin(p2c - p.psi) - p.d2_mag * std::sin(p1c - p.psi));
  return h;
}

double twomode_squeeze_separable_max(const TwoModeProbeParams& p) {
  return 2.0 * f2(p.lambda1, p.lambda2) * sq(std::cosh(p.r1 + p.r2)) +
         2.0 * f3(p.lambda1, p.lambda2) * sq(std::sinh(p.r1 + p.r2)) +
         4.0 * sq(p.d2_mag) / p.lambda1 * std::exp(2.0 * p.r1) +
         4.0 * sq(p.d1_mag) / p.lambda2 * std::exp(2.0 * p.r2);
}

double twomode_squeeze_bs_max(const TwoModeProbeParams& p) {
  return 4.0 * f1(p.lambda1) * sq(std::cosh(2.0 * p.r1)) +
         4.0 * f1(p.lambda2) * sq(std::cosh(2.0 * p.r2)) +
         2.0 / p.lambda1 * sq(p.d1_mag - p.d2_mag) * std::exp(2.0 * p.r1) +
         2.0 / p.lambda2 * sq(p.d1_mag + p.d2_mag) * std::exp(2.0 * p.r2);
}

double twomode_squeeze_bs_max_negative(const TwoModeProbeParams& p) {
  return 4.0 * f1(p.lambda1) * sq(std::cosh(2.0 * p.r1)) +
         4.0 * f1(p.lambda2) * sq(std::cosh(2.0 * p.r2)) +
         2.0 / p.lambda1 * sq(p.d1_mag - p.d2_mag) * std::exp(-2.0 * p.r1) +
         2.0 / p.lambda2 * sq(p.d1_mag + p.d2_mag) * std::exp(2.0 * p.r2);
}

double twomode_squeeze_bs_advantage(double r1, double r2, double d1, double d2) {
  return 4.0 * std::cosh(2.0 * (r1 + r2)) * sq(std::sinh(r2 - r1)) +
         4.0 * (sq(d2) + 2.0 * d1 * d2 - sq(d1)) * std::exp(r1 + r2) * std::sinh(r2 - r1);
}

double mix_separable_max(const TwoModeProbeParams& p) {
  return 2.0 * f2(p.lambda1, p.lambda2) * sq(std::sinh(p.r1 + p.r2)) +
         2.0 * f3(p.lambda1, p.lambda2) * sq(std::cosh(p.r1 + p.r2)) +
         4.0 * sq(p.d2_mag) / p.lambda1 * std::exp(2.0 * p.r1) +
         4.0 * sq(p.d1_mag) / p.lambda2 * std::exp(2.0 * p.r2);
}

double qfi_onemode_probe_on_twomode(TwoModeChannel kind, double lambda1, double r1, double d1) {
  const double base = 2.0 * lambda1 * std::cosh(2.0 * r1) + 4.0 * sq(d1);
  return kind == TwoModeChannel::kTwoModeSqueeze ? base + 2.0 : base - 2.0;
}

double universal_mix_probe_qfi(double r, double d1, double d2) {
  return 4.0 * sq(std::sinh(2.0 * r)) +
         4.0 * ((sq(d1) + sq(d2)) * std::cosh(2.0 * r) + 2.0 * d1 * d2 * std::sinh(2.0 * r));
}

std::string_view to_string(LimitChannel c) {
  switch (c) {
    case LimitChannel::kRotation: return "R";
    case LimitChannel::kSqueeze: return "S";
    case LimitChannel::kMix: return "B";
    case LimitChannel::kTwoModeSqueeze: return "S_T";
  }
  return "?";
}

double heisenberg_limit(LimitChannel c, double n) {
  switch (c) {
    case LimitChannel::kRotation: return 8.0 * n * (n + 1.0);
    case LimitChannel::kSqueeze: return 2.0 * sq(2.0 * n + 1.0);
    case LimitChannel::kMix: return 4.0 * n * (n + 2.0);
    case LimitChannel::kTwoModeSqueeze: return 4.0 * sq(n + 1.0);
  }
  return 0.0;
}

double shot_noise_limit(LimitChannel c, double n) {
  switch (c) {
    case LimitChannel::kRotation: return 4.0 * n;
    case LimitChannel::kSqueeze: return 2.0 * (2.0 * n + 1.0);
    case LimitChannel::kMix: return 4.0 * n;
    case LimitChannel::kTwoModeSqueeze: return 4.0 * (n + 1.0);
  }
  return 0.0;
}

std::array<LimitTable, 4> limit_table() {
  std::array<LimitTable, 4> out;
  const std::array<LimitChannel, 4> cs = {LimitChannel::kRotation, LimitChannel::kSqueeze,
                                          LimitChannel::kMix, LimitChannel::kTwoModeSqueeze};
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const auto c = cs[i];
    out[i] = {c, [c](double n) { return heisenberg_limit(c, n); },
              [c](double n) { return shot_noise_limit(c, n); }};
  }
  return out;
}

double one_mode_energy(double n_d, double n_th, double r) {
  return n_d + n_th + (1.0 + 2.0 * n_th) * sq(std::sinh(r));
}

double squeezing_for_energy(double n, double n_d, double n_th) {
  const double rest = n - n_d - n_th;
  if (rest < 0.0 || n_d < 0.0 || n_th < 0.0) {
    throw Error(ErrorKind::kInvalidInput,
                fmt::format("energy split n_d={} n_th={} exceeds n={}", n_d, n_th, n));
  }
  return std::asinh(std::sqrt(rest / (1.0 + 2.0 * n_th)));
}

double optimal_temperature_residual(OneModeChannel c, double lambda1, double r, double d_mag) {
  if (!(lambda1 >= 1.0)) throw Error(ErrorKind::kInvalidInput, "lambda must be >= 1");
  const double g = c == OneModeChannel::kPhase ? std::sinh(2.0 * r) : std::cosh(2.0 * r);
  if (g == 0.0) throw Error(ErrorKind::kInvalidInput, "phase-channel residual needs r != 0");
  return lambda1 * lambda1 * lambda1 / sq(lambda1 * lambda1 + 1.0) -
         sq(d_mag) * std::exp(2.0 * r) / (2.0 * sq(g));
}

std::vector<TemperatureRoot> optimal_temperature_roots(OneModeChannel c, double r, double d_mag) {
  constexpr int kGrid = 4000;
  const double log_hi = std::log(1e3);
  auto res = [&](double l) { return optimal_temperature_residual(c, l, r, d_mag); };
  std::vector<TemperatureRoot> roots;
  double lo = 1.0;
  double f_lo = res(lo);
  for (int k = 1; k <= kGrid; ++k) {
    const double hi = std::exp(log_hi * k / kGrid);
    const double f_hi = res(hi);
    if (f_lo == 0.0 || (f_lo > 0.0) != (f_hi > 0.0)) {
      const bool falling = f_lo > 0.0 || (f_lo == 0.0 && f_hi < 0.0);
      double a = lo;
      double b = hi;
      double fa = f_lo;
      for (int it = 0; it < 200 && b - a > 1e-15 * b; ++it) {
        const double m = 0.5 * (a + b);
        const double fm = res(m);
        if (fm == 0.0) {
          a = b = m;
          break;
        }
        if ((fm > 0.0) == (fa > 0.0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      const double root = 0.5 * (a + b);
      if (roots.empty() || std::abs(roots.back().lambda - root) > 1e-12 * root) {
        roots.push_back({root, res(root), falling});
      }
    }
    lo = hi;
    f_lo = f_hi;
  }
  if (roots.empty()) {
    throw Error(ErrorKind::kNoInteriorOptimum,
                fmt::format("residual keeps one sign on [1, 1e3] (value at 1: {:.6g})", res(1.0)));
  }
  return roots;
}

}  // namespace gqfi::closed
