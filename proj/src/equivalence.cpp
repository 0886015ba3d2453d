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

#include "gqfi/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "gqfi/closed_forms.hpp"
#include "gqfi/qfi.hpp"

namespace gqfi {

namespace {

constexpr double kPi = std::numbers::pi;

class Draws {
 public:
  explicit Draws(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  double normal(double sd) { return std::normal_distribution<double>(0.0, sd)(gen_); }
  double angle() { return uniform(0.0, 2.0 * kPi); }

  OneModeProbeParams one_mode() { return {uniform(1.0, 4.0), normal(0.7), angle(), uniform(0.0, 2.0), angle()}; }

  TwoModeProbeParams two_mode() {
    TwoModeProbeParams p;
    p.lambda1 = uniform(1.0, 4.0);
    p.lambda2 = uniform(1.0, 4.0);
    p.r1 = normal(0.7);
    p.r2 = normal(0.7);
    p.theta = angle();
    p.psi = angle();
    p.phi1 = angle();
    p.phi2 = angle();
    p.d1_mag = uniform(0.0, 2.0);
    p.d2_mag = uniform(0.0, 2.0);
    p.phi_d1 = angle();
    p.phi_d2 = angle();
    return p;
  }

 private:
  std::mt19937_64 gen_;
};

// One draw: (engine value, closed-form value).
using Family = std::function<std::pair<double, double>(Draws&)>;

double engine(const OneModeProbeParams& p, const ChannelSpec& c) {
  return qfi_unitary(c.modes() == 1 ? make_one_mode_probe(p) : make_one_mode_probe_embedded(p), c).total;
}

double engine(const TwoModeProbeParams& p, const ChannelSpec& c) {
  return qfi_unitary(make_two_mode_probe(p), c).total;
}

Family two_mode_family(bool mix, double theta, bool zero_psi, double (*formula)(const TwoModeProbeParams&, double)) {
  return [=](Draws& g) {
    auto p = g.two_mode();
    const double chi = g.angle();
    if (!std::isnan(theta)) p.theta = theta;
    if (zero_psi) p.psi = 0.0;
    return std::pair{engine(p, mix ? mix_channel(chi) : twomode_squeeze_channel(chi)), formula(p, chi)};
  };
}

std::vector<std::pair<std::string, Family>> families() {
  const double free = std::nan("");
  return {
      {"combined-one-mode",
       [](Draws& g) {
         const auto p = g.one_mode();
         const double wp = g.normal(1.0);
         const double ws = g.normal(1.0);
         const double chi = g.angle();
         return std::pair{engine(p, combined_channel(wp, ws, chi)), closed::qfi_one_mode_combined(p, wp, ws, chi)};
       }},
      {"phase",
       [](Draws& g) {
         const auto p = g.one_mode();
         return std::pair{engine(p, phase_channel()), closed::qfi_phase(p)};
       }},
      {"squeeze",
       [](Draws& g) {
         const auto p = g.one_mode();
         const double chi = g.angle();
         return std::pair{engine(p, squeeze_channel(chi)), closed::qfi_squeeze1(p, chi)};
       }},
      {"st-separable", two_mode_family(false, 0.0, true, closed::qfi_twomode_squeeze_separable)},
      {"st-bs", two_mode_family(false, kPi / 4, false, closed::qfi_twomode_squeeze_bs)},
      {"st-full", two_mode_family(false, free, false, closed::qfi_twomode_squeeze_full)},
      {"mix-separable", two_mode_family(true, 0.0, true, closed::qfi_mix_separable)},
      {"mix-bs", two_mode_family(true, kPi / 4, false, closed::qfi_mix_bs)},
      {"mix-full", two_mode_family(true, free, false, closed::qfi_mix_full)},
      {"mix-universal",
       [](Draws& g) {
         TwoModeProbeParams p;
         p.r1 = p.r2 = g.normal(0.7);
         p.theta = p.psi = kPi / 4;
         p.phi1 = g.angle();
         p.phi2 = g.angle();
         p.phi_d1 = g.angle();
         p.phi_d2 = -kPi / 2 - p.phi1 - p.phi2 - p.phi_d1;
         p.d1_mag = g.uniform(0.0, 2.0);
         p.d2_mag = g.uniform(0.0, 2.0);
         const double chi = g.angle();
         return std::pair{engine(p, mix_channel(chi)), closed::universal_mix_probe_qfi(p.r1, p.d1_mag, p.d2_mag)};
       }},
      {"one-mode-on-st",
       [](Draws& g) {
         const OneModeProbeParams p{g.uniform(1.0, 4.0), g.normal(0.7), g.angle(), g.uniform(0.0, 2.0), g.angle()};
         const double chi = g.angle();
         return std::pair{engine(p, twomode_squeeze_channel(chi)),
                          closed::qfi_onemode_probe_on_twomode(closed::TwoModeChannel::kTwoModeSqueeze, p.lambda1,
                                                               p.r, p.d_mag)};
       }},
      {"one-mode-on-mix",
       [](Draws& g) {
         const OneModeProbeParams p{g.uniform(1.0, 4.0), g.normal(0.7), g.angle(), g.uniform(0.0, 2.0), g.angle()};
         const double chi = g.angle();
         return std::pair{engine(p, mix_channel(chi)),
                          closed::qfi_onemode_probe_on_twomode(closed::TwoModeChannel::kMix, p.lambda1, p.r,
                                                               p.d_mag)};
       }},
  };
}

}  // namespace

std::vector<std::string> equivalence_families() {
  std::vector<std::string> names;
  for (const auto& [name, f] : families()) names.push_back(name);
  return names;
}

std::vector<EquivalenceRow> run_equivalence_panel(int draws, std::uint64_t seed, double tol, double engine_scale) {
  std::vector<EquivalenceRow> rows;
  std::uint64_t index = 0;
  for (const auto& [name, family] : families()) {
    Draws g(seed + 1000003 * ++index);
    EquivalenceRow row{name, draws, 0.0, false};
    for (int i = 0; i < draws; ++i) {
      const auto [e, c] = family(g);
      const double dev = std::abs(engine_scale * e - c) / std::max(1.0, std::abs(c));
      row.max_deviation = std::isnan(dev) ? INFINITY : std::max(row.max_deviation, dev);
    }
    row.pass = row.max_deviation < tol;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace gqfi
