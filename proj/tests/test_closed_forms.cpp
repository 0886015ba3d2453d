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

#include <gtest/gtest.h>

#include "gqfi/channels.hpp"
#include "gqfi/qfi.hpp"
#include "test_util.hpp"

namespace gqfi {
namespace {

using testing::kPi;
using testing::rel_err;
using testing::Rng;

constexpr int kDraws = 1000;

double engine(const OneModeProbeParams& p, const ChannelSpec& c) {
  return qfi_unitary(make_one_mode_probe(p), c).total;
}

double engine(const TwoModeProbeParams& p, const ChannelSpec& c) {
  return qfi_unitary(make_two_mode_probe(p), c).total;
}

TEST(ClosedFormOracle, CombinedOneModeChannel) {
  Rng rng(101);
  double worst = 0.0;
  for (int i = 0; i < kDraws; ++i) {
    const auto p = rng.one_mode();
    const double wp = rng.normal();
    const double ws = rng.normal();
    const double chi = rng.angle();
    worst = std::max(worst, rel_err(engine(p, combined_channel(wp, ws, chi)),
                                    closed::qfi_one_mode_combined(p, wp, ws, chi)));
  }
  EXPECT_LT(worst, 1e-9);
}

TEST(ClosedFormOracle, PhaseChannel) {
  Rng rng(102);
  double worst = 0.0;
  for (int i = 0; i < kDraws; ++i) {
    const auto p = rng.one_mode();
    worst = std::max(worst, rel_err(engine(p, phase_channel()), closed::qfi_phase(p)));
  }
  EXPECT_LT(worst, 1e-9);
}

TEST(ClosedFormOracle, SqueezeChannel) {
  Rng rng(103);
  double worst = 0.0;
  for (int i = 0; i < kDraws; ++i) {
    const auto p = rng.one_mode();
    const double chi = rng.angle();
    worst = std::max(worst, rel_err(engine(p, squeeze_channel(chi)), closed::qfi_squeeze1(p, chi)));
  }
  EXPECT_LT(worst, 1e-9);
}

TEST(ClosedFormOracle, CombinedReducesToPhaseAndSqueeze) {
  Rng rng(104);
  for (int i = 0; i < 200; ++i) {
    const auto p = rng.one_mode();
    const double chi = rng.angle();
    EXPECT_NEAR(closed::qfi_one_mode_combined(p, 1.0, 0.0, chi), closed::qfi_phase(p), 1e-9);
    EXPECT_NEAR(closed::qfi_one_mode_combined(p, 0.0, 1.0, chi), closed::qfi_squeeze1(p, chi), 1e-9);
  }
}

struct TwoModeCase {
  const char* name;
  bool mix;
  double theta;  // NaN: free
  bool zero_psi;
  double (*formula)(const TwoModeProbeParams&, double);
};

class TwoModeOracle : public ::testing::TestWithParam<TwoModeCase> {};

TEST_P(TwoModeOracle, AgreesWithEngine) {
  const auto& c = GetParam();
  Rng rng(200 + static_cast<int>(c.name[0]) + static_cast<int>(c.name[3]));
  double worst = 0.0;
  for (int i = 0; i < kDraws; ++i) {
    auto p = rng.two_mode();
    const double chi = rng.angle();
    if (!std::isnan(c.theta)) p.theta = c.theta;
    if (c.zero_psi) p.psi = 0.0;
    const auto channel = c.mix ? mix_channel(chi) : twomode_squeeze_channel(chi);
    worst = std::max(worst, rel_err(engine(p, channel), c.formula(p, chi)));
  }
  EXPECT_LT(worst, 1e-9) << c.name;
}

INSTANTIATE_TEST_SUITE_P(
    Families, TwoModeOracle,
    ::testing::Values(
        TwoModeCase{"st_separable", false, 0.0, true, closed::qfi_twomode_squeeze_separable},
        TwoModeCase{"st_bs", false, kPi / 4, false, closed::qfi_twomode_squeeze_bs},
        TwoModeCase{"st_full", false, std::nan(""), false, closed::qfi_twomode_squeeze_full},
        TwoModeCase{"mixseparable", true, 0.0, true, closed::qfi_mix_separable},
        TwoModeCase{"mixbs", true, kPi / 4, false, closed::qfi_mix_bs},
        TwoModeCase{"mixfull", true, std::nan(""), false, closed::qfi_mix_full}),
    [](const auto& info) { return std::string(info.param.name); });

TEST(ClosedForms, FullExpressionsReduceToSlices) {
  Rng rng(301);
  for (int i = 0; i < 300; ++i) {
    auto p = rng.two_mode();
    const double chi = rng.angle();
    p.theta = kPi / 4;
    EXPECT_LT(rel_err(closed::qfi_twomode_squeeze_full(p, chi), closed::qfi_twomode_squeeze_bs(p, chi)), 1e-10);
    EXPECT_LT(rel_err(closed::qfi_mix_full(p, chi), closed::qfi_mix_bs(p, chi)), 1e-10);
    p.theta = 0.0;
    p.psi = 0.0;
    EXPECT_LT(rel_err(closed::qfi_twomode_squeeze_full(p, chi),
                      closed::qfi_twomode_squeeze_separable(p, chi)), 1e-10);
    EXPECT_LT(rel_err(closed::qfi_mix_full(p, chi), closed::qfi_mix_separable(p, chi)), 1e-10);
  }
}

TEST(ClosedForms, SqueezedAndCoherentPhaseValues) {
  EXPECT_NEAR(closed::qfi_phase({1.0, -0.88, 0.0, 0.0, 0.0}), 2.0 * std::pow(std::sinh(1.76), 2), 1e-12);
  EXPECT_NEAR(closed::qfi_phase({1.0, -0.88, 0.0, 0.0, 0.0}), 15.90, 0.05);
  EXPECT_NEAR(closed::qfi_phase({2.0, -0.88, 0.0, 0.0, 0.0}), 25.45, 0.05);
  EXPECT_NEAR(closed::qfi_phase({1.0, 0.0, 0.0, 1.0, 0.0}), 4.0, 1e-12);
  EXPECT_NEAR(closed::qfi_phase({2.0, 0.0, 0.0, 1.0, 0.0}), 2.0, 1e-12);
}

TEST(ClosedForms, OneModeHeisenbergExamples) {
  const double r = std::asinh(1.0);
  EXPECT_NEAR(closed::qfi_phase({1.0, r, 0.3, 0.0, 0.0}), 16.0, 1e-12);
  EXPECT_NEAR(closed::qfi_squeeze1({1.0, r, kPi / 4, 0.0, 0.0}, 0.0), 18.0, 1e-12);
}

TEST(ClosedForms, CombinedMaximumAtStatedAngles) {
  Rng rng(302);
  for (int i = 0; i < 200; ++i) {
    const double wp = rng.uniform(0.0, 2.0);
    const double ws = rng.uniform(0.0, 2.0);
    const double chi = rng.angle();
    const double lambda = rng.uniform(1.0, 4.0);
    const double r = rng.uniform(0.0, 1.2);
    const double d = rng.uniform(0.0, 2.0);
    const OneModeProbeParams opt{lambda, r, -chi / 2 - kPi / 4, d, chi / 2 - kPi / 4};
    const double hmax = closed::combined_max(lambda, r, d, wp, ws);
    EXPECT_LT(rel_err(closed::qfi_one_mode_combined(opt, wp, ws, chi), hmax), 1e-12);
    for (int k = 0; k < 20; ++k) {
      const OneModeProbeParams other{lambda, r, rng.angle(), d, rng.angle()};
      EXPECT_LE(closed::qfi_one_mode_combined(other, wp, ws, chi), hmax * (1 + 1e-12));
    }
  }
}

TEST(ClosedForms, CombinedEnergyForms) {
  Rng rng(303);
  for (int i = 0; i < 200; ++i) {
    const double wp = rng.uniform(0.0, 2.0);
    const double ws = rng.uniform(0.0, 2.0);
    const double n = rng.uniform(0.1, 10.0);
    const double nd = rng.uniform(0.0, n);
    const double nth = rng.uniform(0.0, n - nd);
    const double r = closed::squeezing_for_energy(n, nd, nth);
    EXPECT_NEAR(closed::one_mode_energy(nd, nth, r), n, 1e-10 * n);
    EXPECT_LT(rel_err(closed::combined_max_energy(n, nd, nth, wp, ws),
                      closed::combined_max(1 + 2 * nth, r, std::sqrt(nd), wp, ws)), 1e-10);
    EXPECT_LE(closed::combined_max_energy(n, nd, nth, wp, ws),
              closed::combined_heisenberg(n, wp, ws) * (1 + 1e-12));
  }
  EXPECT_NEAR(closed::combined_heisenberg(3.0, 1.0, 0.0), 8 * 3 * 4, 1e-9);
  EXPECT_NEAR(closed::combined_heisenberg(3.0, 0.0, 1.0), 2 * 49, 1e-9);
  EXPECT_NEAR(closed::combined_max_energy(3.0, 3.0, 0.0, 0.7, 0.4), closed::combined_shot_noise(3.0, 0.7, 0.4), 1e-9);
  EXPECT_THROW(closed::squeezing_for_energy(1.0, 0.8, 0.5), Error);
}

TEST(ClosedForms, PhaseMaximumOverRotation) {
  Rng rng(304);
  for (int i = 0; i < 50; ++i) {
    auto p = rng.one_mode();
    p.r = std::abs(p.r);
    p.theta = kPi / 2 - p.phi_d;
    const double best = closed::qfi_phase(p);
    for (int k = 0; k < 720; ++k) {
      auto q = p;
      q.theta = 2 * kPi * k / 720;
      EXPECT_LE(closed::qfi_phase(q), best * (1 + 1e-12));
    }
  }
}

TEST(ClosedForms, SqueezeMaximumOverAngles) {
  Rng rng(305);
  for (int i = 0; i < 20; ++i) {
    auto p = rng.one_mode();
    p.r = rng.uniform(0.0, 1.2);
    const double chi = rng.angle();
    p.theta = kPi / 4 - chi / 2;
    p.phi_d = kPi / 4 + chi / 2;
    const double best = closed::qfi_squeeze1(p, chi);
    for (int a = 0; a < 90; ++a) {
      for (int b = 0; b < 90; ++b) {
        auto q = p;
        q.theta = 2 * kPi * a / 90;
        q.phi_d = 2 * kPi * b / 90;
        EXPECT_LE(closed::qfi_squeeze1(q, chi), best * (1 + 1e-12));
      }
    }
  }
}

TEST(ClosedForms, TwoModeSqueezeSeparableMaximum) {
  Rng rng(306);
  constexpr int kSteps = 12;
  for (int i = 0; i < 5; ++i) {
    auto p = rng.two_mode();
    p.r1 = rng.uniform(0.0, 1.0);
    p.r2 = rng.uniform(0.0, 1.0);
    p.theta = p.psi = 0.0;
    const double chi = rng.angle();
    const double hmax = closed::twomode_squeeze_separable_max(p);
    auto opt = p;
    opt.phi1 = opt.phi2 = kPi / 4 - chi / 2;
    opt.phi_d1 = opt.phi_d2 = kPi / 4 + chi / 2;
    EXPECT_LT(rel_err(closed::qfi_twomode_squeeze_separable(opt, chi), hmax), 1e-12);
    for (int a = 0; a < kSteps; ++a)
      for (int b = 0; b < kSteps; ++b)
        for (int c = 0; c < kSteps; ++c)
          for (int d = 0; d < kSteps; ++d) {
            auto q = p;
            q.phi1 = 2 * kPi * a / kSteps;
            q.phi2 = 2 * kPi * b / kSteps;
            q.phi_d1 = 2 * kPi * c / kSteps;
            q.phi_d2 = 2 * kPi * d / kSteps;
            EXPECT_LE(closed::qfi_twomode_squeeze_separable(q, chi), hmax * (1 + 1e-12));
          }
  }
}

TEST(ClosedForms, StatedOptimaMatchMaxima) {
  Rng rng(307);
  for (int i = 0; i < 200; ++i) {
    auto p = rng.two_mode();
    const double chi = rng.angle();
    p.r1 = rng.uniform(0.0, 1.0);
    p.r2 = rng.uniform(0.0, 1.0);
    // Mode mixing, separable probe.
    auto m = p;
    m.theta = m.psi = 0.0;
    m.phi1 = kPi / 4 - chi / 2;
    m.phi_d1 = kPi / 4 + chi / 2;
    m.phi2 = -kPi / 4 + chi / 2;
    m.phi_d2 = -kPi / 4 - chi / 2;
    EXPECT_LT(rel_err(closed::qfi_mix_separable(m, chi), closed::mix_separable_max(m)), 1e-12);
    // Two-mode squeezing, beam-splitter probe: phi_chi = pi/2, psi = phi_1chi = phi_2chi = 0.
    auto b = p;
    b.theta = kPi / 4;
    b.psi = 0.0;
    b.phi1 = rng.angle();
    b.phi2 = kPi / 2 - chi - b.phi1;
    b.phi_d2 = b.phi1 + chi;
    b.phi_d1 = b.phi2 + chi;
    EXPECT_LT(rel_err(closed::qfi_twomode_squeeze_bs(b, chi), closed::twomode_squeeze_bs_max(b)), 1e-12);
    // r1 <= 0: phi_chi = 0, psi = phi_1chi = phi_2chi = pi/4.
    auto n = b;
    n.r1 = -p.r1;
    n.psi = kPi / 4;
    n.phi2 = -chi - n.phi1;
    n.phi_d2 = n.phi1 + chi - kPi / 4;
    n.phi_d1 = n.phi2 + chi - kPi / 4;
    EXPECT_LT(rel_err(closed::qfi_twomode_squeeze_bs(n, chi), closed::twomode_squeeze_bs_max_negative(n)),
              1e-12);
  }
}

TEST(ClosedForms, BeamSplitterAdvantageIdentity) {
  Rng rng(308);
  for (int i = 0; i < 1000; ++i) {
    TwoModeProbeParams p;
    p.r1 = rng.normal(0.8);
    p.r2 = rng.normal(0.8);
    p.d1_mag = rng.uniform(0.0, 2.0);
    p.d2_mag = rng.uniform(0.0, 2.0);
    const double diff = closed::twomode_squeeze_bs_max(p) - closed::twomode_squeeze_separable_max(p);
    EXPECT_NEAR(closed::twomode_squeeze_bs_advantage(p.r1, p.r2, p.d1_mag, p.d2_mag), diff,
                1e-10 * std::max(1.0, std::abs(diff)));
  }
  EXPECT_NEAR(closed::twomode_squeeze_bs_advantage(0.7, 0.7, 1.3, 0.4), 0.0, 1e-12);
}

TEST(ClosedForms, UniversalProbeIsChiIndependent) {
  Rng rng(309);
  for (int i = 0; i < 100; ++i) {
    TwoModeProbeParams p;
    const double r = rng.normal(0.7);
    p.r1 = p.r2 = r;
    p.theta = p.psi = kPi / 4;
    p.phi1 = rng.angle();
    p.phi2 = rng.angle();
    p.phi_d1 = rng.angle();
    p.phi_d2 = -kPi / 2 - p.phi1 - p.phi2 - p.phi_d1;
    p.d1_mag = rng.uniform(0.0, 2.0);
    p.d2_mag = rng.uniform(0.0, 2.0);
    const double chi = rng.angle();
    const double expected = closed::universal_mix_probe_qfi(r, p.d1_mag, p.d2_mag);
    EXPECT_LT(rel_err(closed::qfi_mix_full(p, chi), expected), 1e-10);
    EXPECT_LT(rel_err(engine(p, mix_channel(chi)), expected), 1e-10);
  }
  const double r2 = std::asinh(1.0);
  EXPECT_NEAR(closed::universal_mix_probe_qfi(r2, 0.0, 0.0), 32.0, 1e-10);
  EXPECT_NEAR(closed::universal_mix_probe_qfi(0.0, 1.0, 0.0), 4.0, 1e-12);
}

TEST(ClosedForms, OneModeProbeOnTwoModeChannels) {
  Rng rng(310);
  for (int i = 0; i < 300; ++i) {
    auto p = rng.one_mode();
    const double chi = rng.angle();
    const auto probe = make_one_mode_probe_embedded(p);
    const double st = closed::qfi_onemode_probe_on_twomode(closed::TwoModeChannel::kTwoModeSqueeze,
                                                           p.lambda1, p.r, p.d_mag);
    const double mx = closed::qfi_onemode_probe_on_twomode(closed::TwoModeChannel::kMix, p.lambda1,
                                                           p.r, p.d_mag);
    EXPECT_LT(rel_err(qfi_unitary(probe, twomode_squeeze_channel(chi)).total, st), 1e-10);
    EXPECT_LT(rel_err(qfi_unitary(probe, mix_channel(chi)).total, mx), 1e-10);
    const double n = closed::one_mode_energy(p.d_mag * p.d_mag, (p.lambda1 - 1) / 2, p.r);
    EXPECT_NEAR(st, 4 * (n + 1), 1e-9 * (n + 1));
    EXPECT_NEAR(mx, 4 * n, 1e-9 * (n + 1));
  }
  using closed::TwoModeChannel;
  EXPECT_DOUBLE_EQ(closed::qfi_onemode_probe_on_twomode(TwoModeChannel::kTwoModeSqueeze, 1, 0, 0), 4.0);
  EXPECT_DOUBLE_EQ(closed::qfi_onemode_probe_on_twomode(TwoModeChannel::kMix, 1, 0, 0), 0.0);
  EXPECT_NEAR(closed::qfi_onemode_probe_on_twomode(TwoModeChannel::kMix, 1, std::asinh(1.0), 0), 4.0, 1e-12);
}

TEST(ClosedForms, LimitTable) {
  const auto table = closed::limit_table();
  EXPECT_DOUBLE_EQ(table[0].heisenberg(1.0), 16.0);
  EXPECT_DOUBLE_EQ(table[0].shot_noise(1.0), 4.0);
  EXPECT_DOUBLE_EQ(table[3].heisenberg(2.0), 36.0);
  EXPECT_DOUBLE_EQ(table[3].shot_noise(2.0), 12.0);
  EXPECT_DOUBLE_EQ(table[2].heisenberg(0.0), 0.0);
  EXPECT_DOUBLE_EQ(table[2].shot_noise(0.0), 0.0);
  for (const auto& row : table) {
    for (double n = 1.0; n <= 50.0; n += 0.5) EXPECT_GE(row.heisenberg(n), row.shot_noise(n));
  }
}

TEST(ClosedForms, LimitsMatchAllSqueezingMaxima) {
  using closed::LimitChannel;
  for (double n : {0.5, 1.0, 2.0, 5.0, 10.0}) {
    const double r = std::asinh(std::sqrt(n));
    EXPECT_LT(rel_err(closed::qfi_phase({1.0, r, 0.0, 0.0, 0.0}),
                      closed::heisenberg_limit(LimitChannel::kRotation, n)), 1e-9);
    EXPECT_LT(rel_err(closed::qfi_squeeze1({1.0, r, kPi / 4, 0.0, 0.0}, 0.0),
                      closed::heisenberg_limit(LimitChannel::kSqueeze, n)), 1e-9);
    TwoModeProbeParams p;
    p.r1 = p.r2 = std::asinh(std::sqrt(n / 2));
    EXPECT_LT(rel_err(closed::mix_separable_max(p), closed::heisenberg_limit(LimitChannel::kMix, n)), 1e-9);
    EXPECT_LT(rel_err(closed::twomode_squeeze_separable_max(p),
                      closed::heisenberg_limit(LimitChannel::kTwoModeSqueeze, n)), 1e-9);
    EXPECT_LT(rel_err(closed::universal_mix_probe_qfi(p.r1, 0, 0),
                      closed::heisenberg_limit(LimitChannel::kMix, n)), 1e-9);
  }
}

TEST(OptimalTemperature, NoDisplacementMeansNoInteriorOptimum) {
  for (double l : {1.0, 2.0, 10.0, 500.0}) {
    EXPECT_GT(closed::optimal_temperature_residual(closed::OneModeChannel::kPhase, l, 0.8, 0.0), 0.0);
  }
  try {
    closed::optimal_temperature_roots(closed::OneModeChannel::kPhase, 0.8, 0.0);
    FAIL() << "expected no interior optimum";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNoInteriorOptimum);
  }
  EXPECT_THROW(closed::optimal_temperature_residual(closed::OneModeChannel::kPhase, 2.0, 0.0, 1.0), Error);
}

TEST(OptimalTemperature, RootsAreSelfConsistentAndMatchGridSearch) {
  for (auto ch : {closed::OneModeChannel::kPhase, closed::OneModeChannel::kSqueeze}) {
    const double r = 1.0;
    const double d = 1.0;
    const auto roots = closed::optimal_temperature_roots(ch, r, d);
    ASSERT_FALSE(roots.empty());
    for (const auto& root : roots) EXPECT_LT(std::abs(root.residual), 1e-10);
    // H at the optimal angles as a function of lambda.
    auto h = [&](double l) {
      return ch == closed::OneModeChannel::kPhase
                 ? closed::qfi_phase({l, r, kPi / 2, d, 0.0})
                 : closed::qfi_squeeze1({l, r, kPi / 4, d, kPi / 4}, 0.0);
    };
    double best_l = 1.0;
    double best_h = h(1.0);
    for (int k = 0; k <= 200000; ++k) {
      const double l = std::exp(std::log(1e3) * k / 200000.0);
      if (h(l) > best_h) {
        best_h = h(l);
        best_l = l;
      }
    }
    double root_best_l = 1.0;
    double root_best_h = h(1.0);
    for (const auto& root : roots) {
      if (root.is_maximum && h(root.lambda) > root_best_h) {
        root_best_h = h(root.lambda);
        root_best_l = root.lambda;
      }
    }
    EXPECT_NEAR(root_best_l, best_l, 1e-4 * best_l);
    EXPECT_GE(root_best_h, best_h - 1e-9);
  }
}

}  // namespace
}  // namespace gqfi
