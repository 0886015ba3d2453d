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

#include <gtest/gtest.h>

#include "gqfi/closed_forms.hpp"
#include "gqfi/nelder_mead.hpp"
#include "test_util.hpp"

namespace gqfi {
namespace {

using closed::LimitChannel;
using testing::kPi;
using testing::rel_err;
using testing::Rng;

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no gqfi::Error thrown";
  return ErrorKind::kInvalidInput;
}

std::vector<double> grid_1_to_64() {
  std::vector<double> g;
  for (int n = 1; n <= 64; ++n) g.push_back(n);
  return g;
}

TEST(NelderMead, Rosenbrock) {
  auto f = [](const std::vector<double>& x) {
    return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
  };
  NelderMeadOptions opt;
  opt.max_iter = 5000;
  opt.f_tol = 0.0;
  const auto res = nelder_mead(f, {-1.2, 1.0}, opt);
  EXPECT_TRUE(res.converged);
  EXPECT_NEAR(res.x[0], 1.0, 1e-7);
  EXPECT_NEAR(res.x[1], 1.0, 1e-7);
}

TEST(NelderMead, IterationCapAndCallback) {
  auto f = [](const std::vector<double>& x) { return x[0] * x[0] + 3.0 * x[1] * x[1] + x[2] * x[2]; };
  NelderMeadOptions opt;
  opt.max_iter = 10;
  int calls = 0;
  double last = INFINITY;
  const auto res = nelder_mead(f, {1.0, 2.0, 3.0}, opt, [&](int it, double v) {
    ++calls;
    EXPECT_EQ(it, calls);
    EXPECT_LE(v, last);
    last = v;
  });
  EXPECT_EQ(res.iterations, 10);
  EXPECT_EQ(calls, 10);
  EXPECT_FALSE(res.converged);
}

TEST(NelderMead, ZeroDimensional) {
  const auto res = nelder_mead([](const std::vector<double>&) { return 4.0; }, {}, {});
  EXPECT_EQ(res.fx, 4.0);
  EXPECT_TRUE(res.converged);
}

struct FamilyCase {
  ProbeFamily family;
  EnergyStrategy strategy;
  int modes;
};

TEST(DecodeCandidate, EveryPointSpendsTheBudget) {
  Rng rng(61);
  const std::vector<FamilyCase> cases = {
      {ProbeFamily::kOneMode, EnergyStrategy::kFree, 1},
      {ProbeFamily::kOneMode, EnergyStrategy::kFree, 2},
      {ProbeFamily::kOneMode, EnergyStrategy::kCoherentOnly, 1},
      {ProbeFamily::kOneMode, EnergyStrategy::kSqueezeOnly, 2},
      {ProbeFamily::kTwoModeRestricted, EnergyStrategy::kFree, 2},
      {ProbeFamily::kTwoModeRestricted, EnergyStrategy::kCoherentOnly, 2},
      {ProbeFamily::kTwoModeRestricted, EnergyStrategy::kSqueezeOnly, 2},
      {ProbeFamily::kTwoModeSeparable, EnergyStrategy::kFree, 2},
      {ProbeFamily::kTwoModeSeparable, EnergyStrategy::kSqueezeOnly, 2},
  };
  for (const auto& c : cases) {
    for (int i = 0; i < 200; ++i) {
      const double n = rng.uniform(0.01, 20.0);
      std::vector<double> x(static_cast<std::size_t>(search_dimension(c.family, c.strategy)));
      for (auto& v : x) v = rng.normal(4.0);
      const auto cand = decode_candidate(c.family, {n, c.strategy}, c.modes, x);
      const auto state = cand.probe().state();
      EXPECT_LT(std::abs(mean_photon_number(state) - n), 1e-8 * std::max(1.0, n));
      EXPECT_TRUE(validate_state(state).ok());
      double total = 0.0;
      for (const auto& s : cand.split) {
        EXPECT_GE(s.f_d, 0.0);
        EXPECT_GE(s.f_th, 0.0);
        EXPECT_GE(s.f_sq, -1e-15);
        total += s.f_d + s.f_th + s.f_sq;
      }
      EXPECT_NEAR(total, 1.0, 1e-12);
    }
  }
}

TEST(DecodeCandidate, StrategiesPinTheSplit) {
  const auto coh = decode_candidate(ProbeFamily::kOneMode, {3.0, EnergyStrategy::kCoherentOnly}, 1, {0.4});
  EXPECT_NEAR(coh.one.d_mag, std::sqrt(3.0), 1e-12);
  EXPECT_NEAR(coh.one.r, 0.0, 1e-15);
  EXPECT_EQ(coh.one.lambda1, 1.0);
  const auto sq = decode_candidate(ProbeFamily::kOneMode, {3.0, EnergyStrategy::kSqueezeOnly}, 1, {0.4});
  EXPECT_NEAR(sq.one.r, std::asinh(std::sqrt(3.0)), 1e-12);
  EXPECT_EQ(sq.one.d_mag, 0.0);
  EXPECT_EQ(sq.one.theta, 0.4);
}

TEST(DecodeCandidate, WrongDimension) {
  EXPECT_EQ(kind_of([] { decode_candidate(ProbeFamily::kOneMode, {1.0}, 1, {0.0, 0.0}); }),
            ErrorKind::kInvalidDimension);
}

TEST(AnalyticProbe, ReachesHeisenbergLimits) {
  for (double n : {0.5, 1.0, 2.0, 7.0, 30.0}) {
    const double chi = 0.3 * n;
    auto h = [&](const ChannelSpec& c, ProbeFamily f) { return qfi_unitary(analytic_probe(c, f, n)->probe(), c).total; };
    EXPECT_LT(rel_err(h(phase_channel(), ProbeFamily::kOneMode), closed::heisenberg_limit(LimitChannel::kRotation, n)), 1e-10);
    EXPECT_LT(rel_err(h(squeeze_channel(chi), ProbeFamily::kOneMode), closed::heisenberg_limit(LimitChannel::kSqueeze, n)), 1e-10);
    for (auto f : {ProbeFamily::kTwoModeRestricted, ProbeFamily::kTwoModeSeparable}) {
      EXPECT_LT(rel_err(h(mix_channel(chi), f), closed::heisenberg_limit(LimitChannel::kMix, n)), 1e-10);
      EXPECT_LT(rel_err(h(twomode_squeeze_channel(chi), f), closed::heisenberg_limit(LimitChannel::kTwoModeSqueeze, n)), 1e-10);
    }
    const auto comb = combined_channel(0.7, 1.3, chi);
    EXPECT_LT(rel_err(h(comb, ProbeFamily::kOneMode), closed::combined_heisenberg(n, 0.7, 1.3)), 1e-10);
  }
  EXPECT_FALSE(analytic_probe(custom_channel(GeneratorW(CMat::Ones(1, 1), CMat::Zero(1, 1))), ProbeFamily::kOneMode, 1.0));
  EXPECT_FALSE(analytic_probe(mix_channel(0.0), ProbeFamily::kOneMode, 1.0));
}

TEST(OptimizeProbe, PhaseChannelPutsEverythingIntoSqueezing) {
  const auto res = optimize_probe(phase_channel(), ProbeFamily::kOneMode, {1.0});
  EXPECT_GE(res.best_qfi, 16.0 - 1e-6);
  EXPECT_LT(res.best_qfi, 16.0 + 1e-9);
  EXPECT_LT(res.best.split[0].f_d, 1e-3);
  EXPECT_LT(res.best.split[0].f_th, 1e-3);
  EXPECT_EQ(res.restarts, 32);
  EXPECT_EQ(res.aborted, 0);
}

TEST(OptimizeProbe, SqueezeChannelAngleCondition) {
  for (double chi : {0.0, 1.2}) {
    OptimizerConfig cold;
    cold.warm_starts = false;
    const auto res = optimize_probe(squeeze_channel(chi), ProbeFamily::kOneMode, {1.0}, cold);
    EXPECT_NEAR(res.best_qfi, 18.0, 1e-6);
    EXPECT_NEAR(std::abs(std::sin(2 * res.best.one.theta + chi)), 1.0, 1e-4);
  }
}

TEST(OptimizeProbe, TwoModeSqueezeSeparableHasEqualSqueezing) {
  const auto res = optimize_probe(twomode_squeeze_channel(0.6), ProbeFamily::kTwoModeSeparable, {2.0});
  EXPECT_NEAR(res.best_qfi, 36.0, 1e-6);
  EXPECT_NEAR(std::abs(res.best.two.r1), std::abs(res.best.two.r2), 1e-3);
}

TEST(OptimizeProbe, RestrictedFamilyExceedsSeparableOptimum) {
  // One squeezed vacuum through a balanced beam splitter.
  for (double n : {1.0, 2.0}) {
    const auto st = optimize_probe(twomode_squeeze_channel(0.6), ProbeFamily::kTwoModeRestricted, {n});
    EXPECT_NEAR(st.best_qfi, 8 * n * (n + 1) + 4, 1e-6);
    const auto mix = optimize_probe(mix_channel(0.6), ProbeFamily::kTwoModeRestricted, {n});
    EXPECT_NEAR(mix.best_qfi, 8 * n * (n + 1), 1e-6);
    EXPECT_NEAR(closed::qfi_mix_full(mix.best.two, 0.6), mix.best_qfi, 1e-9 * mix.best_qfi);
    EXPECT_NEAR(closed::qfi_twomode_squeeze_full(st.best.two, 0.6), st.best_qfi, 1e-9 * st.best_qfi);
  }
}

TEST(OptimizeProbe, NeverBelowKnownMaxima) {
  struct Case {
    ChannelSpec channel;
    ProbeFamily family;
    double (*h)(double);
  };
  const std::vector<Case> cases = {
      {phase_channel(), ProbeFamily::kOneMode, [](double n) { return 8 * n * (n + 1); }},
      {squeeze_channel(2.1), ProbeFamily::kOneMode, [](double n) { return 2 * (2 * n + 1) * (2 * n + 1); }},
      {mix_channel(0.9), ProbeFamily::kTwoModeSeparable, [](double n) { return 4 * n * (n + 2); }},
      {twomode_squeeze_channel(0.9), ProbeFamily::kTwoModeSeparable, [](double n) { return 4 * (n + 1) * (n + 1); }},
      {combined_channel(0.5, 1.5, 0.3), ProbeFamily::kOneMode,
       [](double n) { return closed::combined_heisenberg(n, 0.5, 1.5); }},
      {combined_channel(1.5, 0.5, 2.0), ProbeFamily::kOneMode,
       [](double n) { return closed::combined_heisenberg(n, 1.5, 0.5); }},
  };
  OptimizerConfig cfg;
  cfg.restarts = 12;
  for (const auto& c : cases) {
    for (double n : {1.0, 2.0}) {
      EXPECT_GE(optimize_probe(c.channel, c.family, {n}, cfg).best_qfi, c.h(n) - 1e-6)
          << to_string(c.channel.kind) << " n=" << n;
    }
  }
}

TEST(OptimizeProbe, CoherentOnlyMatchesShotNoise) {
  for (double n : {1.0, 2.0, 5.0}) {
    const EnergyBudget b{n, EnergyStrategy::kCoherentOnly};
    EXPECT_LT(rel_err(optimize_probe(phase_channel(), ProbeFamily::kOneMode, b).best_qfi,
                      closed::shot_noise_limit(LimitChannel::kRotation, n)), 1e-9);
    EXPECT_LT(rel_err(optimize_probe(squeeze_channel(0.4), ProbeFamily::kOneMode, b).best_qfi,
                      closed::shot_noise_limit(LimitChannel::kSqueeze, n)), 1e-9);
    EXPECT_LT(rel_err(optimize_probe(mix_channel(0.4), ProbeFamily::kTwoModeRestricted, b).best_qfi,
                      closed::shot_noise_limit(LimitChannel::kMix, n)), 1e-9);
    EXPECT_LT(rel_err(optimize_probe(twomode_squeeze_channel(0.4), ProbeFamily::kTwoModeRestricted, b).best_qfi,
                      closed::shot_noise_limit(LimitChannel::kTwoModeSqueeze, n)), 1e-9);
  }
}

TEST(OptimizeProbe, DeterministicAcrossRunsAndJobs) {
  OptimizerConfig cfg;
  cfg.restarts = 8;
  cfg.seed = 7;
  cfg.warm_starts = false;
  const auto a = optimize_probe(mix_channel(0.3), ProbeFamily::kTwoModeRestricted, {1.5}, cfg);
  const auto b = optimize_probe(mix_channel(0.3), ProbeFamily::kTwoModeRestricted, {1.5}, cfg);
  cfg.jobs = 3;
  const auto c = optimize_probe(mix_channel(0.3), ProbeFamily::kTwoModeRestricted, {1.5}, cfg);
  for (const auto* r : {&b, &c}) {
    EXPECT_EQ(r->best_qfi, a.best_qfi);
    EXPECT_EQ(r->best_params, a.best_params);
    ASSERT_EQ(r->trace.size(), a.trace.size());
    for (std::size_t i = 0; i < a.trace.size(); ++i) {
      EXPECT_EQ(r->trace[i].start, a.trace[i].start);
      EXPECT_EQ(r->trace[i].iteration, a.trace[i].iteration);
      EXPECT_EQ(r->trace[i].qfi, a.trace[i].qfi);
    }
  }
  cfg.seed = 8;
  EXPECT_NE(optimize_probe(mix_channel(0.3), ProbeFamily::kTwoModeRestricted, {1.5}, cfg).best_params,
            a.best_params);
}

TEST(OptimizeProbe, TraceIsMonotonePerStart) {
  OptimizerConfig cfg;
  cfg.restarts = 6;
  const auto res = optimize_probe(combined_channel(1.0, 0.4, 0.2), ProbeFamily::kOneMode, {2.0}, cfg);
  ASSERT_FALSE(res.trace.empty());
  for (std::size_t i = 0; i < res.trace.size(); ++i) {
    EXPECT_LE(res.trace[i].qfi, res.best_qfi);
    if (i > 0 && res.trace[i].start == res.trace[i - 1].start) {
      EXPECT_GT(res.trace[i].qfi, res.trace[i - 1].qfi);
      EXPECT_GE(res.trace[i].iteration, res.trace[i - 1].iteration);
    }
  }
}

TEST(OptimizeProbe, Errors) {
  EXPECT_EQ(kind_of([] { optimize_probe(phase_channel(), ProbeFamily::kOneMode, {0.0}); }),
            ErrorKind::kDegenerateBudget);
  EXPECT_EQ(kind_of([] { optimize_probe(phase_channel(), ProbeFamily::kOneMode, {-1.0}); }),
            ErrorKind::kInvalidInput);
  EXPECT_EQ(kind_of([] { optimize_probe(phase_channel(), ProbeFamily::kTwoModeRestricted, {1.0}); }),
            ErrorKind::kInvalidFamily);
  OptimizerConfig bad;
  bad.restarts = 0;
  EXPECT_EQ(kind_of([&] { optimize_probe(phase_channel(), ProbeFamily::kOneMode, {1.0}, bad); }),
            ErrorKind::kInvalidInput);
}

TEST(OptimizeProbe, OverflowingStartsAreAborted) {
  OptimizerConfig cfg;
  cfg.restarts = 3;
  cfg.max_iter = 5;
  EXPECT_EQ(kind_of([&] { optimize_probe(squeeze_channel(0.0), ProbeFamily::kOneMode, {1e300}, cfg); }),
            ErrorKind::kNumericalInstability);
}

TEST(TwoModeFamily, PsiIsARelabelingOfRotationsAtThetaZero) {
  Rng rng(62);
  for (int i = 0; i < 200; ++i) {
    auto p = rng.two_mode();
    p.theta = 0.0;
    auto q = p;
    q.psi = 0.0;
    q.phi1 = p.phi1 + p.psi;
    q.phi2 = p.phi2 - p.psi;
    for (const auto& c : {mix_channel(rng.angle()), twomode_squeeze_channel(rng.angle()),
                          squeeze_channel(rng.angle(), 2, 1)}) {
      EXPECT_LT(rel_err(qfi_unitary(make_two_mode_probe(p), c).total, qfi_unitary(make_two_mode_probe(q), c).total),
                1e-9);
    }
  }
}

TEST(TwoModeFamily, TwoModeSqueezingIgnoresPsiWithoutDisplacement) {
  Rng rng(63);
  for (int i = 0; i < 200; ++i) {
    auto p = rng.two_mode();
    p.theta = 0.0;
    p.d1_mag = p.d2_mag = 0.0;
    const auto c = twomode_squeeze_channel(rng.angle());
    const double h0 = qfi_unitary(make_two_mode_probe(p), c).total;
    p.psi = rng.angle();
    EXPECT_LT(std::abs(qfi_unitary(make_two_mode_probe(p), c).total - h0), 1e-9 * std::max(1.0, h0));
  }
}

TEST(ScalingExponent, FitRecoversPowerLaw) {
  std::vector<double> n;
  std::vector<double> h;
  for (double x = 1; x <= 100; x *= 1.5) {
    n.push_back(x);
    h.push_back(3.0 * std::pow(x, 1.7));
  }
  const auto fit = fit_scaling(n, h);
  EXPECT_NEAR(fit.exponent, 1.7, 1e-12);
  EXPECT_NEAR(fit.prefactor, 3.0, 1e-10);
}

TEST(ScalingExponent, GridValidation) {
  EXPECT_EQ(kind_of([] { fit_scaling({1, 2, 3}, {1, 2, 3}); }), ErrorKind::kInvalidInput);
  EXPECT_EQ(kind_of([] { fit_scaling({1, 2, 3, 4}, {1, 2, 3, 4}); }), ErrorKind::kInvalidInput);
  EXPECT_EQ(kind_of([] { fit_scaling({1, 2, 3, 40}, {1, 0, 3, 4}); }), ErrorKind::kInvalidFamily);
  // Rotation of the second mode is invisible to a probe living in the first.
  CMat x = CMat::Zero(2, 2);
  x(1, 1) = 1.0;
  const auto blind = custom_channel(GeneratorW(x, CMat::Zero(2, 2)));
  OptimizerConfig cfg;
  cfg.restarts = 2;
  EXPECT_EQ(kind_of([&] {
              scaling_exponent(blind, ProbeFamily::kOneMode, ScalingStrategy::kCoherentOnly, {1, 2, 4, 10}, cfg);
            }),
            ErrorKind::kInvalidFamily);
}

TEST(ScalingExponent, PhaseChannel) {
  const auto heis = scaling_exponent(phase_channel(), ProbeFamily::kOneMode, ScalingStrategy::kOptimalSqueezing,
                                     grid_1_to_64());
  EXPECT_NEAR(heis.exponent, 2.0, 0.05);
  EXPECT_NEAR(heis.qfi.back(), 8.0 * 64 * 65, 1e-6);
  OptimizerConfig cfg;
  cfg.restarts = 4;
  const auto shot = scaling_exponent(phase_channel(), ProbeFamily::kOneMode, ScalingStrategy::kCoherentOnly,
                                     grid_1_to_64(), cfg);
  EXPECT_NEAR(shot.exponent, 1.0, 0.05);
}

TEST(ScalingExponent, OneModeProbeOnTwoModeSqueezing) {
  OptimizerConfig cfg;
  cfg.restarts = 6;
  const auto fit = scaling_exponent(twomode_squeeze_channel(0.5), ProbeFamily::kOneMode,
                                    ScalingStrategy::kOptimalSqueezing, {1, 2, 4, 8, 16, 32, 64}, cfg);
  EXPECT_NEAR(fit.exponent, 1.0, 0.05);
  for (std::size_t i = 0; i < fit.n.size(); ++i) EXPECT_NEAR(fit.qfi[i], 4 * (fit.n[i] + 1), 1e-6);
}

TEST(ConjectureProbe, PhaseChannelSplits) {
  OptimizerConfig cfg;
  cfg.restarts = 8;
  const auto rep = conjecture_probe(phase_channel(), ProbeFamily::kOneMode, {0.5, 1, 2, 4}, cfg);
  EXPECT_FALSE(rep.any_flagged);
  ASSERT_EQ(rep.rows.size(), 4u);
  for (const auto& row : rep.rows) {
    EXPECT_LT(row.max_f_d, kConjectureThreshold);
    EXPECT_LT(row.max_f_th, kConjectureThreshold);
    EXPECT_NEAR(row.best_qfi, 8 * row.n * (row.n + 1), 1e-6);
  }
}

TEST(ConjectureProbe, MixChannel) {
  OptimizerConfig cfg;
  cfg.restarts = 8;
  const auto sep = conjecture_probe(mix_channel(0.0), ProbeFamily::kTwoModeSeparable, {2}, cfg);
  EXPECT_FALSE(sep.any_flagged);
  EXPECT_NEAR(sep.rows[0].best_qfi, 32.0, 1e-6);
  const auto full = conjecture_probe(mix_channel(0.0), ProbeFamily::kTwoModeRestricted, {2}, cfg);
  EXPECT_FALSE(full.any_flagged);
  EXPECT_NEAR(full.rows[0].best_qfi, 48.0, 1e-6);
}

}  // namespace
}  // namespace gqfi
