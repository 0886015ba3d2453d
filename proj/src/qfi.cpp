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

#include "gqfi/qfi.hpp"

#include <cmath>

#include <fmt/format.h>

namespace gqfi {

namespace {

void check_lambdas(const RVec& lambdas) {
  for (Eigen::Index i = 0; i < lambdas.size(); ++i) {
    if (!(lambdas(i) >= 1.0 - 1e-9)) {
      throw Error(ErrorKind::kInvalidInput,
                  fmt::format("symplectic eigenvalue {} is below 1", lambdas(i)));
    }
  }
}

double f2_factor(double a, double b) { return (a + b) * (a + b) / (a * b + 1.0); }

double f3_factor(double a, double b) {
  const double den = a * b - 1.0;
  if (den < kPureTolerance) return 0.0;
  return (a - b) * (a - b) / den;
}

// Sum_ij f3 |R_ij|^2 and f2 |Q_ij|^2.
void add_block_terms(const CMat& p, const RVec& lambda, QfiBreakdown& out) {
  const auto n = lambda.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      out.r_term += f3_factor(lambda(i), lambda(j)) * std::norm(p(i, j));
      out.q_term += f2_factor(lambda(i), lambda(j)) * std::norm(p(i, n + j));
    }
  }
}

void finish(QfiBreakdown& out) {
  out.total = out.r_term + out.q_term + out.eigen_term + out.disp_term;
}

CMat dense_inverse(const CMat& s) {
  const CMat k = KMatrix(static_cast<int>(s.rows() / 2)).dense();
  return k * s.adjoint() * k;
}

}  // namespace

GaussianState ProbeState::state() const {
  return GaussianState::from_moments(displacement, covariance());
}

CMat ProbeState::inverse_covariance() const {
  const CMat s0 = williamson.symplectic.dense();
  const CMat k = KMatrix(modes()).dense();
  const auto n = williamson.eigenvalues.size();
  RVec dinv(2 * n);
  dinv << williamson.eigenvalues.cwiseInverse(), williamson.eigenvalues.cwiseInverse();
  return k * s0 * k * dinv.cast<cplx>().asDiagonal() * k * s0.adjoint() * k;
}

ProbeState make_probe(const SymplecticMatrix& s0, const RVec& lambdas, const CVec& d_tilde) {
  if (lambdas.size() != s0.modes() || d_tilde.size() != s0.modes()) {
    throw Error(ErrorKind::kInvalidDimension, "probe components disagree on the mode count");
  }
  check_lambdas(lambdas);
  return {WilliamsonForm{s0, lambdas}, assemble_pair(d_tilde)};
}

ProbeState make_one_mode_probe(const OneModeProbeParams& p) {
  const auto s0 = ops::rotation(1, 0, p.theta) * ops::squeezing(1, 0, p.r);
  RVec lambdas(1);
  lambdas << p.lambda1;
  CVec d(1);
  d << std::polar(p.d_mag, p.phi_d);
  return make_probe(s0, lambdas, d);
}

ProbeState make_one_mode_probe_embedded(const OneModeProbeParams& p) {
  const auto s0 = ops::rotation(2, 0, p.theta) * ops::squeezing(2, 0, p.r);
  RVec lambdas(2);
  lambdas << p.lambda1, 1.0;
  CVec d(2);
  d << std::polar(p.d_mag, p.phi_d), 0.0;
  return make_probe(s0, lambdas, d);
}

ProbeState make_two_mode_probe(const TwoModeProbeParams& p) {
  const auto s0 = ops::rotation(2, 0, p.phi1) * ops::rotation(2, 1, p.phi2) *
                  ops::mode_mixing(p.theta) * ops::asymmetric_rotation(p.psi) *
                  ops::squeezing(2, 0, p.r1) * ops::squeezing(2, 1, p.r2);
  RVec lambdas(2);
  lambdas << p.lambda1, p.lambda2;
  CVec d(2);
  d << std::polar(p.d1_mag, p.phi_d1), std::polar(p.d2_mag, p.phi_d2);
  return make_probe(s0, lambdas, d);
}

ProbeState probe_from_state(const GaussianState& state) {
  const auto report = validate_state(state);
  if (!report.ok()) {
    throw Error(ErrorKind::kInvalidInput, "invalid probe state: " + report.violations.front());
  }
  return {williamson(state.covariance()), state.displacement()};
}

double PMatrix::lie_residual() const {
  const CMat p = dense();
  const CMat k = KMatrix(static_cast<int>(r.rows())).dense();
  return (p * k + k * p.adjoint()).cwiseAbs().maxCoeff();
}

PMatrix p_matrix(const ProbeState& probe, const GeneratorW& w) {
  if (probe.modes() != w.modes()) {
    throw Error(ErrorKind::kInvalidInput,
                fmt::format("probe has {} modes, channel has {}", probe.modes(), w.modes()));
  }
  const CMat s0 = probe.williamson.symplectic.dense();
  const CMat p = dense_inverse(s0) * w.lie_element() * s0;
  const auto n = probe.modes();
  return {p.topLeftCorner(n, n), p.topRightCorner(n, n)};
}

PMatrix p_matrix(const ProbeState& probe, const ChannelSpec& channel) {
  return p_matrix(probe, channel.generator);
}

QfiBreakdown qfi_unitary(const ProbeState& probe, const GeneratorW& w) {
  const PMatrix pm = p_matrix(probe, w);
  QfiBreakdown out;
  add_block_terms(pm.dense(), probe.williamson.eigenvalues, out);
  const CVec v = w.lie_element() * probe.displacement + w.gamma();
  const cplx quad = v.dot(probe.inverse_covariance() * v);
  out.disp_term = 2.0 * quad.real();
  if (!std::isfinite(out.disp_term)) {
    throw Error(ErrorKind::kNumericalInstability, "displacement term is not finite");
  }
  finish(out);
  return out;
}

QfiBreakdown qfi_unitary(const ProbeState& probe, const ChannelSpec& channel) {
  return qfi_unitary(probe, channel.generator);
}

QfiBreakdown qfi_general(const GeneralQfiInputs& in) {
  const auto n = in.lambda.size();
  if (n < 1 || in.lambda_dot.size() != n || in.s.rows() != 2 * n || in.s.cols() != 2 * n ||
      in.s_dot.rows() != 2 * n || in.s_dot.cols() != 2 * n || in.d.size() != 2 * n ||
      in.d_dot.size() != 2 * n || in.sigma.rows() != 2 * n || in.sigma.cols() != 2 * n ||
      (in.lambda_ddot && in.lambda_ddot->size() != n)) {
    throw Error(ErrorKind::kInvalidDimension, "inconsistent dimensions in QFI inputs");
  }
  check_lambdas(in.lambda);
  QfiBreakdown out;
  const CMat p = dense_inverse(in.s) * in.s_dot;
  add_block_terms(p, in.lambda, out);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double lam = in.lambda(i);
    if (std::abs(lam - 1.0) < kPureTolerance) {
      if (!in.lambda_ddot) {
        throw Error(ErrorKind::kDegenerateInput,
                    fmt::format("lambda_{} = 1 requires its second derivative", i + 1));
      }
      out.eigen_term += (*in.lambda_ddot)(i);
    } else {
      out.eigen_term += in.lambda_dot(i) * in.lambda_dot(i) / (lam * lam - 1.0);
    }
  }
  const CVec x = in.sigma.partialPivLu().solve(in.d_dot);
  out.disp_term = 2.0 * in.d_dot.dot(x).real();
  if (!std::isfinite(out.disp_term)) {
    throw Error(ErrorKind::kNumericalInstability, "covariance inversion failed");
  }
  finish(out);
  return out;
}

TemperatureFactors temperature_factors(double lambda_i, double lambda_j) {
  if (!(lambda_i >= 1.0 - 1e-9) || !(lambda_j >= 1.0 - 1e-9)) {
    throw Error(ErrorKind::kInvalidInput, "temperature factors need lambda >= 1");
  }
  return {lambda_i * lambda_i / (1.0 + lambda_i * lambda_i), f2_factor(lambda_i, lambda_j),
          f3_factor(lambda_i, lambda_j), 1.0 / lambda_i};
}

}  // namespace gqfi
