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

#include "gqfi/gaussian_core.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace gqfi {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidDimension: return "invalid-dimension";
    case ErrorKind::kStructure: return "structure";
    case ErrorKind::kInvalidInput: return "invalid-input";
    case ErrorKind::kNumericalInstability: return "numerical-instability";
    case ErrorKind::kDecompositionFailure: return "decomposition-failure";
    case ErrorKind::kDegenerateInput: return "degenerate-input";
    case ErrorKind::kCutoffTooSmall: return "cutoff-too-small";
    case ErrorKind::kDegenerateBudget: return "degenerate-budget";
    case ErrorKind::kInvalidFamily: return "invalid-family";
    case ErrorKind::kNoInteriorOptimum: return "no-interior-optimum";
  }
  return "unknown";
}

KMatrix::KMatrix(int modes) : modes_(modes) {
  if (modes < 1) {
    throw Error(ErrorKind::kInvalidDimension, fmt::format("mode count must be >= 1, got {}", modes));
  }
}

RVec KMatrix::diagonal() const {
  RVec k(2 * modes_);
  k.head(modes_).setOnes();
  k.tail(modes_).setConstant(-1.0);
  return k;
}

CMat KMatrix::dense() const { return diagonal().cast<cplx>().asDiagonal(); }

KMatrix make_k(int modes) { return KMatrix(modes); }

CMat assemble_blocks(const CMat& a, const CMat& b) {
  const auto n = a.rows();
  CMat m(2 * n, 2 * n);
  m.topLeftCorner(n, n) = a;
  m.topRightCorner(n, n) = b;
  m.bottomLeftCorner(n, n) = b.conjugate();
  m.bottomRightCorner(n, n) = a.conjugate();
  return m;
}

CVec assemble_pair(const CVec& v) {
  CVec out(2 * v.size());
  out << v, v.conjugate();
  return out;
}

GaussianState::GaussianState(CVec d_tilde, CMat x, CMat y)
    : d_tilde_(std::move(d_tilde)), x_(std::move(x)), y_(std::move(y)) {
  const auto n = d_tilde_.size();
  if (n < 1 || x_.rows() != n || x_.cols() != n || y_.rows() != n || y_.cols() != n) {
    throw Error(ErrorKind::kInvalidDimension,
                fmt::format("inconsistent state blocks: d {} X {}x{} Y {}x{}", n, x_.rows(),
                            x_.cols(), y_.rows(), y_.cols()));
  }
}

GaussianState GaussianState::vacuum(int modes) {
  if (modes < 1) throw Error(ErrorKind::kInvalidDimension, "vacuum needs at least one mode");
  return {CVec::Zero(modes), CMat::Identity(modes, modes), CMat::Zero(modes, modes)};
}

GaussianState GaussianState::thermal(const RVec& symplectic_eigenvalues) {
  const auto n = symplectic_eigenvalues.size();
  return {CVec::Zero(n), symplectic_eigenvalues.cast<cplx>().asDiagonal(), CMat::Zero(n, n)};
}

GaussianState GaussianState::from_moments(const CVec& d, const CMat& sigma) {
  ValidationTolerances tol;
  if (d.size() == 0 || d.size() % 2 != 0 || sigma.rows() != d.size() || sigma.cols() != d.size()) {
    throw Error(ErrorKind::kInvalidDimension, "moments must be 2N and 2N x 2N");
  }
  const auto n = d.size() / 2;
  if ((d.tail(n) - d.head(n).conjugate()).cwiseAbs().maxCoeff() > tol.structure) {
    throw Error(ErrorKind::kStructure, "displacement lacks conjugate-pair structure");
  }
  const CMat x = sigma.topLeftCorner(n, n);
  const CMat y = sigma.topRightCorner(n, n);
  if ((assemble_blocks(x, y) - sigma).cwiseAbs().maxCoeff() > tol.structure) {
    throw Error(ErrorKind::kStructure, "covariance lacks [[X, Y], [conj Y, conj X]] structure");
  }
  return {d.head(n), x, y};
}

RVec symplectic_eigenvalues(const CMat& sigma) {
  Eigen::SelfAdjointEigenSolver<CMat> es(sigma);
  if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= 0.0) {
    throw Error(ErrorKind::kInvalidInput, "covariance is not positive-definite");
  }
  const auto dim = sigma.rows();
  const auto n = dim / 2;
  const CMat root = es.eigenvectors() * es.eigenvalues().cwiseSqrt().asDiagonal() *
                    es.eigenvectors().adjoint();
  const CMat k = KMatrix(static_cast<int>(n)).dense();
  const CMat m = root * k * root;
  Eigen::SelfAdjointEigenSolver<CMat> ks(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  // Spectrum is {-lambda_i} ∪ {+lambda_i}; the top N are the lambdas.
  return ks.eigenvalues().tail(n);
}

namespace {

void check_blocks(const CMat& x, const CMat& y, const ValidationTolerances& tol,
                  ValidationReport& report) {
  const double herm = (x - x.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol.structure) {
    report.violations.push_back(fmt::format("X block not Hermitian (residual {:.3g})", herm));
  }
  const double sym = (y - y.transpose()).cwiseAbs().maxCoeff();
  if (sym > tol.structure) {
    report.violations.push_back(fmt::format("Y block not symmetric (residual {:.3g})", sym));
  }
}

void check_physicality(const CMat& sigma, const ValidationTolerances& tol,
                       ValidationReport& report) {
  try {
    const RVec lambdas = symplectic_eigenvalues(0.5 * (sigma + sigma.adjoint()));
    if (lambdas.minCoeff() < 1.0 - tol.physicality) {
      report.violations.push_back(
          fmt::format("physicality: symplectic eigenvalue {:.6g} < 1", lambdas.minCoeff()));
    }
  } catch (const Error&) {
    report.violations.push_back("physicality: covariance is not positive-definite");
  }
}

}  // namespace

ValidationReport validate_state(const GaussianState& state, const ValidationTolerances& tol) {
  ValidationReport report;
  check_blocks(state.x(), state.y(), tol, report);
  if (report.ok()) check_physicality(state.covariance(), tol, report);
  return report;
}

ValidationReport validate_moments(const CVec& d, const CMat& sigma,
                                  const ValidationTolerances& tol) {
  if (d.size() == 0 || d.size() % 2 != 0 || sigma.rows() != d.size() ||
      sigma.cols() != d.size()) {
    throw Error(ErrorKind::kInvalidDimension,
                fmt::format("moments must be 2N and 2N x 2N, got {} and {}x{}", d.size(),
                            sigma.rows(), sigma.cols()));
  }
  ValidationReport report;
  const auto n = d.size() / 2;
  const double pair = (d.tail(n) - d.head(n).conjugate()).cwiseAbs().maxCoeff();
  if (pair > tol.structure) {
    report.violations.push_back(
        fmt::format("conjugate-pair: second half of d must equal conj of first (residual {:.3g})",
                    pair));
  }
  const double herm = (sigma - sigma.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol.structure) {
    report.violations.push_back(fmt::format("sigma not Hermitian (residual {:.3g})", herm));
  }
  const CMat x = sigma.topLeftCorner(n, n);
  const CMat y = sigma.topRightCorner(n, n);
  const double block = (assemble_blocks(x, y) - sigma).cwiseAbs().maxCoeff();
  if (block > tol.structure) {
    report.violations.push_back(fmt::format("sigma block structure (residual {:.3g})", block));
  }
  check_blocks(x, y, tol, report);
  check_physicality(sigma, tol, report);
  return report;
}

CMat real_form_map(int modes) {
  const KMatrix k(modes);
  const double s = 1.0 / std::sqrt(2.0);
  const cplx i(0.0, 1.0);
  const CMat eye = CMat::Identity(modes, modes);
  CMat l(2 * modes, 2 * modes);
  l << s * eye, s * eye, -i * s * eye, i * s * eye;
  return l;
}

RMat to_real_form(const CMat& m) {
  const auto n = static_cast<int>(m.rows() / 2);
  const CMat l = real_form_map(n);
  const CMat r = l * m * l.adjoint();
  const double residue = r.imag().cwiseAbs().maxCoeff();
  if (residue > 1e-9) {
    throw Error(ErrorKind::kStructure,
                fmt::format("real form has imaginary residue {:.3g}", residue));
  }
  return r.real();
}

CMat to_complex_form(const RMat& m) {
  const auto n = static_cast<int>(m.rows() / 2);
  const CMat l = real_form_map(n);
  return l.adjoint() * m.cast<cplx>() * l;
}

RealMoments complex_to_real(const GaussianState& state) {
  const CMat l = real_form_map(state.modes());
  const CVec d = l * state.displacement();
  if (d.imag().cwiseAbs().maxCoeff() > 1e-9) {
    throw Error(ErrorKind::kStructure, "real-form displacement has imaginary residue");
  }
  RMat sigma = to_real_form(state.covariance());
  return {d.real(), 0.5 * (sigma + sigma.transpose())};
}

GaussianState real_to_complex(const RVec& displacement, const RMat& covariance) {
  if (covariance.rows() != covariance.cols() || covariance.rows() != displacement.size() ||
      displacement.size() == 0 || displacement.size() % 2 != 0) {
    throw Error(ErrorKind::kInvalidDimension, "real-form moments must be 2N and 2N x 2N");
  }
  const double asym = (covariance - covariance.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10 * std::max(1.0, covariance.cwiseAbs().maxCoeff())) {
    throw Error(ErrorKind::kStructure,
                fmt::format("real covariance is not symmetric (residual {:.3g})", asym));
  }
  const auto n = static_cast<int>(displacement.size() / 2);
  const CMat l = real_form_map(n);
  const CVec d = l.adjoint() * displacement.cast<cplx>();
  const CMat sigma = to_complex_form(covariance);
  CMat x = sigma.topLeftCorner(n, n);
  CMat y = sigma.topRightCorner(n, n);
  x = 0.5 * (x + x.adjoint()).eval();
  y = 0.5 * (y + y.transpose()).eval();
  return {d.head(n), x, y};
}

double mean_photon_number(const GaussianState& state) {
  double n = 0.0;
  for (int k = 0; k < state.modes(); ++k) {
    n += 0.5 * (state.x()(k, k).real() - 1.0) + std::norm(state.d_tilde()(k));
  }
  // Rounding can push a vacuum-like state a few ulps below zero.
  return std::max(0.0, n);
}

}  // namespace gqfi
