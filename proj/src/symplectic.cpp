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

#include "gqfi/symplectic.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <fmt/format.h>

namespace gqfi {

SymplecticMatrix::SymplecticMatrix(CMat alpha, CMat beta)
    : alpha_(std::move(alpha)), beta_(std::move(beta)) {
  if (alpha_.rows() < 1 || alpha_.rows() != alpha_.cols() || beta_.rows() != alpha_.rows() ||
      beta_.cols() != alpha_.cols()) {
    throw Error(ErrorKind::kInvalidDimension, "symplectic blocks must be equal N x N");
  }
}

SymplecticMatrix SymplecticMatrix::identity(int modes) {
  if (modes < 1) throw Error(ErrorKind::kInvalidDimension, "identity needs at least one mode");
  return {CMat::Identity(modes, modes), CMat::Zero(modes, modes)};
}

SymplecticMatrix SymplecticMatrix::from_dense(const CMat& s) {
  if (s.rows() != s.cols() || s.rows() % 2 != 0) {
    throw Error(ErrorKind::kInvalidDimension, "symplectic matrix must be 2N x 2N");
  }
  const auto n = s.rows() / 2;
  return {s.topLeftCorner(n, n), s.topRightCorner(n, n)};
}

SymplecticMatrix SymplecticMatrix::inverse() const {
  return {alpha_.adjoint(), -beta_.transpose()};
}

SymplecticMatrix SymplecticMatrix::operator*(const SymplecticMatrix& rhs) const {
  if (rhs.modes() != modes()) {
    throw Error(ErrorKind::kInvalidDimension, "mode count mismatch in symplectic product");
  }
  return {alpha_ * rhs.alpha_ + beta_ * rhs.beta_.conjugate(),
          alpha_ * rhs.beta_ + beta_ * rhs.alpha_.conjugate()};
}

double SymplecticMatrix::symplectic_residual() const {
  const CMat s = dense();
  const CMat k = KMatrix(modes()).dense();
  const double scale = std::max(1.0, s.cwiseAbs2().maxCoeff());
  return (s * k * s.adjoint() - k).cwiseAbs().maxCoeff() / scale;
}

CMat SymplecticMatrix::conjugate(const CMat& sigma) const {
  const CMat s = dense();
  return s * sigma * s.adjoint();
}

GeneratorW::GeneratorW(CMat x, CMat y, CVec gamma_tilde)
    : x_(std::move(x)), y_(std::move(y)), gamma_tilde_(std::move(gamma_tilde)) {
  const auto n = x_.rows();
  if (n < 1 || x_.cols() != n || y_.rows() != n || y_.cols() != n || gamma_tilde_.size() != n) {
    throw Error(ErrorKind::kInvalidDimension, "generator blocks must be N x N with gamma of size N");
  }
  if ((x_ - x_.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, x_.cwiseAbs().maxCoeff())) {
    throw Error(ErrorKind::kStructure, "generator X block must be Hermitian");
  }
  if ((y_ - y_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, y_.cwiseAbs().maxCoeff())) {
    throw Error(ErrorKind::kStructure, "generator Y block must be symmetric");
  }
}

GeneratorW::GeneratorW(CMat x, CMat y) : GeneratorW(x, y, CVec::Zero(x.rows())) {}

CMat GeneratorW::lie_element() const {
  const CMat k = KMatrix(modes()).dense();
  return cplx(0.0, 1.0) * k * dense();
}

GeneratorW GeneratorW::scaled(double t) const { return {t * x_, t * y_, t * gamma_tilde_}; }

CMat WilliamsonForm::diagonal() const {
  const auto n = eigenvalues.size();
  RVec d(2 * n);
  d << eigenvalues, eigenvalues;
  return d.cast<cplx>().asDiagonal();
}

namespace detail {

bool expm_eigen(const CMat& a, CMat& out, double max_condition) {
  Eigen::ComplexEigenSolver<CMat> es(a);
  if (es.info() != Eigen::Success) return false;
  const CMat& v = es.eigenvectors();
  Eigen::JacobiSVD<CMat> svd(v);
  const RVec sv = svd.singularValues();
  if (sv(sv.size() - 1) <= 0.0 || sv(0) / sv(sv.size() - 1) >= max_condition) return false;
  const CVec expd = es.eigenvalues().array().exp();
  out = v * expd.asDiagonal() * v.inverse();
  return true;
}

CMat expm_pade(const CMat& a) {
  static constexpr std::array<double, 14> b = {
      64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
      129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
      1323241920.0,        40840800.0,          960960.0,           16380.0,
      182.0,               1.0};
  constexpr double theta13 = 5.371920351148152;
  const auto n = a.rows();
  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  int s = 0;
  if (norm1 > theta13) s = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
  const CMat as = a / std::ldexp(1.0, s);
  const CMat eye = CMat::Identity(n, n);
  const CMat a2 = as * as;
  const CMat a4 = a2 * a2;
  const CMat a6 = a4 * a2;
  const CMat u =
      as * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 + b[3] * a2 +
            b[1] * eye);
  const CMat v =
      a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * eye;
  CMat r = (v - u).partialPivLu().solve(v + u);
  for (int k = 0; k < s; ++k) r = (r * r).eval();
  return r;
}

CMat expm(const CMat& a) {
  CMat out;
  if (expm_eigen(a, out)) return out;
  return expm_pade(a);
}

bool lie_element_invertible(const GeneratorW& w) {
  Eigen::JacobiSVD<CMat> svd(w.lie_element());
  const RVec sv = svd.singularValues();
  return sv(0) > 0.0 && sv(sv.size() - 1) > 1e-10 * sv(0);
}

CVec displacement_shift_closed(const GeneratorW& w) {
  if (!lie_element_invertible(w)) {
    throw Error(ErrorKind::kInvalidInput, "iKW is not invertible; use the series form");
  }
  const CMat a = w.lie_element();
  const CMat e = expm(a);
  return a.partialPivLu().solve((e - CMat::Identity(a.rows(), a.cols())) * w.gamma());
}

CVec displacement_shift_series(const GeneratorW& w) {
  const CMat a = w.lie_element();
  CVec term = w.gamma();
  CVec sum = term;
  if (term.norm() == 0.0) return sum;
  for (int n = 1; n <= 200; ++n) {
    term = (a * term / static_cast<double>(n + 1)).eval();
    sum += term;
    if (term.norm() < 1e-16 * sum.norm()) return sum;
  }
  throw Error(ErrorKind::kNumericalInstability,
              "displacement series did not converge within 200 terms");
}

}  // namespace detail

SymplecticMatrix exp_generator(const GeneratorW& w) {
  const CMat full = detail::expm(w.lie_element());
  auto s = SymplecticMatrix::from_dense(full);
  const double residual = s.symplectic_residual();
  if (!(residual <= 1e-9)) {
    throw Error(ErrorKind::kNumericalInstability,
                fmt::format("exp(iKW) symplecticity residual {:.3g}; reduce |W|", residual));
  }
  return s;
}

CVec displacement_shift(const GeneratorW& w) {
  if (w.gamma_tilde().norm() == 0.0) return CVec::Zero(2 * w.modes());
  if (detail::lie_element_invertible(w)) return detail::displacement_shift_closed(w);
  return detail::displacement_shift_series(w);
}

namespace {

// Rotates v so its largest-modulus entry (first one on ties) is real positive.
void fix_phase(Eigen::Ref<CVec> v) {
  Eigen::Index best = 0;
  double best_abs = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v(i));
    if (a > best_abs * (1.0 + 1e-12)) {
      best_abs = a;
      best = i;
    }
  }
  if (best_abs > 0.0) v *= std::conj(v(best)) / best_abs;
}

}  // namespace

WilliamsonForm williamson(const CMat& sigma) {
  if (sigma.rows() != sigma.cols() || sigma.rows() == 0 || sigma.rows() % 2 != 0) {
    throw Error(ErrorKind::kInvalidDimension, "covariance must be 2N x 2N");
  }
  const auto n = sigma.rows() / 2;
  const CMat herm = 0.5 * (sigma + sigma.adjoint());
  Eigen::SelfAdjointEigenSolver<CMat> es(herm);
  if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= 0.0) {
    throw Error(ErrorKind::kInvalidInput, "covariance is not positive-definite");
  }
  const CMat root = es.eigenvectors() * es.eigenvalues().cwiseSqrt().asDiagonal() *
                    es.eigenvectors().adjoint();
  const CMat k = KMatrix(static_cast<int>(n)).dense();
  const CMat m = root * k * root;
  // sigma^{1/2} K sigma^{1/2} is Hermitian with spectrum {±lambda_i}; its
  // eigenvectors map to K-orthonormal eigenvectors of sigma K.
  Eigen::SelfAdjointEigenSolver<CMat> ms(0.5 * (m + m.adjoint()));
  if (ms.info() != Eigen::Success) {
    throw Error(ErrorKind::kDecompositionFailure, "eigensolver failed on sigma^1/2 K sigma^1/2");
  }
  RVec lambdas(n);
  CMat cols(2 * n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index src = 2 * n - 1 - i;  // descending positive eigenvalues
    const double lambda = ms.eigenvalues()(src);
    if (lambda <= 0.0) {
      throw Error(ErrorKind::kDecompositionFailure, "expected N positive eigenvalues");
    }
    CVec u = ms.eigenvectors().col(src);
    fix_phase(u);
    lambdas(i) = lambda;
    cols.col(i) = root * u / std::sqrt(lambda);
  }
  // Column i holds (alpha_i; conj(beta)_i).
  const CMat alpha = cols.topRows(n);
  const CMat beta = cols.bottomRows(n).conjugate();
  WilliamsonForm form{SymplecticMatrix(alpha, beta), lambdas};
  const double scale = std::max(1.0, sigma.cwiseAbs().maxCoeff());
  const double residual = (form.reconstruct() - sigma).cwiseAbs().maxCoeff() / scale;
  if (!(residual <= 1e-8)) {
    throw Error(ErrorKind::kDecompositionFailure,
                fmt::format("Williamson reconstruction residual {:.3g}", residual));
  }
  return form;
}

SymplecticMatrix euler_compose(const EulerFactors& f) {
  const auto n = f.squeezings.size();
  if (f.u1.rows() != n || f.u1.cols() != n || f.u2.rows() != n || f.u2.cols() != n || n < 1) {
    throw Error(ErrorKind::kInvalidDimension, "Euler factors must share the mode count");
  }
  const CMat eye = CMat::Identity(n, n);
  for (const CMat* u : {&f.u1, &f.u2}) {
    const double dev = ((*u) * u->adjoint() - eye).cwiseAbs().maxCoeff();
    if (dev > 1e-10) {
      throw Error(ErrorKind::kInvalidInput, fmt::format("Euler factor not unitary ({:.3g})", dev));
    }
  }
  const CMat ch = f.squeezings.array().cosh().matrix().cast<cplx>().asDiagonal();
  const CMat sh = f.squeezings.array().sinh().matrix().cast<cplx>().asDiagonal();
  return {f.u1 * ch * f.u2, -f.u1 * sh * f.u2.conjugate()};
}

}  // namespace gqfi
