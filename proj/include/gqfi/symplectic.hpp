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

#include "gqfi/gaussian_core.hpp"

namespace gqfi {

/// Complex-form symplectic matrix [[alpha, beta], [conj beta, conj alpha]].
class SymplecticMatrix {
 public:
  SymplecticMatrix(CMat alpha, CMat beta);

  static SymplecticMatrix identity(int modes);
  /// Takes the top blocks of a full 2N x 2N matrix.
  static SymplecticMatrix from_dense(const CMat& s);

  int modes() const { return static_cast<int>(alpha_.rows()); }
  const CMat& alpha() const { return alpha_; }
  const CMat& beta() const { return beta_; }
  CMat dense() const { return assemble_blocks(alpha_, beta_); }

  /// K S^+ K.
  SymplecticMatrix inverse() const;
  SymplecticMatrix operator*(const SymplecticMatrix& rhs) const;

  /// max |S K S^+ - K| scaled by max(1, max|S|^2).
  double symplectic_residual() const;

  /// Acts on a covariance: S sigma S^+.
  CMat conjugate(const CMat& sigma) const;

 private:
  CMat alpha_;
  CMat beta_;
};

/// Hermitian generator W = [[X, Y], [conj Y, conj X]] plus linear term
/// gamma = (g, conj g) of a Gaussian unitary exp(i/2 A^+ W A + A^+ K gamma).
class GeneratorW {
 public:
  GeneratorW(CMat x, CMat y, CVec gamma_tilde);
  GeneratorW(CMat x, CMat y);

  int modes() const { return static_cast<int>(x_.rows()); }
  const CMat& x() const { return x_; }
  const CMat& y() const { return y_; }
  const CVec& gamma_tilde() const { return gamma_tilde_; }

  CMat dense() const { return assemble_blocks(x_, y_); }
  CVec gamma() const { return assemble_pair(gamma_tilde_); }
  /// i K W.
  CMat lie_element() const;
  GeneratorW scaled(double t) const;

 private:
  CMat x_;
  CMat y_;
  CVec gamma_tilde_;
};

struct WilliamsonForm {
  SymplecticMatrix symplectic;
  RVec eigenvalues;  // descending, one per mode

  CMat diagonal() const;
  CMat reconstruct() const { return symplectic.conjugate(diagonal()); }
};

struct EulerFactors {
  CMat u1;
  RVec squeezings;
  CMat u2;
};

/// S = exp(iKW). Throws kNumericalInstability if the result violates
/// S K S^+ = K by more than 1e-9.
SymplecticMatrix exp_generator(const GeneratorW& w);

/// b = (int_0^1 exp(iKWt) dt) gamma, via the closed form when iKW is
/// invertible and the power series otherwise.
CVec displacement_shift(const GeneratorW& w);

/// Williamson decomposition sigma = S D S^+.
WilliamsonForm williamson(const CMat& sigma);

SymplecticMatrix euler_compose(const EulerFactors& factors);

namespace detail {

/// Matrix exponential through an eigendecomposition. Returns false when the
/// eigenvector matrix has condition number >= max_condition.
bool expm_eigen(const CMat& a, CMat& out, double max_condition = 1e6);
/// Scaling-and-squaring with the degree-13 Pade approximant.
CMat expm_pade(const CMat& a);
CMat expm(const CMat& a);

/// (iKW)^{-1} (e^{iKW} - I) gamma; throws kInvalidInput if iKW is singular.
CVec displacement_shift_closed(const GeneratorW& w);
/// sum_n (iKW)^n / (n+1)! gamma.
CVec displacement_shift_series(const GeneratorW& w);
bool lie_element_invertible(const GeneratorW& w);

}  // namespace detail

}  // namespace gqfi
