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

/**
 * @file
 * Complex-form phase-space data model for N-mode Gaussian states.
 *
 * Conventions: the field vector is (a_1..a_N, a_1^+..a_N^+), the covariance is
 * the symmetrized (anticommutator) second moment, and the vacuum covariance is
 * the identity. Real form uses the ordering (x_1..x_N, p_1..p_N) with
 * x = (a^+ + a)/sqrt(2), p = i(a^+ - a)/sqrt(2).
 */

#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gqfi/errors.hpp"

namespace gqfi {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

/// The commutation matrix K = diag(I, -I).
class KMatrix {
 public:
  explicit KMatrix(int modes);

  int modes() const { return modes_; }
  /// Diagonal entries: +1 for the first N, -1 for the last N.
  RVec diagonal() const;
  CMat dense() const;

 private:
  int modes_;
};

KMatrix make_k(int modes);

/// Assembles [[a, b], [conj(b), conj(a)]].
CMat assemble_blocks(const CMat& a, const CMat& b);

/// Assembles (v, conj(v)).
CVec assemble_pair(const CVec& v);

/// Gaussian state stored by its independent parts: the first half of the
/// displacement and the (X, Y) covariance blocks. The full displacement and
/// covariance are assembled on demand, so conjugate-pair structure holds by
/// construction.
class GaussianState {
 public:
  GaussianState(CVec d_tilde, CMat x, CMat y);

  static GaussianState vacuum(int modes);
  static GaussianState thermal(const RVec& symplectic_eigenvalues);
  /// Builds from full 2N moments; throws kStructure if they lack the
  /// conjugate-pair/block structure.
  static GaussianState from_moments(const CVec& d, const CMat& sigma);

  int modes() const { return static_cast<int>(d_tilde_.size()); }
  const CVec& d_tilde() const { return d_tilde_; }
  const CMat& x() const { return x_; }
  const CMat& y() const { return y_; }

  CVec displacement() const { return assemble_pair(d_tilde_); }
  CMat covariance() const { return assemble_blocks(x_, y_); }

 private:
  CVec d_tilde_;
  CMat x_;
  CMat y_;
};

struct ValidationTolerances {
  double structure = 1e-10;
  double physicality = 1e-9;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks X Hermitian, Y symmetric and all symplectic eigenvalues >= 1.
ValidationReport validate_state(const GaussianState& state, const ValidationTolerances& tol = {});

/// Same checks on raw full moments, including the conjugate-pair structure of
/// d and the block structure of sigma.
ValidationReport validate_moments(const CVec& d, const CMat& sigma,
                                  const ValidationTolerances& tol = {});

/// Symplectic eigenvalues (ascending) of a Hermitian positive-definite
/// covariance; throws kInvalidInput if sigma is not positive-definite.
RVec symplectic_eigenvalues(const CMat& sigma);

struct RealMoments {
  RVec displacement;
  RMat covariance;
};

/// L = (1/sqrt 2) [[I, I], [-iI, iI]] mapping complex-form to real-form.
CMat real_form_map(int modes);

RealMoments complex_to_real(const GaussianState& state);
GaussianState real_to_complex(const RVec& displacement, const RMat& covariance);

/// Real form of a complex-form 2N x 2N matrix (symplectic or covariance):
/// L M L^+. Throws kStructure if the result is not real to 1e-9.
RMat to_real_form(const CMat& m);
/// Inverse of to_real_form: L^+ M L.
CMat to_complex_form(const RMat& m);

/// Mean total photon number: sum_k (sigma_kk - 1)/2 + |d_k|^2.
double mean_photon_number(const GaussianState& state);

}  // namespace gqfi
