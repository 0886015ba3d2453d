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

namespace gqfi {

/// D(d e^{i phi_d}) R(theta) S(r) rho_th(lambda1) and its adjoint.
struct OneModeProbeParams {
  double lambda1 = 1.0;
  double r = 0.0;
  double theta = 0.0;
  double d_mag = 0.0;
  double phi_d = 0.0;
};

/// S0 = R1(phi1) R2(phi2) B(theta) R1(psi) R2(-psi) S1(r1) S2(r2) on a
/// product thermal state, displaced by (d1 e^{i phi_d1}, d2 e^{i phi_d2}).
struct TwoModeProbeParams {
  double lambda1 = 1.0;
  double lambda2 = 1.0;
  double r1 = 0.0;
  double r2 = 0.0;
  double theta = 0.0;
  double psi = 0.0;
  double phi1 = 0.0;
  double phi2 = 0.0;
  double d1_mag = 0.0;
  double d2_mag = 0.0;
  double phi_d1 = 0.0;
  double phi_d2 = 0.0;
};

}  // namespace gqfi
