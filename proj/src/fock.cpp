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

#include "gqfi/fock.hpp"

#include <cmath>
#include <numbers>
#include <tuple>
#include <utility>

#include <Eigen/Sparse>
#include <fmt/format.h>

namespace gqfi {

namespace {

using SpMat = Eigen::SparseMatrix<cplx>;
using Triplet = Eigen::Triplet<cplx>;

constexpr cplx kI(0.0, 1.0);

SpMat ladder(int m) {
  std::vector<Triplet> t;
  for (int k = 1; k < m; ++k) t.emplace_back(k - 1, k, std::sqrt(static_cast<double>(k)));
  SpMat a(m, m);
  a.setFromTriplets(t.begin(), t.end());
  return a;
}

SpMat kron(const SpMat& x, const SpMat& y) {
  std::vector<Triplet> t;
  for (int i = 0; i < x.outerSize(); ++i) {
    for (SpMat::InnerIterator ix(x, i); ix; ++ix) {
      for (int j = 0; j < y.outerSize(); ++j) {
        for (SpMat::InnerIterator iy(y, j); iy; ++iy) {
          t.emplace_back(ix.row() * y.rows() + iy.row(), ix.col() * y.cols() + iy.col(), ix.value() * iy.value());
        }
      }
    }
  }
  SpMat out(x.rows() * y.rows(), x.cols() * y.cols());
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

// Padded number basis with `levels` states per mode.
struct Space {
  int modes = 1;
  int levels = 0;
  std::vector<SpMat> a;

  Space(int n, int m) : modes(n), levels(m) {
    const SpMat a1 = ladder(m);
    if (n == 1) {
      a = {a1};
    } else {
      SpMat id(m, m);
      id.setIdentity();
      a = {kron(a1, id), kron(id, a1)};
    }
  }
  int dim() const { return modes == 1 ? levels : levels * levels; }
  SpMat zero() const { return SpMat(dim(), dim()); }
  SpMat ad(int k) const { return SpMat(a[k].adjoint()); }
  int number(int index, int k) const { return modes == 1 ? index : (k == 0 ? index / levels : index % levels); }
};

// Weighted population in the top two levels of any mode. A truncated generator
// reflects amplitude off the end of the padded space, so this must stay small
// for the padded exponentials to match the infinite-dimensional ones.
struct EdgeGuard {
  const Space& space;
  const RVec& weights;
  double tol;
  int cutoff;

  void operator()(const CMat& v) const {
    double edge = 0.0;
    for (int i = 0; i < space.dim(); ++i) {
      bool top = false;
      for (int k = 0; k < space.modes; ++k) top = top || space.number(i, k) >= space.levels - 2;
      if (top) edge += v.row(i).cwiseAbs2().transpose().dot(weights);
    }
    if (edge > tol) {
      throw Error(ErrorKind::kCutoffTooSmall,
                  fmt::format("padded space edge holds {:.3e} of the trace at cutoff {} (tolerance {:.1e})", edge,
                              cutoff, tol));
    }
  }
};

// exp(L) V by Taylor series on L/s with ||L/s||_1 <= 4, checking the edge after each step.
CMat expm_action(const SpMat& l, CMat v, const EdgeGuard& guard) {
  double norm = 0.0;
  for (int j = 0; j < l.outerSize(); ++j) {
    double col = 0.0;
    for (SpMat::InnerIterator it(l, j); it; ++it) col += std::abs(it.value());
    norm = std::max(norm, col);
  }
  const int steps = std::max(1, static_cast<int>(std::ceil(norm / 4.0)));
  for (int s = 0; s < steps; ++s) {
    CMat term = v;
    for (int j = 1; j < 120; ++j) {
      term = (l * term) / (static_cast<double>(steps) * j);
      v += term;
      if (term.norm() <= 1e-18 * v.norm()) break;
    }
    guard(v);
  }
  return v;
}

// i/2 A^+ W A + A^+ K gamma, normal ordered; dropped constants only change a global phase.
SpMat gaussian_generator(const Space& sp, const GeneratorW& w) {
  const CMat x = w.dense().topLeftCorner(sp.modes, sp.modes);
  const CMat y = w.dense().topRightCorner(sp.modes, sp.modes);
  const CVec g = w.gamma().head(sp.modes);
  SpMat l = sp.zero();
  for (int i = 0; i < sp.modes; ++i) {
    for (int j = 0; j < sp.modes; ++j) {
      if (x(i, j) != 0.0) {
        l += (0.5 * kI * x(i, j)) * (sp.ad(i) * sp.a[j]);
        l += (0.5 * kI * std::conj(x(i, j))) * (sp.ad(j) * sp.a[i]);
      }
      if (y(i, j) != 0.0) {
        l += (0.5 * kI * y(i, j)) * (sp.ad(i) * sp.ad(j));
        l += (0.5 * kI * std::conj(y(i, j))) * (sp.a[i] * sp.a[j]);
      }
    }
    if (g(i) != 0.0) l += g(i) * sp.ad(i) - std::conj(g(i)) * sp.a[i];
  }
  l.prune(cplx(0.0));
  return l;
}

SpMat squeeze_generator(const Space& sp, int k, double r) {
  return SpMat((-0.5 * r) * (sp.ad(k) * sp.ad(k)) + (0.5 * r) * (sp.a[k] * sp.a[k]));
}

void rotate(const Space& sp, int k, double theta, CMat& v) {
  for (int i = 0; i < sp.dim(); ++i) v.row(i) *= std::exp(-kI * theta * static_cast<double>(sp.number(i, k)));
}

struct Prepared {
  Space space;
  RVec weights;
  CMat vectors;
};

RVec thermal_weights(double lambda, int levels) {
  const double n = (lambda - 1.0) / 2.0;
  RVec p(levels);
  for (int k = 0; k < levels; ++k) p(k) = std::pow(n, k) / std::pow(1.0 + n, k + 1);
  if (n == 0.0) {
    p.setZero();
    p(0) = 1.0;
  }
  return p;
}

// Probe eigenvectors U|k> on the padded space, one column per kept thermal component.
Prepared prepare(const FockProbe& probe, int modes, int cutoff, const FockOptions& opt) {
  const int pad = std::max(8, cutoff / 2);
  Prepared out{Space(modes, cutoff + pad), {}, {}};
  const Space& sp = out.space;
  const auto* one = std::get_if<OneModeProbeParams>(&probe);
  const auto* two = std::get_if<TwoModeProbeParams>(&probe);
  if (two && modes != 2) throw Error(ErrorKind::kInvalidDimension, "two-mode probe needs two modes");

  const RVec p1 = thermal_weights(one ? one->lambda1 : two->lambda1, sp.levels);
  const RVec p2 = modes == 2 ? thermal_weights(two ? two->lambda2 : 1.0, sp.levels) : RVec::Ones(1);
  std::vector<std::pair<int, double>> kept;
  for (int i = 0; i < sp.dim(); ++i) {
    const double w = modes == 1 ? p1(i) : p1(sp.number(i, 0)) * p2(sp.number(i, 1));
    if (w >= opt.min_weight) kept.emplace_back(i, w);
  }
  out.weights.resize(static_cast<Eigen::Index>(kept.size()));
  out.vectors = CMat::Zero(sp.dim(), static_cast<Eigen::Index>(kept.size()));
  for (std::size_t c = 0; c < kept.size(); ++c) {
    out.weights(static_cast<Eigen::Index>(c)) = kept[c].second;
    out.vectors(kept[c].first, static_cast<Eigen::Index>(c)) = 1.0;
  }

  CMat& v = out.vectors;
  const EdgeGuard guard{sp, out.weights, opt.leak_tol, cutoff};
  SpMat disp = sp.zero();
  if (one) {
    v = expm_action(squeeze_generator(sp, 0, one->r), v, guard);
    rotate(sp, 0, one->theta, v);
    const cplx d = std::polar(one->d_mag, one->phi_d);
    disp = SpMat(d * sp.ad(0) - std::conj(d) * sp.a[0]);
  } else {
    v = expm_action(SpMat(squeeze_generator(sp, 0, two->r1) + squeeze_generator(sp, 1, two->r2)), v, guard);
    rotate(sp, 0, two->psi, v);
    rotate(sp, 1, -two->psi, v);
    v = expm_action(SpMat(two->theta * (sp.ad(0) * sp.a[1] - sp.ad(1) * sp.a[0])), v, guard);
    rotate(sp, 0, two->phi1, v);
    rotate(sp, 1, two->phi2, v);
    const cplx d1 = std::polar(two->d1_mag, two->phi_d1);
    const cplx d2 = std::polar(two->d2_mag, two->phi_d2);
    disp = SpMat(d1 * sp.ad(0) - std::conj(d1) * sp.a[0] + d2 * sp.ad(1) - std::conj(d2) * sp.a[1]);
  }
  if (disp.nonZeros() > 0) v = expm_action(disp, v, guard);
  return out;
}

CMat truncate(const Space& sp, int cutoff, const CMat& v) {
  if (sp.modes == 1) return v.topRows(cutoff);
  CMat out(cutoff * cutoff, v.cols());
  for (int k1 = 0; k1 < cutoff; ++k1) out.middleRows(k1 * cutoff, cutoff) = v.middleRows(k1 * sp.levels, cutoff);
  return out;
}

double leakage(const RVec& w, const CMat& v) { return 1.0 - (v.colwise().squaredNorm().transpose().cwiseProduct(w)).sum(); }

void check_leak(double leak, int cutoff, const FockOptions& opt, const char* what) {
  if (leak > opt.leak_tol) {
    throw Error(ErrorKind::kCutoffTooSmall,
                fmt::format("{} loses {:.3e} of its trace at cutoff {} (tolerance {:.1e})", what, leak, cutoff,
                            opt.leak_tol));
  }
}

int channel_modes_for(const FockProbe& probe, int channel_modes) {
  if (std::holds_alternative<TwoModeProbeParams>(probe) && channel_modes != 2) {
    throw Error(ErrorKind::kInvalidInput, "two-mode probe on a one-mode channel");
  }
  if (channel_modes < 1 || channel_modes > 2) {
    throw Error(ErrorKind::kInvalidDimension, "Fock oracle handles one or two modes");
  }
  return channel_modes;
}

struct Evolved {
  RVec weights;
  CMat v0;
  CMat vp;
  CMat vm;
};

Evolved evolve(const FockProbe& probe, const ChannelSpec& channel, int cutoff, const FockOptions& opt) {
  const int modes = channel_modes_for(probe, channel.modes());
  if (cutoff < 8) throw Error(ErrorKind::kInvalidInput, "Fock cutoff must be at least 8");
  const auto prep = prepare(probe, modes, cutoff, opt);
  const SpMat l = gaussian_generator(prep.space, channel.generator);
  const EdgeGuard guard{prep.space, prep.weights, opt.leak_tol, cutoff};
  Evolved e{prep.weights, truncate(prep.space, cutoff, prep.vectors),
            truncate(prep.space, cutoff, expm_action(SpMat(opt.h * l), prep.vectors, guard)),
            truncate(prep.space, cutoff, expm_action(SpMat(-opt.h * l), prep.vectors, guard))};
  check_leak(leakage(e.weights, e.v0), cutoff, opt, "probe");
  check_leak(leakage(e.weights, e.vp), cutoff, opt, "state at +h");
  check_leak(leakage(e.weights, e.vm), cutoff, opt, "state at -h");
  return e;
}

}  // namespace

int max_cutoff(int modes) { return modes == 1 ? 128 : 40; }

FockDensity build_fock_state(const FockProbe& probe, int modes, int cutoff, const FockOptions& opt) {
  modes = channel_modes_for(probe, modes);
  if (cutoff < 8) throw Error(ErrorKind::kInvalidInput, "Fock cutoff must be at least 8");
  const auto prep = prepare(probe, modes, cutoff, opt);
  const CMat v = truncate(prep.space, cutoff, prep.vectors);
  check_leak(leakage(prep.weights, v), cutoff, opt, "probe");
  FockDensity out{cutoff, modes, v * prep.weights.cast<cplx>().asDiagonal() * v.adjoint()};
  out.matrix = 0.5 * (out.matrix + out.matrix.adjoint()).eval();
  return out;
}

double fock_qfi(const FockProbe& probe, const ChannelSpec& channel, int cutoff, const FockOptions& opt) {
  const auto e = evolve(probe, channel, cutoff, opt);
  const auto p = e.weights.cast<cplx>().asDiagonal();
  // d rho applied to the probe eigenvectors.
  const CMat drv = (e.vp * p * (e.vp.adjoint() * e.v0) - e.vm * p * (e.vm.adjoint() * e.v0)) / (2.0 * opt.h);
  const CMat a = e.v0.adjoint() * drv;
  const CMat outside = drv - e.v0 * a;
  const auto m = e.weights.size();
  double h = 0.0;
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index k = 0; k < m; ++k) {
      const double s = e.weights(j) + e.weights(k);
      if (s >= 1e-12) h += 2.0 * std::norm(a(j, k)) / s;
    }
    // Pairs with one partner outside the support appear twice.
    if (e.weights(j) >= 1e-12) h += 4.0 * outside.col(j).squaredNorm() / e.weights(j);
  }
  return h;
}

namespace {

// Smallest doubling cutoff that keeps the leak below tolerance, with the QFI there.
std::pair<int, double> auto_cutoff(const FockProbe& probe, const ChannelSpec& channel, const FockOptions& opt,
                                   bool with_qfi) {
  const int cap = max_cutoff(channel.modes());
  for (int d = 8;; d = std::min(2 * d, cap)) {
    try {
      if (with_qfi) return {d, fock_qfi(probe, channel, d, opt)};
      evolve(probe, channel, d, opt);
      return {d, 0.0};
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::kCutoffTooSmall) throw;
    }
    if (d == cap) break;
  }
  throw Error(ErrorKind::kCutoffTooSmall,
              fmt::format("no cutoff up to {} keeps the leakage below {:.1e}", cap, opt.leak_tol));
}

}  // namespace

int select_cutoff(const FockProbe& probe, const ChannelSpec& channel, const FockOptions& opt) {
  return auto_cutoff(probe, channel, opt, false).first;
}

ProbeState engine_probe(const FockProbe& probe, int modes) {
  if (const auto* two = std::get_if<TwoModeProbeParams>(&probe)) return make_two_mode_probe(*two);
  const auto& one = std::get<OneModeProbeParams>(probe);
  return modes == 1 ? make_one_mode_probe(one) : make_one_mode_probe_embedded(one);
}

std::vector<FockPanelCase> fock_panel() {
  constexpr double kPi = std::numbers::pi;
  auto two = [](double l1, double l2, double r1, double r2, double theta, double psi, double phi1, double phi2,
                double d1, double d2, double pd1, double pd2) {
    return TwoModeProbeParams{l1, l2, r1, r2, theta, psi, phi1, phi2, d1, d2, pd1, pd2};
  };
  return {
      {"phase/coherent", OneModeProbeParams{1.0, 0.0, 0.0, 1.0, 0.0}, phase_channel()},
      {"phase/squeezed-vacuum", OneModeProbeParams{1.0, 0.5, 0.0, 0.0, 0.0}, phase_channel()},
      {"phase/thermal-squeezed-displaced", OneModeProbeParams{2.0, 0.4, 0.3, 0.8, 1.1}, phase_channel()},
      {"squeeze/mixed", OneModeProbeParams{1.5, 0.3, 1.0, 1.2, 0.4}, squeeze_channel(0.7)},
      {"combined/hot", OneModeProbeParams{3.0, -0.2, 0.6, 0.5, -0.8}, combined_channel(0.8, 0.5, 0.3)},
      {"combined/pure", OneModeProbeParams{1.0, 0.6, -0.5, 1.5, 2.0}, combined_channel(0.3, 0.6, 1.9)},
      {"mix/universal", two(1.0, 1.0, 0.4, 0.4, kPi / 4, kPi / 4, -kPi / 2, 0.0, 0.0, 0.0, 0.0, 0.0), mix_channel(0.4)},
      {"mix/restricted-mixed", two(1.5, 1.2, 0.3, -0.2, 0.5, 0.3, 0.7, -0.4, 0.6, 0.4, 0.2, 1.3), mix_channel(1.3)},
      {"mix/single-squeezed-balanced", two(1.0, 1.0, 0.0, 0.5, kPi / 4, 0.0, kPi / 2, 0.0, 0.0, 0.0, 0.0, 0.0),
       mix_channel(0.0)},
      {"st/separable", two(1.0, 1.0, 0.3, 0.3, 0.0, 0.0, kPi / 2 - 0.5, 0.0, 0.0, 0.0, 0.0, 0.0),
       twomode_squeeze_channel(0.5)},
      {"st/one-mode-probe", OneModeProbeParams{1.4, 0.3, 0.2, 0.6, 0.9}, twomode_squeeze_channel(2.0)},
      {"st/single-squeezed-balanced", two(1.0, 1.0, 0.0, 0.5, kPi / 4, 0.0, kPi / 2, 0.0, 0.0, 0.0, 0.0, 0.0),
       twomode_squeeze_channel(0.0)},
  };
}

std::vector<FockPanelRow> run_fock_panel(double tol, const FockOptions& opt, double engine_scale) {
  std::vector<FockPanelRow> rows;
  for (const auto& c : fock_panel()) {
    FockPanelRow row;
    row.name = c.name;
    std::tie(row.cutoff, row.fock) = auto_cutoff(c.probe, c.channel, opt, true);
    row.engine = engine_scale * qfi_unitary(engine_probe(c.probe, c.channel.modes()), c.channel).total;
    row.deviation = std::abs(row.fock - row.engine) / std::max(1.0, std::abs(row.engine));
    row.pass = row.deviation < tol;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace gqfi
