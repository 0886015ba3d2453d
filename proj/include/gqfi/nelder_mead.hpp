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

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

namespace gqfi {

struct NelderMeadOptions {
  int max_iter = 2000;
  /// Stop once every vertex lies within this distance of the best one.
  double x_tol = 1e-10;
  /// Also stop once f varies by less than f_tol * (1 + |f_best|) across the simplex.
  double f_tol = 1e-15;
  /// Initial simplex edge along each coordinate.
  double step = 0.5;
};

struct NelderMeadResult {
  std::vector<double> x;
  double fx = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
};

/// Minimizes f with the standard reflection/expansion/contraction/shrink
/// coefficients (1, 2, 1/2, 1/2). `on_iter(iteration, best_f)` fires after
/// every iteration. f must return a finite value or throw.
template <class F, class OnIter = void (*)(int, double)>
NelderMeadResult nelder_mead(F&& f, std::vector<double> x0, const NelderMeadOptions& opt,
                             OnIter on_iter = [](int, double) {}) {
  const std::size_t dim = x0.size();
  NelderMeadResult res;
  auto eval = [&](const std::vector<double>& x) {
    ++res.evaluations;
    return f(x);
  };
  if (dim == 0) {
    res.fx = eval(x0);
    res.x = std::move(x0);
    res.converged = true;
    return res;
  }

  std::vector<std::vector<double>> pts(dim + 1, x0);
  std::vector<double> vals(dim + 1);
  for (std::size_t i = 0; i < dim; ++i) pts[i + 1][i] += opt.step;
  for (std::size_t i = 0; i <= dim; ++i) vals[i] = eval(pts[i]);

  std::vector<std::size_t> order(dim + 1);
  std::vector<double> centroid(dim);
  auto along = [&](double t, const std::vector<double>& worst) {
    std::vector<double> out(dim);
    for (std::size_t k = 0; k < dim; ++k) out[k] = centroid[k] + t * (worst[k] - centroid[k]);
    return out;
  };

  for (res.iterations = 0; res.iterations < opt.max_iter; ++res.iterations) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[dim - 1];

    double diameter = 0.0;
    for (std::size_t i = 0; i <= dim; ++i) {
      double d2 = 0.0;
      for (std::size_t k = 0; k < dim; ++k) d2 += (pts[i][k] - pts[best][k]) * (pts[i][k] - pts[best][k]);
      diameter = std::max(diameter, std::sqrt(d2));
    }
    const double spread = vals[worst] - vals[best];
    if (diameter < opt.x_tol || spread <= opt.f_tol * (1.0 + std::abs(vals[best]))) {
      res.converged = true;
      break;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= dim; ++i) {
      if (i == worst) continue;
      for (std::size_t k = 0; k < dim; ++k) centroid[k] += pts[i][k] / static_cast<double>(dim);
    }

    const auto xr = along(-1.0, pts[worst]);
    const double fr = eval(xr);
    if (fr < vals[best]) {
      const auto xe = along(-2.0, pts[worst]);
      const double fe = eval(xe);
      if (fe < fr) {
        pts[worst] = xe;
        vals[worst] = fe;
      } else {
        pts[worst] = xr;
        vals[worst] = fr;
      }
    } else if (fr < vals[second]) {
      pts[worst] = xr;
      vals[worst] = fr;
    } else {
      const bool outside = fr < vals[worst];
      const auto xc = along(outside ? -0.5 : 0.5, pts[worst]);
      const double fc = eval(xc);
      if (fc < (outside ? fr : vals[worst])) {
        pts[worst] = xc;
        vals[worst] = fc;
      } else {
        for (std::size_t i = 0; i <= dim; ++i) {
          if (i == best) continue;
          for (std::size_t k = 0; k < dim; ++k) pts[i][k] = pts[best][k] + 0.5 * (pts[i][k] - pts[best][k]);
          vals[i] = eval(pts[i]);
        }
      }
    }
    on_iter(res.iterations + 1, *std::min_element(vals.begin(), vals.end()));
  }

  const auto it = std::min_element(vals.begin(), vals.end());
  res.fx = *it;
  res.x = pts[static_cast<std::size_t>(it - vals.begin())];
  return res;
}

}  // namespace gqfi
