// Copyright 2026 The salvq Authors. All Rights Reserved.
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

#include <algorithm>
#include <cmath>
#include <numeric>

#include "salvq/error.h"
#include "salvq/eval_stats.h"

namespace salvq {

double Logistic(const std::array<double, 4>& b, double x) {
  const double scale = std::abs(b[3]);
  if (scale == 0.0) return x < b[2] ? b[1] : (x > b[2] ? b[0] : 0.5 * (b[0] + b[1]));
  return b[1] + (b[0] - b[1]) / (1.0 + std::exp(-(x - b[2]) / scale));
}

SimplexResult NelderMead(const std::function<double(std::span<const double>)>& f,
                         std::vector<double> x0, std::vector<double> step, int max_evals,
                         double ftol, double fatol) {
  const size_t n = x0.size();
  if (n == 0 || step.size() != n) throw Error(ErrorCode::kParam, "simplex needs matching x0/step");
  SimplexResult res;
  std::vector<std::vector<double>> pts(n + 1, x0);
  std::vector<double> val(n + 1);
  auto eval = [&](const std::vector<double>& x) {
    ++res.evaluations;
    return f(x);
  };
  for (size_t i = 0; i < n; ++i) pts[i + 1][i] += step[i];
  for (size_t i = 0; i <= n; ++i) val[i] = eval(pts[i]);

  std::vector<size_t> order(n + 1);
  while (true) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return val[a] < val[b]; });
    const size_t best = order.front();
    const size_t worst = order.back();
    const size_t second = order[n - 1];
    if (val[worst] - val[best] <= ftol * std::abs(val[best]) + fatol) {
      res.converged = true;
      break;
    }
    if (res.evaluations >= max_evals) break;

    std::vector<double> centroid(n, 0.0);
    for (size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (size_t k = 0; k < n; ++k) centroid[k] += pts[i][k] / n;
    }
    auto along = [&](double t) {
      std::vector<double> x(n);
      for (size_t k = 0; k < n; ++k) x[k] = centroid[k] + t * (pts[worst][k] - centroid[k]);
      return x;
    };
    const std::vector<double> xr = along(-1.0);
    const double fr = eval(xr);
    if (fr < val[best]) {
      const std::vector<double> xe = along(-2.0);
      const double fe = eval(xe);
      if (fe < fr) {
        pts[worst] = xe;
        val[worst] = fe;
      } else {
        pts[worst] = xr;
        val[worst] = fr;
      }
      continue;
    }
    if (fr < val[second]) {
      pts[worst] = xr;
      val[worst] = fr;
      continue;
    }
    const bool outside = fr < val[worst];
    const std::vector<double> xc = along(outside ? -0.5 : 0.5);
    const double fc = eval(xc);
    if (fc < (outside ? fr : val[worst])) {
      pts[worst] = xc;
      val[worst] = fc;
      continue;
    }
    // Shrink towards the best vertex.
    for (size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (size_t k = 0; k < n; ++k) pts[i][k] = pts[best][k] + 0.5 * (pts[i][k] - pts[best][k]);
      val[i] = eval(pts[i]);
    }
  }
  const size_t best =
      std::min_element(val.begin(), val.end()) - val.begin();
  res.x = pts[best];
  res.value = val[best];
  return res;
}

namespace {
constexpr double kFtol = 1e-10;
constexpr double kFatol = 1e-16;
}  // namespace

LogisticFit FitLogistic(std::span<const double> objective, std::span<const double> mos,
                        int max_evals) {
  if (objective.size() != mos.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "logistic fit series lengths differ");
  }
  if (objective.size() < 4) throw Error(ErrorCode::kParam, "logistic fit needs n >= 4");
  const auto [lo, hi] = std::minmax_element(objective.begin(), objective.end());
  std::vector<double> sorted(objective.begin(), objective.end());
  std::sort(sorted.begin(), sorted.end());
  const size_t m = sorted.size();
  const double median = m % 2 ? sorted[m / 2] : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
  const double range = *hi - *lo;
  const double scale = range > 0.0 ? range / 4.0 : 1.0;
  const double mos_at_hi = mos[hi - objective.begin()];
  const double mos_at_lo = mos[lo - objective.begin()];

  // Squared error relative to the MOS spread, so the tolerances are unitless.
  const double mos_mean = std::accumulate(mos.begin(), mos.end(), 0.0) / mos.size();
  double spread = 0.0;
  for (double v : mos) spread += (v - mos_mean) * (v - mos_mean);
  if (!(spread > 0.0)) spread = 1.0;
  auto sse = [&](std::span<const double> b) {
    const std::array<double, 4> beta{b[0], b[1], b[2], b[3]};
    double s = 0.0;
    for (size_t i = 0; i < objective.size(); ++i) {
      const double e = Logistic(beta, objective[i]) - mos[i];
      s += e * e;
    }
    return s / spread;
  };
  const double mos_span = std::max(1.0, std::abs(mos_at_hi - mos_at_lo));
  std::vector<double> x0{mos_at_hi, mos_at_lo, median, scale};
  std::vector<double> step{0.1 * mos_span, 0.1 * mos_span, 0.1 * scale, 0.1 * scale};

  LogisticFit fit;
  SimplexResult r = NelderMead(sse, x0, step, max_evals, kFtol, kFatol);
  fit.evaluations = r.evaluations;
  // One restart from the optimum guards against a collapsed simplex.
  if (r.converged && fit.evaluations < max_evals) {
    SimplexResult again =
        NelderMead(sse, r.x, step, max_evals - fit.evaluations, kFtol, kFatol);
    fit.evaluations += again.evaluations;
    if (again.value <= r.value) {
      again.converged = again.converged && r.converged;
      r = again;
    }
  }
  fit.converged = r.converged;
  if (!fit.converged) {
    fit.mapped.assign(objective.begin(), objective.end());
    return fit;
  }
  fit.beta = {r.x[0], r.x[1], r.x[2], r.x[3]};
  for (double x : objective) fit.mapped.push_back(Logistic(fit.beta, x));
  return fit;
}

}  // namespace salvq
