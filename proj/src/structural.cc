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

#include "salvq/structural.h"

#include <algorithm>
#include <cmath>

#include "salvq/error.h"
#include "salvq/saliency.h"
#include "salvq/signal.h"

namespace salvq {

namespace {

Kernel2D SsimWindow(const FrMetricConfig& cfg) {
  return GaussianKernel(cfg.ssim_window, cfg.ssim_sigma);
}

void CheckPair(const Plane& x, const Plane& y, const SaliencyMap* s) {
  RequireSameShape(x, y, "structural comparison");
  if (s != nullptr) RequireSameShape(x, s->values, "saliency map");
}

// Covariance already respects |σxy| <= σxσy, so identical inputs give exactly
// one here.
double CsTerm(double vx, double vy, double cov, double c2) {
  return (2.0 * cov + c2) / (vx + vy + c2);
}

double LumTerm(double mx, double my, double c1) {
  return (2.0 * mx * my + c1) / (mx * mx + my * my + c1);
}

}  // namespace

Plane SsimMap(const Plane& x, const Plane& y, const FrMetricConfig& cfg) {
  CheckPair(x, y, nullptr);
  const LocalStats st = ComputeLocalStats(x, y, SsimWindow(cfg));
  Plane out(x.width(), x.height());
  for (size_t i = 0; i < out.size(); ++i) {
    out.data()[i] = LumTerm(st.mu_x.data()[i], st.mu_y.data()[i], cfg.ssim_c1) *
                    CsTerm(st.var_x.data()[i], st.var_y.data()[i], st.cov_xy.data()[i], cfg.ssim_c2);
  }
  return out;
}

Plane ContrastStructureMap(const Plane& x, const Plane& y, const FrMetricConfig& cfg) {
  CheckPair(x, y, nullptr);
  const LocalStats st = ComputeLocalStats(x, y, SsimWindow(cfg));
  Plane out(x.width(), x.height());
  for (size_t i = 0; i < out.size(); ++i) {
    out.data()[i] = CsTerm(st.var_x.data()[i], st.var_y.data()[i], st.cov_xy.data()[i], cfg.ssim_c2);
  }
  return out;
}

MsSsimResult MsSsim(const Plane& x, const Plane& y, const SaliencyMap* saliency,
                    const FrMetricConfig& cfg) {
  CheckPair(x, y, saliency);
  const int wanted = static_cast<int>(cfg.msssim_weights.size());
  const int fit = MaxPyramidLevels(x.width(), x.height(), cfg.ssim_window);
  const int scales = std::min(wanted, fit);
  if (scales < 2) {
    throw Error(ErrorCode::kTooSmall, "MS-SSIM needs at least two scales of size >= " +
                                          std::to_string(cfg.ssim_window));
  }
  MsSsimResult result;
  result.scales = scales;
  std::vector<double> w(cfg.msssim_weights.begin(), cfg.msssim_weights.begin() + scales);
  if (scales < wanted) {
    double sum = 0.0;
    for (double v : w) sum += v;
    for (double& v : w) v /= sum;
    result.note = "MS-SSIM scales reduced to " + std::to_string(scales);
  }

  const std::vector<Plane> px = BuildPyramid(x, scales);
  const std::vector<Plane> py = BuildPyramid(y, scales);
  std::vector<SaliencyMap> ps;
  if (saliency != nullptr) {
    std::vector<Dims> dims;
    for (const Plane& p : px) dims.push_back(DimsOf(p));
    ps = BuildSaliencyPyramid(*saliency, dims);
  }

  const Kernel2D window = SsimWindow(cfg);
  double value = 1.0;
  for (int m = 0; m < scales; ++m) {
    const LocalStats st = ComputeLocalStats(px[m], py[m], window);
    Plane cs(px[m].width(), px[m].height());
    for (size_t i = 0; i < cs.size(); ++i) {
      cs.data()[i] = CsTerm(st.var_x.data()[i], st.var_y.data()[i], st.cov_xy.data()[i], cfg.ssim_c2);
    }
    const SaliencyMap* sm = saliency != nullptr ? &ps[m] : nullptr;
    // Negative pooled terms would make the fractional power undefined.
    value *= std::pow(std::max(0.0, PoolSpatial(cs, sm)), w[m]);
    if (m == scales - 1) {
      Plane lum(px[m].width(), px[m].height());
      for (size_t i = 0; i < lum.size(); ++i) {
        lum.data()[i] = LumTerm(st.mu_x.data()[i], st.mu_y.data()[i], cfg.ssim_c1);
      }
      value *= std::pow(std::max(0.0, PoolSpatial(lum, sm)), w[m]);
    }
  }
  result.value = value;
  return result;
}

double Vif(const Plane& ref, const Plane& dist, const SaliencyMap* saliency,
           const FrMetricConfig& cfg) {
  CheckPair(ref, dist, saliency);
  const int scales = cfg.vif_scales;
  if (std::min(ref.width(), ref.height()) < 32) {
    throw Error(ErrorCode::kTooSmall, "VIF needs frames of at least 32×32");
  }
  if (MaxPyramidLevels(ref.width(), ref.height(), (1 << scales) + 1) < 1) {
    throw Error(ErrorCode::kTooSmall, "VIF window does not fit the frame");
  }
  if (MaxPyramidLevels(ref.width(), ref.height(), 3) < scales) {
    throw Error(ErrorCode::kTooSmall, "VIF pyramid does not fit the frame");
  }
  const std::vector<Plane> pr = BuildPyramid(ref, scales);
  const std::vector<Plane> pd = BuildPyramid(dist, scales);
  std::vector<SaliencyMap> ps;
  if (saliency != nullptr) {
    std::vector<Dims> dims;
    for (const Plane& p : pr) dims.push_back(DimsOf(p));
    ps = BuildSaliencyPyramid(*saliency, dims);
  }

  const double sn = cfg.vif_noise_var;
  double num = 0.0;
  double den = 0.0;
  for (int k = 0; k < scales; ++k) {
    const int n = (1 << (scales - k)) + 1;
    if (n > pr[k].width() || n > pr[k].height()) {
      throw Error(ErrorCode::kTooSmall, "VIF window exceeds scale " + std::to_string(k));
    }
    const LocalStats st = ComputeLocalStats(pr[k], pd[k], GaussianKernel(n, n / 5.0));
    for (size_t i = 0; i < pr[k].size(); ++i) {
      double sx = st.var_x.data()[i];
      const double sy = st.var_y.data()[i];
      const double sxy = st.cov_xy.data()[i];
      double g;
      double sv;
      if (sx < 1e-10) {
        g = 0.0;
        sv = sy;
        sx = 0.0;
      } else {
        g = sxy / sx;
        sv = sy - g * sxy;
      }
      if (sy < 1e-10) {
        g = 0.0;
        sv = 0.0;
      }
      if (g < 0.0) {
        sv = sy;
        g = 0.0;
      }
      sv = std::max(sv, 0.0);
      const double w = saliency != nullptr ? ps[k].values.data()[i] : 1.0;
      num += w * std::log10(1.0 + g * g * sx / (sv + sn));
      den += w * std::log10(1.0 + sx / sn);
    }
  }
  if (saliency != nullptr) {
    double total = 0.0;
    for (double v : saliency->values.data()) total += v;
    if (!(total > 0.0)) throw Error(ErrorCode::kDegenerateSaliency, "saliency map sums to zero");
  }
  // A flat reference carries no information; nothing can be lost.
  if (den == 0.0) return 1.0;
  return num / den;
}

double BlockSsim(std::span<const double> a, std::span<const double> b, double c1, double c2) {
  if (a.size() != b.size() || a.empty()) {
    throw Error(ErrorCode::kDimensionMismatch, "block SSIM needs equal non-empty blocks");
  }
  const double n = static_cast<double>(a.size());
  double ma = 0.0, mb = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double va = 0.0, vb = 0.0, cov = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    va += (a[i] - ma) * (a[i] - ma);
    vb += (b[i] - mb) * (b[i] - mb);
    cov += (a[i] - ma) * (b[i] - mb);
  }
  va /= n;
  vb /= n;
  cov /= n;
  const double bound = std::sqrt(va * vb);
  cov = std::clamp(cov, -bound, bound);
  return LumTerm(ma, mb, c1) * CsTerm(va, vb, cov, c2);
}

double PsnrFromMse(double mse, double cap) {
  if (mse < 0.0 || std::isnan(mse)) throw Error(ErrorCode::kNumeric, "MSE must be >= 0");
  const double peak = 255.0 * 255.0;
  if (mse < peak * std::pow(10.0, -cap / 10.0)) return cap;
  return 10.0 * std::log10(peak / mse);
}

}  // namespace salvq
