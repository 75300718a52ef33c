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

#include "fr_common.h"
#include "salvq/disparity.h"
#include "salvq/error.h"
#include "salvq/fr_metrics.h"
#include "salvq/saliency.h"
#include "salvq/signal.h"
#include "salvq/structural.h"

namespace salvq {

using internal::FrameNotes;
using internal::SaliencyAt;

namespace {

// Fractional powers of negative bases are undefined; treat them as zero.
double SafePow(double base, double e) {
  if (base < 0.0 && e != std::floor(e)) return 0.0;
  return std::pow(base, e);
}

double BlockMean(const Plane& p, int x0, int y0, int n) {
  double s = 0.0;
  for (int y = y0; y < y0 + n; ++y) {
    for (int x = x0; x < x0 + n; ++x) s += p.at(x, y);
  }
  return s / (n * n);
}

double BlockVariance(const Plane& p, int x0, int y0, int n) {
  const double m = BlockMean(p, x0, y0, n);
  double s = 0.0;
  for (int y = y0; y < y0 + n; ++y) {
    for (int x = x0; x < x0 + n; ++x) s += (p.at(x, y) - m) * (p.at(x, y) - m);
  }
  return s / (n * n);
}

int BlockShift(const DisparityMap& d, int x0, int y0, int n) {
  return static_cast<int>(std::lround(BlockMean(d.values, x0, y0, n)));
}

// Row-major n×n block at (x0 - shift, y0), replicate borders.
void ReadBlock(const Plane& p, int x0, int y0, int n, int shift, double* out) {
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) out[r * n + c] = p.clamped(x0 + c - shift, y0 + r);
  }
}

double BlockWeight(const SaliencyMap* s, int x0, int y0, int n) {
  return s != nullptr ? BlockMean(s->values, x0, y0, n) : 1.0;
}

std::string TailNote(const char* metric, int width, int height, int n) {
  if (width % n == 0 && height % n == 0) return {};
  return std::string(metric) + ": partial " + std::to_string(n) + "x" + std::to_string(n) +
         " blocks at the frame edge were skipped";
}

void RequireBlocks(int width, int height, int n) {
  if (width < n || height < n) {
    throw Error(ErrorCode::kTooSmall, "frame smaller than one " + std::to_string(n) + "x" +
                                          std::to_string(n) + " block");
  }
}

Plane DisparityQualityFactor(const DisparityMap& ref, const DisparityMap& dist) {
  Plane f(ref.values.width(), ref.values.height());
  for (size_t i = 0; i < f.size(); ++i) {
    const double a = ref.values.data()[i];
    const double b = dist.values.data()[i];
    f.data()[i] = std::clamp(1.0 - std::sqrt(std::abs(a * a - b * b)) / 255.0, 0.0, 1.0);
  }
  return f;
}

Plane Multiply(const Plane& a, const Plane& b) {
  Plane out(a.width(), a.height());
  for (size_t i = 0; i < out.size(); ++i) out.data()[i] = a.data()[i] * b.data()[i];
  return out;
}

Plane AbsDiff(const Plane& a, const Plane& b) {
  Plane out(a.width(), a.height());
  for (size_t i = 0; i < out.size(); ++i) out.data()[i] = std::abs(a.data()[i] - b.data()[i]);
  return out;
}

Plane Diff(const Plane& a, const Plane& b) {
  Plane out(a.width(), a.height());
  for (size_t i = 0; i < out.size(); ++i) out.data()[i] = a.data()[i] - b.data()[i];
  return out;
}

struct Phvs3dBlocks {
  std::vector<double> error;      // e per block
  std::vector<double> weight;     // block mean saliency
  std::vector<double> disp_var;   // variance of the reference disparity
};

Phvs3dBlocks Phvs3dFrame(const StereoFrame& r, const StereoFrame& d, const DisparityMap& dref,
                         const SaliencyMap* s, const FrMetricConfig& cfg) {
  const int w = r.left.width();
  const int h = r.left.height();
  RequireBlocks(w, h, 4);
  Phvs3dBlocks out;
  for (int y0 = 0; y0 + 4 <= h; y0 += 4) {
    for (int x0 = 0; x0 + 4 <= w; x0 += 4) {
      const int shift = BlockShift(dref, x0, y0, 4);
      StereoBlock a;
      StereoBlock b;
      ReadBlock(r.left.luma, x0, y0, 4, 0, a.data());
      ReadBlock(r.right.luma, x0, y0, 4, shift, a.data() + 16);
      ReadBlock(d.left.luma, x0, y0, 4, 0, b.data());
      ReadBlock(d.right.luma, x0, y0, 4, shift, b.data() + 16);
      const StereoBlock ca = Dct3Stereo(a);
      const StereoBlock cb = Dct3Stereo(b);
      double e = 0.0;
      for (int k = 0; k < 32; ++k) {
        const double v = (ca[k] - cb[k]) * cfg.csf[k % 16];
        e += v * v;
      }
      out.error.push_back(e / 32.0);
      out.weight.push_back(BlockWeight(s, x0, y0, 4));
      out.disp_var.push_back(BlockVariance(dref.values, x0, y0, 4));
    }
  }
  return out;
}

double WeightedMean(const std::vector<double>& v, const std::vector<double>& w) {
  double num = 0.0;
  double den = 0.0;
  for (size_t i = 0; i < v.size(); ++i) {
    num += v[i] * w[i];
    den += w[i];
  }
  if (!(den > 0.0)) throw Error(ErrorCode::kDegenerateSaliency, "block weights sum to zero");
  return num / den;
}

double IqTerm(const StereoFrame& r, const StereoFrame& d, const SaliencyMap* s,
              const FrMetricConfig& cfg) {
  return 0.5 * (PoolSpatial(SsimMap(r.left.luma, d.left.luma, cfg), s) +
                PoolSpatial(SsimMap(r.right.luma, d.right.luma, cfg), s));
}

void RequireSsimWindow(const FrInputs& in, const FrMetricConfig& cfg) {
  if (cfg.ssim_window > std::min(in.ref.width(), in.ref.height())) {
    throw Error(ErrorCode::kTooSmall, "SSIM window exceeds the frame");
  }
}

}  // namespace

Plane CyclopeanImage(const Plane& left, const Plane& right, const DisparityMap& disparity) {
  RequireSameShape(left, right, "cyclopean views");
  RequireSameShape(left, disparity.values, "cyclopean disparity");
  Plane out(left.width(), left.height());
  for (int y = 0; y < left.height(); ++y) {
    for (int x = 0; x < left.width(); ++x) {
      const int xr = x - static_cast<int>(std::lround(disparity.values.at(x, y)));
      out.at(x, y) = 0.5 * (left.at(x, y) + right.clamped(xr, y));
    }
  }
  return out;
}

double PatchFeatureDistance(const Plane& a, const Plane& b, int patch) {
  RequireSameShape(a, b, "patch features");
  RequireBlocks(a.width(), a.height(), patch);
  const Gradient ga = SobelGradient(a);
  const Gradient gb = SobelGradient(b);
  const double n = static_cast<double>(patch) * patch;
  auto features = [&](const Plane& p, const Gradient& g, int x0, int y0) {
    double mean = 0.0, sq = 0.0, jxx = 0.0, jxy = 0.0, jyy = 0.0;
    for (int y = y0; y < y0 + patch; ++y) {
      for (int x = x0; x < x0 + patch; ++x) {
        const double v = p.at(x, y);
        const double gx = g.gx.at(x, y);
        const double gy = g.gy.at(x, y);
        mean += v;
        sq += v * v;
        jxx += gx * gx;
        jxy += gx * gy;
        jyy += gy * gy;
      }
    }
    mean /= n;
    const double var = std::max(0.0, sq / n - mean * mean);
    jxx /= n;
    jxy /= n;
    jyy /= n;
    const double half_diff = 0.5 * (jxx - jyy);
    const double lambda_min = 0.5 * (jxx + jyy) - std::sqrt(half_diff * half_diff + jxy * jxy);
    return std::array<double, 3>{mean, var, lambda_min};
  };
  double total = 0.0;
  int count = 0;
  for (int y0 = 0; y0 + patch <= a.height(); y0 += patch) {
    for (int x0 = 0; x0 + patch <= a.width(); x0 += patch) {
      const auto fa = features(a, ga, x0, y0);
      const auto fb = features(b, gb, x0, y0);
      total += std::abs(fa[0] - fb[0]) + std::abs(fa[1] - fb[1]) + std::abs(fa[2] - fb[2]);
      ++count;
    }
  }
  return total / count;
}

MetricReport ScoreDdl1(const FrInputs& in, const FrMetricConfig& cfg, const ExecOptions& exec) {
  cfg.Validate();
  internal::ValidateFr(in, true, true);
  RequireSsimWindow(in, cfg);
  auto scores = internal::RunFrames(0, in.ref.size(), exec, [&](int t, FrameNotes&) {
    const StereoFrame& r = in.ref.frames[t];
    const StereoFrame& d = in.dist.frames[t];
    const SaliencyMap* s = SaliencyAt(in, t);
    const Plane factor = DisparityQualityFactor(in.ref_disparity[t], in.dist_disparity[t]);
    return PoolSpatial(Multiply(SsimMap(r.left.luma, d.left.luma, cfg), factor), s) +
           PoolSpatial(Multiply(SsimMap(r.right.luma, d.right.luma, cfg), factor), s);
  });
  return internal::FinishFr("ddl1_s", Orientation::kHigherBetter, in, std::move(scores), cfg);
}

MetricReport ScoreOq(const FrInputs& in, const FrMetricConfig& cfg, const ExecOptions& exec) {
  cfg.Validate();
  internal::ValidateFr(in, true, true);
  RequireSsimWindow(in, cfg);
  auto scores = internal::RunFrames(0, in.ref.size(), exec, [&](int t, FrameNotes&) {
    const SaliencyMap* s = SaliencyAt(in, t);
    const double iq = IqTerm(in.ref.frames[t], in.dist.frames[t], s, cfg);
    const double dq =
        PoolSpatial(AbsDiff(in.ref_disparity[t].values, in.dist_disparity[t].values), s);
    const double iqd = SafePow(iq, cfg.oq_d);
    return cfg.oq_a * iqd + cfg.oq_b * SafePow(dq, cfg.oq_e) + cfg.oq_c * iqd * SafePow(dq, cfg.oq_d);
  });
  return internal::FinishFr("oq_s", Orientation::kComposite, in, std::move(scores), cfg);
}

MetricReport ScoreCiq(const FrInputs& in, const FrMetricConfig& cfg, const ExecOptions& exec) {
  cfg.Validate();
  internal::ValidateFr(in, true, true);
  RequireSsimWindow(in, cfg);
  auto scores = internal::RunFrames(0, in.ref.size(), exec, [&](int t, FrameNotes&) {
    const StereoFrame& r = in.ref.frames[t];
    const StereoFrame& d = in.dist.frames[t];
    const Plane cr = CyclopeanImage(r.left.luma, r.right.luma, in.ref_disparity[t]);
    const Plane cd = CyclopeanImage(d.left.luma, d.right.luma, in.dist_disparity[t]);
    return PoolSpatial(SsimMap(cr, cd, cfg), SaliencyAt(in, t));
  });
  return internal::FinishFr("ciq_s", Orientation::kHigherBetter, in, std::move(scores), cfg);
}

MetricReport ScorePhvs3d(const FrInputs& in, const FrMetricConfig& cfg, const ExecOptions& exec) {
  cfg.Validate();
  internal::ValidateFr(in, true, false);
  auto scores = internal::RunFrames(0, in.ref.size(), exec, [&](int t, FrameNotes& notes) {
    const Phvs3dBlocks b = Phvs3dFrame(in.ref.frames[t], in.dist.frames[t], in.ref_disparity[t],
                                       SaliencyAt(in, t), cfg);
    const std::string tail = TailNote("phvs3d_s", in.ref.width(), in.ref.height(), 4);
    if (!tail.empty()) internal::AppendUnique(notes, tail);
    return PsnrFromMse(WeightedMean(b.error, b.weight), cfg.psnr_cap);
  });
  return internal::FinishFr("phvs3d_s", Orientation::kHigherBetter, in, std::move(scores), cfg);
}

MetricReport ScorePhsd(const FrInputs& in, const FrMetricConfig& cfg, const ExecOptions& exec) {
  cfg.Validate();
  internal::ValidateFr(in, true, true);
  auto scores = internal::RunFrames(0, in.ref.size(), exec, [&](int t, FrameNotes& notes) {
    const SaliencyMap* s = SaliencyAt(in, t);
    const Phvs3dBlocks b =
        Phvs3dFrame(in.ref.frames[t], in.dist.frames[t], in.ref_disparity[t], s, cfg);
    std::vector<double> masked(b.error.size());
    for (size_t i = 0; i < masked.size(); ++i) {
      const double e = b.error[i];
      masked[i] = e == 0.0 ? 0.0 : e * e / (e + cfg.phsd_alpha * b.disp_var[i]);
    }
    const double mse_i = WeightedMean(masked, b.weight);
    Plane sq = AbsDiff(in.ref_disparity[t].values, in.dist_disparity[t].values);
    for (double& v : sq.data()) v *= v;
    const double mse_d = PoolSpatial(sq, s);
    const std::string tail = TailNote("phsd_s", in.ref.width(), in.ref.height(), 4);
    if (!tail.empty()) internal::AppendUnique(notes, tail);
    return PsnrFromMse((1.0 - cfg.phsd_epsilon) * mse_i + cfg.phsd_epsilon * mse_d, cfg.psnr_cap);
  });
  return internal::FinishFr("phsd_s", Orientation::kHigherBetter, in, std::move(scores), cfg);
}

MetricReport ScoreMj3d(const FrInputs& in, const FrMetricConfig& cfg, const ExecOptions& exec) {
  cfg.Validate();
  internal::ValidateFr(in, true, true);
  auto scores = internal::RunFrames(0, in.ref.size(), exec, [&](int t, FrameNotes& notes) {
    const StereoFrame& r = in.ref.frames[t];
    const StereoFrame& d = in.dist.frames[t];
    const Plane cr = CyclopeanImage(r.left.luma, r.right.luma, in.ref_disparity[t]);
    const Plane cd = CyclopeanImage(d.left.luma, d.right.luma, in.dist_disparity[t]);
    const MsSsimResult m = MsSsim(cr, cd, SaliencyAt(in, t), cfg);
    if (!m.note.empty()) internal::AppendUnique(notes, m.note);
    return m.value;
  });
  return internal::FinishFr("mj3d_s", Orientation::kHigherBetter, in, std::move(scores), cfg);
}

MetricReport ScoreHv3d(const FrInputs& in, const FrMetricConfig& cfg, const ExecOptions& exec) {
  cfg.Validate();
  internal::ValidateFr(in, true, true);
  const int n = cfg.hv3d_block;
  RequireBlocks(in.ref.width(), in.ref.height(), n);
  auto scores = internal::RunFrames(0, in.ref.size(), exec, [&](int t, FrameNotes& notes) {
    const StereoFrame& r = in.ref.frames[t];
    const StereoFrame& d = in.dist.frames[t];
    const DisparityMap& dr = in.ref_disparity[t];
    const DisparityMap& dd = in.dist_disparity[t];
    const SaliencyMap* s = SaliencyAt(in, t);
    const size_t nn = static_cast<size_t>(n) * n;
    std::vector<double> bl(nn), br(nn), ref_c(nn), dist_c(nn);
    std::vector<double> ssim, var, weight;
    auto fuse = [&](const Plane& left, const Plane& right, int x0, int y0, int shift,
                    std::vector<double>& out) {
      ReadBlock(left, x0, y0, n, 0, bl.data());
      ReadBlock(right, x0, y0, n, shift, br.data());
      const std::vector<double> cl = Dct2(bl, n);
      const std::vector<double> cr = Dct2(br, n);
      std::vector<double> xc(nn);
      for (size_t i = 0; i < nn; ++i) xc[i] = 0.5 * (cl[i] + cr[i]);
      out = Idct2(xc, n);
    };
    for (int y0 = 0; y0 + n <= in.ref.height(); y0 += n) {
      for (int x0 = 0; x0 + n <= in.ref.width(); x0 += n) {
        fuse(r.left.luma, r.right.luma, x0, y0, BlockShift(dr, x0, y0, n), ref_c);
        fuse(d.left.luma, d.right.luma, x0, y0, BlockShift(dd, x0, y0, n), dist_c);
        ssim.push_back(BlockSsim(ref_c, dist_c, cfg.ssim_c1, cfg.ssim_c2));
        var.push_back(BlockVariance(dr.values, x0, y0, n));
        weight.push_back(BlockWeight(s, x0, y0, n));
      }
    }
    const std::string tail = TailNote("hv3d_s", in.ref.width(), in.ref.height(), n);
    if (!tail.empty()) internal::AppendUnique(notes, tail);
    const double term1 = WeightedMean(ssim, weight);
    const double term2 = cfg.hv3d_beta2 != 0.0 ? Vif(dr.values, dd.values, s, cfg) : 1.0;
    double term3 = 1.0;
    if (cfg.hv3d_beta3 != 0.0) {
      const double vmax = *std::max_element(var.begin(), var.end());
      // A flat reference disparity has no structure to lose.
      if (vmax > 0.0) term3 = WeightedMean(var, weight) / vmax;
    }
    return SafePow(term1, cfg.hv3d_beta1) * SafePow(term2, cfg.hv3d_beta2) *
           SafePow(term3, cfg.hv3d_beta3);
  });
  return internal::FinishFr("hv3d_s", Orientation::kHigherBetter, in, std::move(scores), cfg);
}

MetricReport ScoreFlosim3d(const FrInputs& in, const FrMetricConfig& cfg, const ExecOptions& exec) {
  cfg.Validate();
  internal::ValidateFr(in, true, true);
  if (in.ref.size() < 2) {
    throw Error(ErrorCode::kNeedsTemporalContext, "flosim3d_s needs at least two frames");
  }
  const int count = in.ref.size();
  std::vector<double> depth_term(count, 0.0);
  auto scores = internal::RunFrames(1, count, exec, [&](int t, FrameNotes& notes) {
    const StereoFrame& r = in.ref.frames[t];
    const StereoFrame& d = in.dist.frames[t];
    const StereoFrame& rp = in.ref.frames[t - 1];
    const StereoFrame& dp = in.dist.frames[t - 1];
    const SaliencyMap* s = SaliencyAt(in, t);
    auto view = [&](const Plane& rc, const Plane& rprev, const Plane& dc, const Plane& dprev) {
      const double qfl = PatchFeatureDistance(Diff(rc, rprev), Diff(dc, dprev), cfg.flosim_patch);
      const MsSsimResult m = MsSsim(rc, dc, s, cfg);
      if (!m.note.empty()) internal::AppendUnique(notes, m.note);
      return (1.0 - m.value) * qfl;
    };
    const double spatial = 0.5 * (view(r.left.luma, rp.left.luma, d.left.luma, dp.left.luma) +
                                  view(r.right.luma, rp.right.luma, d.right.luma, dp.right.luma));
    Plane zr = DisparityToDepth(in.ref_disparity[t]);
    Plane zd = DisparityToDepth(in.dist_disparity[t]);
    for (double& v : zr.data()) v *= 255.0;
    for (double& v : zd.data()) v *= 255.0;
    depth_term[t] = 1.0 - MsSsim(zr, zd, s, cfg).value;
    return spatial;
  });
  double qd = 0.0;
  for (int t = 1; t < count; ++t) qd += depth_term[t];
  qd /= count - 1;
  for (double& v : scores.score) v *= qd;
  return internal::FinishFr("flosim3d_s", Orientation::kLowerBetter, in, std::move(scores), cfg);
}

}  // namespace salvq
