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

#include "salvq/nr_metrics.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "nr_common.h"
#include "salvq/error.h"
#include "salvq/saliency.h"
#include "salvq/signal.h"

namespace salvq {

namespace internal {

void ValidateNr(const NrInputs& in, bool needs_disparity) {
  in.dist.Validate();
  auto check = [&](auto maps, const char* what) {
    if (maps.empty()) return;
    if (static_cast<int>(maps.size()) != in.dist.size()) {
      throw Error(ErrorCode::kSequenceLength, std::string(what) + " series has " +
                                                  std::to_string(maps.size()) + " maps for " +
                                                  std::to_string(in.dist.size()) + " frames");
    }
    for (int t = 0; t < in.dist.size(); ++t) {
      if (!maps[t].values.SameShape(in.dist.frames[t].left.luma)) {
        throw Error(ErrorCode::kDimensionMismatch,
                    std::string(what) + " map of frame " + std::to_string(t) + " has wrong size");
      }
    }
  };
  check(in.saliency, "saliency");
  check(in.saliency_right, "right-view saliency");
  check(in.disparity, "disparity");
  if (needs_disparity && in.disparity.empty()) {
    throw Error(ErrorCode::kDisparityRequired, "metric needs disparity maps");
  }
}

MetricReport FinishNr(const char* id, Orientation orientation, const NrInputs& in,
                      FrameScores scores, const NrMetricConfig& cfg) {
  MetricReport r = MakeReport(id, orientation, std::move(scores.index), std::move(scores.score),
                              in.saliency, Fingerprint(ToJson(cfg)), std::move(scores.notes));
  r.item = in.dist.name;
  return r;
}

}  // namespace internal

using internal::FrameNotes;
using internal::NrSaliencyAt;

namespace {

double Weight(const SaliencyMap* s, int x, int y) {
  return s != nullptr ? s->values.at(x, y) : 1.0;
}

// Weight of a neighbouring-pixel difference: mean saliency of the pair.
double PairWeight(const SaliencyMap* s, int x0, int y0, int x1, int y1) {
  return s != nullptr ? 0.5 * (s->values.at(x0, y0) + s->values.at(x1, y1)) : 1.0;
}

double Ratio(double num, double den) {
  if (!(den > 0.0)) throw Error(ErrorCode::kDegenerateSaliency, "saliency weights sum to zero");
  return num / den;
}

void RequireMin(const Plane& f, int n, const char* metric) {
  if (f.width() < n || f.height() < n) {
    throw Error(ErrorCode::kTooSmall, std::string(metric) + " needs frames of at least " +
                                          std::to_string(n) + "x" + std::to_string(n));
  }
}

double StdOfRun(const Plane& f, int x0, int y0, int dx, int dy, int n) {
  double m = 0.0;
  double sq = 0.0;
  for (int k = 0; k < n; ++k) {
    const double v = f.clamped(x0 + k * dx, y0 + k * dy);
    m += v;
    sq += v * v;
  }
  m /= n;
  return std::sqrt(std::max(0.0, sq / n - m * m));
}

double ViewMean(const StereoFrame& fr, const std::function<double(const Plane&)>& fn) {
  return 0.5 * (fn(fr.left.luma) + fn(fr.right.luma));
}

}  // namespace

double GbimPlane(const Plane& f, const SaliencyMap* s, const NrMetricConfig& cfg) {
  RequireMin(f, 16, "gbim_s");
  const int w = f.width();
  const int h = f.height();
  const int g = cfg.block_grid;
  double total = 0.0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x + 1 < w; ++x) total += std::abs(f.at(x + 1, y) - f.at(x, y));
  }
  for (int y = 0; y + 1 < h; ++y) {
    for (int x = 0; x < w; ++x) total += std::abs(f.at(x, y + 1) - f.at(x, y));
  }
  const double e = total / (static_cast<double>(h) * (w - 1) + static_cast<double>(w) * (h - 1));
  if (e == 0.0) return 0.0;
  auto masking = [&](int x, int y, int dx, int dy) {
    if (cfg.gbim_masking == GbimMasking::kNeutral) return 1.0;
    // Eight samples straddling the boundary, four on each side.
    return 1.0 / (1.0 + StdOfRun(f, x - 4 * dx, y - 4 * dy, dx, dy, 8) / 32.0);
  };
  double nh = 0.0, dh = 0.0;
  for (int x = g; x < w; x += g) {
    for (int y = 0; y < h; ++y) {
      const double wt = PairWeight(s, x - 1, y, x, y);
      nh += masking(x, y, 1, 0) * std::abs(f.at(x, y) - f.at(x - 1, y)) * wt;
      dh += wt;
    }
  }
  double nv = 0.0, dv = 0.0;
  for (int y = g; y < h; y += g) {
    for (int x = 0; x < w; ++x) {
      const double wt = PairWeight(s, x, y - 1, x, y);
      nv += masking(x, y, 0, 1) * std::abs(f.at(x, y) - f.at(x, y - 1)) * wt;
      dv += wt;
    }
  }
  return (Ratio(nh, dh) + Ratio(nv, dv)) / (2.0 * e);
}

double NrpbmPlane(const Plane& f, const SaliencyMap* s, const NrMetricConfig& cfg) {
  RequireMin(f, cfg.nrpbm_probe, "nrpbm_s");
  const std::vector<double> probe(cfg.nrpbm_probe, 1.0 / cfg.nrpbm_probe);
  const Plane bv = FilterCols(f, probe);
  const Plane bh = FilterRows(f, probe);
  double fv = 0.0, vv = 0.0, fh = 0.0, vh = 0.0;
  for (int y = 0; y < f.height(); ++y) {
    for (int x = 0; x < f.width(); ++x) {
      const double wt = Weight(s, x, y);
      if (y > 0) {
        const double df = std::abs(f.at(x, y) - f.at(x, y - 1));
        const double db = std::abs(bv.at(x, y) - bv.at(x, y - 1));
        fv += df * wt;
        vv += std::max(0.0, df - db) * wt;
      }
      if (x > 0) {
        const double df = std::abs(f.at(x, y) - f.at(x - 1, y));
        const double db = std::abs(bh.at(x, y) - bh.at(x - 1, y));
        fh += df * wt;
        vh += std::max(0.0, df - db) * wt;
      }
    }
  }
  if (fv == 0.0 && fh == 0.0) return 0.0;
  // A direction without any variation carries no blur evidence.
  const double rv = fv > 0.0 ? vv / fv : 0.0;
  const double rh = fh > 0.0 ? vh / fh : 0.0;
  return 1.0 - std::max(rv, rh);
}

double BlockFariasPlane(const Plane& f, const SaliencyMap* s, const NrMetricConfig& cfg) {
  RequireMin(f, 2 * cfg.block_grid, "block_farias_s");
  const int w = f.width();
  const int h = f.height();
  const int g = cfg.block_grid;
  double bv = 0.0, av = 0.0, bh = 0.0, ah = 0.0;
  for (int y = 1; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double d = std::abs(f.at(x, y) - f.at(x, y - 1)) * PairWeight(s, x, y - 1, x, y);
      av += d;
      if (y % g == 0) bv += d;
    }
  }
  for (int y = 0; y < h; ++y) {
    for (int x = 1; x < w; ++x) {
      const double d = std::abs(f.at(x, y) - f.at(x - 1, y)) * PairWeight(s, x - 1, y, x, y);
      ah += d;
      if (x % g == 0) bh += d;
    }
  }
  const double rv = av > 0.0 ? bv / av : 0.0;
  const double rh = ah > 0.0 ? bh / ah : 0.0;
  return (rv + rh) / (static_cast<double>(h) * w);
}

double AqiPlane(const Plane& f, const SaliencyMap* s, const NrMetricConfig& cfg) {
  const int half = cfg.aqi_length / 2;
  std::vector<double> entropy;
  for (double deg : cfg.aqi_directions) {
    const double rad = deg * std::numbers::pi / 180.0;
    double ux = std::cos(rad);
    double uy = -std::sin(rad);  // image rows grow downwards
    const double norm = std::max(std::abs(ux), std::abs(uy));
    ux /= norm;
    uy /= norm;
    std::vector<int> ox, oy;
    for (int k = -half; k <= half; ++k) {
      ox.push_back(static_cast<int>(std::lround(k * ux)));
      oy.push_back(static_cast<int>(std::lround(k * uy)));
    }
    std::vector<double> hist(cfg.aqi_bins, 0.0);
    double mass = 0.0;
    for (int y = 0; y < f.height(); ++y) {
      for (int x = 0; x < f.width(); ++x) {
        double v = 0.0;
        for (size_t k = 0; k < ox.size(); ++k) v += f.clamped(x + ox[k], y + oy[k]);
        v /= static_cast<double>(ox.size());
        const int bin = std::clamp(static_cast<int>(std::floor(v * cfg.aqi_bins / 256.0)), 0,
                                   cfg.aqi_bins - 1);
        const double wt = Weight(s, x, y);
        hist[bin] += wt;
        mass += wt;
      }
    }
    if (!(mass > 0.0)) throw Error(ErrorCode::kDegenerateSaliency, "saliency map sums to zero");
    double hsum = 0.0;
    for (double c : hist) {
      if (c > 0.0) {
        const double p = c / mass;
        hsum -= p * std::log(p);
      }
    }
    entropy.push_back(hsum);
  }
  double mean = 0.0;
  for (double v : entropy) mean += v;
  mean /= entropy.size();
  double var = 0.0;
  for (double v : entropy) var += (v - mean) * (v - mean);
  return std::sqrt(var / entropy.size());
}

QjpegFeatures ComputeQjpegFeatures(const Plane& f, const SaliencyMap* s, int grid) {
  RequireMin(f, 2 * grid, "nospdm_s");
  const int w = f.width();
  const int h = f.height();
  auto dh = [&](int x, int y) { return f.at(x + 1, y) - f.at(x, y); };
  auto dv = [&](int x, int y) { return f.at(x, y + 1) - f.at(x, y); };
  // Horizontal differences; the boundary sits between x and x+1 when x+1 is
  // a multiple of the grid.
  double bhn = 0, bhd = 0, ahn = 0, ahd = 0, zhn = 0, zhd = 0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x + 1 < w; ++x) {
      const double wt = Weight(s, x, y);
      const double d = std::abs(dh(x, y));
      if ((x + 1) % grid == 0) {
        bhn += d * wt;
        bhd += wt;
      } else {
        ahn += d * wt;
        ahd += wt;
      }
      if (x + 2 < w) {
        zhn += (dh(x, y) * dh(x + 1, y) < 0.0 ? 1.0 : 0.0) * wt;
        zhd += wt;
      }
    }
  }
  double bvn = 0, bvd = 0, avn = 0, avd = 0, zvn = 0, zvd = 0;
  for (int y = 0; y + 1 < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double wt = Weight(s, x, y);
      const double d = std::abs(dv(x, y));
      if ((y + 1) % grid == 0) {
        bvn += d * wt;
        bvd += wt;
      } else {
        avn += d * wt;
        avd += wt;
      }
      if (y + 2 < h) {
        zvn += (dv(x, y) * dv(x, y + 1) < 0.0 ? 1.0 : 0.0) * wt;
        zvd += wt;
      }
    }
  }
  QjpegFeatures q;
  q.boundary = 0.5 * (Ratio(bhn, bhd) + Ratio(bvn, bvd));
  q.activity = 0.5 * (Ratio(ahn, ahd) + Ratio(avn, avd));
  q.zero_crossing = 0.5 * (Ratio(zhn, zhd) + Ratio(zvn, zvd));
  return q;
}

double Qjpeg(const QjpegFeatures& q, const NrMetricConfig& cfg) {
  if (q.boundary <= 0.0 || q.activity <= 0.0 || q.zero_crossing <= 0.0) return cfg.nospdm_alpha;
  return cfg.nospdm_alpha + cfg.nospdm_beta * std::pow(q.boundary, cfg.nospdm_gamma1) *
                                std::pow(q.activity, cfg.nospdm_gamma2) *
                                std::pow(q.zero_crossing, cfg.nospdm_gamma3);
}

double VectorAngle(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw Error(ErrorCode::kDimensionMismatch, "vector angle operands differ in length");
  double na = 0.0, nb = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  na = std::sqrt(na);
  nb = std::sqrt(nb);
  if (na == 0.0 || nb == 0.0) return 0.0;
  // 2·atan2(|u − v|, |u + v|) on the unit vectors; acos loses precision at
  // small angles.
  double dm = 0.0, dp = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double u = a[i] / na;
    const double v = b[i] / nb;
    dm += (u - v) * (u - v);
    dp += (u + v) * (u + v);
  }
  return 2.0 * std::atan2(std::sqrt(dm), std::sqrt(dp));
}

MetricReport ScoreGbim(const NrInputs& in, const NrMetricConfig& cfg, const ExecOptions& exec) {
  cfg.Validate();
  internal::ValidateNr(in, false);
  auto scores = internal::RunFrames(0, in.dist.size(), exec, [&](int t, FrameNotes&) {
    return ViewMean(in.dist.frames[t],
                    [&](const Plane& p) { return GbimPlane(p, NrSaliencyAt(in, t), cfg); });
  });
  return internal::FinishNr("gbim_s", Orientation::kLowerBetter, in, std::move(scores), cfg);
}

MetricReport ScoreNrpbm(const NrInputs& in, const NrMetricConfig& cfg, const ExecOptions& exec) {
  cfg.Validate();
  internal::ValidateNr(in, false);
  auto scores = internal::RunFrames(0, in.dist.size(), exec, [&](int t, FrameNotes&) {
    return ViewMean(in.dist.frames[t],
                    [&](const Plane& p) { return NrpbmPlane(p, NrSaliencyAt(in, t), cfg); });
  });
  return internal::FinishNr("nrpbm_s", Orientation::kLowerBetter, in, std::move(scores), cfg);
}

MetricReport ScoreBlockFarias(const NrInputs& in, const NrMetricConfig& cfg,
                              const ExecOptions& exec) {
  cfg.Validate();
  internal::ValidateNr(in, false);
  auto scores = internal::RunFrames(0, in.dist.size(), exec, [&](int t, FrameNotes&) {
    return ViewMean(in.dist.frames[t],
                    [&](const Plane& p) { return BlockFariasPlane(p, NrSaliencyAt(in, t), cfg); });
  });
  return internal::FinishNr("block_farias_s", Orientation::kLowerBetter, in, std::move(scores),
                            cfg);
}

MetricReport ScoreVqsm(const NrInputs& in, const NrMetricConfig& cfg, const ExecOptions& exec) {
  cfg.Validate();
  internal::ValidateNr(in, false);
  RequireMin(in.dist.frames.front().left.luma, cfg.vqsm_window, "vqsm_s");
  const Kernel2D box = BoxKernel(cfg.vqsm_window);
  const auto& a = cfg.vqsm_alpha;
  auto scores = internal::RunFrames(0, in.dist.size(), exec, [&](int t, FrameNotes&) {
    const SaliencyMap* s = NrSaliencyAt(in, t);
    std::optional<SaliencyMap> smooth;
    if (s != nullptr) smooth = SaliencyMap{Convolve2d(s->values, box), s->source};
    return ViewMean(in.dist.frames[t], [&](const Plane& p) {
      const double sh = PoolSpatial(SobelGradient(p).magnitude, s);
      const LocalStats st = ComputeLocalStats(p, p, box);
      Plane sigma(p.width(), p.height());
      for (size_t i = 0; i < sigma.size(); ++i) sigma.data()[i] = std::sqrt(st.var_x.data()[i]);
      const double sm = PoolSpatial(sigma, smooth ? &*smooth : nullptr);
      return a[0] * sh * sh + a[1] * sh + a[2] * sm * sm + a[3] * sm + a[4];
    });
  });
  return internal::FinishNr("vqsm_s", Orientation::kHigherBetter, in, std::move(scores), cfg);
}

MetricReport ScoreAqi(const NrInputs& in, const NrMetricConfig& cfg, const ExecOptions& exec) {
  cfg.Validate();
  internal::ValidateNr(in, false);
  auto scores = internal::RunFrames(0, in.dist.size(), exec, [&](int t, FrameNotes&) {
    return ViewMean(in.dist.frames[t],
                    [&](const Plane& p) { return AqiPlane(p, NrSaliencyAt(in, t), cfg); });
  });
  return internal::FinishNr("aqi_s", Orientation::kHigherBetter, in, std::move(scores), cfg);
}

MetricReport ScoreQa3d(const NrInputs& in, const NrMetricConfig& cfg, const ExecOptions& exec) {
  cfg.Validate();
  internal::ValidateNr(in, true);
  const int p = cfg.qa3d_history;
  const int n = in.dist.size();
  if (n < p + 1) {
    throw Error(ErrorCode::kNeedsTemporalContext,
                "qa3d_s needs at least " + std::to_string(p + 1) + " frames, got " +
                    std::to_string(n));
  }
  RequireMin(in.dist.frames.front().left.luma, 3, "qa3d_s");
  std::vector<double> dn(n), de(n);
  ParallelFor(n, exec, [&](int t) {
    const SaliencyMap* s = NrSaliencyAt(in, t);
    Plane d = in.disparity[t].values;
    for (double& v : d.data()) {
      if (v < cfg.qa3d_tau) v = 0.0;
    }
    dn[t] = PoolSpatial(d, s);
    const Plane ml = SobelGradient(in.dist.frames[t].left.luma).magnitude;
    const Plane mr = SobelGradient(in.dist.frames[t].right.luma).magnitude;
    Plane diff(ml.width(), ml.height());
    for (size_t i = 0; i < diff.size(); ++i) {
      diff.data()[i] = std::abs(ml.data()[i] - mr.data()[i]) / 255.0;
    }
    de[t] = PoolSpatial(diff, s);
  });
  // The history window is a cheap serial pass over the per-frame indices.
  auto scores = internal::RunFrames(p, n, ExecOptions{1}, [&](int t, FrameNotes&) {
    double history = 0.0;
    for (int i = t - p; i < t; ++i) history += dn[i];
    const double sm = (1.0 / 10.0) * (history - dn[t] * p) * dn[t];
    return 1.0 - (sm + de[t]) / 2.0;
  });
  return internal::FinishNr("qa3d_s", Orientation::kHigherBetter, in, std::move(scores), cfg);
}

MetricReport ScoreNospdm(const NrInputs& in, const NrMetricConfig& cfg, const ExecOptions& exec) {
  cfg.Validate();
  internal::ValidateNr(in, false);
  if (!in.saliency_right.empty() && in.saliency.empty()) {
    throw Error(ErrorCode::kParam, "right-view saliency given without left-view saliency");
  }
  auto scores = internal::RunFrames(0, in.dist.size(), exec, [&](int t, FrameNotes& notes) {
    const StereoFrame& fr = in.dist.frames[t];
    const SaliencyMap* sl = NrSaliencyAt(in, t);
    const SaliencyMap* sr = in.saliency_right.empty() ? sl : &in.saliency_right[t];
    const QjpegFeatures fl = ComputeQjpegFeatures(fr.left.luma, sl, cfg.block_grid);
    const QjpegFeatures fr_ = ComputeQjpegFeatures(fr.right.luma, sr, cfg.block_grid);
    for (const QjpegFeatures* q : {&fl, &fr_}) {
      if (q->boundary <= 0.0 || q->activity <= 0.0 || q->zero_crossing <= 0.0) {
        internal::AppendUnique(notes, "nospdm_s: a zero QJPEG feature collapsed the score to alpha");
      }
    }
    const double ql = Qjpeg(fl, cfg);
    const double qr = Qjpeg(fr_, cfg);
    const double mu = cfg.nospdm_mu_r;
    double score = (2.0 - mu) * ql + mu * qr - cfg.nospdm_lambda * std::max(ql, qr) +
                   VectorAngle(fr.left.luma.data(), fr.right.luma.data());
    if (sl != nullptr) {
      score += cfg.nospdm_omega_s * VectorAngle(sl->values.data(), sr->values.data());
    }
    return score;
  });
  return internal::FinishNr("nospdm_s", Orientation::kHigherBetter, in, std::move(scores), cfg);
}

const std::vector<NrMetricInfo>& NrMetricRegistry() {
  static const std::vector<NrMetricInfo> registry = {
      {"gbim_s", Orientation::kLowerBetter, false, ScoreGbim},
      {"nrpbm_s", Orientation::kLowerBetter, false, ScoreNrpbm},
      {"blur_farias_s", Orientation::kLowerBetter, false, ScoreBlurFarias},
      {"block_farias_s", Orientation::kLowerBetter, false, ScoreBlockFarias},
      {"sadaka_s", Orientation::kHigherBetter, false, ScoreSadaka},
      {"vqsm_s", Orientation::kHigherBetter, false, ScoreVqsm},
      {"aqi_s", Orientation::kHigherBetter, false, ScoreAqi},
      {"qa3d_s", Orientation::kHigherBetter, true, ScoreQa3d},
      {"nospdm_s", Orientation::kHigherBetter, false, ScoreNospdm},
  };
  return registry;
}

const NrMetricInfo& FindNrMetric(const std::string& id) {
  for (const NrMetricInfo& m : NrMetricRegistry()) {
    if (m.id == id) return m;
  }
  throw Error(ErrorCode::kUnknownMetric, "no no-reference metric '" + id + "'");
}

}  // namespace salvq
