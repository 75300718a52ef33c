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
#include <limits>

#include "nr_common.h"
#include "salvq/error.h"
#include "salvq/nr_metrics.h"
#include "salvq/signal.h"

namespace salvq {

using internal::FrameNotes;
using internal::NrSaliencyAt;

namespace {

constexpr double kSkipped = std::numeric_limits<double>::quiet_NaN();

// Mean over the views that produced a value; NaN when neither did.
double MeanOfAvailable(double a, double b) {
  if (std::isnan(a)) return b;
  if (std::isnan(b)) return a;
  return 0.5 * (a + b);
}

// Drops skipped frames; throws NoEdges when nothing is left.
internal::FrameScores DropSkipped(internal::FrameScores s, const char* metric) {
  internal::FrameScores out;
  out.notes = std::move(s.notes);
  for (size_t i = 0; i < s.score.size(); ++i) {
    if (std::isnan(s.score[i])) continue;
    out.index.push_back(s.index[i]);
    out.score.push_back(s.score[i]);
  }
  if (out.score.empty()) {
    throw Error(ErrorCode::kNoEdges, std::string(metric) + ": no frame contains edge pixels");
  }
  if (out.score.size() < s.score.size()) {
    internal::AppendUnique(out.notes, std::string(metric) + ": " +
                                          std::to_string(s.score.size() - out.score.size()) +
                                          " frame(s) without edges were skipped");
  }
  return out;
}

double BlurWidthPlane(const Plane& f, const SaliencyMap* s, const NrMetricConfig& cfg,
                      FrameNotes& notes) {
  const std::vector<EdgeWidth> edges = EdgeWidths(f, cfg.edge_threshold);
  if (edges.empty()) return kSkipped;
  double num = 0.0, den = 0.0, plain = 0.0;
  for (const EdgeWidth& e : edges) {
    const double wt = s != nullptr ? s->values.at(e.x, e.y) : 1.0;
    num += e.width * wt;
    den += wt;
    plain += e.width;
  }
  if (den > 0.0) return num / den;
  internal::AppendUnique(notes, "blur_farias_s: saliency is zero on every edge pixel, unweighted mean used");
  return plain / static_cast<double>(edges.size());
}

double SadakaPlane(const Plane& f, const SaliencyMap* s, const NrMetricConfig& cfg) {
  const std::vector<EdgeWidth> edges = EdgeWidths(f, cfg.edge_threshold);
  if (edges.empty()) return kSkipped;
  const int r = cfg.sadaka_region;
  const int nx = (f.width() + r - 1) / r;
  const int ny = (f.height() + r - 1) / r;
  std::vector<double> lo(nx * ny, std::numeric_limits<double>::infinity());
  std::vector<double> hi(nx * ny, -std::numeric_limits<double>::infinity());
  std::vector<double> mass(nx * ny, 0.0);
  double total = 0.0;
  for (int y = 0; y < f.height(); ++y) {
    for (int x = 0; x < f.width(); ++x) {
      const int k = (y / r) * nx + x / r;
      lo[k] = std::min(lo[k], f.at(x, y));
      hi[k] = std::max(hi[k], f.at(x, y));
      const double wt = s != nullptr ? s->values.at(x, y) : 1.0;
      mass[k] += wt;
      total += wt;
    }
  }
  if (!(total > 0.0)) throw Error(ErrorCode::kDegenerateSaliency, "saliency map sums to zero");
  std::vector<double> blur(nx * ny, 0.0);
  for (const EdgeWidth& e : edges) {
    const int k = (e.y / r) * nx + e.x / r;
    const double jnb = hi[k] - lo[k] <= cfg.jnb_contrast_split ? cfg.jnb_width_low_contrast
                                                                 : cfg.jnb_width_high_contrast;
    blur[k] += std::pow(std::abs(e.width / jnb), cfg.sadaka_beta);
  }
  double sum = 0.0;
  for (int k = 0; k < nx * ny; ++k) {
    const double d = std::pow(blur[k], 1.0 / cfg.sadaka_beta);
    sum += d * std::pow(std::abs(mass[k] / total), cfg.sadaka_beta);
  }
  if (!(sum > 0.0)) return kSkipped;
  return std::pow(sum, -1.0 / cfg.sadaka_beta);
}

}  // namespace

std::vector<EdgeWidth> EdgeWidths(const Plane& f, double threshold) {
  const Gradient g = SobelGradient(f);
  const double peak = *std::max_element(g.magnitude.data().begin(), g.magnitude.data().end());
  std::vector<EdgeWidth> out;
  if (!(peak > 0.0)) return out;
  const double cut = threshold * peak;
  for (int y = 0; y < f.height(); ++y) {
    for (int x = 0; x < f.width(); ++x) {
      if (!(g.magnitude.at(x, y) > cut)) continue;
      const double gx = g.gx.at(x, y);
      const double gy = g.gy.at(x, y);
      const bool horizontal = std::abs(gx) >= std::abs(gy);
      const double sign = (horizontal ? gx : gy) > 0.0 ? 1.0 : -1.0;
      const int limit = horizontal ? f.width() : f.height();
      const int pos = horizontal ? x : y;
      auto at = [&](int p) { return horizontal ? f.at(p, y) : f.at(x, p); };
      int hi = pos;
      while (hi + 1 < limit && sign * (at(hi + 1) - at(hi)) > 0.0) ++hi;
      int lo = pos;
      while (lo - 1 >= 0 && sign * (at(lo) - at(lo - 1)) > 0.0) --lo;
      out.push_back({x, y, static_cast<double>(hi - lo)});
    }
  }
  return out;
}

MetricReport ScoreBlurFarias(const NrInputs& in, const NrMetricConfig& cfg,
                             const ExecOptions& exec) {
  cfg.Validate();
  internal::ValidateNr(in, false);
  auto scores = internal::RunFrames(0, in.dist.size(), exec, [&](int t, FrameNotes& notes) {
    const SaliencyMap* s = NrSaliencyAt(in, t);
    const StereoFrame& fr = in.dist.frames[t];
    return MeanOfAvailable(BlurWidthPlane(fr.left.luma, s, cfg, notes),
                           BlurWidthPlane(fr.right.luma, s, cfg, notes));
  });
  return internal::FinishNr("blur_farias_s", Orientation::kLowerBetter, in,
                            DropSkipped(std::move(scores), "blur_farias_s"), cfg);
}

MetricReport ScoreSadaka(const NrInputs& in, const NrMetricConfig& cfg, const ExecOptions& exec) {
  cfg.Validate();
  internal::ValidateNr(in, false);
  auto scores = internal::RunFrames(0, in.dist.size(), exec, [&](int t, FrameNotes&) {
    const SaliencyMap* s = NrSaliencyAt(in, t);
    const StereoFrame& fr = in.dist.frames[t];
    return MeanOfAvailable(SadakaPlane(fr.left.luma, s, cfg), SadakaPlane(fr.right.luma, s, cfg));
  });
  return internal::FinishNr("sadaka_s", Orientation::kHigherBetter, in,
                            DropSkipped(std::move(scores), "sadaka_s"), cfg);
}

}  // namespace salvq
