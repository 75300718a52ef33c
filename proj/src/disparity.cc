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

#include "salvq/disparity.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "salvq/error.h"
#include "salvq/media_io.h"
#include "salvq/signal.h"

namespace salvq {

DisparityMap EstimateDisparity(const StereoFrame& pair, const DisparityConfig& cfg) {
  if (cfg.block < 4 || cfg.search_range < 1) {
    throw Error(ErrorCode::kParam, "disparity block must be >= 4 and search range >= 1");
  }
  const Plane& left = pair.left.luma;
  const Plane& right = pair.right.luma;
  RequireSameShape(left, right, "EstimateDisparity");
  const int w = left.width();
  const int h = left.height();
  if (w < cfg.search_range + cfg.block || h < cfg.block) {
    throw Error(ErrorCode::kParam, std::to_string(w) + "x" + std::to_string(h) +
                                       " frame too small for search range " +
                                       std::to_string(cfg.search_range) + " and block " +
                                       std::to_string(cfg.block));
  }
  Plane raw(w, h);
  const int block_rows = (h + cfg.block - 1) / cfg.block;
#pragma omp parallel for if (static_cast<size_t>(w) * h >= (1u << 16))
  for (int br = 0; br < block_rows; ++br) {
    const int y0 = br * cfg.block;
    const int y1 = std::min(h, y0 + cfg.block);
    for (int x0 = 0; x0 < w; x0 += cfg.block) {
      const int x1 = std::min(w, x0 + cfg.block);
      int best_d = 0;
      double best_sad = std::numeric_limits<double>::infinity();
      for (int d = 0; d <= cfg.search_range; ++d) {
        double sad = 0.0;
        for (int y = y0; y < y1; ++y) {
          for (int x = x0; x < x1; ++x) sad += std::abs(left.at(x, y) - right.clamped(x - d, y));
        }
        if (sad < best_sad) {
          best_sad = sad;
          best_d = d;
        }
      }
      for (int y = y0; y < y1; ++y) {
        for (int x = x0; x < x1; ++x) raw.at(x, y) = best_d;
      }
    }
  }
  return DisparityMap{Median3x3(raw)};
}

std::vector<DisparityMap> EstimateDisparitySeries(const StereoSequence& seq,
                                                  const DisparityConfig& cfg,
                                                  const ExecOptions& exec) {
  seq.Validate();
  std::vector<DisparityMap> out(seq.size());
  ParallelFor(seq.size(), exec, [&](int t) { out[t] = EstimateDisparity(seq.frames[t], cfg); });
  return out;
}

Plane DisparityToDepth(const DisparityMap& disparity) {
  const Plane& d = disparity.values;
  const auto [lo, hi] = std::minmax_element(d.data().begin(), d.data().end());
  Plane depth(d.width(), d.height(), 0.5);
  const double range = *hi - *lo;
  if (!(range > 0.0)) return depth;
  for (size_t i = 0; i < d.size(); ++i) depth.data()[i] = 1.0 - (d.data()[i] - *lo) / range;
  return depth;
}

double Percentile(std::vector<double> samples, double p) {
  if (samples.empty()) throw Error(ErrorCode::kParam, "percentile of an empty sample");
  std::sort(samples.begin(), samples.end());
  const double pos = std::clamp(p, 0.0, 100.0) / 100.0 * (samples.size() - 1);
  const size_t lo = static_cast<size_t>(std::floor(pos));
  const size_t hi = std::min(lo + 1, samples.size() - 1);
  const double frac = pos - lo;
  return samples[lo] + (samples[hi] - samples[lo]) * frac;
}

DepthBracket ComputeDepthBracket(std::span<const DisparityMap> disparity,
                                 std::span<const SaliencyMap> saliency, double percentile) {
  if (disparity.empty() || disparity.size() != saliency.size()) {
    throw Error(ErrorCode::kSequenceLength, "depth bracket needs aligned, non-empty series");
  }
  if (!(percentile >= 0.0 && percentile <= 50.0)) {
    throw Error(ErrorCode::kParam, "depth bracket percentile must be in [0, 50]");
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const DisparityMap& d : disparity) {
    const auto [mn, mx] = std::minmax_element(d.values.data().begin(), d.values.data().end());
    lo = std::min(lo, *mn);
    hi = std::max(hi, *mx);
  }
  const double range = hi - lo;
  const auto depth_of = [&](double d) { return range > 0.0 ? 1.0 - (d - lo) / range : 0.5; };

  std::vector<double> selected, everything;
  for (size_t t = 0; t < disparity.size(); ++t) {
    const Plane& d = disparity[t].values;
    const Plane& s = saliency[t].values;
    RequireSameShape(d, s, "ComputeDepthBracket");
    const double threshold = Percentile(s.data(), 75.0);
    for (size_t i = 0; i < d.size(); ++i) {
      const double depth = depth_of(d.data()[i]);
      everything.push_back(depth);
      if (s.data()[i] >= threshold && s.data()[i] > 0.0) selected.push_back(depth);
    }
  }
  const std::vector<double>& pool = selected.empty() ? everything : selected;
  DepthBracket b;
  b.near = Percentile(pool, percentile);
  b.far = Percentile(pool, 100.0 - percentile);
  b.bracket = std::max(0.0, b.far - b.near);
  return b;
}

std::vector<DisparityMap> LoadExternalDisparity(const std::filesystem::path& dir,
                                                const StereoSequence& seq, int search_range) {
  seq.Validate();
  std::vector<Plane> maps = LoadMapSeries(dir, {seq.width(), seq.height(), seq.size()});
  std::vector<DisparityMap> out;
  out.reserve(maps.size());
  for (Plane& p : maps) {
    for (double& v : p.data()) v *= search_range;
    out.push_back(DisparityMap{std::move(p)});
  }
  return out;
}

Plane DisparityToUnitMap(const DisparityMap& disparity, int search_range) {
  Plane out(disparity.values.width(), disparity.values.height());
  for (size_t i = 0; i < out.size(); ++i) {
    out.data()[i] = std::clamp(disparity.values.data()[i] / search_range, 0.0, 1.0);
  }
  return out;
}

}  // namespace salvq
