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
#include <string>

#include "salvq/error.h"
#include "salvq/saliency.h"
#include "salvq/signal.h"

namespace salvq {
namespace {

// Min-max to [0, 1]; a featureless channel contributes nothing.
Plane ChannelNormalize(const Plane& p) {
  const auto [lo, hi] = std::minmax_element(p.data().begin(), p.data().end());
  const double range = *hi - *lo;
  Plane out(p.width(), p.height(), 0.0);
  if (range < 1e-12) return out;
  for (size_t i = 0; i < p.size(); ++i) out.data()[i] = (p.data()[i] - *lo) / range;
  return out;
}

Kernel2D FittingGaussian(double sigma, int width, int height) {
  int size = GaussianSizeFor(sigma);
  int limit = std::min(width, height);
  if (limit % 2 == 0) --limit;
  return GaussianKernel(std::max(1, std::min(size, limit)), sigma);
}

// Sum over level pairs (c, s) of |P_c - up(P_s)|, each brought back to full
// resolution. Pairs deeper than the frame allows are skipped.
Plane CenterSurround(const Plane& image,
                     const std::vector<std::pair<int, int>>& pairs) {
  int deepest = 0;
  for (const auto& [c, s] : pairs) deepest = std::max(deepest, s);
  const int levels = std::min(deepest + 1, MaxPyramidLevels(image.width(), image.height(), 1));
  const std::vector<Plane> pyr = BuildPyramid(image, levels);
  Plane acc(image.width(), image.height(), 0.0);
  for (const auto& [c, s] : pairs) {
    if (c < 0 || c >= s || s >= levels) continue;
    const Plane& center = pyr[c];
    const Plane surround = ResizeBilinear(pyr[s], center.width(), center.height());
    Plane diff(center.width(), center.height());
    for (size_t i = 0; i < diff.size(); ++i) {
      diff.data()[i] = std::abs(center.data()[i] - surround.data()[i]);
    }
    const Plane full = ResizeBilinear(diff, image.width(), image.height());
    for (size_t i = 0; i < acc.size(); ++i) acc.data()[i] += full.data()[i];
  }
  return acc;
}

Plane ChromaOpponency(const Frame& frame, const VamConfig& cfg) {
  Plane acc(frame.width(), frame.height(), 0.0);
  if (!frame.chroma_u || !frame.chroma_v) return acc;
  for (const Plane* chroma : {&*frame.chroma_u, &*frame.chroma_v}) {
    Plane centered = ResizeBilinear(*chroma, frame.width(), frame.height());
    for (double& v : centered.data()) v -= 128.0;
    const Plane cs = CenterSurround(centered, cfg.center_surround);
    for (size_t i = 0; i < acc.size(); ++i) acc.data()[i] += cs.data()[i];
  }
  return acc;
}

void ValidateConfig(const VamConfig& cfg) {
  const double w[] = {cfg.weight_intensity, cfg.weight_color, cfg.weight_motion, cfg.weight_depth};
  double sum = 0.0;
  for (double v : w) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw Error(ErrorCode::kParam, "VAM weights must be >= 0");
    sum += v;
  }
  if (!(sum > 0.0)) throw Error(ErrorCode::kParam, "VAM weights must not all be zero");
  if (!(cfg.motion_sigma > 0.0)) throw Error(ErrorCode::kParam, "VAM motion sigma must be > 0");
}

}  // namespace

std::vector<SaliencyMap> BaselineVam(const StereoSequence& seq,
                                     std::span<const DisparityMap> disparity,
                                     const VamConfig& cfg, const ExecOptions& exec) {
  seq.Validate();
  ValidateConfig(cfg);
  const bool use_depth = !disparity.empty() && cfg.weight_depth > 0.0;
  if (!disparity.empty() && static_cast<int>(disparity.size()) != seq.size()) {
    throw Error(ErrorCode::kSequenceLength, "disparity series length differs from the sequence");
  }
  const int w = seq.width();
  const int h = seq.height();
  const double smoothing =
      cfg.smoothing_sigma > 0.0 ? cfg.smoothing_sigma : std::min(w, h) / 32.0;
  const Kernel2D motion_kernel = FittingGaussian(cfg.motion_sigma, w, h);
  const Kernel2D smooth_kernel = FittingGaussian(smoothing, w, h);

  std::vector<SaliencyMap> maps(seq.size());
  ParallelFor(seq.size(), exec, [&](int t) {
    const Frame& frame = seq.frames[t].left;
    Plane fused(w, h, 0.0);
    const auto add = [&](double weight, const Plane& channel) {
      if (weight <= 0.0) return;
      const Plane n = ChannelNormalize(channel);
      for (size_t i = 0; i < fused.size(); ++i) fused.data()[i] += weight * n.data()[i];
    };
    add(cfg.weight_intensity, CenterSurround(frame.luma, cfg.center_surround));
    add(cfg.weight_color, ChromaOpponency(frame, cfg));
    if (t > 0 && cfg.weight_motion > 0.0) {
      const Plane& prev = seq.frames[t - 1].left.luma;
      Plane motion(w, h);
      for (size_t i = 0; i < motion.size(); ++i) {
        motion.data()[i] = std::abs(frame.luma.data()[i] - prev.data()[i]);
      }
      add(cfg.weight_motion, Convolve2d(motion, motion_kernel));
    }
    if (use_depth) {
      RequireSameShape(disparity[t].values, frame.luma, "BaselineVam disparity");
      add(cfg.weight_depth, disparity[t].values);
    }
    const SaliencyMap normalized = NormalizeMap(fused);
    maps[t] = NormalizeMap(Convolve2d(normalized.values, smooth_kernel), SaliencySource::kBaseline);
  });
  return maps;
}

}  // namespace salvq
