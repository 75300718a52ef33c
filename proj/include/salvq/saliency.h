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

#ifndef SALVQ_SALIENCY_H_
#define SALVQ_SALIENCY_H_

#include <filesystem>
#include <span>
#include <vector>

#include "salvq/image.h"
#include "salvq/maps.h"
#include "salvq/parallel.h"

namespace salvq {

// Σ f·S / Σ S. With constant S this is the plain mean of f.
// Throws DimensionMismatch on shape mismatch and DegenerateSaliency if Σ S = 0.
double WeightedSpatialMean(const Plane& f, const Plane& saliency);

// Pooling used by every metric: weighted mean when a map is given, the plain
// mean otherwise. Both paths share one loop so a map of ones reproduces the
// unweighted result bit for bit.
double PoolSpatial(const Plane& f, const SaliencyMap* saliency);

// Min-max normalization to [0, 1] with max exactly 1. A map whose range is
// below 1e-12 becomes uniform ones. NaN/Inf raise NumericError.
SaliencyMap NormalizeMap(const Plane& raw, SaliencySource source = SaliencySource::kSynthetic);

SaliencyMap UniformSaliency(int width, int height, double value = 1.0);

// Level m is NormalizeMap(Downsample2^m(S)). `target` lists the dims of the
// paired image pyramid and must be a floor-halving chain starting at S's dims.
std::vector<SaliencyMap> BuildSaliencyPyramid(const SaliencyMap& saliency,
                                              std::span<const Dims> target);

struct VamConfig {
  double weight_intensity = 0.25;
  double weight_color = 0.25;
  double weight_motion = 0.25;
  double weight_depth = 0.25;
  double motion_sigma = 2.0;
  // <= 0 selects min(H, W) / 32.
  double smoothing_sigma = 0.0;
  std::vector<std::pair<int, int>> center_surround = {{2, 5}, {3, 6}};
};

// Fixed-weight fusion of intensity and colour centre-surround contrast,
// frame-difference motion, and nearness from disparity. Computed on the left
// view; the returned map weights both views. An empty `disparity` span drops
// the depth channel.
std::vector<SaliencyMap> BaselineVam(const StereoSequence& seq,
                                     std::span<const DisparityMap> disparity,
                                     const VamConfig& cfg, const ExecOptions& exec = {});

// PGM series in `dir`, one map per frame of `seq`, each passed through
// NormalizeMap. Count mismatches raise MapSeriesGap.
std::vector<SaliencyMap> LoadExternalSaliency(const std::filesystem::path& dir,
                                              const StereoSequence& seq);

}  // namespace salvq

#endif  // SALVQ_SALIENCY_H_
