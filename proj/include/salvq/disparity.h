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

#ifndef SALVQ_DISPARITY_H_
#define SALVQ_DISPARITY_H_

#include <filesystem>
#include <span>
#include <vector>

#include "salvq/image.h"
#include "salvq/maps.h"
#include "salvq/parallel.h"

namespace salvq {

struct DisparityConfig {
  int block = 8;
  int search_range = 32;
};

// SAD block matching of left-view blocks against the right view over
// d in [0, search_range] (ties keep the smallest d), filled blockwise and then
// 3×3 median filtered. Throws ParamError when the frame is narrower than
// search_range + block or the config is out of range.
DisparityMap EstimateDisparity(const StereoFrame& pair, const DisparityConfig& cfg);
std::vector<DisparityMap> EstimateDisparitySeries(const StereoSequence& seq,
                                                  const DisparityConfig& cfg,
                                                  const ExecOptions& exec = {});

// depth = 1 - minmax(D): nearer pixels get smaller values. A constant map
// becomes uniform 0.5.
Plane DisparityToDepth(const DisparityMap& disparity);

struct DepthBracket {
  double near = 0.0;
  double far = 0.0;
  double bracket = 0.0;  // far - near, relative units
};

// Depth of the salient pixels (S >= its 75th percentile and S > 0, per frame)
// pooled over the series; bracket = (100-p)th minus p-th percentile. Falls
// back to all pixels when the salient set is empty. Depth is normalized over
// the whole series so frames share one scale.
DepthBracket ComputeDepthBracket(std::span<const DisparityMap> disparity,
                                 std::span<const SaliencyMap> saliency, double percentile = 5.0);

// External maps store d = raw * search_range / 255, i.e. a [0, 1] map times
// the search range.
std::vector<DisparityMap> LoadExternalDisparity(const std::filesystem::path& dir,
                                                const StereoSequence& seq, int search_range);
// Inverse mapping for export: clamp(d / search_range, 0, 1).
Plane DisparityToUnitMap(const DisparityMap& disparity, int search_range);

// Linear-interpolated percentile (p in [0, 100]) of unsorted samples.
double Percentile(std::vector<double> samples, double p);

}  // namespace salvq

#endif  // SALVQ_DISPARITY_H_
