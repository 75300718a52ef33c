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

#ifndef SALVQ_FR_METRICS_H_
#define SALVQ_FR_METRICS_H_

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "salvq/image.h"
#include "salvq/maps.h"
#include "salvq/metric_config.h"
#include "salvq/metric_report.h"
#include "salvq/parallel.h"

namespace salvq {

// Reference/distorted pair plus optional per-frame maps. An empty span means
// "not supplied"; saliency absent means unweighted pooling. Disparity maps
// are anchored on the left view.
struct FrInputs {
  const StereoSequence& ref;
  const StereoSequence& dist;
  std::span<const SaliencyMap> saliency = {};
  std::span<const DisparityMap> ref_disparity = {};
  std::span<const DisparityMap> dist_disparity = {};
};

MetricReport ScorePsnr(const FrInputs& in, const FrMetricConfig& cfg = {},
                       const ExecOptions& exec = {});
MetricReport ScoreSsim(const FrInputs& in, const FrMetricConfig& cfg = {},
                       const ExecOptions& exec = {});
MetricReport ScoreMsSsim(const FrInputs& in, const FrMetricConfig& cfg = {},
                         const ExecOptions& exec = {});
MetricReport ScoreVif(const FrInputs& in, const FrMetricConfig& cfg = {},
                      const ExecOptions& exec = {});
// Per frame: sum over both views of the disparity-modulated SSIM.
MetricReport ScoreDdl1(const FrInputs& in, const FrMetricConfig& cfg = {},
                       const ExecOptions& exec = {});
MetricReport ScoreOq(const FrInputs& in, const FrMetricConfig& cfg = {},
                     const ExecOptions& exec = {});
MetricReport ScoreCiq(const FrInputs& in, const FrMetricConfig& cfg = {},
                      const ExecOptions& exec = {});
MetricReport ScorePhvs3d(const FrInputs& in, const FrMetricConfig& cfg = {},
                         const ExecOptions& exec = {});
MetricReport ScorePhsd(const FrInputs& in, const FrMetricConfig& cfg = {},
                       const ExecOptions& exec = {});
MetricReport ScoreMj3d(const FrInputs& in, const FrMetricConfig& cfg = {},
                       const ExecOptions& exec = {});
MetricReport ScoreHv3d(const FrInputs& in, const FrMetricConfig& cfg = {},
                       const ExecOptions& exec = {});
// Per-frame entries are the temporal terms times the depth term, so their
// mean is the sequence score. Needs at least two frames.
MetricReport ScoreFlosim3d(const FrInputs& in, const FrMetricConfig& cfg = {},
                           const ExecOptions& exec = {});

// Cyclopean image 0.5 * (L(x, y) + R(x - round(d), y)), replicate borders.
Plane CyclopeanImage(const Plane& left, const Plane& right, const DisparityMap& disparity);

// Mean L1 distance between per-patch features (mean, variance, smallest
// eigenvalue of the gradient structure tensor) of two frame-difference
// images. Tail rows/columns that do not fill a patch are ignored.
double PatchFeatureDistance(const Plane& a, const Plane& b, int patch);

struct FrMetricInfo {
  std::string id;
  Orientation orientation;
  bool needs_ref_disparity = false;
  bool needs_dist_disparity = false;
  std::function<MetricReport(const FrInputs&, const FrMetricConfig&, const ExecOptions&)> score;
};

const std::vector<FrMetricInfo>& FrMetricRegistry();
// Throws UnknownMetric.
const FrMetricInfo& FindFrMetric(const std::string& id);

}  // namespace salvq

#endif  // SALVQ_FR_METRICS_H_
