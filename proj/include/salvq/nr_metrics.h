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

#ifndef SALVQ_NR_METRICS_H_
#define SALVQ_NR_METRICS_H_

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

// Distorted sequence plus optional per-frame maps. The saliency series is
// applied to both views unless saliency_right is given (NOSPDM only).
struct NrInputs {
  const StereoSequence& dist;
  std::span<const SaliencyMap> saliency = {};
  std::span<const DisparityMap> disparity = {};
  std::span<const SaliencyMap> saliency_right = {};
};

MetricReport ScoreGbim(const NrInputs& in, const NrMetricConfig& cfg = {},
                       const ExecOptions& exec = {});
// Higher means blurrier.
MetricReport ScoreNrpbm(const NrInputs& in, const NrMetricConfig& cfg = {},
                        const ExecOptions& exec = {});
MetricReport ScoreBlurFarias(const NrInputs& in, const NrMetricConfig& cfg = {},
                             const ExecOptions& exec = {});
MetricReport ScoreBlockFarias(const NrInputs& in, const NrMetricConfig& cfg = {},
                              const ExecOptions& exec = {});
MetricReport ScoreSadaka(const NrInputs& in, const NrMetricConfig& cfg = {},
                         const ExecOptions& exec = {});
MetricReport ScoreVqsm(const NrInputs& in, const NrMetricConfig& cfg = {},
                       const ExecOptions& exec = {});
MetricReport ScoreAqi(const NrInputs& in, const NrMetricConfig& cfg = {},
                      const ExecOptions& exec = {});
// Needs disparity and at least qa3d_history + 1 frames; frames before the
// history fills are not scored.
MetricReport ScoreQa3d(const NrInputs& in, const NrMetricConfig& cfg = {},
                       const ExecOptions& exec = {});
MetricReport ScoreNospdm(const NrInputs& in, const NrMetricConfig& cfg = {},
                         const ExecOptions& exec = {});

// Single-plane building blocks, exposed for testing.
double GbimPlane(const Plane& f, const SaliencyMap* s, const NrMetricConfig& cfg);
double NrpbmPlane(const Plane& f, const SaliencyMap* s, const NrMetricConfig& cfg);
double BlockFariasPlane(const Plane& f, const SaliencyMap* s, const NrMetricConfig& cfg);
double AqiPlane(const Plane& f, const SaliencyMap* s, const NrMetricConfig& cfg);

struct EdgeWidth {
  int x = 0;
  int y = 0;
  double width = 0.0;
};

// Edge pixels (Sobel magnitude above threshold * max) and their spread:
// the run of strictly monotone samples through the pixel along the dominant
// gradient axis. A one-pixel step has width 1.
std::vector<EdgeWidth> EdgeWidths(const Plane& f, double threshold);

struct QjpegFeatures {
  double boundary = 0.0;       // B: mean |difference| across block boundaries
  double activity = 0.0;       // A: mean |difference| inside blocks
  double zero_crossing = 0.0;  // Z: sign-change rate of neighbouring differences
};

QjpegFeatures ComputeQjpegFeatures(const Plane& f, const SaliencyMap* s, int grid);
// alpha + beta * B^g1 * A^g2 * Z^g3; any non-positive feature collapses the
// product to zero.
double Qjpeg(const QjpegFeatures& q, const NrMetricConfig& cfg);

// Angle in radians between two equal-length vectors, stable near 0 and pi.
// Zero when either vector is zero.
double VectorAngle(std::span<const double> a, std::span<const double> b);

struct NrMetricInfo {
  std::string id;
  Orientation orientation;
  bool needs_disparity = false;
  std::function<MetricReport(const NrInputs&, const NrMetricConfig&, const ExecOptions&)> score;
};

const std::vector<NrMetricInfo>& NrMetricRegistry();
// Throws UnknownMetric.
const NrMetricInfo& FindNrMetric(const std::string& id);

}  // namespace salvq

#endif  // SALVQ_NR_METRICS_H_
