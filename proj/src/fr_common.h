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

#ifndef SALVQ_SRC_FR_COMMON_H_
#define SALVQ_SRC_FR_COMMON_H_

#include <functional>
#include <string>
#include <vector>

#include "salvq/fr_metrics.h"

namespace salvq::internal {

void ValidateFr(const FrInputs& in, bool needs_ref_disparity, bool needs_dist_disparity);

inline const SaliencyMap* SaliencyAt(const FrInputs& in, int t) {
  return in.saliency.empty() ? nullptr : &in.saliency[t];
}

using FrameNotes = std::vector<std::string>;

struct FrameScores {
  std::vector<int> index;
  std::vector<double> score;
  std::vector<std::string> notes;  // de-duplicated, in frame order
};

// Scores frames [first, count) with fn, frame-parallel under exec. Notes are
// merged in frame order so reports do not depend on scheduling.
FrameScores RunFrames(int first, int count, const ExecOptions& exec,
                      const std::function<double(int, FrameNotes&)>& fn);

MetricReport FinishFr(const char* id, Orientation orientation, const FrInputs& in,
                      FrameScores scores, const FrMetricConfig& cfg);

void AppendUnique(std::vector<std::string>& notes, const std::string& note);

}  // namespace salvq::internal

#endif  // SALVQ_SRC_FR_COMMON_H_
