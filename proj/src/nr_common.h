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

#ifndef SALVQ_SRC_NR_COMMON_H_
#define SALVQ_SRC_NR_COMMON_H_

#include "fr_common.h"
#include "salvq/nr_metrics.h"

namespace salvq::internal {

void ValidateNr(const NrInputs& in, bool needs_disparity);

inline const SaliencyMap* NrSaliencyAt(const NrInputs& in, int t) {
  return in.saliency.empty() ? nullptr : &in.saliency[t];
}

MetricReport FinishNr(const char* id, Orientation orientation, const NrInputs& in,
                      FrameScores scores, const NrMetricConfig& cfg);

}  // namespace salvq::internal

#endif  // SALVQ_SRC_NR_COMMON_H_
