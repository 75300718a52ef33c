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

#include <cmath>

#include "salvq/error.h"
#include "salvq/eval_stats.h"
#include "salvq/signal.h"

namespace salvq {

namespace {

double PopulationStd(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m += x;
  m /= v.size();
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / v.size());
}

}  // namespace

SiTi ComputeSiTi(const StereoSequence& seq) {
  seq.Validate();
  SiTi out;
  for (int t = 0; t < seq.size(); ++t) {
    const Plane& f = seq.frames[t].left.luma;
    out.si = std::max(out.si, PopulationStd(SobelGradient(f).magnitude.data()));
    if (t > 0) {
      const Plane& prev = seq.frames[t - 1].left.luma;
      std::vector<double> diff(f.size());
      for (size_t i = 0; i < diff.size(); ++i) diff[i] = f.data()[i] - prev.data()[i];
      out.ti = std::max(out.ti, PopulationStd(diff));
    }
  }
  out.ti_defined = seq.size() > 1;
  return out;
}

}  // namespace salvq
