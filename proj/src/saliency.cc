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

#include "salvq/saliency.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "salvq/error.h"
#include "salvq/media_io.h"
#include "salvq/signal.h"

namespace salvq {

const char* SaliencySourceName(SaliencySource source) {
  switch (source) {
    case SaliencySource::kUniform: return "uniform";
    case SaliencySource::kBaseline: return "baseline";
    case SaliencySource::kExternal: return "external";
    case SaliencySource::kSynthetic: return "synthetic";
  }
  return "synthetic";
}

double WeightedSpatialMean(const Plane& f, const Plane& saliency) {
  RequireSameShape(f, saliency, "WeightedSpatialMean");
  double num = 0.0;
  double den = 0.0;
  for (size_t i = 0; i < f.size(); ++i) {
    const double s = saliency.data()[i];
    num += f.data()[i] * s;
    den += s;
  }
  if (!(den > 0.0)) throw Error(ErrorCode::kDegenerateSaliency, "saliency map sums to zero");
  return num / den;
}

double PoolSpatial(const Plane& f, const SaliencyMap* saliency) {
  if (saliency != nullptr) return WeightedSpatialMean(f, saliency->values);
  if (f.empty()) throw Error(ErrorCode::kParam, "pooling an empty plane");
  double num = 0.0;
  double den = 0.0;
  for (double v : f.data()) {
    num += v * 1.0;
    den += 1.0;
  }
  return num / den;
}

SaliencyMap NormalizeMap(const Plane& raw, SaliencySource source) {
  RequireFinite(raw, "NormalizeMap");
  if (raw.empty()) throw Error(ErrorCode::kParam, "NormalizeMap on empty map");
  const auto [lo_it, hi_it] = std::minmax_element(raw.data().begin(), raw.data().end());
  const double lo = *lo_it;
  const double range = *hi_it - lo;
  SaliencyMap out{Plane(raw.width(), raw.height(), 1.0), source};
  if (range < 1e-12) return out;
  for (size_t i = 0; i < raw.size(); ++i) out.values.data()[i] = (raw.data()[i] - lo) / range;
  return out;
}

SaliencyMap UniformSaliency(int width, int height, double value) {
  return SaliencyMap{Plane(width, height, value), SaliencySource::kUniform};
}

std::vector<SaliencyMap> BuildSaliencyPyramid(const SaliencyMap& saliency,
                                              std::span<const Dims> target) {
  if (target.empty() || target.front() != DimsOf(saliency.values)) {
    throw Error(ErrorCode::kPyramidMismatch, "pyramid level 0 must match the saliency map");
  }
  for (size_t m = 1; m < target.size(); ++m) {
    if (target[m].width != target[m - 1].width / 2 || target[m].height != target[m - 1].height / 2) {
      throw Error(ErrorCode::kPyramidMismatch,
                  "level " + std::to_string(m) + " is not a halving of level " + std::to_string(m - 1));
    }
  }
  std::vector<SaliencyMap> levels;
  levels.reserve(target.size());
  Plane current = saliency.values;
  for (size_t m = 0; m < target.size(); ++m) {
    if (m > 0) current = Downsample2(current);
    levels.push_back(NormalizeMap(current, saliency.source));
  }
  return levels;
}

std::vector<SaliencyMap> LoadExternalSaliency(const std::filesystem::path& dir,
                                              const StereoSequence& seq) {
  seq.Validate();
  const std::vector<Plane> raw = LoadMapSeries(dir, {seq.width(), seq.height(), seq.size()});
  std::vector<SaliencyMap> maps;
  maps.reserve(raw.size());
  for (const Plane& p : raw) maps.push_back(NormalizeMap(p, SaliencySource::kExternal));
  return maps;
}

}  // namespace salvq
