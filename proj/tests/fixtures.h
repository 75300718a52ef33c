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

#ifndef SALVQ_TESTS_FIXTURES_H_
#define SALVQ_TESTS_FIXTURES_H_

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "salvq/disparity.h"
#include "salvq/distortion.h"
#include "salvq/fr_metrics.h"
#include "salvq/image.h"
#include "salvq/maps.h"
#include "test_util.h"

namespace salvq::testing {

// Luma ramp 8·(x+y) mod 256.
inline Plane Ramp(int w, int h) {
  Plane p(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) p.at(x, y) = (8 * (x + y)) % 256;
  }
  return p;
}

// Hot/cold quadrant construction. Both views carry the ramp. Frame 0 of the
// distorted sequence is clean; frame 1 adds +32 (clamped) to the top-left
// quadrant. Reference disparity is 0 on the left half and 6 on the right;
// the distorted disparity is 3 higher inside the quadrant.
struct QuadrantFixture {
  StereoSequence ref;
  StereoSequence dist;
  std::vector<DisparityMap> ref_disparity;
  std::vector<DisparityMap> dist_disparity;
  std::vector<SaliencyMap> hot;
  std::vector<SaliencyMap> cold;
};

inline bool InQuadrant(int x, int y, int size) { return x < size / 2 && y < size / 2; }

inline QuadrantFixture MakeQuadrantFixture(int size) {
  QuadrantFixture f;
  const Plane ramp = Ramp(size, size);
  Plane bumped = ramp;
  Plane hot(size, size, 0.1), cold(size, size, 0.9);
  Plane dr(size, size, 0.0);
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      if (x >= size / 2) dr.at(x, y) = 6.0;
      if (InQuadrant(x, y, size)) {
        bumped.at(x, y) = std::min(255.0, ramp.at(x, y) + 32.0);
        hot.at(x, y) = 0.9;
        cold.at(x, y) = 0.1;
      }
    }
  }
  Plane dd = dr;
  for (int y = 0; y < size / 2; ++y) {
    for (int x = 0; x < size / 2; ++x) dd.at(x, y) += 3.0;
  }
  f.ref = MakeSequence({ramp, ramp}, {ramp, ramp}, 25.0, "ramp");
  f.dist = MakeSequence({ramp, bumped}, {ramp, bumped}, 25.0, "ramp_bumped");
  f.ref_disparity = {DisparityMap{dr}, DisparityMap{dr}};
  f.dist_disparity = {DisparityMap{dr}, DisparityMap{dd}};
  f.hot = {SaliencyMap{hot}, SaliencyMap{hot}};
  f.cold = {SaliencyMap{cold}, SaliencyMap{cold}};
  return f;
}

// Constants under which each metric's saliency ordering is well defined:
// HV3D keeps only its structural term and OQ only its image term.
inline FrMetricConfig LocalizationConfig(const std::string& id) {
  FrMetricConfig cfg;
  if (id == "hv3d_s") cfg.hv3d_beta2 = cfg.hv3d_beta3 = 0.0;
  if (id == "oq_s") cfg.oq_b = 0.0;
  return cfg;
}

// Seeded textured stereo pair with a noisy, slightly blurred distorted copy
// and estimated disparity for both.
struct DistortedFixture {
  StereoSequence ref;
  StereoSequence dist;
  std::vector<DisparityMap> ref_disparity;
  std::vector<DisparityMap> dist_disparity;
};

inline DistortedFixture MakeDistortedFixture(int size, int frames, uint64_t seed) {
  DistortedFixture f;
  f.ref = StereoTexture(size, size, frames, seed, 4, "tex" + std::to_string(seed));
  f.dist = ApplyAwgn(ApplyGaussianBlur(f.ref, 3, 0.8), 0.002, seed * 31 + 7);
  f.dist.name = f.ref.name + "_dist";
  const DisparityConfig dc{8, 16};
  f.ref_disparity = EstimateDisparitySeries(f.ref, dc);
  f.dist_disparity = EstimateDisparitySeries(f.dist, dc);
  return f;
}

// True when a is strictly worse than b for the orientation.
inline bool StrictlyWorse(Orientation o, double a, double b) {
  return o == Orientation::kLowerBetter ? a > b : a < b;
}

}  // namespace salvq::testing

#endif  // SALVQ_TESTS_FIXTURES_H_
