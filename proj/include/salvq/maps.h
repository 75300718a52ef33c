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

#ifndef SALVQ_MAPS_H_
#define SALVQ_MAPS_H_

#include <string>

#include "salvq/image.h"

namespace salvq {

enum class SaliencySource { kUniform, kBaseline, kExternal, kSynthetic };

const char* SaliencySourceName(SaliencySource source);

// Non-negative per-pixel visual importance. Values need not be normalized;
// every pooling divides by the map's total weight.
struct SaliencyMap {
  Plane values;
  SaliencySource source = SaliencySource::kSynthetic;
};

// Horizontal disparity in pixels, anchored on the left view: value d at (x, y)
// pairs left(x, y) with right(x - d, y). Larger d is nearer.
struct DisparityMap {
  Plane values;
};

struct Dims {
  int width = 0;
  int height = 0;
  bool operator==(const Dims&) const = default;
};

inline Dims DimsOf(const Plane& p) { return {p.width(), p.height()}; }

}  // namespace salvq

#endif  // SALVQ_MAPS_H_
