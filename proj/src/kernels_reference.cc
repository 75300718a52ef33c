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

#include <algorithm>

#include "salvq/error.h"
#include "salvq/signal.h"

namespace salvq::reference {

Plane Convolve2d(const Plane& image, const Kernel2D& kernel) {
  const int k = kernel.size();
  if (image.empty()) throw Error(ErrorCode::kParam, "empty image");
  if (k > image.width() || k > image.height()) {
    throw Error(ErrorCode::kKernelTooLarge, "kernel larger than image");
  }
  const int anchor = kernel.anchor();
  Plane out(image.width(), image.height());
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      double acc = 0.0;
      for (int j = 0; j < k; ++j) {
        for (int i = 0; i < k; ++i) {
          acc += kernel.tap(i, j) * image.clamped(x + i - anchor, y + j - anchor);
        }
      }
      out.at(x, y) = acc;
    }
  }
  return out;
}

Plane Downsample2(const Plane& image) {
  if (image.width() < 2 || image.height() < 2) {
    throw Error(ErrorCode::kTooSmall, "Downsample2 needs at least 2x2");
  }
  static constexpr double kBinomial[5] = {1, 4, 6, 4, 1};
  Plane out(image.width() / 2, image.height() / 2);
  for (int y = 0; y < out.height(); ++y) {
    for (int x = 0; x < out.width(); ++x) {
      double acc = 0.0;
      for (int j = 0; j < 5; ++j) {
        for (int i = 0; i < 5; ++i) {
          acc += kBinomial[i] * kBinomial[j] * image.clamped(2 * x + i - 2, 2 * y + j - 2);
        }
      }
      out.at(x, y) = acc / 256.0;
    }
  }
  return out;
}

}  // namespace salvq::reference
