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

// OpenMP kernels. The serial oracles live in kernels_reference.cc.

#include <algorithm>
#include <string>

#include "salvq/error.h"
#include "salvq/signal.h"

namespace salvq {
namespace {

// Below this many output samples the thread fork costs more than it saves.
constexpr size_t kParallelThreshold = 1 << 14;

void CheckKernelFits(const Plane& image, int k) {
  if (image.empty()) throw Error(ErrorCode::kParam, "empty image");
  if (k > image.width() || k > image.height()) {
    throw Error(ErrorCode::kKernelTooLarge,
                std::to_string(k) + "-tap kernel on " + std::to_string(image.width()) +
                    "x" + std::to_string(image.height()) + " image");
  }
}

}  // namespace

Plane FilterRows(const Plane& image, std::span<const double> taps) {
  const int w = image.width();
  const int h = image.height();
  const int k = static_cast<int>(taps.size());
  const int anchor = (k - 1) / 2;
  Plane out(w, h);
#pragma omp parallel for if (image.size() >= kParallelThreshold)
  for (int y = 0; y < h; ++y) {
    const std::span<const double> in = image.row(y);
    std::span<double> o = out.row(y);
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int i = 0; i < k; ++i) {
        const int xx = std::clamp(x + i - anchor, 0, w - 1);
        acc += taps[i] * in[xx];
      }
      o[x] = acc;
    }
  }
  return out;
}

Plane FilterCols(const Plane& image, std::span<const double> taps) {
  const int w = image.width();
  const int h = image.height();
  const int k = static_cast<int>(taps.size());
  const int anchor = (k - 1) / 2;
  Plane out(w, h);
#pragma omp parallel for if (image.size() >= kParallelThreshold)
  for (int y = 0; y < h; ++y) {
    std::span<double> o = out.row(y);
    std::fill(o.begin(), o.end(), 0.0);
    for (int i = 0; i < k; ++i) {
      const std::span<const double> in = image.row(std::clamp(y + i - anchor, 0, h - 1));
      const double t = taps[i];
      for (int x = 0; x < w; ++x) o[x] += t * in[x];
    }
  }
  return out;
}

Plane Convolve2d(const Plane& image, const Kernel2D& kernel) {
  const int k = kernel.size();
  CheckKernelFits(image, k);
  if (kernel.separable()) {
    const std::vector<double>& t = *kernel.separable();
    return FilterCols(FilterRows(image, t), t);
  }
  const int w = image.width();
  const int h = image.height();
  const int anchor = kernel.anchor();
  Plane out(w, h);
#pragma omp parallel for if (image.size() >= kParallelThreshold)
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int j = 0; j < k; ++j) {
        const int yy = std::clamp(y + j - anchor, 0, h - 1);
        const std::span<const double> in = image.row(yy);
        for (int i = 0; i < k; ++i) {
          acc += kernel.tap(i, j) * in[std::clamp(x + i - anchor, 0, w - 1)];
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
  static constexpr double kBinomial[5] = {1.0 / 16, 4.0 / 16, 6.0 / 16, 4.0 / 16, 1.0 / 16};
  const Plane blurred = FilterCols(FilterRows(image, kBinomial), kBinomial);
  const int ow = image.width() / 2;
  const int oh = image.height() / 2;
  Plane out(ow, oh);
  for (int y = 0; y < oh; ++y) {
    for (int x = 0; x < ow; ++x) out.at(x, y) = blurred.at(2 * x, 2 * y);
  }
  return out;
}

}  // namespace salvq
