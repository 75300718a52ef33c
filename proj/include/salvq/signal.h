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

#ifndef SALVQ_SIGNAL_H_
#define SALVQ_SIGNAL_H_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "salvq/image.h"

namespace salvq {

// K×K filter taps. Odd K is the norm; even K (the K=4 Gaussian blur) anchors
// at (K-1)/2 rounded down, i.e. offsets -1..+2 for K=4, like imfilter.
// Taps are applied as a correlation (not flipped); every kernel built here is
// symmetric so the distinction never shows.
class Kernel2D {
 public:
  // Raw K×K taps, row-major.
  Kernel2D(int size, std::vector<double> taps);
  // Separable kernel: taps = outer(taps_1d, taps_1d).
  static Kernel2D Separable(std::vector<double> taps_1d);

  int size() const { return size_; }
  int anchor() const { return (size_ - 1) / 2; }
  double tap(int i, int j) const { return taps_[static_cast<size_t>(j) * size_ + i]; }
  const std::vector<double>& taps() const { return taps_; }
  double Sum() const;
  const std::optional<std::vector<double>>& separable() const { return taps_1d_; }

 private:
  int size_;
  std::vector<double> taps_;
  std::optional<std::vector<double>> taps_1d_;
};

// Gaussian taps exp(-(dx²+dy²)/(2σ²)) on a K×K grid centred at (K-1)/2,
// normalized to sum one. Throws ParamError for K < 1 or σ <= 0.
Kernel2D GaussianKernel(int size, double sigma);
Kernel2D BoxKernel(int size);
// Smallest odd size covering ±3σ.
int GaussianSizeFor(double sigma);

// Same-size filtering with replicate borders. Rows are distributed over
// OpenMP threads; separable kernels take the two-pass route.
// Throws KernelTooLarge when the kernel exceeds either image dimension.
Plane Convolve2d(const Plane& image, const Kernel2D& kernel);

// 1-D filtering along one axis with replicate borders (anchor (K-1)/2).
Plane FilterRows(const Plane& image, std::span<const double> taps);
Plane FilterCols(const Plane& image, std::span<const double> taps);

// Serial, direct-summation versions kept as the test oracle and benchmark
// baseline for the parallel kernels above.
namespace reference {
Plane Convolve2d(const Plane& image, const Kernel2D& kernel);
Plane Downsample2(const Plane& image);
}  // namespace reference

// [1,4,6,4,1]/16 separable low-pass, then every second sample from index 0.
// Output dims are floor(dims / 2). Throws TooSmall below 2×2.
Plane Downsample2(const Plane& image);

// Pyramid of `levels` planes: level 0 is the input, each next level
// Downsample2 of the previous.
std::vector<Plane> BuildPyramid(const Plane& image, int levels);

// Largest pyramid depth (number of levels) reachable by repeated halving while
// both dims stay >= min_dim.
int MaxPyramidLevels(int width, int height, int min_dim);

// Bilinear resampling with pixel-centre alignment and replicate borders.
Plane ResizeBilinear(const Plane& image, int width, int height);

// Orthonormal 2-D DCT-II and its inverse for N in {4, 8}; `block` is row-major
// N×N. Throws ParamError for other sizes.
std::vector<double> Dct2(std::span<const double> block, int n);
std::vector<double> Idct2(std::span<const double> coeffs, int n);

// 4×4×2 stereo block transform: Dct2 on each view slab, then the orthonormal
// 2-point DCT along the view axis. Input/outputs are [view][row][col].
using StereoBlock = std::array<double, 32>;
StereoBlock Dct3Stereo(const StereoBlock& block);

struct LocalStats {
  Plane mu_x, mu_y;
  Plane var_x, var_y;  // clamped at >= 0
  Plane cov_xy;        // clamped to the Cauchy-Schwarz bound of the variances
};

// Window-weighted moments of x and y. The window must sum to one.
LocalStats ComputeLocalStats(const Plane& x, const Plane& y, const Kernel2D& window);

struct Gradient {
  Plane gx, gy, magnitude;
};

// 3×3 Sobel with replicate borders. gx responds to horizontal change.
Gradient SobelGradient(const Plane& image);

// 3×3 median with replicate borders.
Plane Median3x3(const Plane& image);

// SplitMix64 generator with Box-Muller normal deviates. Single owner; derive
// one per stream with seed = base_seed + stream_index.
class SeededRng {
 public:
  explicit SeededRng(uint64_t seed) : state_(seed) {}

  uint64_t NextU64();
  // Uniform in [0, 1) with 53-bit resolution.
  double NextUniform();
  // Normal deviate; throws ParamError for sigma < 0.
  double Normal(double mean, double sigma);

 private:
  uint64_t state_;
  std::optional<double> gaussian_spare_;
};

}  // namespace salvq

#endif  // SALVQ_SIGNAL_H_
