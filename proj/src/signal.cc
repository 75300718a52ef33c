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

#include "salvq/signal.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "salvq/error.h"

namespace salvq {

Kernel2D::Kernel2D(int size, std::vector<double> taps) : size_(size), taps_(std::move(taps)) {
  if (size < 1 || taps_.size() != static_cast<size_t>(size) * size) {
    throw Error(ErrorCode::kParam, "kernel taps must be size x size");
  }
  for (double t : taps_) {
    if (!std::isfinite(t)) throw Error(ErrorCode::kParam, "non-finite kernel tap");
  }
}

Kernel2D Kernel2D::Separable(std::vector<double> taps_1d) {
  const int k = static_cast<int>(taps_1d.size());
  std::vector<double> taps(static_cast<size_t>(k) * k);
  for (int j = 0; j < k; ++j) {
    for (int i = 0; i < k; ++i) taps[static_cast<size_t>(j) * k + i] = taps_1d[j] * taps_1d[i];
  }
  Kernel2D kernel(k, std::move(taps));
  kernel.taps_1d_ = std::move(taps_1d);
  return kernel;
}

double Kernel2D::Sum() const {
  double s = 0.0;
  for (double t : taps_) s += t;
  return s;
}

Kernel2D GaussianKernel(int size, double sigma) {
  if (size < 1) throw Error(ErrorCode::kParam, "Gaussian size must be >= 1");
  if (!(sigma > 0.0)) throw Error(ErrorCode::kParam, "Gaussian sigma must be > 0");
  const double center = (size - 1) / 2.0;
  std::vector<double> g(size);
  double sum = 0.0;
  for (int i = 0; i < size; ++i) {
    const double d = i - center;
    g[i] = std::exp(-d * d / (2.0 * sigma * sigma));
    sum += g[i];
  }
  for (double& v : g) v /= sum;
  return Kernel2D::Separable(std::move(g));
}

Kernel2D BoxKernel(int size) {
  if (size < 1) throw Error(ErrorCode::kParam, "box size must be >= 1");
  return Kernel2D::Separable(std::vector<double>(size, 1.0 / size));
}

int GaussianSizeFor(double sigma) { return 2 * static_cast<int>(std::ceil(3.0 * sigma)) + 1; }

std::vector<Plane> BuildPyramid(const Plane& image, int levels) {
  std::vector<Plane> pyr;
  pyr.reserve(levels);
  pyr.push_back(image);
  for (int m = 1; m < levels; ++m) pyr.push_back(Downsample2(pyr.back()));
  return pyr;
}

int MaxPyramidLevels(int width, int height, int min_dim) {
  int levels = 0;
  while (width >= min_dim && height >= min_dim) {
    ++levels;
    if (width < 2 || height < 2) break;
    width /= 2;
    height /= 2;
  }
  return levels;
}

Plane ResizeBilinear(const Plane& image, int width, int height) {
  if (image.empty() || width < 1 || height < 1) {
    throw Error(ErrorCode::kParam, "ResizeBilinear: empty source or target");
  }
  Plane out(width, height);
  const double sx = static_cast<double>(image.width()) / width;
  const double sy = static_cast<double>(image.height()) / height;
  for (int y = 0; y < height; ++y) {
    const double fy = std::clamp((y + 0.5) * sy - 0.5, 0.0, image.height() - 1.0);
    const int y0 = static_cast<int>(fy);
    const int y1 = std::min(y0 + 1, image.height() - 1);
    const double wy = fy - y0;
    for (int x = 0; x < width; ++x) {
      const double fx = std::clamp((x + 0.5) * sx - 0.5, 0.0, image.width() - 1.0);
      const int x0 = static_cast<int>(fx);
      const int x1 = std::min(x0 + 1, image.width() - 1);
      const double wx = fx - x0;
      const double top = image.at(x0, y0) * (1 - wx) + image.at(x1, y0) * wx;
      const double bot = image.at(x0, y1) * (1 - wx) + image.at(x1, y1) * wx;
      out.at(x, y) = top * (1 - wy) + bot * wy;
    }
  }
  return out;
}

namespace {

// Orthonormal DCT-II basis: basis[k][i] = c_k cos(pi (2i+1) k / 2N).
const std::vector<double>& DctBasis(int n) {
  static const auto make = [](int size) {
    std::vector<double> b(static_cast<size_t>(size) * size);
    for (int k = 0; k < size; ++k) {
      const double c = k == 0 ? std::sqrt(1.0 / size) : std::sqrt(2.0 / size);
      for (int i = 0; i < size; ++i) {
        b[static_cast<size_t>(k) * size + i] =
            c * std::cos(std::numbers::pi * (2 * i + 1) * k / (2.0 * size));
      }
    }
    return b;
  };
  static const std::vector<double> b4 = make(4);
  static const std::vector<double> b8 = make(8);
  if (n == 4) return b4;
  if (n == 8) return b8;
  throw Error(ErrorCode::kParam, "DCT block size must be 4 or 8, got " + std::to_string(n));
}

}  // namespace

std::vector<double> Dct2(std::span<const double> block, int n) {
  const std::vector<double>& b = DctBasis(n);
  if (block.size() != static_cast<size_t>(n) * n) {
    throw Error(ErrorCode::kParam, "Dct2: block is not N x N");
  }
  // Rows first, then columns: C = B X B^T.
  std::vector<double> tmp(block.size(), 0.0), out(block.size(), 0.0);
  for (int r = 0; r < n; ++r) {
    for (int k = 0; k < n; ++k) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i) acc += b[k * n + i] * block[r * n + i];
      tmp[r * n + k] = acc;
    }
  }
  for (int k = 0; k < n; ++k) {
    for (int c = 0; c < n; ++c) {
      double acc = 0.0;
      for (int r = 0; r < n; ++r) acc += b[k * n + r] * tmp[r * n + c];
      out[k * n + c] = acc;
    }
  }
  return out;
}

std::vector<double> Idct2(std::span<const double> coeffs, int n) {
  const std::vector<double>& b = DctBasis(n);
  if (coeffs.size() != static_cast<size_t>(n) * n) {
    throw Error(ErrorCode::kParam, "Idct2: block is not N x N");
  }
  // X = B^T C B.
  std::vector<double> tmp(coeffs.size(), 0.0), out(coeffs.size(), 0.0);
  for (int r = 0; r < n; ++r) {
    for (int i = 0; i < n; ++i) {
      double acc = 0.0;
      for (int k = 0; k < n; ++k) acc += b[k * n + r] * coeffs[k * n + i];
      tmp[r * n + i] = acc;
    }
  }
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      double acc = 0.0;
      for (int k = 0; k < n; ++k) acc += tmp[r * n + k] * b[k * n + c];
      out[r * n + c] = acc;
    }
  }
  return out;
}

StereoBlock Dct3Stereo(const StereoBlock& block) {
  const std::span<const double> all(block);
  const std::vector<double> a = Dct2(all.subspan(0, 16), 4);
  const std::vector<double> b = Dct2(all.subspan(16, 16), 4);
  StereoBlock out;
  const double s = std::numbers::sqrt2 / 2.0;
  for (int i = 0; i < 16; ++i) {
    out[i] = s * (a[i] + b[i]);
    out[16 + i] = s * (a[i] - b[i]);
  }
  return out;
}

LocalStats ComputeLocalStats(const Plane& x, const Plane& y, const Kernel2D& window) {
  RequireSameShape(x, y, "ComputeLocalStats");
  if (std::abs(window.Sum() - 1.0) > 1e-9) {
    throw Error(ErrorCode::kParam, "local statistics window must sum to one");
  }
  Plane xx(x.width(), x.height()), yy(x.width(), x.height()), xy(x.width(), x.height());
  for (size_t i = 0; i < x.size(); ++i) {
    xx.data()[i] = x.data()[i] * x.data()[i];
    yy.data()[i] = y.data()[i] * y.data()[i];
    xy.data()[i] = x.data()[i] * y.data()[i];
  }
  LocalStats s;
  s.mu_x = Convolve2d(x, window);
  s.mu_y = Convolve2d(y, window);
  s.var_x = Convolve2d(xx, window);
  s.var_y = Convolve2d(yy, window);
  s.cov_xy = Convolve2d(xy, window);
  for (size_t i = 0; i < x.size(); ++i) {
    const double mx = s.mu_x.data()[i];
    const double my = s.mu_y.data()[i];
    const double vx = std::max(0.0, s.var_x.data()[i] - mx * mx);
    const double vy = std::max(0.0, s.var_y.data()[i] - my * my);
    const double bound = std::sqrt(vx * vy);
    s.var_x.data()[i] = vx;
    s.var_y.data()[i] = vy;
    s.cov_xy.data()[i] = std::clamp(s.cov_xy.data()[i] - mx * my, -bound, bound);
  }
  return s;
}

Gradient SobelGradient(const Plane& image) {
  if (image.width() < 3 || image.height() < 3) {
    throw Error(ErrorCode::kTooSmall, "Sobel needs at least 3x3");
  }
  Gradient g{Plane(image.width(), image.height()), Plane(image.width(), image.height()),
             Plane(image.width(), image.height())};
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      const auto p = [&](int dx, int dy) { return image.clamped(x + dx, y + dy); };
      const double gx = (p(1, -1) + 2 * p(1, 0) + p(1, 1)) - (p(-1, -1) + 2 * p(-1, 0) + p(-1, 1));
      const double gy = (p(-1, 1) + 2 * p(0, 1) + p(1, 1)) - (p(-1, -1) + 2 * p(0, -1) + p(1, -1));
      g.gx.at(x, y) = gx;
      g.gy.at(x, y) = gy;
      g.magnitude.at(x, y) = std::sqrt(gx * gx + gy * gy);
    }
  }
  return g;
}

Plane Median3x3(const Plane& image) {
  Plane out(image.width(), image.height());
  std::array<double, 9> w;
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      int n = 0;
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) w[n++] = image.clamped(x + dx, y + dy);
      }
      std::nth_element(w.begin(), w.begin() + 4, w.end());
      out.at(x, y) = w[4];
    }
  }
  return out;
}

uint64_t SeededRng::NextU64() {
  uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SeededRng::NextUniform() {
  return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
}

double SeededRng::Normal(double mean, double sigma) {
  if (sigma < 0.0 || std::isnan(sigma)) throw Error(ErrorCode::kParam, "sigma must be >= 0");
  double z;
  if (gaussian_spare_) {
    z = *gaussian_spare_;
    gaussian_spare_.reset();
  } else {
    const double u1 = 1.0 - NextUniform();  // (0, 1]
    const double u2 = NextUniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    z = r * std::cos(theta);
    gaussian_spare_ = r * std::sin(theta);
  }
  return mean + sigma * z;
}

}  // namespace salvq
