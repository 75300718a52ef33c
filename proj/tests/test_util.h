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

#ifndef SALVQ_TESTS_TEST_UTIL_H_
#define SALVQ_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "salvq/image.h"
#include "salvq/media_io.h"
#include "salvq/maps.h"
#include "salvq/signal.h"

namespace salvq::testing {

// Smooth sinusoid mix plus a few flat rectangles and mild noise, in [0, 255].
inline Plane Texture(int w, int h, uint64_t seed) {
  SeededRng rng(seed);
  Plane p(w, h, 128.0);
  for (int k = 0; k < 4; ++k) {
    const double fx = 0.05 + 0.4 * rng.NextUniform();
    const double fy = 0.05 + 0.4 * rng.NextUniform();
    const double phase = 6.28 * rng.NextUniform();
    const double amp = 12.0 + 18.0 * rng.NextUniform();
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) p.at(x, y) += amp * std::sin(fx * x + fy * y + phase);
    }
  }
  for (int k = 0; k < 5; ++k) {
    const int x0 = static_cast<int>(rng.NextUniform() * w);
    const int y0 = static_cast<int>(rng.NextUniform() * h);
    const int rw = 4 + static_cast<int>(rng.NextUniform() * w / 3);
    const int rh = 4 + static_cast<int>(rng.NextUniform() * h / 3);
    const double off = rng.NextUniform() < 0.5 ? -40.0 : 40.0;
    for (int y = y0; y < std::min(h, y0 + rh); ++y) {
      for (int x = x0; x < std::min(w, x0 + rw); ++x) p.at(x, y) += off;
    }
  }
  for (double& v : p.data()) v = std::clamp(v + rng.Normal(0.0, 4.0), 0.0, 255.0);
  return p;
}

inline Plane Crop(const Plane& src, int x0, int y0, int w, int h) {
  Plane out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) out.at(x, y) = src.clamped(x0 + x, y0 + y);
  }
  return out;
}

// Stereo sequence cut from one wide texture: the right view is the left view
// moved by `disparity` pixels (left(x) == right(x - d)), and the window pans
// one pixel per frame.
inline StereoSequence StereoTexture(int w, int h, int frames, uint64_t seed, int disparity = 4,
                                    const std::string& name = "fixture") {
  const Plane wide = Texture(w + disparity + frames + 8, h, seed);
  std::vector<Plane> left, right;
  for (int t = 0; t < frames; ++t) {
    left.push_back(Crop(wide, 4 + t, 0, w, h));
    right.push_back(Crop(wide, 4 + t + disparity, 0, w, h));
  }
  return MakeSequence(left, right, 25.0, name);
}

inline Plane Constant(int w, int h, double v) { return Plane(w, h, v); }

inline std::vector<DisparityMap> ConstantDisparity(const StereoSequence& s, double d) {
  return std::vector<DisparityMap>(s.size(), DisparityMap{Plane(s.width(), s.height(), d)});
}

// Smooth positive random map in (0, 1].
inline SaliencyMap RandomSaliency(int w, int h, uint64_t seed) {
  SeededRng rng(seed);
  const double cx = rng.NextUniform() * w;
  const double cy = rng.NextUniform() * h;
  const double r = 0.25 * std::min(w, h) + rng.NextUniform() * 0.25 * std::min(w, h);
  Plane p(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double d2 = (x - cx) * (x - cx) + (y - cy) * (y - cy);
      p.at(x, y) = 0.05 + 0.95 * std::exp(-d2 / (2 * r * r));
    }
  }
  return SaliencyMap{p, SaliencySource::kSynthetic};
}

inline std::vector<SaliencyMap> RandomSaliencySeries(const StereoSequence& s, uint64_t seed) {
  std::vector<SaliencyMap> out;
  for (int t = 0; t < s.size(); ++t) out.push_back(RandomSaliency(s.width(), s.height(), seed + t));
  return out;
}

inline std::vector<SaliencyMap> ConstantSaliency(const StereoSequence& s, double v) {
  return std::vector<SaliencyMap>(
      s.size(), SaliencyMap{Plane(s.width(), s.height(), v), SaliencySource::kUniform});
}

inline double RelDiff(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return a == b ? 0.0 : std::abs(a - b) / scale;
}

inline std::filesystem::path TempDir(const std::string& tag) {
  const auto dir = std::filesystem::temp_directory_path() / ("salvq_test_" + tag);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

// Writes seq as gray8 views plus a descriptor in dir; returns the
// descriptor path.
inline std::filesystem::path WriteSequence(const StereoSequence& seq,
                                           const std::filesystem::path& dir,
                                           const std::string& name,
                                           PixelFormat format = PixelFormat::kGray8) {
  SequenceDescriptor d;
  d.left = dir / (name + "_left.yuv");
  d.right = dir / (name + "_right.yuv");
  d.width = seq.width();
  d.height = seq.height();
  d.fps = seq.fps;
  d.frame_count = seq.size();
  d.format = format;
  d.name = name;
  SaveSequence(seq, d);
  const auto json_path = dir / (name + ".json");
  WriteDescriptor(d, json_path);
  return json_path;
}

}  // namespace salvq::testing

#endif  // SALVQ_TESTS_TEST_UTIL_H_
