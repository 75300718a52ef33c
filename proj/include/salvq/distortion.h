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

#ifndef SALVQ_DISTORTION_H_
#define SALVQ_DISTORTION_H_

#include <cstdint>
#include <filesystem>
#include <optional>

#include "json.hpp"
#include "salvq/image.h"
#include "salvq/parallel.h"

namespace salvq {

enum class DistortionKind { kAwgn, kGaussianBlur, kIntensityShift, kBlockQuantize };
enum class DistortionTarget { kBothViews, kLeftOnly, kRightOnly };

// Pixel rectangle; the distortion is computed on the whole view and only the
// pixels inside are replaced.
struct Region {
  int x = 0;
  int y = 0;
  int width = 0;
  int height = 0;
};

struct DistortionSpec {
  DistortionKind kind = DistortionKind::kAwgn;
  // awgn: noise variance on the [0, 1] luma scale.
  double variance = 0.01;
  int blur_size = 4;
  double blur_sigma = 4.0;
  double delta = 20.0;
  // block_quantize: DCT coefficient step.
  double step = 16.0;
  std::optional<uint64_t> seed;
  DistortionTarget target = DistortionTarget::kBothViews;
  std::optional<Region> region;

  void Validate() const;
};

// Luma only; chroma planes are copied through. Each (frame, view) pair draws
// from its own stream seeded with seed + 2 * frame + view.
StereoSequence ApplyDistortion(const StereoSequence& seq, const DistortionSpec& spec,
                               const ExecOptions& exec = {});

StereoSequence ApplyAwgn(const StereoSequence& seq, double variance, uint64_t seed);
StereoSequence ApplyGaussianBlur(const StereoSequence& seq, int size = 4, double sigma = 4.0);
StereoSequence ApplyIntensityShift(const StereoSequence& seq, double delta = 20.0);
StereoSequence ApplyBlockQuantize(const StereoSequence& seq, double step);

// Single-plane forms. Block quantization leaves partial edge blocks alone.
Plane AwgnPlane(const Plane& p, double variance, uint64_t stream_seed);
Plane BlockQuantizePlane(const Plane& p, double step);

const char* DistortionKindName(DistortionKind kind);
nlohmann::json ToJson(const DistortionSpec& spec);
DistortionSpec DistortionSpecFromJson(const nlohmann::json& j);
DistortionSpec ReadDistortionSpec(const std::filesystem::path& path);

}  // namespace salvq

#endif  // SALVQ_DISTORTION_H_
