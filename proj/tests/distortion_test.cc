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

#include "salvq/distortion.h"

#include <cmath>
#include <fstream>

#include "gtest/gtest.h"
#include "salvq/error.h"
#include "salvq/nr_metrics.h"
#include "salvq/signal.h"
#include "test_util.h"

namespace salvq {
namespace {

using testing::Texture;

StereoSequence Pair(const Plane& l, const Plane& r) { return MakeSequence({l}, {r}); }

TEST(AwgnTest, ZeroVarianceIsIdentity) {
  const StereoSequence s = testing::StereoTexture(32, 32, 2, 1);
  const StereoSequence out = ApplyAwgn(s, 0.0, 3);
  for (int t = 0; t < 2; ++t) {
    EXPECT_EQ(out.frames[t].left.luma.data(), s.frames[t].left.luma.data());
    EXPECT_EQ(out.frames[t].right.luma.data(), s.frames[t].right.luma.data());
  }
}

TEST(AwgnTest, SampleVarianceOnMidGray) {
  const Plane gray(256, 256, 128.0);
  const StereoSequence out = ApplyAwgn(Pair(gray, gray), 0.01, 7);
  for (const Plane* p : {&out.frames[0].left.luma, &out.frames[0].right.luma}) {
    double m = 0.0, sq = 0.0;
    for (double v : p->data()) {
      m += v - 128.0;
      sq += (v - 128.0) * (v - 128.0);
    }
    const double n = static_cast<double>(p->size());
    const double var = (sq - m * m / n) / (n - 1);
    EXPECT_NEAR(var, 0.01 * 255.0 * 255.0, 0.05 * 0.01 * 255.0 * 255.0);
  }
  // Views draw from different streams.
  EXPECT_NE(out.frames[0].left.luma.data(), out.frames[0].right.luma.data());
}

TEST(AwgnTest, SeededAndClamped) {
  const StereoSequence s = testing::StereoTexture(48, 32, 3, 2);
  const StereoSequence a = ApplyAwgn(s, 0.05, 11);
  const StereoSequence b = ApplyAwgn(s, 0.05, 11);
  const StereoSequence c = ApplyAwgn(s, 0.05, 12);
  for (int t = 0; t < 3; ++t) {
    EXPECT_EQ(a.frames[t].left.luma.data(), b.frames[t].left.luma.data());
    EXPECT_NE(a.frames[t].left.luma.data(), c.frames[t].left.luma.data());
    for (double v : a.frames[t].right.luma.data()) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 255.0);
    }
  }
  DistortionSpec spec;
  spec.seed = 11;
  const StereoSequence par = ApplyDistortion(s, spec, ExecOptions{4});
  const StereoSequence ser = ApplyDistortion(s, spec, ExecOptions{1});
  for (int t = 0; t < 3; ++t) {
    EXPECT_EQ(par.frames[t].left.luma.data(), ser.frames[t].left.luma.data());
  }
  // The stream for frame t, view v is seed + 2t + v.
  EXPECT_EQ(ser.frames[1].right.luma.data(), AwgnPlane(s.frames[1].right.luma, 0.01, 11 + 3).data());
}

TEST(AwgnTest, SeedRequired) {
  DistortionSpec spec;
  EXPECT_THROW(spec.Validate(), Error);
  EXPECT_THROW(ApplyDistortion(testing::StereoTexture(16, 16, 1, 1), spec), Error);
}

TEST(BlurTest, DefaultsAndBehaviour) {
  const DistortionSpec spec;
  EXPECT_EQ(spec.blur_size, 4);
  EXPECT_EQ(spec.blur_sigma, 4.0);
  const Plane flat(24, 24, 77.0);
  const StereoSequence out = ApplyGaussianBlur(Pair(flat, flat));
  for (double v : out.frames[0].left.luma.data()) EXPECT_NEAR(v, 77.0, 1e-12);
  Plane step(24, 24, 0.0);
  for (int y = 0; y < 24; ++y) {
    for (int x = 12; x < 24; ++x) step.at(x, y) = 200.0;
  }
  const StereoSequence blurred = ApplyGaussianBlur(Pair(step, step));
  const double before = SobelGradient(step).magnitude.at(12, 12);
  const double after = SobelGradient(blurred.frames[0].left.luma).magnitude.at(12, 12);
  EXPECT_LT(after, before);
}

TEST(IntensityShiftTest, Arithmetic) {
  Plane p(4, 4, 100.0);
  p.at(0, 0) = 250.0;
  const StereoSequence out = ApplyIntensityShift(Pair(p, p), 20.0);
  EXPECT_EQ(out.frames[0].left.luma.at(0, 0), 255.0);
  EXPECT_EQ(out.frames[0].left.luma.at(1, 1), 120.0);
  const StereoSequence same = ApplyIntensityShift(Pair(p, p), 0.0);
  EXPECT_EQ(same.frames[0].right.luma.data(), p.data());
}

TEST(BlockQuantizeTest, LimitsAndConstantFrames) {
  const Plane tex = Texture(40, 36, 3);
  const Plane fine = BlockQuantizePlane(tex, 1e-6);
  for (size_t i = 0; i < tex.size(); ++i) EXPECT_NEAR(fine.data()[i], tex.data()[i], 1e-6);
  // DC of an 8×8 block of 100 is 800; any step dividing 800 keeps it.
  const Plane flat(16, 16, 100.0);
  for (double q : {16.0, 32.0, 100.0, 800.0}) {
    const Plane out = BlockQuantizePlane(flat, q);
    for (double v : out.data()) EXPECT_NEAR(v, 100.0, 1e-9) << q;
  }
  // Tail columns beyond the last full block are left alone.
  const Plane sq = Texture(36, 36, 4);
  const Plane coarse = BlockQuantizePlane(sq, 64.0);
  for (int y = 0; y < 36; ++y) {
    for (int x = 32; x < 36; ++x) EXPECT_EQ(coarse.at(x, y), sq.at(x, y));
  }
  for (int x = 0; x < 36; ++x) EXPECT_EQ(coarse.at(x, 35), sq.at(x, 35));
  EXPECT_NE(coarse.at(3, 3), sq.at(3, 3));
  EXPECT_THROW(BlockQuantizePlane(tex, 0.0), Error);
  EXPECT_THROW(BlockQuantizePlane(tex, -1.0), Error);
}

TEST(BlockQuantizeTest, RaisesBlockiness) {
  const Plane tex = Texture(64, 64, 5);
  EXPECT_GT(GbimPlane(BlockQuantizePlane(tex, 64.0), nullptr, {}), GbimPlane(tex, nullptr, {}));
}

TEST(BlockQuantizeTest, RoundsHalfAwayFromZero) {
  // A constant block of 1 has DC 8: step 16 gives 0.5 → 1, keeping DC 16.
  const Plane ones(8, 8, 1.0);
  for (double v : BlockQuantizePlane(ones, 16.0).data()) EXPECT_NEAR(v, 2.0, 1e-12);
}

TEST(TargetAndRegionTest, OnlySelectedPixelsChange) {
  const StereoSequence s = testing::StereoTexture(32, 32, 2, 4);
  DistortionSpec spec;
  spec.kind = DistortionKind::kIntensityShift;
  spec.delta = 10.0;
  spec.target = DistortionTarget::kLeftOnly;
  spec.region = Region{4, 8, 10, 6};
  const StereoSequence out = ApplyDistortion(s, spec);
  for (int t = 0; t < 2; ++t) {
    EXPECT_EQ(out.frames[t].right.luma.data(), s.frames[t].right.luma.data());
    for (int y = 0; y < 32; ++y) {
      for (int x = 0; x < 32; ++x) {
        const bool inside = x >= 4 && x < 14 && y >= 8 && y < 14;
        const double before = s.frames[t].left.luma.at(x, y);
        const double after = out.frames[t].left.luma.at(x, y);
        if (inside) {
          EXPECT_EQ(after, std::min(255.0, before + 10.0));
        } else {
          EXPECT_EQ(after, before);
        }
      }
    }
  }
}

TEST(TargetAndRegionTest, ChromaPassesThrough) {
  const StereoSequence s = testing::StereoTexture(16, 16, 1, 6);
  StereoSequence colored = s;
  colored.frames[0].left.chroma_u = Plane(8, 8, 60.0);
  colored.frames[0].left.chroma_v = Plane(8, 8, 200.0);
  DistortionSpec spec;
  spec.kind = DistortionKind::kIntensityShift;
  const StereoSequence out = ApplyDistortion(colored, spec);
  EXPECT_EQ(out.frames[0].left.chroma_u->data(), colored.frames[0].left.chroma_u->data());
  EXPECT_EQ(out.frames[0].left.chroma_v->data(), colored.frames[0].left.chroma_v->data());
}

TEST(DistortionSpecTest, JsonRoundTripAndErrors) {
  DistortionSpec spec;
  spec.kind = DistortionKind::kBlockQuantize;
  spec.step = 24.0;
  spec.seed = 99;
  spec.target = DistortionTarget::kRightOnly;
  spec.region = Region{1, 2, 3, 4};
  const DistortionSpec back = DistortionSpecFromJson(ToJson(spec));
  EXPECT_EQ(back.kind, spec.kind);
  EXPECT_EQ(back.step, 24.0);
  EXPECT_EQ(back.seed, spec.seed);
  EXPECT_EQ(back.target, spec.target);
  ASSERT_TRUE(back.region.has_value());
  EXPECT_EQ(back.region->height, 4);
  EXPECT_THROW(DistortionSpecFromJson(nlohmann::json{{"kind", "codec"}}), Error);
  EXPECT_THROW(DistortionSpecFromJson(nlohmann::json{{"kind", "awgn"}, {"variance", -1.0}, {"seed", 1}}),
               Error);
  const auto dir = testing::TempDir("dist_spec");
  std::ofstream(dir / "s.json") << R"({"kind": "awgn", "variance": 0.02, "seed": 5})";
  const DistortionSpec read = ReadDistortionSpec(dir / "s.json");
  EXPECT_EQ(read.variance, 0.02);
  EXPECT_EQ(*read.seed, 5u);
}

}  // namespace
}  // namespace salvq
