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

#include "salvq/media_io.h"

#include <fstream>

#include "gtest/gtest.h"
#include "salvq/error.h"
#include "test_util.h"

namespace salvq {
namespace {

namespace fs = std::filesystem;
using testing::TempDir;

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no salvq::Error thrown";
  return ErrorCode::kParam;
}

void WriteBytes(const fs::path& p, const std::string& bytes) {
  std::ofstream out(p, std::ios::binary);
  out << bytes;
}

StereoSequence Ramp(int w, int h, int frames) {
  std::vector<Plane> l, r;
  for (int t = 0; t < frames; ++t) {
    Plane a(w, h), b(w, h);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        a.at(x, y) = (x * 7 + y * 3 + t * 11) % 256;
        b.at(x, y) = (x * 5 + y + t) % 256;
      }
    }
    l.push_back(a);
    r.push_back(b);
  }
  return MakeSequence(l, r, 30.0, "ramp");
}

TEST(FrameBytesTest, ChromaRoundsUp) {
  EXPECT_EQ(FrameBytes(PixelFormat::kGray8, 5, 3), 15u);
  EXPECT_EQ(FrameBytes(PixelFormat::kYuv420p8, 5, 3), 15u + 2 * 3 * 2);
  EXPECT_EQ(FrameBytes(PixelFormat::kYuv444p8, 4, 4), 48u);
}

TEST(SequenceIoTest, Gray8RoundTripIsExact) {
  const fs::path dir = TempDir("io_gray");
  const StereoSequence seq = Ramp(9, 7, 3);
  const fs::path desc = testing::WriteSequence(seq, dir, "ramp");
  const SequenceDescriptor d = ReadDescriptor(desc);
  EXPECT_EQ(d.left, dir / "ramp_left.yuv");
  EXPECT_EQ(d.frame_count, 3);
  const StereoSequence back = LoadSequence(d);
  ASSERT_EQ(back.size(), 3);
  EXPECT_EQ(back.name, "ramp");
  for (int t = 0; t < 3; ++t) {
    EXPECT_EQ(back.frames[t].left.luma.data(), seq.frames[t].left.luma.data());
    EXPECT_EQ(back.frames[t].right.luma.data(), seq.frames[t].right.luma.data());
    EXPECT_EQ(back.frames[t].index, t);
  }
}

TEST(SequenceIoTest, Yuv420LoadsChromaAtHalfSize) {
  const fs::path dir = TempDir("io_420");
  const fs::path desc = testing::WriteSequence(Ramp(5, 3, 2), dir, "c", PixelFormat::kYuv420p8);
  EXPECT_EQ(fs::file_size(dir / "c_left.yuv"), 2 * FrameBytes(PixelFormat::kYuv420p8, 5, 3));
  const StereoSequence back = LoadSequence(ReadDescriptor(desc));
  ASSERT_TRUE(back.frames[0].left.chroma_u.has_value());
  EXPECT_EQ(back.frames[0].left.chroma_u->width(), 3);
  EXPECT_EQ(back.frames[0].left.chroma_u->height(), 2);
  EXPECT_EQ(back.frames[1].right.chroma_v->at(0, 0), 128.0);
}

TEST(SequenceIoTest, SavingRoundsHalfUpAndClamps) {
  const fs::path dir = TempDir("io_round");
  const StereoSequence seq = MakeSequence({Plane::FromRows({{127.5, -3.0, 300.0, 0.49}})},
                                          {Plane(4, 1, 1.0)});
  const StereoSequence back = LoadSequence(ReadDescriptor(testing::WriteSequence(seq, dir, "r")));
  EXPECT_EQ(back.frames[0].left.luma.data(), (std::vector<double>{128, 0, 255, 0}));
}

TEST(SequenceIoTest, Errors) {
  const fs::path dir = TempDir("io_err");
  const fs::path desc = testing::WriteSequence(Ramp(4, 4, 2), dir, "e");
  SequenceDescriptor d = ReadDescriptor(desc);

  SequenceDescriptor wrong = d;
  wrong.frame_count = 3;
  EXPECT_EQ(CodeOf([&] { LoadSequence(wrong); }), ErrorCode::kDescriptorMismatch);
  wrong.frame_count = 0;
  EXPECT_EQ(CodeOf([&] { LoadSequence(wrong); }), ErrorCode::kEmptySequence);
  wrong = d;
  wrong.right = dir / "missing.yuv";
  EXPECT_EQ(CodeOf([&] { LoadSequence(wrong); }), ErrorCode::kIo);
  EXPECT_EQ(CodeOf([&] { ReadDescriptor(dir / "nope.json"); }), ErrorCode::kIo);
  WriteBytes(dir / "bad.json", "{\"left\": \"a\"}");
  EXPECT_EQ(CodeOf([&] { ReadDescriptor(dir / "bad.json"); }), ErrorCode::kParam);
}

TEST(PgmTest, ReadsEightAndSixteenBitWithComments) {
  const fs::path dir = TempDir("pgm");
  WriteBytes(dir / "a.pgm", std::string("P5\n# note\n2 1\n255\n") + char(0) + char(255));
  const Plane a = ReadPgm(dir / "a.pgm");
  EXPECT_EQ(a.width(), 2);
  EXPECT_DOUBLE_EQ(a.at(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(a.at(1, 0), 1.0);

  std::string sixteen = "P5 1 1 65535\n";
  sixteen += char(0x80);
  sixteen += char(0x00);
  WriteBytes(dir / "b.pgm", sixteen);
  EXPECT_DOUBLE_EQ(ReadPgm(dir / "b.pgm").at(0, 0), 32768.0 / 65535.0);

  WriteBytes(dir / "c.pgm", "P2 1 1 255\n7\n");
  EXPECT_EQ(CodeOf([&] { ReadPgm(dir / "c.pgm"); }), ErrorCode::kMapShape);
}

TEST(MapSeriesTest, RoundTripQuantizesToEightBits) {
  const fs::path dir = TempDir("maps");
  std::vector<Plane> maps = {Plane::FromRows({{0.0, 0.5, 1.0}}), Plane::FromRows({{0.2, 0.4, 0.6}})};
  SaveMapSeries(maps, dir);
  EXPECT_TRUE(fs::exists(dir / "000001.pgm"));
  const std::vector<Plane> back = LoadMapSeries(dir, {3, 1, 2});
  EXPECT_DOUBLE_EQ(back[0].at(1, 0), 128.0 / 255.0);
  EXPECT_DOUBLE_EQ(back[1].at(2, 0), 153.0 / 255.0);
}

TEST(MapSeriesTest, GapsSurplusAndShapeAreRejected) {
  const fs::path dir = TempDir("maps_err");
  SaveMapSeries({Plane(3, 2, 0.5), Plane(3, 2, 0.5), Plane(3, 2, 0.5)}, dir);
  EXPECT_EQ(CodeOf([&] { LoadMapSeries(dir, {3, 2, 2}); }), ErrorCode::kMapSeriesGap);
  EXPECT_EQ(CodeOf([&] { LoadMapSeries(dir, {3, 2, 4}); }), ErrorCode::kMapSeriesGap);
  EXPECT_EQ(CodeOf([&] { LoadMapSeries(dir, {2, 3, 3}); }), ErrorCode::kMapShape);
  fs::remove(dir / "000001.pgm");
  EXPECT_EQ(CodeOf([&] { LoadMapSeries(dir, {3, 2, 3}); }), ErrorCode::kMapSeriesGap);
  EXPECT_EQ(CodeOf([&] { SaveFramePgm(Plane(1, 1, 1.5), dir / "x.pgm"); }), ErrorCode::kRange);
}

TEST(SequenceTest, ValidateCatchesMismatchedViews) {
  StereoSequence s = MakeSequence({Plane(4, 4)}, {Plane(4, 4)});
  EXPECT_NO_THROW(s.Validate());
  s.frames[0].right.luma = Plane(5, 4);
  EXPECT_THROW(s.Validate(), Error);
  EXPECT_THROW(StereoSequence{}.Validate(), Error);
}

}  // namespace
}  // namespace salvq
