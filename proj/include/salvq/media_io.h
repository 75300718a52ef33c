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

#ifndef SALVQ_MEDIA_IO_H_
#define SALVQ_MEDIA_IO_H_

#include <filesystem>
#include <string>
#include <vector>

#include "salvq/image.h"

namespace salvq {

enum class PixelFormat { kGray8, kYuv420p8, kYuv444p8 };

const char* PixelFormatName(PixelFormat format);
PixelFormat ParsePixelFormat(const std::string& name);

// Raw planar 8-bit stereo streams. One file per view; frames back to back,
// each frame Y then U then V.
struct SequenceDescriptor {
  std::filesystem::path left;
  std::filesystem::path right;
  int width = 0;
  int height = 0;
  double fps = 25.0;
  int frame_count = 0;
  PixelFormat format = PixelFormat::kGray8;
  std::string name;
};

size_t FrameBytes(PixelFormat format, int width, int height);

// Reads the JSON descriptor {left, right, width, height, fps, frames, format}
// (optional "name"). Relative view paths resolve against the descriptor's
// directory.
SequenceDescriptor ReadDescriptor(const std::filesystem::path& json_path);
// Writes the descriptor; view paths inside the descriptor's directory are
// stored relative to it.
void WriteDescriptor(const SequenceDescriptor& desc, const std::filesystem::path& json_path);

// Errors: IoError (missing/unreadable file), DescriptorMismatch (file size is
// not frame_count frames), EmptySequence (frame_count == 0).
StereoSequence LoadSequence(const SequenceDescriptor& desc);
// Writes both view files in desc.format; samples are rounded half up and
// clamped to [0, 255]. Missing chroma is written as neutral 128.
void SaveSequence(const StereoSequence& seq, const SequenceDescriptor& desc);

// Reads one binary PGM (P5, maxval 255 or 65535) scaled to [0, 1].
Plane ReadPgm(const std::filesystem::path& path);

struct MapSeriesShape {
  int width = 0;
  int height = 0;
  int count = 0;
};

// Loads 000000.pgm ... from `dir`. Any missing or surplus index raises
// MapSeriesGap; wrong dimensions raise MapShapeError.
std::vector<Plane> LoadMapSeries(const std::filesystem::path& dir, const MapSeriesShape& expected);

// P5 maxval-255 output of a [0, 1] map, quantized as round(v * 255) with ties
// up. Out-of-range or non-finite samples raise RangeError.
void SaveFramePgm(const Plane& map, const std::filesystem::path& path);
void SaveMapSeries(const std::vector<Plane>& maps, const std::filesystem::path& dir);

std::string MapFileName(int index);

}  // namespace salvq

#endif  // SALVQ_MEDIA_IO_H_
