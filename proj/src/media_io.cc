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

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <set>

#include "json.hpp"
#include "salvq/error.h"

namespace salvq {

namespace fs = std::filesystem;
using nlohmann::json;

const char* PixelFormatName(PixelFormat format) {
  switch (format) {
    case PixelFormat::kGray8: return "gray8";
    case PixelFormat::kYuv420p8: return "yuv420p8";
    case PixelFormat::kYuv444p8: return "yuv444p8";
  }
  return "gray8";
}

PixelFormat ParsePixelFormat(const std::string& name) {
  if (name == "gray8") return PixelFormat::kGray8;
  if (name == "yuv420p8") return PixelFormat::kYuv420p8;
  if (name == "yuv444p8") return PixelFormat::kYuv444p8;
  throw Error(ErrorCode::kParam, "unknown pixel format '" + name + "'");
}

namespace {

struct ChromaDims {
  int width = 0;
  int height = 0;
};

ChromaDims ChromaFor(PixelFormat format, int width, int height) {
  switch (format) {
    case PixelFormat::kGray8: return {0, 0};
    case PixelFormat::kYuv420p8: return {(width + 1) / 2, (height + 1) / 2};
    case PixelFormat::kYuv444p8: return {width, height};
  }
  return {0, 0};
}

uint8_t Quantize8(double v) {
  return static_cast<uint8_t>(std::clamp(std::floor(v + 0.5), 0.0, 255.0));
}

std::vector<uint8_t> ReadAll(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path.string() + "'");
  return std::vector<uint8_t>(std::istreambuf_iterator<char>(in), {});
}

void WriteAll(const fs::path& path, const std::vector<uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path.string() + "'");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIo, "short write to '" + path.string() + "'");
}

Plane ReadPlane(const uint8_t* src, int width, int height) {
  Plane p(width, height);
  for (size_t i = 0; i < p.size(); ++i) p.data()[i] = src[i];
  return p;
}

void AppendPlane(const Plane& p, std::vector<uint8_t>& out) {
  for (double v : p.data()) out.push_back(Quantize8(v));
}

std::vector<Frame> LoadView(const fs::path& path, const SequenceDescriptor& desc) {
  if (!fs::exists(path)) throw Error(ErrorCode::kIo, "missing view file '" + path.string() + "'");
  const std::vector<uint8_t> bytes = ReadAll(path);
  const size_t frame_bytes = FrameBytes(desc.format, desc.width, desc.height);
  if (bytes.size() != frame_bytes * static_cast<size_t>(desc.frame_count)) {
    throw Error(ErrorCode::kDescriptorMismatch,
                "'" + path.string() + "' holds " + std::to_string(bytes.size()) +
                    " bytes, descriptor implies " + std::to_string(desc.frame_count) + " x " +
                    std::to_string(frame_bytes));
  }
  const ChromaDims c = ChromaFor(desc.format, desc.width, desc.height);
  const size_t luma_bytes = static_cast<size_t>(desc.width) * desc.height;
  const size_t chroma_bytes = static_cast<size_t>(c.width) * c.height;
  std::vector<Frame> frames(desc.frame_count);
  for (int t = 0; t < desc.frame_count; ++t) {
    const uint8_t* base = bytes.data() + frame_bytes * t;
    frames[t].luma = ReadPlane(base, desc.width, desc.height);
    if (chroma_bytes > 0) {
      frames[t].chroma_u = ReadPlane(base + luma_bytes, c.width, c.height);
      frames[t].chroma_v = ReadPlane(base + luma_bytes + chroma_bytes, c.width, c.height);
    }
  }
  return frames;
}

void SaveView(const fs::path& path, const StereoSequence& seq, bool left, PixelFormat format) {
  const ChromaDims c = ChromaFor(format, seq.width(), seq.height());
  std::vector<uint8_t> bytes;
  bytes.reserve(FrameBytes(format, seq.width(), seq.height()) * seq.frames.size());
  for (const StereoFrame& sf : seq.frames) {
    const Frame& f = left ? sf.left : sf.right;
    AppendPlane(f.luma, bytes);
    if (c.width == 0) continue;
    for (const std::optional<Plane>* chroma : {&f.chroma_u, &f.chroma_v}) {
      if (*chroma && (*chroma)->width() == c.width && (*chroma)->height() == c.height) {
        AppendPlane(**chroma, bytes);
      } else {
        bytes.insert(bytes.end(), static_cast<size_t>(c.width) * c.height, 128);
      }
    }
  }
  WriteAll(path, bytes);
}

// Reads the next whitespace-delimited header token, skipping '#' comments.
std::string PgmToken(const std::vector<uint8_t>& bytes, size_t& pos) {
  while (pos < bytes.size()) {
    if (bytes[pos] == '#') {
      while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
    } else if (std::isspace(bytes[pos])) {
      ++pos;
    } else {
      break;
    }
  }
  std::string tok;
  while (pos < bytes.size() && !std::isspace(bytes[pos])) tok.push_back(static_cast<char>(bytes[pos++]));
  return tok;
}

}  // namespace

size_t FrameBytes(PixelFormat format, int width, int height) {
  const ChromaDims c = ChromaFor(format, width, height);
  return static_cast<size_t>(width) * height + 2 * static_cast<size_t>(c.width) * c.height;
}

SequenceDescriptor ReadDescriptor(const fs::path& json_path) {
  std::ifstream in(json_path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open descriptor '" + json_path.string() + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParam, "descriptor '" + json_path.string() + "': " + e.what());
  }
  SequenceDescriptor d;
  const fs::path base = json_path.parent_path();
  try {
    const auto resolve = [&](const std::string& p) {
      const fs::path path(p);
      return path.is_absolute() ? path : base / path;
    };
    d.left = resolve(j.at("left").get<std::string>());
    d.right = resolve(j.at("right").get<std::string>());
    d.width = j.at("width").get<int>();
    d.height = j.at("height").get<int>();
    d.fps = j.at("fps").get<double>();
    d.frame_count = j.at("frames").get<int>();
    d.format = ParsePixelFormat(j.at("format").get<std::string>());
    d.name = j.value("name", json_path.stem().string());
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParam, "descriptor '" + json_path.string() + "': " + e.what());
  }
  if (d.width < 1 || d.height < 1 || !(d.fps > 0)) {
    throw Error(ErrorCode::kParam, "descriptor dimensions and fps must be positive");
  }
  return d;
}

void WriteDescriptor(const SequenceDescriptor& desc, const fs::path& json_path) {
  const fs::path base = fs::absolute(json_path).parent_path();
  const auto rel = [&](const fs::path& p) {
    const fs::path abs = fs::absolute(p);
    return abs.parent_path() == base ? abs.filename().string() : p.string();
  };
  json j = {{"left", rel(desc.left)},
            {"right", rel(desc.right)},
            {"width", desc.width},
            {"height", desc.height},
            {"fps", desc.fps},
            {"frames", desc.frame_count},
            {"format", PixelFormatName(desc.format)},
            {"name", desc.name}};
  std::ofstream out(json_path, std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + json_path.string() + "'");
  out << j.dump(2) << "\n";
}

StereoSequence LoadSequence(const SequenceDescriptor& desc) {
  if (desc.frame_count == 0) throw Error(ErrorCode::kEmptySequence, "descriptor declares 0 frames");
  if (desc.frame_count < 0 || desc.width < 1 || desc.height < 1) {
    throw Error(ErrorCode::kParam, "descriptor dimensions must be positive");
  }
  std::vector<Frame> left = LoadView(desc.left, desc);
  std::vector<Frame> right = LoadView(desc.right, desc);
  StereoSequence seq;
  seq.fps = desc.fps;
  seq.name = desc.name;
  for (int t = 0; t < desc.frame_count; ++t) {
    seq.frames.push_back(StereoFrame{std::move(left[t]), std::move(right[t]), t});
  }
  return seq;
}

void SaveSequence(const StereoSequence& seq, const SequenceDescriptor& desc) {
  seq.Validate();
  if (seq.width() != desc.width || seq.height() != desc.height || seq.size() != desc.frame_count) {
    throw Error(ErrorCode::kDescriptorMismatch, "sequence does not match descriptor");
  }
  SaveView(desc.left, seq, true, desc.format);
  SaveView(desc.right, seq, false, desc.format);
}

Plane ReadPgm(const fs::path& path) {
  const std::vector<uint8_t> bytes = ReadAll(path);
  size_t pos = 0;
  if (PgmToken(bytes, pos) != "P5") {
    throw Error(ErrorCode::kMapShape, "'" + path.string() + "' is not a binary PGM");
  }
  int width = 0, height = 0, maxval = 0;
  try {
    width = std::stoi(PgmToken(bytes, pos));
    height = std::stoi(PgmToken(bytes, pos));
    maxval = std::stoi(PgmToken(bytes, pos));
  } catch (const std::exception&) {
    throw Error(ErrorCode::kMapShape, "malformed PGM header in '" + path.string() + "'");
  }
  if (maxval != 255 && maxval != 65535) {
    throw Error(ErrorCode::kMapShape, "unsupported PGM maxval " + std::to_string(maxval));
  }
  ++pos;  // single whitespace after maxval
  const size_t bps = maxval == 255 ? 1 : 2;
  const size_t need = static_cast<size_t>(width) * height * bps;
  if (width < 1 || height < 1 || bytes.size() < pos + need) {
    throw Error(ErrorCode::kMapShape, "truncated PGM '" + path.string() + "'");
  }
  Plane p(width, height);
  const uint8_t* src = bytes.data() + pos;
  for (size_t i = 0; i < p.size(); ++i) {
    const double raw = bps == 1 ? src[i] : (src[2 * i] << 8) | src[2 * i + 1];
    p.data()[i] = raw / maxval;
  }
  return p;
}

std::string MapFileName(int index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%06d.pgm", index);
  return buf;
}

std::vector<Plane> LoadMapSeries(const fs::path& dir, const MapSeriesShape& expected) {
  if (!fs::is_directory(dir)) throw Error(ErrorCode::kIo, "no map directory '" + dir.string() + "'");
  std::set<int> indices;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (name.size() == 10 && name.ends_with(".pgm") &&
        std::all_of(name.begin(), name.begin() + 6, [](char c) { return std::isdigit(c); })) {
      indices.insert(std::stoi(name.substr(0, 6)));
    }
  }
  for (int i = 0; i < expected.count; ++i) {
    if (!indices.contains(i)) {
      throw Error(ErrorCode::kMapSeriesGap, "missing " + MapFileName(i) + " in '" + dir.string() + "'");
    }
  }
  if (static_cast<int>(indices.size()) != expected.count) {
    throw Error(ErrorCode::kMapSeriesGap, "'" + dir.string() + "' holds " +
                                               std::to_string(indices.size()) + " maps, expected " +
                                               std::to_string(expected.count));
  }
  std::vector<Plane> maps;
  maps.reserve(expected.count);
  for (int i = 0; i < expected.count; ++i) {
    Plane p = ReadPgm(dir / MapFileName(i));
    if (p.width() != expected.width || p.height() != expected.height) {
      throw Error(ErrorCode::kMapShape, MapFileName(i) + " is " + std::to_string(p.width()) + "x" +
                                            std::to_string(p.height()) + ", expected " +
                                            std::to_string(expected.width) + "x" +
                                            std::to_string(expected.height));
    }
    maps.push_back(std::move(p));
  }
  return maps;
}

void SaveFramePgm(const Plane& map, const fs::path& path) {
  std::vector<uint8_t> bytes;
  const std::string header =
      "P5\n" + std::to_string(map.width()) + " " + std::to_string(map.height()) + "\n255\n";
  bytes.assign(header.begin(), header.end());
  for (double v : map.data()) {
    if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
      throw Error(ErrorCode::kRange, "map sample " + std::to_string(v) + " outside [0, 1]");
    }
    bytes.push_back(static_cast<uint8_t>(std::floor(v * 255.0 + 0.5)));
  }
  WriteAll(path, bytes);
}

void SaveMapSeries(const std::vector<Plane>& maps, const fs::path& dir) {
  fs::create_directories(dir);
  for (size_t i = 0; i < maps.size(); ++i) SaveFramePgm(maps[i], dir / MapFileName(static_cast<int>(i)));
}

}  // namespace salvq
