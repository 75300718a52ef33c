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

#include "salvq/image.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "salvq/error.h"

namespace salvq {

Plane::Plane(int width, int height, double fill)
    : width_(width),
      height_(height),
      data_(static_cast<size_t>(std::max(width, 0)) * std::max(height, 0), fill) {
  if (width < 0 || height < 0) {
    throw Error(ErrorCode::kParam, "negative plane dimensions");
  }
}

Plane Plane::FromRows(std::initializer_list<std::initializer_list<double>> rows) {
  const int h = static_cast<int>(rows.size());
  const int w = h == 0 ? 0 : static_cast<int>(rows.begin()->size());
  Plane p(w, h);
  int y = 0;
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != w) {
      throw Error(ErrorCode::kDimensionMismatch, "ragged rows in Plane::FromRows");
    }
    int x = 0;
    for (double v : r) p.at(x++, y) = v;
    ++y;
  }
  return p;
}

double Plane::clamped(int x, int y) const {
  x = std::clamp(x, 0, width_ - 1);
  y = std::clamp(y, 0, height_ - 1);
  return at(x, y);
}

void RequireSameShape(const Plane& a, const Plane& b, const char* what) {
  if (!a.SameShape(b)) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(what) + ": " + std::to_string(a.width()) + "x" +
                    std::to_string(a.height()) + " vs " +
                    std::to_string(b.width()) + "x" + std::to_string(b.height()));
  }
}

void RequireFinite(const Plane& p, const char* what) {
  for (double v : p.data()) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kNumeric, std::string(what) + ": non-finite sample");
    }
  }
}

void StereoSequence::Validate() const {
  if (frames.empty()) throw Error(ErrorCode::kEmptySequence, "sequence '" + name + "'");
  const int w = width();
  const int h = height();
  for (size_t i = 0; i < frames.size(); ++i) {
    const StereoFrame& f = frames[i];
    if (f.index != static_cast<int>(i)) {
      throw Error(ErrorCode::kParam, "frame indices must be contiguous from 0");
    }
    if (f.left.width() != w || f.left.height() != h || f.right.width() != w ||
        f.right.height() != h) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "frame " + std::to_string(i) + " of '" + name + "'");
    }
  }
}

StereoSequence MakeSequence(const std::vector<Plane>& left,
                            const std::vector<Plane>& right, double fps,
                            std::string name) {
  if (left.size() != right.size()) {
    throw Error(ErrorCode::kSequenceLength, "left/right plane counts differ");
  }
  StereoSequence seq;
  seq.fps = fps;
  seq.name = std::move(name);
  for (size_t i = 0; i < left.size(); ++i) {
    StereoFrame f;
    f.left.luma = left[i];
    f.right.luma = right[i];
    f.index = static_cast<int>(i);
    seq.frames.push_back(std::move(f));
  }
  seq.Validate();
  return seq;
}

}  // namespace salvq
