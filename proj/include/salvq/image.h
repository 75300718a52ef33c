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

#ifndef SALVQ_IMAGE_H_
#define SALVQ_IMAGE_H_

#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace salvq {

// Row-major H×W plane of doubles. Luma lives in [0, 255], maps in [0, 1].
class Plane {
 public:
  Plane() = default;
  Plane(int width, int height, double fill = 0.0);

  // Builds a plane from nested row lists; all rows must have equal length.
  static Plane FromRows(std::initializer_list<std::initializer_list<double>> rows);

  int width() const { return width_; }
  int height() const { return height_; }
  size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& at(int x, int y) { return data_[static_cast<size_t>(y) * width_ + x]; }
  double at(int x, int y) const {
    return data_[static_cast<size_t>(y) * width_ + x];
  }
  // Replicate-border access.
  double clamped(int x, int y) const;

  std::span<double> row(int y) {
    return {data_.data() + static_cast<size_t>(y) * width_,
            static_cast<size_t>(width_)};
  }
  std::span<const double> row(int y) const {
    return {data_.data() + static_cast<size_t>(y) * width_,
            static_cast<size_t>(width_)};
  }

  std::vector<double>& data() & { return data_; }
  const std::vector<double>& data() const& { return data_; }
  // Rvalue access moves the samples out so range-for over a temporary is safe.
  std::vector<double> data() && { return std::move(data_); }

  bool SameShape(const Plane& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<double> data_;
};

// Throws DimensionMismatch when shapes differ; `what` names the call site.
void RequireSameShape(const Plane& a, const Plane& b, const char* what);

// Throws NumericError on NaN/Inf.
void RequireFinite(const Plane& p, const char* what);

struct Frame {
  Plane luma;
  // Either both present (4:2:0 at half size, or 4:4:4 at full size) or both absent.
  std::optional<Plane> chroma_u;
  std::optional<Plane> chroma_v;

  int width() const { return luma.width(); }
  int height() const { return luma.height(); }
};

struct StereoFrame {
  Frame left;
  Frame right;
  int index = 0;
};

struct StereoSequence {
  std::vector<StereoFrame> frames;
  double fps = 25.0;
  std::string name;

  int width() const { return frames.empty() ? 0 : frames.front().left.width(); }
  int height() const { return frames.empty() ? 0 : frames.front().left.height(); }
  int size() const { return static_cast<int>(frames.size()); }

  // Checks the structural invariants: at least one frame, matching view and
  // frame dimensions, indices contiguous from zero.
  void Validate() const;
};

// Convenience for tests and synthetic content: a sequence whose frames use the
// given luma planes for the left and right views.
StereoSequence MakeSequence(const std::vector<Plane>& left,
                            const std::vector<Plane>& right, double fps = 25.0,
                            std::string name = "synthetic");

}  // namespace salvq

#endif  // SALVQ_IMAGE_H_
