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

#include <algorithm>
#include <cmath>
#include <fstream>

#include "salvq/error.h"
#include "salvq/signal.h"

namespace salvq {

using nlohmann::json;

namespace {

Plane Clamp255(Plane p) {
  for (double& v : p.data()) v = std::clamp(v, 0.0, 255.0);
  return p;
}

double RoundHalfAway(double v) { return std::round(v); }

bool TouchesView(DistortionTarget target, int view) {
  switch (target) {
    case DistortionTarget::kBothViews: return true;
    case DistortionTarget::kLeftOnly: return view == 0;
    case DistortionTarget::kRightOnly: return view == 1;
  }
  return true;
}

Plane DistortPlane(const Plane& p, const DistortionSpec& spec, uint64_t stream_seed) {
  switch (spec.kind) {
    case DistortionKind::kAwgn: return AwgnPlane(p, spec.variance, stream_seed);
    case DistortionKind::kGaussianBlur:
      return Convolve2d(p, GaussianKernel(spec.blur_size, spec.blur_sigma));
    case DistortionKind::kIntensityShift: {
      Plane out = p;
      for (double& v : out.data()) v += spec.delta;
      return Clamp255(std::move(out));
    }
    case DistortionKind::kBlockQuantize: return BlockQuantizePlane(p, spec.step);
  }
  return p;
}

Plane PasteRegion(const Plane& original, const Plane& distorted, const Region& r) {
  Plane out = original;
  for (int y = std::max(0, r.y); y < std::min(original.height(), r.y + r.height); ++y) {
    for (int x = std::max(0, r.x); x < std::min(original.width(), r.x + r.width); ++x) {
      out.at(x, y) = distorted.at(x, y);
    }
  }
  return out;
}

template <typename T>
void Take(const json& j, const char* key, T& field) {
  if (!j.contains(key)) return;
  try {
    field = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParam, std::string("distortion spec key '") + key + "': " + e.what());
  }
}

}  // namespace

void DistortionSpec::Validate() const {
  switch (kind) {
    case DistortionKind::kAwgn:
      if (!(variance >= 0.0) || !std::isfinite(variance)) {
        throw Error(ErrorCode::kParam, "AWGN variance must be >= 0");
      }
      if (!seed) throw Error(ErrorCode::kParam, "AWGN needs a seed");
      break;
    case DistortionKind::kGaussianBlur:
      if (blur_size < 1 || !(blur_sigma > 0.0)) {
        throw Error(ErrorCode::kParam, "blur needs size >= 1 and sigma > 0");
      }
      break;
    case DistortionKind::kIntensityShift:
      if (!std::isfinite(delta)) throw Error(ErrorCode::kParam, "shift must be finite");
      break;
    case DistortionKind::kBlockQuantize:
      if (!(step > 0.0) || !std::isfinite(step)) {
        throw Error(ErrorCode::kParam, "quantizer step must be > 0");
      }
      break;
  }
  if (region && (region->width <= 0 || region->height <= 0)) {
    throw Error(ErrorCode::kParam, "region must have positive size");
  }
}

Plane AwgnPlane(const Plane& p, double variance, uint64_t stream_seed) {
  if (variance == 0.0) return p;
  SeededRng rng(stream_seed);
  const double sigma = 255.0 * std::sqrt(variance);
  Plane out = p;
  for (double& v : out.data()) v += rng.Normal(0.0, sigma);
  return Clamp255(std::move(out));
}

Plane BlockQuantizePlane(const Plane& p, double step) {
  if (!(step > 0.0)) throw Error(ErrorCode::kParam, "quantizer step must be > 0");
  constexpr int kN = 8;
  Plane out = p;
  std::vector<double> block(kN * kN);
  for (int y0 = 0; y0 + kN <= p.height(); y0 += kN) {
    for (int x0 = 0; x0 + kN <= p.width(); x0 += kN) {
      for (int r = 0; r < kN; ++r) {
        for (int c = 0; c < kN; ++c) block[r * kN + c] = p.at(x0 + c, y0 + r);
      }
      std::vector<double> coeffs = Dct2(block, kN);
      for (double& v : coeffs) v = RoundHalfAway(v / step) * step;
      const std::vector<double> rec = Idct2(coeffs, kN);
      for (int r = 0; r < kN; ++r) {
        for (int c = 0; c < kN; ++c) {
          out.at(x0 + c, y0 + r) = std::clamp(rec[r * kN + c], 0.0, 255.0);
        }
      }
    }
  }
  return out;
}

StereoSequence ApplyDistortion(const StereoSequence& seq, const DistortionSpec& spec,
                               const ExecOptions& exec) {
  spec.Validate();
  seq.Validate();
  StereoSequence out = seq;
  const uint64_t base = spec.seed.value_or(0);
  ParallelFor(seq.size(), exec, [&](int t) {
    for (int view = 0; view < 2; ++view) {
      if (!TouchesView(spec.target, view)) continue;
      const Plane& src = view == 0 ? seq.frames[t].left.luma : seq.frames[t].right.luma;
      Plane& dst = view == 0 ? out.frames[t].left.luma : out.frames[t].right.luma;
      const uint64_t stream = base + 2 * static_cast<uint64_t>(t) + view;
      Plane d = DistortPlane(src, spec, stream);
      dst = spec.region ? PasteRegion(src, d, *spec.region) : std::move(d);
    }
  });
  return out;
}

StereoSequence ApplyAwgn(const StereoSequence& seq, double variance, uint64_t seed) {
  DistortionSpec s;
  s.kind = DistortionKind::kAwgn;
  s.variance = variance;
  s.seed = seed;
  return ApplyDistortion(seq, s);
}

StereoSequence ApplyGaussianBlur(const StereoSequence& seq, int size, double sigma) {
  DistortionSpec s;
  s.kind = DistortionKind::kGaussianBlur;
  s.blur_size = size;
  s.blur_sigma = sigma;
  return ApplyDistortion(seq, s);
}

StereoSequence ApplyIntensityShift(const StereoSequence& seq, double delta) {
  DistortionSpec s;
  s.kind = DistortionKind::kIntensityShift;
  s.delta = delta;
  return ApplyDistortion(seq, s);
}

StereoSequence ApplyBlockQuantize(const StereoSequence& seq, double step) {
  DistortionSpec s;
  s.kind = DistortionKind::kBlockQuantize;
  s.step = step;
  return ApplyDistortion(seq, s);
}

const char* DistortionKindName(DistortionKind kind) {
  switch (kind) {
    case DistortionKind::kAwgn: return "awgn";
    case DistortionKind::kGaussianBlur: return "gaussian_blur";
    case DistortionKind::kIntensityShift: return "intensity_shift";
    case DistortionKind::kBlockQuantize: return "block_quantize";
  }
  return "awgn";
}

json ToJson(const DistortionSpec& s) {
  json j{{"kind", DistortionKindName(s.kind)}};
  switch (s.kind) {
    case DistortionKind::kAwgn: j["variance"] = s.variance; break;
    case DistortionKind::kGaussianBlur:
      j["size"] = s.blur_size;
      j["sigma"] = s.blur_sigma;
      break;
    case DistortionKind::kIntensityShift: j["delta"] = s.delta; break;
    case DistortionKind::kBlockQuantize: j["step"] = s.step; break;
  }
  if (s.seed) j["seed"] = *s.seed;
  j["target"] = s.target == DistortionTarget::kBothViews  ? "both_views"
                : s.target == DistortionTarget::kLeftOnly ? "left_only"
                                                          : "right_only";
  if (s.region) {
    j["region"] = {{"x", s.region->x}, {"y", s.region->y},
                   {"width", s.region->width}, {"height", s.region->height}};
  }
  return j;
}

DistortionSpec DistortionSpecFromJson(const json& j) {
  if (!j.is_object() || !j.contains("kind")) {
    throw Error(ErrorCode::kParam, "distortion spec needs a 'kind'");
  }
  DistortionSpec s;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "awgn") {
    s.kind = DistortionKind::kAwgn;
  } else if (kind == "gaussian_blur") {
    s.kind = DistortionKind::kGaussianBlur;
  } else if (kind == "intensity_shift") {
    s.kind = DistortionKind::kIntensityShift;
  } else if (kind == "block_quantize") {
    s.kind = DistortionKind::kBlockQuantize;
  } else {
    throw Error(ErrorCode::kParam, "unknown distortion kind '" + kind + "'");
  }
  Take(j, "variance", s.variance);
  Take(j, "size", s.blur_size);
  Take(j, "sigma", s.blur_sigma);
  Take(j, "delta", s.delta);
  Take(j, "step", s.step);
  if (j.contains("seed")) {
    uint64_t seed = 0;
    Take(j, "seed", seed);
    s.seed = seed;
  }
  std::string target = "both_views";
  Take(j, "target", target);
  if (target == "both_views") {
    s.target = DistortionTarget::kBothViews;
  } else if (target == "left_only") {
    s.target = DistortionTarget::kLeftOnly;
  } else if (target == "right_only") {
    s.target = DistortionTarget::kRightOnly;
  } else {
    throw Error(ErrorCode::kParam, "unknown distortion target '" + target + "'");
  }
  if (j.contains("region")) {
    Region r;
    const json& jr = j.at("region");
    Take(jr, "x", r.x);
    Take(jr, "y", r.y);
    Take(jr, "width", r.width);
    Take(jr, "height", r.height);
    s.region = r;
  }
  s.Validate();
  return s;
}

DistortionSpec ReadDistortionSpec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path.string() + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParam, "'" + path.string() + "': " + e.what());
  }
  return DistortionSpecFromJson(j);
}

}  // namespace salvq
