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

#include "salvq/fr_metrics.h"

#include <algorithm>

#include "fr_common.h"
#include "salvq/error.h"
#include "salvq/saliency.h"
#include "salvq/structural.h"

namespace salvq {

namespace internal {

namespace {

void CheckMaps(const Plane& frame, const Plane& map, const char* what, int t) {
  if (!frame.SameShape(map)) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(what) + " map of frame " + std::to_string(t) + " is " +
                    std::to_string(map.width()) + "x" + std::to_string(map.height()) +
                    ", frame is " + std::to_string(frame.width()) + "x" +
                    std::to_string(frame.height()));
  }
}

template <typename Map>
void CheckSeries(const StereoSequence& seq, std::span<const Map> maps, const char* what) {
  if (maps.empty()) return;
  if (static_cast<int>(maps.size()) != seq.size()) {
    throw Error(ErrorCode::kSequenceLength, std::string(what) + " series has " +
                                                std::to_string(maps.size()) + " maps for " +
                                                std::to_string(seq.size()) + " frames");
  }
  for (int t = 0; t < seq.size(); ++t) CheckMaps(seq.frames[t].left.luma, maps[t].values, what, t);
}

}  // namespace

void ValidateFr(const FrInputs& in, bool needs_ref_disparity, bool needs_dist_disparity) {
  in.ref.Validate();
  in.dist.Validate();
  if (in.ref.size() != in.dist.size()) {
    throw Error(ErrorCode::kSequenceLength, "reference has " + std::to_string(in.ref.size()) +
                                                " frames, distorted has " +
                                                std::to_string(in.dist.size()));
  }
  if (in.ref.width() != in.dist.width() || in.ref.height() != in.dist.height()) {
    throw Error(ErrorCode::kDimensionMismatch, "reference and distorted frame sizes differ");
  }
  CheckSeries(in.ref, in.saliency, "saliency");
  CheckSeries(in.ref, in.ref_disparity, "reference disparity");
  CheckSeries(in.ref, in.dist_disparity, "distorted disparity");
  if (needs_ref_disparity && in.ref_disparity.empty()) {
    throw Error(ErrorCode::kDisparityRequired, "metric needs reference disparity maps");
  }
  if (needs_dist_disparity && in.dist_disparity.empty()) {
    throw Error(ErrorCode::kDisparityRequired, "metric needs distorted disparity maps");
  }
}

void AppendUnique(std::vector<std::string>& notes, const std::string& note) {
  if (std::find(notes.begin(), notes.end(), note) == notes.end()) notes.push_back(note);
}

FrameScores RunFrames(int first, int count, const ExecOptions& exec,
                      const std::function<double(int, FrameNotes&)>& fn) {
  const int n = count - first;
  FrameScores out;
  out.score.assign(std::max(n, 0), 0.0);
  std::vector<FrameNotes> notes(std::max(n, 0));
  ParallelFor(n, exec, [&](int i) { out.score[i] = fn(first + i, notes[i]); });
  for (int i = 0; i < n; ++i) {
    out.index.push_back(first + i);
    for (const std::string& s : notes[i]) AppendUnique(out.notes, s);
  }
  return out;
}

MetricReport FinishFr(const char* id, Orientation orientation, const FrInputs& in,
                      FrameScores scores, const FrMetricConfig& cfg) {
  MetricReport r = MakeReport(id, orientation, std::move(scores.index), std::move(scores.score),
                              in.saliency, Fingerprint(ToJson(cfg)), std::move(scores.notes));
  r.item = in.dist.name;
  return r;
}

}  // namespace internal

using internal::FrameNotes;
using internal::SaliencyAt;

namespace {

// Averages a per-view measure over the two views.
template <typename F>
double BothViews(const StereoFrame& r, const StereoFrame& d, F&& view_score) {
  return 0.5 * (view_score(r.left.luma, d.left.luma) + view_score(r.right.luma, d.right.luma));
}

}  // namespace

MetricReport ScorePsnr(const FrInputs& in, const FrMetricConfig& cfg, const ExecOptions& exec) {
  cfg.Validate();
  internal::ValidateFr(in, false, false);
  auto scores = internal::RunFrames(0, in.ref.size(), exec, [&](int t, FrameNotes&) {
    const SaliencyMap* s = SaliencyAt(in, t);
    return BothViews(in.ref.frames[t], in.dist.frames[t], [&](const Plane& a, const Plane& b) {
      Plane err(a.width(), a.height());
      for (size_t i = 0; i < err.size(); ++i) {
        const double e = a.data()[i] - b.data()[i];
        err.data()[i] = e * e;
      }
      return PsnrFromMse(PoolSpatial(err, s), cfg.psnr_cap);
    });
  });
  return internal::FinishFr("psnr_s", Orientation::kHigherBetter, in, std::move(scores), cfg);
}

MetricReport ScoreSsim(const FrInputs& in, const FrMetricConfig& cfg, const ExecOptions& exec) {
  cfg.Validate();
  internal::ValidateFr(in, false, false);
  if (cfg.ssim_window > std::min(in.ref.width(), in.ref.height())) {
    throw Error(ErrorCode::kTooSmall, "SSIM window exceeds the frame");
  }
  auto scores = internal::RunFrames(0, in.ref.size(), exec, [&](int t, FrameNotes&) {
    const SaliencyMap* s = SaliencyAt(in, t);
    return BothViews(in.ref.frames[t], in.dist.frames[t], [&](const Plane& a, const Plane& b) {
      return PoolSpatial(SsimMap(a, b, cfg), s);
    });
  });
  return internal::FinishFr("ssim_s", Orientation::kHigherBetter, in, std::move(scores), cfg);
}

MetricReport ScoreMsSsim(const FrInputs& in, const FrMetricConfig& cfg, const ExecOptions& exec) {
  cfg.Validate();
  internal::ValidateFr(in, false, false);
  auto scores = internal::RunFrames(0, in.ref.size(), exec, [&](int t, FrameNotes& notes) {
    const SaliencyMap* s = SaliencyAt(in, t);
    return BothViews(in.ref.frames[t], in.dist.frames[t], [&](const Plane& a, const Plane& b) {
      const MsSsimResult m = MsSsim(a, b, s, cfg);
      if (!m.note.empty()) internal::AppendUnique(notes, m.note);
      return m.value;
    });
  });
  return internal::FinishFr("msssim_s", Orientation::kHigherBetter, in, std::move(scores), cfg);
}

MetricReport ScoreVif(const FrInputs& in, const FrMetricConfig& cfg, const ExecOptions& exec) {
  cfg.Validate();
  internal::ValidateFr(in, false, false);
  auto scores = internal::RunFrames(0, in.ref.size(), exec, [&](int t, FrameNotes&) {
    const SaliencyMap* s = SaliencyAt(in, t);
    return BothViews(in.ref.frames[t], in.dist.frames[t],
                     [&](const Plane& a, const Plane& b) { return Vif(a, b, s, cfg); });
  });
  return internal::FinishFr("vif_s", Orientation::kHigherBetter, in, std::move(scores), cfg);
}

const std::vector<FrMetricInfo>& FrMetricRegistry() {
  static const std::vector<FrMetricInfo> registry = {
      {"psnr_s", Orientation::kHigherBetter, false, false, ScorePsnr},
      {"ssim_s", Orientation::kHigherBetter, false, false, ScoreSsim},
      {"msssim_s", Orientation::kHigherBetter, false, false, ScoreMsSsim},
      {"vif_s", Orientation::kHigherBetter, false, false, ScoreVif},
      {"ddl1_s", Orientation::kHigherBetter, true, true, ScoreDdl1},
      {"oq_s", Orientation::kComposite, true, true, ScoreOq},
      {"ciq_s", Orientation::kHigherBetter, true, true, ScoreCiq},
      {"phvs3d_s", Orientation::kHigherBetter, true, false, ScorePhvs3d},
      {"phsd_s", Orientation::kHigherBetter, true, true, ScorePhsd},
      {"mj3d_s", Orientation::kHigherBetter, true, true, ScoreMj3d},
      {"hv3d_s", Orientation::kHigherBetter, true, true, ScoreHv3d},
      {"flosim3d_s", Orientation::kLowerBetter, true, true, ScoreFlosim3d},
  };
  return registry;
}

const FrMetricInfo& FindFrMetric(const std::string& id) {
  for (const FrMetricInfo& m : FrMetricRegistry()) {
    if (m.id == id) return m;
  }
  throw Error(ErrorCode::kUnknownMetric, "no full-reference metric '" + id + "'");
}

}  // namespace salvq
