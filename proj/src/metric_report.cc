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

#include "salvq/metric_report.h"

#include <cstdio>
#include <fstream>

#include "salvq/error.h"

namespace salvq {

using nlohmann::json;

const char* OrientationName(Orientation o) {
  switch (o) {
    case Orientation::kHigherBetter: return "higher_better";
    case Orientation::kLowerBetter: return "lower_better";
    case Orientation::kComposite: return "composite";
  }
  return "composite";
}

Orientation ParseOrientation(const std::string& name) {
  if (name == "higher_better") return Orientation::kHigherBetter;
  if (name == "lower_better") return Orientation::kLowerBetter;
  if (name == "composite") return Orientation::kComposite;
  throw Error(ErrorCode::kParam, "unknown orientation '" + name + "'");
}

MetricReport MakeReport(std::string metric, Orientation orientation, std::vector<int> frame_index,
                        std::vector<double> per_frame, std::span<const SaliencyMap> saliency,
                        std::string fingerprint, std::vector<std::string> notes) {
  if (per_frame.empty() || per_frame.size() != frame_index.size()) {
    throw Error(ErrorCode::kParam, "report needs one index per scored frame");
  }
  MetricReport r;
  r.metric = std::move(metric);
  r.orientation = orientation;
  r.saliency_mode = saliency.empty() ? "none" : SaliencySourceName(saliency.front().source);
  r.config_fingerprint = std::move(fingerprint);
  r.frame_index = std::move(frame_index);
  r.per_frame = std::move(per_frame);
  double sum = 0.0;
  for (double v : r.per_frame) sum += v;
  r.pooled = sum / static_cast<double>(r.per_frame.size());
  r.notes = std::move(notes);
  return r;
}

json ToJson(const MetricReport& r) {
  json frames = json::array();
  for (size_t i = 0; i < r.per_frame.size(); ++i) {
    frames.push_back({{"frame", r.frame_index[i]}, {"score", r.per_frame[i]}});
  }
  return json{{"metric", r.metric},
              {"item", r.item},
              {"orientation", OrientationName(r.orientation)},
              {"saliency_mode", r.saliency_mode},
              {"config_fingerprint", r.config_fingerprint},
              {"pooled", r.pooled},
              {"frames", frames},
              {"notes", r.notes}};
}

MetricReport ReportFromJson(const json& j) {
  MetricReport r;
  try {
    r.metric = j.at("metric").get<std::string>();
    r.item = j.value("item", "");
    r.orientation = ParseOrientation(j.at("orientation").get<std::string>());
    r.saliency_mode = j.value("saliency_mode", "none");
    r.config_fingerprint = j.value("config_fingerprint", "");
    r.pooled = j.at("pooled").get<double>();
    for (const json& f : j.at("frames")) {
      r.frame_index.push_back(f.at("frame").get<int>());
      r.per_frame.push_back(f.at("score").get<double>());
    }
    r.notes = j.value("notes", std::vector<std::string>{});
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParam, std::string("malformed metric report: ") + e.what());
  }
  return r;
}

void WriteReportJson(const MetricReport& report, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path.string() + "'");
  out << ToJson(report).dump(2) << "\n";
}

MetricReport ReadReportJson(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path.string() + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParam, "'" + path.string() + "': " + e.what());
  }
  return ReportFromJson(j);
}

std::string FormatFixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

void WriteFrameCsv(const MetricReport& report, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path.string() + "'");
  out << "frame,score\n";
  for (size_t i = 0; i < report.per_frame.size(); ++i) {
    out << report.frame_index[i] << "," << FormatFixed(report.per_frame[i], 10) << "\n";
  }
}

}  // namespace salvq
