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

#ifndef SALVQ_METRIC_REPORT_H_
#define SALVQ_METRIC_REPORT_H_

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "salvq/maps.h"

namespace salvq {

// kComposite marks metrics whose direction depends on fitted constants (OQ).
enum class Orientation { kHigherBetter, kLowerBetter, kComposite };

const char* OrientationName(Orientation o);
Orientation ParseOrientation(const std::string& name);

struct MetricReport {
  std::string metric;
  std::string item;
  Orientation orientation = Orientation::kHigherBetter;
  std::string saliency_mode = "none";
  std::string config_fingerprint;
  std::vector<int> frame_index;
  std::vector<double> per_frame;
  // Arithmetic mean of per_frame.
  double pooled = 0.0;
  std::vector<std::string> notes;
};

// Fills pooled from per_frame and derives saliency_mode from the map source
// ("none" for an empty series).
MetricReport MakeReport(std::string metric, Orientation orientation, std::vector<int> frame_index,
                        std::vector<double> per_frame, std::span<const SaliencyMap> saliency,
                        std::string fingerprint, std::vector<std::string> notes = {});

nlohmann::json ToJson(const MetricReport& report);
MetricReport ReportFromJson(const nlohmann::json& j);

void WriteReportJson(const MetricReport& report, const std::filesystem::path& path);
MetricReport ReadReportJson(const std::filesystem::path& path);
// "frame,score" rows, one per scored frame.
void WriteFrameCsv(const MetricReport& report, const std::filesystem::path& path);

// Fixed-point text used by every CSV the toolkit writes.
std::string FormatFixed(double v, int decimals);

}  // namespace salvq

#endif  // SALVQ_METRIC_REPORT_H_
