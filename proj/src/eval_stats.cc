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

#include "salvq/eval_stats.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "salvq/error.h"
#include "salvq/metric_report.h"

namespace salvq {

namespace {

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) {
    const auto b = field.find_first_not_of(" \t\r");
    const auto e = field.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
  }
  return out;
}

std::optional<double> ParseNumber(const std::string& s) {
  if (s.empty()) return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) return std::nullopt;
  return v;
}

size_t IndexOf(std::vector<std::string>& names, const std::string& name) {
  auto it = std::find(names.begin(), names.end(), name);
  if (it != names.end()) return it - names.begin();
  names.push_back(name);
  return names.size() - 1;
}

void CheckAligned(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "series lengths differ (" +
                                                   std::to_string(x.size()) + " vs " +
                                                   std::to_string(y.size()) + ")");
  }
}

double SampleStd(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / (v.size() - 1));
}

double Mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / v.size();
}

double Round4(double v) { return std::stod(FormatFixed(v, 4)); }

}  // namespace

SubjectiveTable ParseSubjectiveCsv(std::istream& in) {
  SubjectiveTable t;
  struct Row {
    size_t item, subject;
    double score;
  };
  std::vector<Row> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::vector<std::string> f = SplitCsv(line);
    if (f.size() != 3) {
      throw Error(ErrorCode::kParam, "scores line " + std::to_string(line_no) +
                                         ": expected item_id,subject_id,score");
    }
    const std::optional<double> score = ParseNumber(f[2]);
    if (!score) {
      if (rows.empty() && line_no == 1) continue;  // header
      throw Error(ErrorCode::kParam, "scores line " + std::to_string(line_no) + ": bad score");
    }
    if (*score < 0.0 || *score > 100.0) {
      throw Error(ErrorCode::kRange, "scores line " + std::to_string(line_no) +
                                         ": score outside [0, 100]");
    }
    rows.push_back({IndexOf(t.items, f[0]), IndexOf(t.subjects, f[1]), *score});
  }
  t.scores.assign(t.items.size(),
                  std::vector<double>(t.subjects.size(), std::numeric_limits<double>::quiet_NaN()));
  for (const Row& r : rows) t.scores[r.item][r.subject] = r.score;
  return t;
}

SubjectiveTable ReadSubjectiveCsv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path.string() + "'");
  return ParseSubjectiveCsv(in);
}

MosTable ScreenAndMos(const SubjectiveTable& table) {
  const size_t ni = table.items.size();
  const size_t ns = table.subjects.size();
  if (ni == 0 || ns == 0) throw Error(ErrorCode::kEmptyReport, "subjective table is empty");
  std::vector<bool> keep(ns, true);
  MosTable out;
  if (ns >= 3 && ni >= 2) {
    out.screened = true;
    std::vector<int> p(ns, 0), q(ns, 0), rated(ns, 0);
    for (size_t i = 0; i < ni; ++i) {
      std::vector<double> v;
      for (size_t s = 0; s < ns; ++s) {
        if (!std::isnan(table.scores[i][s])) v.push_back(table.scores[i][s]);
      }
      if (v.empty()) continue;
      const double m = Mean(v);
      double m2 = 0.0, m4 = 0.0;
      for (double x : v) {
        m2 += (x - m) * (x - m);
        m4 += std::pow(x - m, 4);
      }
      m2 /= v.size();
      m4 /= v.size();
      const double kurtosis = m2 > 0.0 ? m4 / (m2 * m2) : 3.0;
      const double sd = SampleStd(v);
      const double bound = (kurtosis >= 2.0 && kurtosis <= 4.0 ? 2.0 : std::sqrt(20.0)) * sd;
      for (size_t s = 0; s < ns; ++s) {
        const double x = table.scores[i][s];
        if (std::isnan(x)) continue;
        ++rated[s];
        if (x > m + bound) ++p[s];
        if (x < m - bound) ++q[s];
      }
    }
    for (size_t s = 0; s < ns; ++s) {
      const int pq = p[s] + q[s];
      if (rated[s] == 0 || pq == 0) continue;
      const bool frequent = static_cast<double>(pq) / rated[s] > 0.05;
      const bool symmetric = std::abs(p[s] - q[s]) / static_cast<double>(pq) < 0.3;
      if (frequent && symmetric) keep[s] = false;
    }
    if (std::none_of(keep.begin(), keep.end(), [](bool k) { return k; })) {
      out.degenerate = true;
      keep.assign(ns, true);
    } else {
      for (size_t s = 0; s < ns; ++s) {
        if (!keep[s]) out.rejected_subjects.push_back(table.subjects[s]);
      }
    }
  }
  for (size_t i = 0; i < ni; ++i) {
    std::vector<double> v;
    for (size_t s = 0; s < ns; ++s) {
      if (keep[s] && !std::isnan(table.scores[i][s])) v.push_back(table.scores[i][s]);
    }
    MosEntry e;
    e.item = table.items[i];
    e.retained = static_cast<int>(v.size());
    if (!v.empty()) {
      e.mos = Mean(v);
      e.std = SampleStd(v);
    } else {
      e.mos = std::numeric_limits<double>::quiet_NaN();
    }
    out.entries.push_back(e);
  }
  return out;
}

double PearsonCc(std::span<const double> x, std::span<const double> y) {
  CheckAligned(x, y);
  if (x.size() < 3) throw Error(ErrorCode::kUndefinedCorrelation, "correlation needs n >= 3");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw Error(ErrorCode::kUndefinedCorrelation, "correlation of a constant series");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<double> MidRanks(std::span<const double> v) {
  std::vector<size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  for (size_t i = 0; i < order.size();) {
    size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double r = 0.5 * (i + j) + 1.0;
    for (size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

double SpearmanCc(std::span<const double> x, std::span<const double> y) {
  CheckAligned(x, y);
  const std::vector<double> rx = MidRanks(x);
  const std::vector<double> ry = MidRanks(y);
  return PearsonCc(rx, ry);
}

double Rmse(std::span<const double> x, std::span<const double> y) {
  CheckAligned(x, y);
  if (x.empty()) throw Error(ErrorCode::kParam, "RMSE of empty series");
  double s = 0.0;
  for (size_t i = 0; i < x.size(); ++i) s += (x[i] - y[i]) * (x[i] - y[i]);
  return std::sqrt(s / x.size());
}

double OutlierRatio(std::span<const double> objective, std::span<const double> mos,
                    std::span<const double> item_std) {
  CheckAligned(objective, mos);
  CheckAligned(objective, item_std);
  const double rmse = Rmse(objective, mos);
  int outliers = 0;
  for (size_t i = 0; i < objective.size(); ++i) {
    const double band = item_std[i] > 0.0 ? 2.0 * item_std[i] : 2.0 * rmse;
    if (std::abs(objective[i] - mos[i]) > band) ++outliers;
  }
  return static_cast<double>(outliers) / objective.size();
}

PerfReport EvaluatePerformance(std::span<const double> objective, std::span<const double> mos,
                               std::span<const double> item_std, bool logistic) {
  CheckAligned(objective, mos);
  CheckAligned(objective, item_std);
  PerfReport r;
  r.n = static_cast<int>(objective.size());
  r.logistic = logistic;
  std::vector<double> mapped(objective.begin(), objective.end());
  if (logistic) {
    LogisticFit fit = FitLogistic(objective, mos);
    r.fit_converged = fit.converged;
    if (fit.converged) r.logistic_beta = fit.beta;
    mapped = std::move(fit.mapped);
  }
  r.pcc = PearsonCc(mapped, mos);
  r.scc = SpearmanCc(objective, mos);
  r.rmse = Rmse(mapped, mos);
  r.outlier_ratio = OutlierRatio(mapped, mos, item_std);
  return r;
}

std::string FormatPerfReports(std::span<const PerfReport> rows, ReportFormat format) {
  if (rows.empty()) throw Error(ErrorCode::kEmptyReport, "no performance rows to emit");
  if (format == ReportFormat::kCsv) {
    std::ostringstream out;
    out << "metric,saliency_mode,distortion,pcc,scc,rmse,or,n,mapping\n";
    for (const PerfReport& r : rows) {
      out << r.metric << "," << r.saliency_mode << "," << r.distortion << ","
          << FormatFixed(r.pcc, 4) << "," << FormatFixed(r.scc, 4) << ","
          << FormatFixed(r.rmse, 4) << "," << FormatFixed(r.outlier_ratio, 4) << "," << r.n
          << "," << (r.logistic ? "logistic" : "raw") << "\n";
    }
    return out.str();
  }
  nlohmann::json arr = nlohmann::json::array();
  for (const PerfReport& r : rows) {
    nlohmann::json j{{"metric", r.metric},
                     {"saliency_mode", r.saliency_mode},
                     {"distortion", r.distortion},
                     {"pcc", Round4(r.pcc)},
                     {"scc", Round4(r.scc)},
                     {"rmse", Round4(r.rmse)},
                     {"or", Round4(r.outlier_ratio)},
                     {"n", r.n},
                     {"mapping", r.logistic ? "logistic" : "raw"}};
    if (r.logistic) {
      j["fit_converged"] = r.fit_converged;
      if (r.logistic_beta) j["logistic_beta"] = *r.logistic_beta;
    }
    arr.push_back(j);
  }
  return arr.dump(2) + "\n";
}

void EmitReport(std::span<const PerfReport> rows, const std::filesystem::path& path,
                ReportFormat format) {
  const std::string text = FormatPerfReports(rows, format);
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path.string() + "'");
  out << text;
}

std::vector<PerfReport> ParsePerfCsv(std::istream& in) {
  std::vector<PerfReport> rows;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (header) {
      header = false;
      continue;
    }
    if (line.empty()) continue;
    const std::vector<std::string> f = SplitCsv(line);
    if (f.size() != 9) throw Error(ErrorCode::kParam, "performance CSV row needs 9 columns");
    PerfReport r;
    r.metric = f[0];
    r.saliency_mode = f[1];
    r.distortion = f[2];
    r.pcc = std::stod(f[3]);
    r.scc = std::stod(f[4]);
    r.rmse = std::stod(f[5]);
    r.outlier_ratio = std::stod(f[6]);
    r.n = std::stoi(f[7]);
    r.logistic = f[8] == "logistic";
    rows.push_back(r);
  }
  return rows;
}

}  // namespace salvq
