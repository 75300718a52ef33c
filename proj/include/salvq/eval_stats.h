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

#ifndef SALVQ_EVAL_STATS_H_
#define SALVQ_EVAL_STATS_H_

#include <array>
#include <filesystem>
#include <functional>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "salvq/image.h"

namespace salvq {

// Item × subject opinion scores on [0, 100]; NaN marks a missing score.
struct SubjectiveTable {
  std::vector<std::string> items;
  std::vector<std::string> subjects;
  std::vector<std::vector<double>> scores;  // [item][subject]
};

// CSV rows "item_id,subject_id,score"; a non-numeric first row is a header.
SubjectiveTable ParseSubjectiveCsv(std::istream& in);
SubjectiveTable ReadSubjectiveCsv(const std::filesystem::path& path);

struct MosEntry {
  std::string item;
  double mos = 0.0;
  double std = 0.0;  // sample std over retained subjects
  int retained = 0;
};

struct MosTable {
  std::vector<MosEntry> entries;
  std::vector<std::string> rejected_subjects;
  // False when the table is too small to screen (< 3 subjects or < 2 items).
  bool screened = false;
  // Every subject failed screening; entries hold the unscreened MOS.
  bool degenerate = false;
};

// Subject screening in the style of BT.500: per item mean, std and kurtosis;
// subjects beyond the 2σ (normal) or √20σ bound too often, and
// symmetrically so, are rejected before averaging.
MosTable ScreenAndMos(const SubjectiveTable& table);

// Throw UndefinedCorrelation for n < 3 or a constant series, and
// DimensionMismatch for unequal lengths.
double PearsonCc(std::span<const double> x, std::span<const double> y);
double SpearmanCc(std::span<const double> x, std::span<const double> y);
double Rmse(std::span<const double> x, std::span<const double> y);
// Fraction of items with |objective - mos| > 2·std; an item with std 0 uses
// 2·RMSE as its band.
double OutlierRatio(std::span<const double> objective, std::span<const double> mos,
                    std::span<const double> item_std);

// Average ranks, ties sharing the mean rank (1-based).
std::vector<double> MidRanks(std::span<const double> v);

// f(x) = b2 + (b1 - b2) / (1 + exp(-(x - b3) / |b4|)).
double Logistic(const std::array<double, 4>& beta, double x);

struct LogisticFit {
  std::array<double, 4> beta{};
  std::vector<double> mapped;
  bool converged = false;
  int evaluations = 0;
};

// Least-squares fit by Nelder-Mead simplex descent (at most max_evals
// objective evaluations). On non-convergence `mapped` is the raw input.
LogisticFit FitLogistic(std::span<const double> objective, std::span<const double> mos,
                        int max_evals = 2000);

// Minimizes f from x0 with initial steps `step`; returns the best point.
// Converged once the simplex values span at most ftol·|f_best| + fatol.
struct SimplexResult {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;
  bool converged = false;
};
SimplexResult NelderMead(const std::function<double(std::span<const double>)>& f,
                         std::vector<double> x0, std::vector<double> step, int max_evals,
                         double ftol = 1e-14, double fatol = 0.0);

struct PerfReport {
  std::string metric;
  std::string saliency_mode;
  std::string distortion = "all";
  double pcc = 0.0;
  double scc = 0.0;
  double rmse = 0.0;
  double outlier_ratio = 0.0;
  int n = 0;
  bool logistic = false;
  std::optional<std::array<double, 4>> logistic_beta;
  bool fit_converged = true;
};

PerfReport EvaluatePerformance(std::span<const double> objective, std::span<const double> mos,
                               std::span<const double> item_std, bool logistic = false);

enum class ReportFormat { kCsv, kJson };

// Columns metric,saliency_mode,distortion,pcc,scc,rmse,or,n,mapping with
// 4-decimal fixed values. Throws EmptyReport for no rows.
std::string FormatPerfReports(std::span<const PerfReport> rows, ReportFormat format);
void EmitReport(std::span<const PerfReport> rows, const std::filesystem::path& path,
                ReportFormat format);
std::vector<PerfReport> ParsePerfCsv(std::istream& in);

struct SiTi {
  double si = 0.0;
  double ti = 0.0;
  bool ti_defined = false;  // false for single-frame sequences (ti = 0)
};

// Spatial and temporal information of the left view: max over frames of the
// std of the Sobel magnitude, max over frame pairs of the std of the
// difference.
SiTi ComputeSiTi(const StereoSequence& seq);

}  // namespace salvq

#endif  // SALVQ_EVAL_STATS_H_
