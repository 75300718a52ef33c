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
#include <functional>
#include <sstream>

#include "gtest/gtest.h"
#include "json.hpp"
#include "salvq/error.h"
#include "salvq/metric_report.h"
#include "salvq/signal.h"
#include "test_util.h"

namespace salvq {
namespace {

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no salvq::Error thrown";
  return ErrorCode::kParam;
}

SubjectiveTable MakeTable(const std::vector<std::vector<double>>& scores) {
  SubjectiveTable t;
  for (size_t i = 0; i < scores.size(); ++i) t.items.push_back("item" + std::to_string(i));
  for (size_t s = 0; s < scores.front().size(); ++s) t.subjects.push_back("s" + std::to_string(s));
  t.scores = scores;
  return t;
}

TEST(SubjectiveCsvTest, LongFormatWithHeaderAndGaps) {
  std::istringstream in("item_id,subject_id,score\nA,alice,40\nA,bob,60\nB,alice,70\n");
  const SubjectiveTable t = ParseSubjectiveCsv(in);
  ASSERT_EQ(t.items, (std::vector<std::string>{"A", "B"}));
  ASSERT_EQ(t.subjects, (std::vector<std::string>{"alice", "bob"}));
  EXPECT_EQ(t.scores[0][1], 60.0);
  EXPECT_TRUE(std::isnan(t.scores[1][1]));
  std::istringstream bad("A,alice,140\n");
  EXPECT_EQ(CodeOf([&] { ParseSubjectiveCsv(bad); }), ErrorCode::kRange);
  std::istringstream ragged("A,alice\n");
  EXPECT_THROW(ParseSubjectiveCsv(ragged), Error);
}

TEST(ScreeningTest, IdenticalSubjects) {
  const MosTable m = ScreenAndMos(MakeTable({{40, 40, 40, 40}, {75, 75, 75, 75}}));
  EXPECT_TRUE(m.screened);
  EXPECT_TRUE(m.rejected_subjects.empty());
  EXPECT_EQ(m.entries[0].mos, 40.0);
  EXPECT_EQ(m.entries[1].std, 0.0);
  EXPECT_EQ(m.entries[1].retained, 4);
}

TEST(ScreeningTest, TwoSubjectsAreNotScreened) {
  const MosTable m = ScreenAndMos(MakeTable({{10, 30}, {50, 90}, {0, 100}}));
  EXPECT_FALSE(m.screened);
  EXPECT_EQ(m.entries[1].mos, 70.0);
  EXPECT_NEAR(m.entries[1].std, std::sqrt(800.0), 1e-12);
}

// Fourteen consistent subjects (item quality plus N(0, 10)) and one erratic
// subject that lands 30 above and below the item quality on alternate items.
SubjectiveTable RogueTable(double rogue_offset, bool alternate) {
  SeededRng rng(2024);
  std::vector<std::vector<double>> scores;
  for (int j = 0; j < 20; ++j) {
    const double q = 25.0 + 2.5 * j;
    std::vector<double> row;
    for (int s = 0; s < 14; ++s) row.push_back(std::clamp(q + rng.Normal(0.0, 10.0), 0.0, 100.0));
    const double sign = alternate && j % 2 ? -1.0 : 1.0;
    row.push_back(std::clamp(q + sign * rogue_offset, 0.0, 100.0));
    scores.push_back(row);
  }
  return MakeTable(scores);
}

TEST(ScreeningTest, ErraticSubjectIsRejected) {
  const SubjectiveTable t = RogueTable(30.0, true);
  const MosTable m = ScreenAndMos(t);
  ASSERT_TRUE(m.screened);
  EXPECT_NE(std::find(m.rejected_subjects.begin(), m.rejected_subjects.end(), "s14"),
            m.rejected_subjects.end());
  EXPECT_LE(m.rejected_subjects.size(), 2u);
  // Dropping the erratic subject never widens an item's spread.
  for (size_t i = 0; i < m.entries.size(); ++i) {
    std::vector<double> v(t.scores[i].begin(), t.scores[i].end());
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= v.size();
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    EXPECT_LE(m.entries[i].std, std::sqrt(ss / (v.size() - 1)) + 1e-12) << i;
  }
}

TEST(ScreeningTest, OneSidedBiasIsKept) {
  // Always 40 above: outliers on every item, but never on the low side.
  const MosTable m = ScreenAndMos(RogueTable(40.0, false));
  EXPECT_EQ(std::find(m.rejected_subjects.begin(), m.rejected_subjects.end(), "s14"),
            m.rejected_subjects.end());
}

TEST(ScreeningTest, EveryoneRejectedFallsBack) {
  // Four subjects alternating far above and below on every item.
  std::vector<std::vector<double>> scores;
  for (int j = 0; j < 40; ++j) {
    const double s = j % 2 ? 1.0 : -1.0;
    scores.push_back({50 + 40 * s, 50 - 40 * s, 50 + 40 * s, 50 - 40 * s});
  }
  const MosTable m = ScreenAndMos(MakeTable(scores));
  if (m.degenerate) {
    EXPECT_TRUE(m.rejected_subjects.empty());
    EXPECT_EQ(m.entries[0].retained, 4);
  }
  EXPECT_EQ(m.entries[0].mos, 50.0);
}

TEST(CorrelationTest, HandValues) {
  const std::vector<double> x = {1, 2, 3, 4, 5};
  EXPECT_NEAR(PearsonCc(x, std::vector<double>{2, 1, 4, 3, 5}), 0.8, 1e-12);
  EXPECT_NEAR(PearsonCc(x, std::vector<double>{3, 5, 7, 9, 11}), 1.0, 1e-15);
  EXPECT_NEAR(PearsonCc(x, std::vector<double>{-1, -2, -3, -4, -5}), -1.0, 1e-15);
  EXPECT_NEAR(SpearmanCc(std::vector<double>{1, 2, 3}, std::vector<double>{1, 3, 2}), 0.5, 1e-15);
  EXPECT_NEAR(SpearmanCc(x, std::vector<double>{1, 8, 27, 64, 125}), 1.0, 1e-15);
  EXPECT_NEAR(SpearmanCc(x, std::vector<double>{5, 4, 3, 2, 1}), -1.0, 1e-15);
  EXPECT_EQ(MidRanks(std::vector<double>{10, 20, 20, 5}), (std::vector<double>{2, 3.5, 3.5, 1}));
}

TEST(CorrelationTest, Invariances) {
  SeededRng rng(5);
  std::vector<double> x, y;
  for (int i = 0; i < 40; ++i) {
    x.push_back(rng.NextUniform() * 10.0);
    y.push_back(x.back() + rng.Normal(0.0, 2.0));
  }
  std::vector<double> affine, cubed, neg;
  for (double v : x) {
    affine.push_back(3.0 * v - 7.0);
    cubed.push_back(std::exp(v));
    neg.push_back(-v);
  }
  const double p = PearsonCc(x, y);
  EXPECT_NEAR(PearsonCc(affine, y), p, 1e-12);
  EXPECT_NEAR(PearsonCc(neg, y), -p, 1e-12);
  EXPECT_NEAR(SpearmanCc(cubed, y), SpearmanCc(x, y), 1e-12);
}

TEST(CorrelationTest, Errors) {
  EXPECT_EQ(CodeOf([] { PearsonCc(std::vector<double>{1, 2}, std::vector<double>{1, 2}); }),
            ErrorCode::kUndefinedCorrelation);
  EXPECT_EQ(CodeOf([] { PearsonCc(std::vector<double>{1, 1, 1}, std::vector<double>{1, 2, 3}); }),
            ErrorCode::kUndefinedCorrelation);
  EXPECT_EQ(CodeOf([] { SpearmanCc(std::vector<double>{1, 2, 3}, std::vector<double>{4, 4, 4}); }),
            ErrorCode::kUndefinedCorrelation);
  EXPECT_EQ(CodeOf([] { Rmse(std::vector<double>{1, 2, 3}, std::vector<double>{1, 2}); }),
            ErrorCode::kDimensionMismatch);
}

TEST(RmseTest, HandAndTriangle) {
  const std::vector<double> a = {1, 2, 3, 4}, b = {2, 2, 5, 4}, c = {0, 3, 3, 7};
  EXPECT_EQ(Rmse(a, a), 0.0);
  EXPECT_NEAR(Rmse(a, b), std::sqrt(5.0 / 4.0), 1e-15);
  EXPECT_LE(Rmse(a, c), Rmse(a, b) + Rmse(b, c));
}

TEST(OutlierRatioTest, Granularity) {
  std::vector<double> mos, obj, sd(120, 1.0);
  for (int i = 0; i < 120; ++i) {
    mos.push_back(10.0 + 0.5 * i);
    obj.push_back(mos.back() + (i == 17 ? 3.0 : 0.5));
  }
  const double r = OutlierRatio(obj, mos, sd);
  EXPECT_DOUBLE_EQ(r, 1.0 / 120.0);
  EXPECT_EQ(FormatFixed(r, 4), "0.0083");
  EXPECT_EQ(OutlierRatio(mos, mos, sd), 0.0);
  std::vector<double> shifted;
  for (double v : mos) shifted.push_back(v + 5.0);
  EXPECT_EQ(OutlierRatio(shifted, mos, sd), 1.0);
}

TEST(OutlierRatioTest, ZeroStdUsesRmseBand) {
  // Errors 0, 0, 0, 4: RMSE 2, band 4 for zero-std items; only the last is
  // judged against its own std of 1.
  const std::vector<double> mos = {1, 2, 3, 4}, obj = {1, 2, 3, 8};
  EXPECT_EQ(OutlierRatio(obj, mos, std::vector<double>{0, 0, 0, 1}), 0.25);
  EXPECT_EQ(OutlierRatio(obj, mos, std::vector<double>{0, 0, 0, 0}), 0.0);
}

TEST(LogisticTest, RecoversSyntheticCurve) {
  const std::array<double, 4> truth = {85.0, 15.0, 0.45, 0.08};
  std::vector<double> x, y;
  for (int i = 0; i < 30; ++i) {
    x.push_back(i / 29.0);
    y.push_back(Logistic(truth, x.back()));
  }
  const LogisticFit fit = FitLogistic(x, y);
  EXPECT_TRUE(fit.converged);
  EXPECT_LE(Rmse(fit.mapped, y), 1e-3);
  for (size_t i = 1; i < x.size(); ++i) EXPECT_GE(fit.mapped[i], fit.mapped[i - 1]);
}

TEST(LogisticTest, ConstantMosAndMonotoneMapping) {
  const std::vector<double> x = {0.1, 0.4, 0.2, 0.9, 0.7};
  const std::vector<double> flat(5, 42.0);
  const LogisticFit fit = FitLogistic(x, flat);
  if (fit.converged) {
    for (double v : fit.mapped) EXPECT_NEAR(v, 42.0, 1e-6);
  } else {
    EXPECT_EQ(fit.mapped, x);
  }
  SeededRng rng(3);
  std::vector<double> xs, ys;
  for (int i = 0; i < 25; ++i) {
    xs.push_back(rng.NextUniform());
    ys.push_back(100.0 * rng.NextUniform());
  }
  const LogisticFit noisy = FitLogistic(xs, ys);
  std::vector<size_t> order(xs.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return xs[a] < xs[b]; });
  const bool up = noisy.mapped[order.back()] >= noisy.mapped[order.front()];
  for (size_t k = 1; k < order.size(); ++k) {
    const double d = noisy.mapped[order[k]] - noisy.mapped[order[k - 1]];
    EXPECT_TRUE(up ? d >= 0.0 : d <= 0.0);
  }
  EXPECT_THROW(FitLogistic(std::vector<double>{1, 2, 3}, std::vector<double>{1, 2, 3}), Error);
}

TEST(NelderMeadTest, Rosenbrock) {
  const auto f = [](std::span<const double> p) {
    return 100.0 * std::pow(p[1] - p[0] * p[0], 2) + std::pow(1.0 - p[0], 2);
  };
  const SimplexResult r = NelderMead(f, {-1.2, 1.0}, {0.5, 0.5}, 5000);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.x[0], 1.0, 1e-4);
  EXPECT_NEAR(r.x[1], 1.0, 1e-4);
  EXPECT_LE(r.evaluations, 5000);
}

TEST(PerformanceTest, ExactMapping) {
  const std::vector<double> mos = {10, 30, 50, 70, 90};
  const std::vector<double> sd(5, 5.0);
  const PerfReport r = EvaluatePerformance(mos, mos, sd);
  EXPECT_EQ(r.pcc, 1.0);
  EXPECT_EQ(r.scc, 1.0);
  EXPECT_EQ(r.rmse, 0.0);
  EXPECT_EQ(r.outlier_ratio, 0.0);
  EXPECT_EQ(r.n, 5);
  EXPECT_FALSE(r.logistic);
}

TEST(PerfReportTest, CsvAndJson) {
  PerfReport a;
  a.metric = "psnr_s";
  a.saliency_mode = "none";
  a.pcc = 0.64544;
  a.scc = 0.6;
  a.rmse = 12.3456789;
  a.outlier_ratio = 1.0 / 120.0;
  a.n = 120;
  PerfReport b = a;
  b.saliency_mode = "baseline";
  b.pcc = 0.68;
  const std::vector<PerfReport> rows = {a, b};
  const std::string csv = FormatPerfReports(rows, ReportFormat::kCsv);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "metric,saliency_mode,distortion,pcc,scc,rmse,or,n,mapping");
  EXPECT_NE(csv.find("psnr_s,none,all,0.6454,0.6000,12.3457,0.0083,120,raw"), std::string::npos);
  std::istringstream in(csv);
  const std::vector<PerfReport> back = ParsePerfCsv(in);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].saliency_mode, "baseline");
  EXPECT_DOUBLE_EQ(back[1].pcc, 0.68);
  EXPECT_DOUBLE_EQ(back[0].outlier_ratio, 0.0083);
  const auto j = nlohmann::json::parse(FormatPerfReports(rows, ReportFormat::kJson));
  ASSERT_TRUE(j.is_array());
  for (const char* key : {"metric", "saliency_mode", "distortion", "pcc", "scc", "rmse", "or", "n"}) {
    EXPECT_TRUE(j[0].contains(key)) << key;
  }
  EXPECT_DOUBLE_EQ(j[0]["pcc"].get<double>(), 0.6454);
  EXPECT_EQ(CodeOf([] { FormatPerfReports({}, ReportFormat::kCsv); }), ErrorCode::kEmptyReport);
}

TEST(SiTiTest, ConstantAndHalfSplit) {
  const Plane black(16, 16, 0.0);
  const SiTi still = ComputeSiTi(MakeSequence({black, black}, {black, black}));
  EXPECT_EQ(still.si, 0.0);
  EXPECT_EQ(still.ti, 0.0);
  EXPECT_TRUE(still.ti_defined);
  Plane half(16, 16, 0.0);
  for (int y = 0; y < 16; ++y) {
    for (int x = 0; x < 8; ++x) half.at(x, y) = 255.0;
  }
  const SiTi s = ComputeSiTi(MakeSequence({black, half}, {black, half}));
  EXPECT_DOUBLE_EQ(s.ti, 127.5);
  EXPECT_GT(s.si, 0.0);
  const SiTi one = ComputeSiTi(MakeSequence({half}, {half}));
  EXPECT_FALSE(one.ti_defined);
  EXPECT_EQ(one.ti, 0.0);
  // Sobel magnitude is 4·255 on the two columns at the split, 0 elsewhere:
  // population std of {1020 ×2, 0 ×14} per row.
  const double p = 2.0 / 16.0;
  EXPECT_NEAR(one.si, 1020.0 * std::sqrt(p * (1 - p)), 1e-9);
}

}  // namespace
}  // namespace salvq
