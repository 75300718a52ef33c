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

#include "cli.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gtest/gtest.h"
#include "json.hpp"
#include "salvq/distortion.h"
#include "salvq/metric_report.h"
#include "test_util.h"

namespace salvq {
namespace {

namespace fs = std::filesystem;

struct RunResult {
  int code = 0;
  std::string out;
  std::string err;
};

RunResult Call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  RunResult r;
  r.code = cli::Run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = testing::TempDir(::testing::UnitTest::GetInstance()->current_test_info()->name());
    ref_ = testing::WriteSequence(testing::StereoTexture(64, 64, 3, 5, 4, "ref"), dir_, "ref");
    dist_ = testing::WriteSequence(
        ApplyAwgn(testing::StereoTexture(64, 64, 3, 5, 4, "ref"), 0.005, 9), dir_, "dist");
  }
  std::string P(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
  fs::path ref_;
  fs::path dist_;
};

TEST_F(CliTest, InfoPrintsDimensions) {
  const RunResult r = Call({"info", "--in", ref_.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("width: 64"), std::string::npos);
  EXPECT_NE(r.out.find("height: 64"), std::string::npos);
  EXPECT_NE(r.out.find("frames: 3"), std::string::npos);
  EXPECT_NE(r.out.find("si: "), std::string::npos);
  EXPECT_NE(r.out.find("ti: "), std::string::npos);
}

TEST_F(CliTest, IdenticalInputsGivePerfectSsim) {
  const RunResult r = Call({"score-fr", "--metric", "ssim_s", "--ref", ref_.string(), "--dist",
                            ref_.string(), "--saliency", "baseline", "--disparity-range", "16",
                            "--out", P("ssim.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const MetricReport rep = ReadReportJson(P("ssim.json"));
  EXPECT_EQ(rep.pooled, 1.0);
  EXPECT_EQ(rep.saliency_mode, "baseline");
  EXPECT_TRUE(fs::exists(P("ssim.csv")));
  EXPECT_TRUE(fs::exists(P("ssim.json.manifest.json")));
  EXPECT_EQ(Slurp(P("ssim.csv")).substr(0, 12), "frame,score\n");
}

TEST_F(CliTest, NoneAndUniformSaliencyAgree) {
  for (const char* metric : {"psnr_s", "msssim_s", "vif_s", "ciq_s"}) {
    const std::vector<std::string> base = {"score-fr",           "--metric", metric,
                                           "--ref",              ref_.string(), "--dist",
                                           dist_.string(),       "--disparity-range", "16"};
    auto with = [&](const std::string& mode) {
      std::vector<std::string> a = base;
      a.insert(a.end(), {"--saliency", mode, "--out", P(mode + ".json")});
      return a;
    };
    ASSERT_EQ(Call(with("none")).code, 0);
    ASSERT_EQ(Call(with("uniform")).code, 0);
    EXPECT_EQ(Slurp(P("none.csv")), Slurp(P("uniform.csv"))) << metric;
    EXPECT_EQ(ReadReportJson(P("none.json")).pooled, ReadReportJson(P("uniform.json")).pooled);
  }
}

TEST_F(CliTest, ExitCodes) {
  RunResult r = Call({"score-fr", "--metric", "nope", "--ref", ref_.string(), "--dist",
                      dist_.string(), "--out", P("x.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("ssim_s"), std::string::npos);
  EXPECT_NE(r.err.find("nospdm_s"), std::string::npos);
  EXPECT_EQ(Call({"score-fr", "--metric", "psnr_s"}).code, 2);
  EXPECT_EQ(Call({}).code, 2);
  EXPECT_EQ(Call({"frobnicate"}).code, 2);
  EXPECT_EQ(Call({"score-fr", "--metric", "psnr_s", "--ref", ref_.string(), "--dist",
                  dist_.string(), "--saliency", "maybe", "--out", P("x.json")})
                .code,
            2);
  r = Call({"info", "--in", P("missing.json")});
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(r.err.empty());
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(Call({"--help"}).code, 0);
  // Processing errors (one frame is not enough temporal context) exit 1.
  const fs::path one = testing::WriteSequence(testing::StereoTexture(64, 64, 1, 2), dir_, "one");
  EXPECT_EQ(Call({"score-fr", "--metric", "flosim3d_s", "--ref", one.string(), "--dist",
                  one.string(), "--disparity-range", "16", "--out", P("f.json")})
                .code,
            1);
}

std::vector<std::string> ManifestArgv(const fs::path& manifest) {
  const auto j = nlohmann::json::parse(Slurp(manifest));
  return j.at("argv").get<std::vector<std::string>>();
}

TEST_F(CliTest, ManifestReplayIsByteIdentical) {
  std::ofstream(P("awgn.json")) << R"({"kind": "awgn", "variance": 0.02, "seed": 77})";
  ASSERT_EQ(Call({"distort", "--in", ref_.string(), "--spec", P("awgn.json"), "--out",
                  P("noisy.json")})
                .code,
            0);
  ASSERT_EQ(Call({"score-fr", "--metric", "phsd_s", "--ref", ref_.string(), "--dist",
                  P("noisy.json"), "--saliency", "baseline", "--disparity-range", "16", "--out",
                  P("phsd.json")})
                .code,
            0);
  ASSERT_EQ(Call({"score-nr", "--metric", "gbim_s", "--dist", P("noisy.json"), "--saliency",
                  "baseline", "--disparity-range", "16", "--out", P("gbim.json")})
                .code,
            0);
  const std::vector<std::string> files = {"noisy.json", "noisy_left.yuv", "noisy_right.yuv",
                                          "phsd.json",  "phsd.csv",       "gbim.json",
                                          "gbim.csv"};
  std::vector<std::string> before;
  for (const auto& f : files) before.push_back(Slurp(P(f)));
  for (const char* m : {"noisy.json", "phsd.json", "gbim.json"}) {
    const std::string manifest = P(std::string(m) + ".manifest.json");
    const std::string first = Slurp(manifest);
    ASSERT_EQ(Call(ManifestArgv(manifest)).code, 0) << m;
    EXPECT_EQ(Slurp(manifest), first) << m;
  }
  for (size_t i = 0; i < files.size(); ++i) {
    EXPECT_EQ(Slurp(P(files[i])), before[i]) << files[i];
  }
  const auto j = nlohmann::json::parse(Slurp(P("noisy.json.manifest.json")));
  EXPECT_EQ(j.at("seed").get<uint64_t>(), 77u);
  EXPECT_EQ(j.at("command"), "distort");
}

TEST_F(CliTest, JobsDoNotChangeOutputs) {
  for (const char* jobs : {"1", "4"}) {
    ASSERT_EQ(Call({"score-fr", "--metric", "msssim_s", "--ref", ref_.string(), "--dist",
                    dist_.string(), "--saliency", "baseline", "--disparity-range", "16", "--jobs",
                    jobs, "--out", P(std::string("j") + jobs + ".json")})
                  .code,
              0);
  }
  EXPECT_EQ(Slurp(P("j1.json")), Slurp(P("j4.json")));
  EXPECT_EQ(Slurp(P("j1.csv")), Slurp(P("j4.csv")));
}

TEST_F(CliTest, SaliencyAndDisparityCommandsWriteSeries) {
  ASSERT_EQ(Call({"saliency", "--in", ref_.string(), "--disparity-range", "16", "--out",
                  P("sal")})
                .code,
            0);
  ASSERT_EQ(Call({"disparity", "--in", ref_.string(), "--disparity-range", "16", "--out",
                  P("disp")})
                .code,
            0);
  for (const char* d : {"sal", "disp"}) {
    for (const char* f : {"000000.pgm", "000001.pgm", "000002.pgm"}) {
      EXPECT_TRUE(fs::exists(dir_ / d / f)) << d << "/" << f;
    }
  }
  // Both directories feed straight back in as external sources.
  const RunResult r = Call({"score-fr", "--metric", "ddl1_s", "--ref", ref_.string(), "--dist",
                            dist_.string(), "--saliency", "dir:" + P("sal"), "--disparity",
                            "dir:" + P("disp"), "--disparity-dist", "dir:" + P("disp"),
                            "--disparity-range", "16", "--out", P("ddl1.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(ReadReportJson(P("ddl1.json")).saliency_mode, "external");
}

TEST_F(CliTest, NoReferenceWithConfigAndRightMaps) {
  std::ofstream(P("nr.json")) << R"({"qa3d_history": 2})";
  RunResult r = Call({"score-nr", "--metric", "qa3d_s", "--dist", dist_.string(), "--config",
                      P("nr.json"), "--disparity-range", "16", "--out", P("qa3d.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(ReadReportJson(P("qa3d.json")).per_frame.size(), 1u);
  std::ofstream(P("bad.json")) << R"({"qa3d_histroy": 2})";
  EXPECT_EQ(Call({"score-nr", "--metric", "qa3d_s", "--dist", dist_.string(), "--config",
                  P("bad.json"), "--out", P("q.json")})
                .code,
            1);
  ASSERT_EQ(Call({"saliency", "--in", dist_.string(), "--disparity-range", "16", "--out",
                  P("sl")})
                .code,
            0);
  r = Call({"score-nr", "--metric", "nospdm_s", "--dist", dist_.string(), "--saliency",
            "dir:" + P("sl"), "--saliency-right", "dir:" + P("sl"), "--out", P("nospdm.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(Call({"score-nr", "--metric", "nospdm_s", "--dist", dist_.string(),
                  "--saliency-right", "uniform", "--out", P("n2.json")})
                .code,
            2);
}

TEST_F(CliTest, EndToEndEvaluation) {
  // Five AWGN levels scored with and without saliency, against a MOS that
  // falls with the noise level.
  std::vector<std::string> reports;
  std::ofstream scores(P("scores.csv"));
  scores << "item_id,subject_id,score\n";
  const double variances[] = {0.001, 0.004, 0.01, 0.03, 0.08};
  for (int k = 0; k < 5; ++k) {
    const std::string name = "lvl" + std::to_string(k);
    std::ofstream(P(name + "_spec.json"))
        << R"({"kind": "awgn", "seed": 3, "variance": )" << variances[k] << "}";
    ASSERT_EQ(Call({"distort", "--in", ref_.string(), "--spec", P(name + "_spec.json"), "--out",
                    P(name + ".json")})
                  .code,
              0);
    for (const char* mode : {"none", "baseline"}) {
      const std::string out = P(name + "_" + mode + ".json");
      ASSERT_EQ(Call({"score-fr", "--metric", "psnr_s", "--ref", ref_.string(), "--dist",
                      P(name + ".json"), "--saliency", mode, "--disparity-range", "16", "--out",
                      out})
                    .code,
                0);
      reports.push_back(out);
    }
    for (int s = 0; s < 4; ++s) scores << name << ",sub" << s << "," << 90 - 15 * k + s << "\n";
  }
  scores.close();
  std::vector<std::string> args = {"evaluate", "--scores", P("scores.csv"), "--out", P("perf.csv"),
                                   "--objective"};
  args.insert(args.end(), reports.begin(), reports.end());
  const RunResult r = Call(args);
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string csv = Slurp(P("perf.csv"));
  EXPECT_NE(csv.find("psnr_s,none,all,"), std::string::npos) << csv;
  EXPECT_NE(csv.find("psnr_s,baseline,all,"), std::string::npos) << csv;
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
  std::istringstream in(csv);
  std::string header, row;
  std::getline(in, header);
  while (std::getline(in, row)) {
    // Spearman is exactly 1: PSNR falls with the noise, and so does the MOS.
    EXPECT_NE(row.find(",1.0000,"), std::string::npos) << row;
  }
  args[4] = P("perf.json");
  ASSERT_EQ(Call(args).code, 0);
  EXPECT_EQ(nlohmann::json::parse(Slurp(P("perf.json"))).size(), 2u);
}

}  // namespace
}  // namespace salvq
