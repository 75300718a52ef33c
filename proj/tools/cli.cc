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

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"
#include "salvq/disparity.h"
#include "salvq/distortion.h"
#include "salvq/error.h"
#include "salvq/eval_stats.h"
#include "salvq/fr_metrics.h"
#include "salvq/media_io.h"
#include "salvq/metric_report.h"
#include "salvq/nr_metrics.h"
#include "salvq/saliency.h"

namespace salvq::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Bad invocation detected after parsing (exit code 2).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string saliency = "none";
  std::string disparity = "estimate";
  std::string disparity_dist;
  std::string config;
  std::string out;
  std::string item;
  int jobs = 0;
  int disparity_block = 8;
  int disparity_range = 32;
};

json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  try {
    json j;
    in >> j;
    return j;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParam, "'" + path + "': " + e.what());
  }
}

std::optional<std::string> DirSource(const std::string& spec) {
  if (spec.rfind("dir:", 0) == 0 && spec.size() > 4) return spec.substr(4);
  return std::nullopt;
}

void CheckSaliencySpec(const std::string& s) {
  if (s == "none" || s == "uniform" || s == "baseline" || DirSource(s)) return;
  throw UsageError("--saliency must be none, uniform, baseline or dir:<path>");
}

void CheckDisparitySpec(const std::string& s, const char* flag) {
  if (s == "estimate" || DirSource(s)) return;
  throw UsageError(std::string(flag) + " must be estimate or dir:<path>");
}

DisparityConfig DisparityCfg(const Common& c) {
  DisparityConfig d;
  d.block = c.disparity_block;
  d.search_range = c.disparity_range;
  return d;
}

std::vector<DisparityMap> Disparity(const std::string& spec, const StereoSequence& seq,
                                    const Common& c, const ExecOptions& exec) {
  if (const auto dir = DirSource(spec)) return LoadExternalDisparity(*dir, seq, c.disparity_range);
  return EstimateDisparitySeries(seq, DisparityCfg(c), exec);
}

// Lazily computed disparity for the sequence the saliency is derived from.
std::vector<SaliencyMap> Saliency(const std::string& spec, const StereoSequence& seq,
                                  const std::function<std::span<const DisparityMap>()>& disparity,
                                  const ExecOptions& exec) {
  if (spec == "none") return {};
  if (spec == "uniform") {
    return std::vector<SaliencyMap>(seq.size(), UniformSaliency(seq.width(), seq.height()));
  }
  if (spec == "baseline") return BaselineVam(seq, disparity(), VamConfig{}, exec);
  return LoadExternalSaliency(*DirSource(spec), seq);
}

std::string SiblingCsv(const std::string& out) {
  return fs::path(out).replace_extension(".csv").string();
}

void WriteManifest(const std::string& out, const std::string& command,
                   const std::vector<std::string>& args, json extra) {
  json m{{"tool", "salvq"},
         {"version", SALVQ_VERSION},
         {"command", command},
         {"argv", args}};
  for (auto& [k, v] : extra.items()) m[k] = v;
  const std::string path = out + ".manifest.json";
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
  f << m.dump(2) << "\n";
}

std::string AvailableIds() {
  std::string ids;
  for (const auto& m : FrMetricRegistry()) ids += " " + m.id;
  ids += " |";
  for (const auto& m : NrMetricRegistry()) ids += " " + m.id;
  return ids;
}

void AddCommon(CLI::App* sub, Common& c, bool scoring) {
  sub->add_option("--jobs", c.jobs, "Worker threads (default: machine parallelism)");
  sub->add_option("--disparity-block", c.disparity_block, "Block size for disparity estimation");
  sub->add_option("--disparity-range", c.disparity_range, "Disparity search range in pixels");
  if (scoring) {
    sub->add_option("--saliency", c.saliency, "none | uniform | baseline | dir:<path>");
    sub->add_option("--disparity", c.disparity, "estimate | dir:<path>");
    sub->add_option("--config", c.config, "Metric constants (JSON)");
    sub->add_option("--item", c.item, "Item id recorded in the report");
  }
}

int ScoreFr(const std::string& metric, const std::string& ref_path, const std::string& dist_path,
            const Common& c, const std::vector<std::string>& args) {
  const FrMetricInfo* info = nullptr;
  try {
    info = &FindFrMetric(metric);
  } catch (const Error&) {
    throw UsageError("unknown metric '" + metric + "'; available:" + AvailableIds());
  }
  CheckSaliencySpec(c.saliency);
  CheckDisparitySpec(c.disparity, "--disparity");
  if (!c.disparity_dist.empty()) CheckDisparitySpec(c.disparity_dist, "--disparity-dist");
  const FrMetricConfig cfg = c.config.empty() ? FrMetricConfig{} : FrConfigFromJson(ReadJsonFile(c.config));
  const ExecOptions exec{c.jobs};
  const StereoSequence ref = LoadSequence(ReadDescriptor(ref_path));
  const StereoSequence dist = LoadSequence(ReadDescriptor(dist_path));

  std::optional<std::vector<DisparityMap>> dref, ddist;
  auto ref_disparity = [&]() -> std::span<const DisparityMap> {
    if (!dref) dref = Disparity(c.disparity, ref, c, exec);
    return *dref;
  };
  auto dist_disparity = [&]() -> std::span<const DisparityMap> {
    if (!ddist) {
      const std::string spec = c.disparity_dist.empty() ? "estimate" : c.disparity_dist;
      ddist = Disparity(spec, dist, c, exec);
    }
    return *ddist;
  };
  const std::vector<SaliencyMap> sal = Saliency(c.saliency, ref, ref_disparity, exec);
  FrInputs in{ref, dist, sal};
  if (info->needs_ref_disparity) in.ref_disparity = ref_disparity();
  if (info->needs_dist_disparity) in.dist_disparity = dist_disparity();
  MetricReport report = info->score(in, cfg, exec);
  if (!c.item.empty()) report.item = c.item;
  WriteReportJson(report, c.out);
  WriteFrameCsv(report, SiblingCsv(c.out));
  WriteManifest(c.out, "score-fr", args,
                {{"inputs", {{"ref", ref_path}, {"dist", dist_path}}},
                 {"config", c.config.empty() ? json() : json(c.config)},
                 {"saliency", c.saliency},
                 {"disparity", {{"ref", c.disparity},
                                {"dist", c.disparity_dist.empty() ? "estimate" : c.disparity_dist}}},
                 {"outputs", {c.out, SiblingCsv(c.out)}}});
  return 0;
}

int ScoreNr(const std::string& metric, const std::string& dist_path,
            const std::string& saliency_right, const Common& c,
            const std::vector<std::string>& args) {
  const NrMetricInfo* info = nullptr;
  try {
    info = &FindNrMetric(metric);
  } catch (const Error&) {
    throw UsageError("unknown metric '" + metric + "'; available:" + AvailableIds());
  }
  CheckSaliencySpec(c.saliency);
  CheckDisparitySpec(c.disparity, "--disparity");
  if (!saliency_right.empty() && !DirSource(saliency_right)) {
    throw UsageError("--saliency-right must be dir:<path>");
  }
  const NrMetricConfig cfg = c.config.empty() ? NrMetricConfig{} : NrConfigFromJson(ReadJsonFile(c.config));
  const ExecOptions exec{c.jobs};
  const StereoSequence dist = LoadSequence(ReadDescriptor(dist_path));
  std::optional<std::vector<DisparityMap>> disp;
  auto disparity = [&]() -> std::span<const DisparityMap> {
    if (!disp) disp = Disparity(c.disparity, dist, c, exec);
    return *disp;
  };
  const std::vector<SaliencyMap> sal = Saliency(c.saliency, dist, disparity, exec);
  std::vector<SaliencyMap> sal_right;
  if (!saliency_right.empty()) sal_right = LoadExternalSaliency(*DirSource(saliency_right), dist);
  NrInputs in{dist, sal};
  in.saliency_right = sal_right;
  if (info->needs_disparity) in.disparity = disparity();
  MetricReport report = info->score(in, cfg, exec);
  if (!c.item.empty()) report.item = c.item;
  WriteReportJson(report, c.out);
  WriteFrameCsv(report, SiblingCsv(c.out));
  WriteManifest(c.out, "score-nr", args,
                {{"inputs", {{"dist", dist_path}}},
                 {"config", c.config.empty() ? json() : json(c.config)},
                 {"saliency", c.saliency},
                 {"saliency_right", saliency_right.empty() ? json() : json(saliency_right)},
                 {"disparity", c.disparity},
                 {"outputs", {c.out, SiblingCsv(c.out)}}});
  return 0;
}

int SaliencyCmd(const std::string& in_path, const Common& c, const std::vector<std::string>& args) {
  CheckDisparitySpec(c.disparity, "--disparity");
  const ExecOptions exec{c.jobs};
  const StereoSequence seq = LoadSequence(ReadDescriptor(in_path));
  const std::vector<DisparityMap> disp = Disparity(c.disparity, seq, c, exec);
  const std::vector<SaliencyMap> maps = BaselineVam(seq, disp, VamConfig{}, exec);
  std::vector<Plane> planes;
  for (const SaliencyMap& m : maps) planes.push_back(m.values);
  SaveMapSeries(planes, c.out);
  WriteManifest(c.out, "saliency", args,
                {{"inputs", {{"in", in_path}}}, {"disparity", c.disparity}, {"outputs", {c.out}}});
  return 0;
}

int DisparityCmd(const std::string& in_path, const Common& c,
                 const std::vector<std::string>& args) {
  const ExecOptions exec{c.jobs};
  const StereoSequence seq = LoadSequence(ReadDescriptor(in_path));
  const std::vector<DisparityMap> disp = EstimateDisparitySeries(seq, DisparityCfg(c), exec);
  std::vector<Plane> planes;
  for (const DisparityMap& d : disp) planes.push_back(DisparityToUnitMap(d, c.disparity_range));
  SaveMapSeries(planes, c.out);
  WriteManifest(c.out, "disparity", args,
                {{"inputs", {{"in", in_path}}},
                 {"disparity", {{"block", c.disparity_block}, {"range", c.disparity_range}}},
                 {"outputs", {c.out}}});
  return 0;
}

int DistortCmd(const std::string& in_path, const std::string& spec_path, const Common& c,
               const std::vector<std::string>& args) {
  const DistortionSpec spec = ReadDistortionSpec(spec_path);
  const SequenceDescriptor src = ReadDescriptor(in_path);
  StereoSequence seq = LoadSequence(src);
  const StereoSequence out = ApplyDistortion(seq, spec, ExecOptions{c.jobs});
  const fs::path out_json = fs::absolute(c.out);
  SequenceDescriptor desc = src;
  const std::string stem = out_json.stem().string();
  desc.left = out_json.parent_path() / (stem + "_left.yuv");
  desc.right = out_json.parent_path() / (stem + "_right.yuv");
  desc.name = stem;
  SaveSequence(out, desc);
  WriteDescriptor(desc, out_json);
  WriteManifest(c.out, "distort", args,
                {{"inputs", {{"in", in_path}}},
                 {"config", spec_path},
                 {"spec", ToJson(spec)},
                 {"seed", spec.seed ? json(*spec.seed) : json()},
                 {"outputs", {c.out, desc.left.string(), desc.right.string()}}});
  return 0;
}

int EvaluateCmd(const std::string& scores_path, const std::vector<std::string>& objective,
                const std::string& distortion, bool logistic, const Common& c,
                const std::vector<std::string>& args, std::ostream& err) {
  const MosTable mos = ScreenAndMos(ReadSubjectiveCsv(scores_path));
  if (mos.degenerate) {
    err << "warning: every subject failed screening; using unscreened MOS\n";
  }
  std::map<std::string, size_t> index;
  for (size_t i = 0; i < mos.entries.size(); ++i) index[mos.entries[i].item] = i;

  // (metric, saliency_mode) groups in first-seen order.
  std::vector<std::pair<std::string, std::string>> keys;
  std::map<std::pair<std::string, std::string>, std::vector<MetricReport>> groups;
  for (const std::string& path : objective) {
    MetricReport r = ReadReportJson(path);
    if (r.item.empty()) throw Error(ErrorCode::kParam, "'" + path + "' has no item id");
    if (!index.count(r.item)) {
      throw Error(ErrorCode::kParam, "item '" + r.item + "' has no subjective scores");
    }
    const auto key = std::make_pair(r.metric, r.saliency_mode);
    if (!groups.count(key)) keys.push_back(key);
    groups[key].push_back(std::move(r));
  }
  std::vector<PerfReport> rows;
  for (const auto& key : keys) {
    std::vector<double> x, y, sd;
    for (const MetricReport& r : groups[key]) {
      const MosEntry& e = mos.entries[index[r.item]];
      x.push_back(r.pooled);
      y.push_back(e.mos);
      sd.push_back(e.std);
    }
    PerfReport p = EvaluatePerformance(x, y, sd, logistic);
    if (logistic && !p.fit_converged) {
      err << "warning: logistic fit for " << key.first
                << " did not converge; raw scores used\n";
    }
    p.metric = key.first;
    p.saliency_mode = key.second;
    p.distortion = distortion;
    rows.push_back(p);
  }
  const ReportFormat fmt = fs::path(c.out).extension() == ".json" ? ReportFormat::kJson : ReportFormat::kCsv;
  EmitReport(rows, c.out, fmt);
  WriteManifest(c.out, "evaluate", args,
                {{"inputs", {{"scores", scores_path}, {"objective", objective}}},
                 {"rejected_subjects", mos.rejected_subjects},
                 {"screened", mos.screened},
                 {"outputs", {c.out}}});
  return 0;
}

int InfoCmd(const std::string& in_path, std::ostream& out) {
  const SequenceDescriptor desc = ReadDescriptor(in_path);
  const StereoSequence seq = LoadSequence(desc);
  const SiTi st = ComputeSiTi(seq);
  out << "name: " << desc.name << "\n"
      << "width: " << desc.width << "\n"
      << "height: " << desc.height << "\n"
      << "frames: " << seq.size() << "\n"
      << "fps: " << FormatFixed(desc.fps, 3) << "\n"
      << "format: " << PixelFormatName(desc.format) << "\n"
      << "si: " << FormatFixed(st.si, 4) << "\n"
      << "ti: " << FormatFixed(st.ti, 4) << (st.ti_defined ? "" : " (single frame)") << "\n";
  return 0;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Saliency-weighted stereoscopic video quality toolkit", "salvq"};
  app.require_subcommand(1);
  app.set_version_flag("--version", SALVQ_VERSION);

  Common c;
  std::string metric, ref, dist, in, spec, scores, distortion = "all", saliency_right;
  std::vector<std::string> objective;
  bool logistic = false;

  CLI::App* fr = app.add_subcommand("score-fr", "Full-reference scoring");
  fr->add_option("--metric", metric, "Metric id")->required();
  fr->add_option("--ref", ref, "Reference descriptor")->required();
  fr->add_option("--dist", dist, "Distorted descriptor")->required();
  fr->add_option("--disparity-dist", c.disparity_dist, "estimate | dir:<path> for the distorted pair");
  fr->add_option("--out", c.out, "Report path (JSON)")->required();
  AddCommon(fr, c, true);

  CLI::App* nr = app.add_subcommand("score-nr", "No-reference scoring");
  nr->add_option("--metric", metric, "Metric id")->required();
  nr->add_option("--dist", dist, "Distorted descriptor")->required();
  nr->add_option("--saliency-right", saliency_right, "dir:<path> right-view maps (nospdm_s)");
  nr->add_option("--out", c.out, "Report path (JSON)")->required();
  AddCommon(nr, c, true);

  CLI::App* sal = app.add_subcommand("saliency", "Baseline saliency maps");
  sal->add_option("--in", in, "Sequence descriptor")->required();
  sal->add_option("--disparity", c.disparity, "estimate | dir:<path>");
  sal->add_option("--out", c.out, "Output directory")->required();
  AddCommon(sal, c, false);

  CLI::App* disp = app.add_subcommand("disparity", "Block-matching disparity maps");
  disp->add_option("--in", in, "Sequence descriptor")->required();
  disp->add_option("--out", c.out, "Output directory")->required();
  AddCommon(disp, c, false);

  CLI::App* dis = app.add_subcommand("distort", "Apply a synthetic distortion");
  dis->add_option("--in", in, "Sequence descriptor")->required();
  dis->add_option("--spec", spec, "Distortion spec (JSON)")->required();
  dis->add_option("--out", c.out, "Output descriptor")->required();
  dis->add_option("--jobs", c.jobs, "Worker threads");

  CLI::App* ev = app.add_subcommand("evaluate", "Performance statistics against subjective scores");
  ev->add_option("--scores", scores, "CSV item_id,subject_id,score")->required();
  ev->add_option("--objective", objective, "Metric report(s)")->required()->expected(1, -1);
  ev->add_option("--distortion", distortion, "Distortion label for the rows");
  ev->add_flag("--logistic", logistic, "Map objective scores through a fitted logistic");
  ev->add_option("--out", c.out, "perf.csv or perf.json")->required();

  CLI::App* info = app.add_subcommand("info", "Print sequence dimensions and SI/TI");
  info->add_option("--in", in, "Sequence descriptor")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (fr->parsed()) return ScoreFr(metric, ref, dist, c, args);
    if (nr->parsed()) return ScoreNr(metric, dist, saliency_right, c, args);
    if (sal->parsed()) return SaliencyCmd(in, c, args);
    if (disp->parsed()) return DisparityCmd(in, c, args);
    if (dis->parsed()) return DistortCmd(in, spec, c, args);
    if (ev->parsed()) return EvaluateCmd(scores, objective, distortion, logistic, c, args, err);
    if (info->parsed()) return InfoCmd(in, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace salvq::cli
