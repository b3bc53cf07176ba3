// Copyright 2026 the StormBench authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "stormbench/analysis.hpp"
#include "stormbench/cloud_io.hpp"
#include "stormbench/dataset.hpp"
#include "stormbench/lgcm.hpp"
#include "stormbench/manifest.hpp"
#include "stormbench/metrics.hpp"
#include "stormbench/randomize.hpp"
#include "stormbench/report_io.hpp"
#include "stormbench/rng.hpp"
#include "stormbench/synthetic.hpp"
#include "stormbench/tracker.hpp"
#include "stormbench/weather.hpp"

namespace fs = std::filesystem;
using namespace stormbench;

namespace {

// Exit codes are a stable contract: 0 success, 1 usage, 2 data, 3 internal.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInternal = 3;

std::string with_thousands(std::int64_t value) {
  std::string digits = std::to_string(value);
  std::string out;
  int run = 0;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    if (run == 3) {
      out.push_back(',');
      run = 0;
    }
    out.push_back(*it);
    ++run;
  }
  return {out.rbegin(), out.rend()};
}

std::vector<double> parse_edges(const std::string& csv) {
  std::vector<double> edges;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) edges.push_back(std::stod(item));
  }
  return edges;
}

struct CorruptArgs {
  std::string in, out, kind = "all", level = "all", weather_config;
  std::uint64_t seed = 0;
};

int cmd_corrupt(const CorruptArgs& args) {
  GridOptions options;
  if (!args.weather_config.empty())
    options.table = SeverityTable::load(args.weather_config);
  if (args.kind != "all")
    options.kinds = {weather_kind_from_string(args.kind)};
  if (args.level != "all") {
    const int lv = std::stoi(args.level);
    if (lv < kMinSeverity || lv > kMaxSeverity)
      throw Error("InvalidConfig", "--level must be 1..5 or 'all'");
    options.levels = {lv};
  }

  const DatasetManifest input = read_manifest(args.in, /*verify=*/true);
  const auto sequences = load_all_sequences(input, fs::path(args.in).parent_path().string());

  GridSummary summary;
  build_corruption_grid(sequences, args.out, args.seed, options, &summary);

  std::cout << "input: " << with_thousands(static_cast<std::int64_t>(sequences.size()))
            << " sequences, " << with_thousands(summary.input_frames)
            << " frames\n";
  std::cout << with_thousands(summary.corrupted_frames)
            << " corrupted frames across "
            << with_thousands(summary.corrupted_sequences)
            << " corrupted sequences\n";
  for (const auto& [kind, frames] : summary.frames_per_kind) {
    std::cout << "  " << kind << ": " << with_thousands(frames) << " frames\n";
  }
  std::cout << "manifest: " << (fs::path(args.out) / "manifest.json").string()
            << "\n";
  return kExitOk;
}

struct FilterArgs {
  std::string in, out;
  int min_points = 10, min_len = 5;
};

int cmd_filter(const FilterArgs& args) {
  const DatasetManifest input = read_manifest(args.in, /*verify=*/true);
  const auto raw = load_all_sequences(input, fs::path(args.in).parent_path().string());

  FilterStats stats;
  const auto kept = filter_real_sequences(raw, args.min_points, args.min_len, &stats);

  const fs::path out_path(args.out);
  const std::string out_dir = out_path.parent_path().string();
  fs::create_directories(out_path.parent_path());
  DatasetManifest output;
  output.name = input.name + "/filtered";
  output.seed = input.seed;
  output.provenance = input.provenance;
  output.provenance["filter_min_points"] = std::to_string(args.min_points);
  output.provenance["filter_min_len"] = std::to_string(args.min_len);
  for (const auto& seq : kept) {
    output.sequences.push_back(
        write_sequence(seq, out_dir, "sequences/" + seq.sequence_id));
  }
  write_manifest(output, args.out);

  std::cout << "sequences in: " << stats.sequences_in
            << ", out: " << stats.sequences_out << "\n";
  std::cout << "frames dropped (<" << args.min_points
            << " target points): " << stats.frames_dropped << "\n";
  std::cout << "runs discarded (<" << args.min_len
            << " frames): " << stats.runs_discarded << "\n";
  return kExitOk;
}

struct AugmentArgs {
  std::string in, out, aug_config;
  std::uint64_t seed = 0;
};

int cmd_augment(const AugmentArgs& args) {
  RandomizationConfig config;
  if (!args.aug_config.empty())
    config = RandomizationConfig::from_config(ConfigFile::load(args.aug_config));
  config.seed = args.seed;

  const PointCloud cloud = read_cloud_bin(args.in);
  const RandomizedCloud result = randomize(cloud, config);
  write_cloud_bin(result.cloud, args.out);

  const AugmentationTrace& t = result.trace;
  if (t.passed_through) {
    std::cout << "pass-through (gate): output equals input, " << cloud.size()
              << " points\n";
  } else {
    std::cout << "noise: " << (t.noise_fired ? "+" + std::to_string(t.noise_added) : "off")
              << ", dropout: "
              << (t.dropout_fired ? "-" + std::to_string(t.dropped) : "off")
              << (t.dropout_clamped ? " (clamped)" : "") << ", jitter: "
              << (t.jitter_fired ? "on" : "off") << "\n";
    std::cout << cloud.size() << " -> " << result.cloud.size() << " points\n";
  }
  return kExitOk;
}

struct EvalArgs {
  std::string pred, gt, out, json_out;
};

// Splits "rain-3" into (rain, 3); returns false for "clean" or malformed
// values.
bool parse_weather_value(const std::string& value, std::string& kind, int& level) {
  const auto dash = value.find_last_of('-');
  if (dash == std::string::npos) return false;
  kind = value.substr(0, dash);
  try {
    level = std::stoi(value.substr(dash + 1));
  } catch (const std::exception&) {
    return false;
  }
  return level >= kMinSeverity && level <= kMaxSeverity;
}

int cmd_eval(const EvalArgs& args) {
  const DatasetManifest gt_manifest = read_manifest(args.gt, /*verify=*/true);
  const auto gt_sequences =
      load_all_sequences(gt_manifest, fs::path(args.gt).parent_path().string());
  const auto predictions = read_predictions_jsonl(args.pred);

  std::map<std::string, const TrackResult*> pred_by_id;
  for (const auto& p : predictions) pred_by_id[p.sequence_id] = &p;

  // Group ground truth by the weather condition tag; untagged sequences
  // count as clean.
  std::vector<TrackingSequence> clean_gt;
  std::map<std::string, std::map<int, std::vector<TrackingSequence>>> grouped;
  for (const auto& seq : gt_sequences) {
    const auto weather = seq.tag_value("weather");
    std::string kind;
    int level = 0;
    if (!weather || *weather == "clean" ||
        !parse_weather_value(*weather, kind, level)) {
      clean_gt.push_back(seq);
    } else {
      grouped[kind][level].push_back(seq);
    }
  }

  auto evaluate_group = [&](const std::vector<TrackingSequence>& gt) {
    std::vector<TrackResult> selected;
    for (const auto& seq : gt) {
      const auto it = pred_by_id.find(seq.sequence_id);
      if (it == pred_by_id.end())
        throw Error("SequenceMismatch",
                    "no predictions for sequence '" + seq.sequence_id + "'");
      selected.push_back(*it->second);
    }
    return one_pass_evaluate(selected, gt);
  };

  if (clean_gt.empty())
    throw Error("SequenceMismatch", "ground truth has no clean sequences");
  const EvalScore clean = evaluate_group(clean_gt);
  std::cout << "clean: success " << clean.success << ", precision "
            << clean.precision << " (" << clean.frames << " frames)\n";

  std::vector<MetricReport> reports;
  for (const auto& [kind, levels] : grouped) {
    std::map<int, EvalScore> level_scores;
    for (const auto& [level, gt] : levels) level_scores[level] = evaluate_group(gt);
    MetricReport report = build_report(kind, level_scores, clean);
    std::cout << kind << ": DR " << report.dr_success << "/"
              << report.dr_precision << ", R " << report.range_success << "/"
              << report.range_precision << ", S.d " << report.sd_success << "/"
              << report.sd_precision << "\n";
    reports.push_back(std::move(report));
  }

  if (reports.empty()) {
    // No corrupted conditions: still emit the clean row.
    std::ostringstream csv;
    csv << "condition,level,success,precision,dr_s,dr_p,range_s,range_p,sd_s,sd_p\n"
        << "clean,-," << clean.success << "," << clean.precision << ",,,,,,\n";
    write_text_atomic(csv.str(), args.out);
    if (!args.json_out.empty()) write_text_atomic("[]\n", args.json_out);
    std::cout << "no weather-tagged sequences; wrote clean-only report\n";
  } else {
    write_report(reports, args.out, args.json_out);
  }
  std::cout << "report: " << args.out << "\n";
  return kExitOk;
}

struct AnalyzeArgs {
  std::string clean_pred, adverse_pred, clean_gt, adverse_gt, out;
  std::string distance_bins, corruption_bins;
};

int cmd_analyze(const AnalyzeArgs& args) {
  const auto load = [](const std::string& manifest_path) {
    const DatasetManifest m = read_manifest(manifest_path, /*verify=*/true);
    return load_all_sequences(m, fs::path(manifest_path).parent_path().string());
  };
  const auto clean_seqs = load(args.clean_gt);
  const auto adverse_seqs = load(args.adverse_gt);
  const auto clean_results = read_predictions_jsonl(args.clean_pred);
  const auto adverse_results = read_predictions_jsonl(args.adverse_pred);

  const PairedRecords paired = extract_paired_records(
      clean_results, adverse_results, clean_seqs, adverse_seqs);

  BinSpec distance = BinSpec::default_distance();
  if (!args.distance_bins.empty()) distance.edges = parse_edges(args.distance_bins);
  BinSpec template_bins =
      BinSpec::default_corruption(AnalysisAxis::TemplateCorruption);
  BinSpec target_bins =
      BinSpec::default_corruption(AnalysisAxis::TargetCorruption);
  if (!args.corruption_bins.empty()) {
    template_bins.edges = parse_edges(args.corruption_bins);
    target_bins.edges = parse_edges(args.corruption_bins);
  }

  const std::vector<BinnedDeviation> outputs = {
      binned_iou_deviation(paired.records, distance),
      binned_iou_deviation(paired.records, template_bins),
      binned_iou_deviation(paired.records, target_bins)};
  emit_analysis_csv(outputs, args.out);

  std::cout << "paired records: " << paired.records.size() << ", dropped "
            << paired.drops.total() << " (empty crops)\n";
  for (const auto& binned : outputs) {
    std::cout << to_string(binned.axis) << ": " << binned.bins.size()
              << " bins, " << binned.out_of_range << " out of range\n";
  }
  std::cout << "analysis: " << args.out << "\n";
  return kExitOk;
}

struct LgcmCheckArgs {
  std::string scene_config;
  std::uint64_t seed = 0;
  std::string jitter_schedule = "0.2,0.1,0.05,0.01";
  int schedule_seeds = 10;
};

int cmd_lgcm_check(const LgcmCheckArgs& args) {
  SceneSpec spec;
  LgcmConfig lgcm;
  if (!args.scene_config.empty()) {
    const ConfigFile cfg = ConfigFile::load(args.scene_config);
    spec = SceneSpec::from_config(cfg);
    lgcm = LgcmConfig::from_config(cfg);
  }

  const TrackingSequence scene = generate_synthetic_scene(spec, args.seed);
  const PointCloud& frame = scene.frames.front().cloud;
  const FeatureCloud primary =
      toy_descriptor(frame, lgcm.ball.radius, lgcm.ball.k);

  // Identity sanity: a branch contrasted with itself aligns exactly.
  const LgcmResult self = lgcm_pipeline(primary, primary, lgcm);
  std::cout << "self-alignment loss: " << self.loss << " ("
            << self.diagnostics.keys_used << " keys)\n";

  RandomizationConfig aug;
  aug.gate_p = 0.0;  // always augment for the check
  aug.seed = derive_seed(args.seed, std::uint64_t{1});
  const RandomizedCloud randomized = randomize(frame, aug);
  const FeatureCloud aux =
      toy_descriptor(randomized.cloud, lgcm.ball.radius, lgcm.ball.k);
  const LgcmResult crossed = lgcm_pipeline(primary, aux, lgcm);
  std::cout << "randomized-copy loss: " << crossed.loss << " (keys used "
            << crossed.diagnostics.keys_used << ", skipped primary "
            << crossed.diagnostics.skipped_empty_primary << ", skipped aux "
            << crossed.diagnostics.skipped_empty_aux << ")\n";

  // Finite-difference audit of the analytic gradient.
  double max_rel_err = 0.0;
  Rng rng(derive_seed(args.seed, std::uint64_t{2}));
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 16, d = 32;
    std::vector<Eigen::VectorXd> a(n), p(n);
    for (int i = 0; i < n; ++i) {
      a[i] = Eigen::VectorXd::NullaryExpr(d, [&](Eigen::Index) { return rng.normal(); });
      p[i] = Eigen::VectorXd::NullaryExpr(d, [&](Eigen::Index) { return rng.normal(); });
    }
    const AlignmentResult base = alignment_loss(a, p);
    const double step = 1e-6;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < d; ++j) {
        auto perturbed = p;
        perturbed[static_cast<std::size_t>(i)][j] += step;
        const double up = alignment_loss(a, perturbed).loss;
        perturbed[static_cast<std::size_t>(i)][j] -= 2.0 * step;
        const double down = alignment_loss(a, perturbed).loss;
        const double fd = (up - down) / (2.0 * step);
        const double analytic = base.grad_primary[static_cast<std::size_t>(i)][j];
        const double rel = std::abs(fd - analytic) /
                           std::max(1e-12, std::abs(analytic));
        max_rel_err = std::max(max_rel_err, rel);
      }
    }
  }
  const bool grad_ok = max_rel_err <= 1e-5;
  std::cout << "gradient check " << (grad_ok ? "PASS" : "FAIL")
            << " (max rel err " << max_rel_err << ", tolerance 1e-5)\n";

  // Jitter schedule: mean loss should shrink as the copy converges on the
  // original.
  std::vector<double> schedule = parse_edges(args.jitter_schedule);
  std::cout << "jitter schedule (" << args.schedule_seeds << " seeds):\n";
  std::vector<double> means;
  for (const double jitter : schedule) {
    double total = 0.0;
    for (int s = 0; s < args.schedule_seeds; ++s) {
      RandomizationConfig c;
      c.gate_p = 0.0;
      c.branch_p = 1.0;
      c.jitter_a = jitter;
      c.seed = derive_seed(args.seed + static_cast<std::uint64_t>(s),
                           std::uint64_t{3});
      const RandomizedCloud copy = randomize(frame, c);
      const FeatureCloud aux_s =
          toy_descriptor(copy.cloud, lgcm.ball.radius, lgcm.ball.k);
      total += lgcm_pipeline(primary, aux_s, lgcm).loss;
    }
    means.push_back(total / args.schedule_seeds);
    std::cout << "  jitter_a=" << jitter << ": mean loss " << means.back()
              << "\n";
  }
  bool monotone = true;
  for (std::size_t i = 1; i < means.size(); ++i)
    monotone = monotone && means[i] < means[i - 1];
  std::cout << "schedule trend: " << (monotone ? "strictly decreasing" : "not monotone")
            << "\n";
  return grad_ok ? kExitOk : kExitData;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"StormBench: LiDAR tracking robustness toolkit"};
  app.require_subcommand(1);

  CorruptArgs corrupt_args;
  auto* corrupt = app.add_subcommand(
      "corrupt", "Apply the weather corruption grid to a dataset");
  corrupt->add_option("--in", corrupt_args.in, "Input manifest")->required();
  corrupt->add_option("--out", corrupt_args.out, "Output directory")->required();
  corrupt->add_option("--kind", corrupt_args.kind, "rain|fog|snow|all");
  corrupt->add_option("--level", corrupt_args.level, "1..5|all");
  corrupt->add_option("--seed", corrupt_args.seed, "Global seed");
  corrupt->add_option("--weather-config", corrupt_args.weather_config,
                      "Severity table override file");

  FilterArgs filter_args;
  auto* filter = app.add_subcommand(
      "filter", "Screen sequences by target point count and run length");
  filter->add_option("--in", filter_args.in, "Input manifest")->required();
  filter->add_option("--out", filter_args.out, "Output manifest path")->required();
  filter->add_option("--min-points", filter_args.min_points,
                     "Minimum target points per frame");
  filter->add_option("--min-len", filter_args.min_len,
                     "Minimum kept run length");

  AugmentArgs augment_args;
  auto* augment = app.add_subcommand(
      "augment", "Domain-randomize a single cloud file");
  augment->add_option("--in", augment_args.in, "Input cloud.bin")->required();
  augment->add_option("--out", augment_args.out, "Output cloud.bin")->required();
  augment->add_option("--aug-config", augment_args.aug_config,
                      "[randomization] config file");
  augment->add_option("--seed", augment_args.seed, "Seed");

  EvalArgs eval_args;
  auto* eval = app.add_subcommand(
      "eval", "Score predictions and emit the robustness report");
  eval->add_option("--pred", eval_args.pred, "Predictions JSONL")->required();
  eval->add_option("--gt", eval_args.gt, "Ground-truth manifest")->required();
  eval->add_option("--out", eval_args.out, "Report CSV path")->required();
  eval->add_option("--json", eval_args.json_out, "Report JSON mirror path");

  AnalyzeArgs analyze_args;
  auto* analyze = app.add_subcommand(
      "analyze", "Bin IoU deviation by distance and shape corruption");
  analyze->add_option("--clean-pred", analyze_args.clean_pred)->required();
  analyze->add_option("--adverse-pred", analyze_args.adverse_pred)->required();
  analyze->add_option("--clean-gt", analyze_args.clean_gt)->required();
  analyze->add_option("--adverse-gt", analyze_args.adverse_gt)->required();
  analyze->add_option("--out", analyze_args.out, "Analysis CSV path")->required();
  analyze->add_option("--distance-bins", analyze_args.distance_bins,
                      "Comma-separated edges (default 0..50 step 10)");
  analyze->add_option("--corruption-bins", analyze_args.corruption_bins,
                      "Comma-separated edges (default 0..3.5 step 0.25)");

  LgcmCheckArgs lgcm_args;
  auto* lgcm_check = app.add_subcommand(
      "lgcm-check", "Exercise the contrastive-alignment path on a synthetic scene");
  lgcm_check->add_option("--scene", lgcm_args.scene_config,
                         "[scene]/[lgcm] config file");
  lgcm_check->add_option("--seed", lgcm_args.seed, "Seed");
  lgcm_check->add_option("--jitter-schedule", lgcm_args.jitter_schedule,
                         "Comma-separated jitter_a values");
  lgcm_check->add_option("--schedule-seeds", lgcm_args.schedule_seeds,
                         "Seeds per schedule entry");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (corrupt->parsed()) return cmd_corrupt(corrupt_args);
    if (filter->parsed()) return cmd_filter(filter_args);
    if (augment->parsed()) return cmd_augment(augment_args);
    if (eval->parsed()) return cmd_eval(eval_args);
    if (analyze->parsed()) return cmd_analyze(analyze_args);
    if (lgcm_check->parsed()) return cmd_lgcm_check(lgcm_args);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
