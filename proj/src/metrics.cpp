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

#include "stormbench/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "stormbench/geometry.hpp"

namespace stormbench {

namespace {

constexpr double kPrecisionHorizon = 2.0;  // meters of center-error credit

double mean(const std::vector<double>& values) {
  return std::accumulate(values.begin(), values.end(), 0.0) /
         static_cast<double>(values.size());
}

}  // namespace

EvalScore one_pass_evaluate(const std::vector<TrackResult>& results,
                            const std::vector<TrackingSequence>& ground_truth) {
  std::map<std::string, const TrackingSequence*> by_id;
  for (const auto& seq : ground_truth) by_id[seq.sequence_id] = &seq;

  double overlap_sum = 0.0;
  double precision_sum = 0.0;
  std::int64_t frames = 0;
  for (const auto& result : results) {
    const auto it = by_id.find(result.sequence_id);
    if (it == by_id.end())
      throw Error("SequenceMismatch",
                  "no ground truth for sequence '" + result.sequence_id + "'");
    const TrackingSequence& gt = *it->second;
    if (result.boxes.size() + 1 != gt.frames.size())
      throw Error("LengthMismatch",
                  "sequence '" + result.sequence_id + "': " +
                      std::to_string(result.boxes.size()) +
                      " predictions for " + std::to_string(gt.frames.size()) +
                      " frames");
    for (std::size_t i = 0; i < result.boxes.size(); ++i) {
      const auto& gt_box = gt.frames[i + 1].gt_box;
      if (!gt_box)
        throw Error("SequenceMismatch",
                    "unlabeled frame in '" + result.sequence_id + "'");
      overlap_sum += iou_3d(result.boxes[i], *gt_box);
      const double err = (result.boxes[i].center - gt_box->center).norm();
      precision_sum += std::max(0.0, 1.0 - err / kPrecisionHorizon);
      ++frames;
    }
  }

  EvalScore score;
  score.frames = frames;
  if (frames > 0) {
    score.success = 100.0 * overlap_sum / static_cast<double>(frames);
    score.precision = 100.0 * precision_sum / static_cast<double>(frames);
  }
  return score;
}

double retained_fraction(double clean_value,
                         const std::vector<double>& level_values) {
  if (!(clean_value > 0.0))
    throw Error("NonPositiveClean", "clean value must be positive");
  if (level_values.empty())
    throw Error("InsufficientValues", "need at least one level value");
  return mean(level_values) / clean_value;
}

double degradation_rate(double clean_value,
                        const std::vector<double>& level_values) {
  return 1.0 - retained_fraction(clean_value, level_values);
}

double range_stat(const std::vector<double>& values) {
  if (values.empty())
    throw Error("InsufficientValues", "range needs at least one value");
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return *hi - *lo;
}

double std_dev(const std::vector<double>& values) {
  if (values.size() < 2)
    throw Error("InsufficientValues",
                "standard deviation needs at least two values");
  const double mu = mean(values);
  double acc = 0.0;
  for (const double v : values) acc += (v - mu) * (v - mu);
  return std::sqrt(acc / static_cast<double>(values.size() - 1));
}

MetricReport build_report(const std::string& condition,
                          const std::map<int, EvalScore>& level_scores,
                          const EvalScore& clean) {
  if (level_scores.empty())
    throw Error("InsufficientValues", "build_report needs level scores");

  MetricReport report;
  report.condition = condition;
  report.clean = clean;
  report.levels = level_scores;

  std::vector<double> successes, precisions;
  for (const auto& [level, score] : level_scores) {
    successes.push_back(score.success);
    precisions.push_back(score.precision);
  }

  report.retained_success = retained_fraction(clean.success, successes);
  report.retained_precision = retained_fraction(clean.precision, precisions);
  report.dr_success = 1.0 - report.retained_success;
  report.dr_precision = 1.0 - report.retained_precision;
  report.range_success = range_stat(successes);
  report.range_precision = range_stat(precisions);
  if (successes.size() >= 2) {
    report.sd_success = std_dev(successes);
    report.sd_precision = std_dev(precisions);
    report.sd_defined = true;
  }
  return report;
}

}  // namespace stormbench
