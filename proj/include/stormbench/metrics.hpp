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

#ifndef STORMBENCH_METRICS_HPP_
#define STORMBENCH_METRICS_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "stormbench/sequence.hpp"
#include "stormbench/types.hpp"

namespace stormbench {

/// One tracker run over one sequence: a predicted box per tracked frame
/// (everything after the template frame).
struct TrackResult {
  std::string sequence_id;
  std::vector<OrientedBox3D> boxes;  // size == frame_count - 1
  int fallback_count = 0;            // empty-search-region fallbacks
};

struct EvalScore {
  double success = 0.0;    // percentage in [0, 100]
  double precision = 0.0;  // percentage in [0, 100]
  std::int64_t frames = 0;
};

/// One-pass evaluation, frames pooled across sequences.
///
/// Success is the AUC of the fraction-of-frames-with-overlap>tau curve over
/// tau in [0,1], which reduces exactly to 100 x mean IoU. Precision is the
/// AUC of the center-error curve over tau in [0,2 m], which reduces exactly
/// to 100 x mean(max(0, 1 - e/2)).
/// Throws Error("SequenceMismatch") / Error("LengthMismatch").
EvalScore one_pass_evaluate(const std::vector<TrackResult>& results,
                            const std::vector<TrackingSequence>& ground_truth);

/// The table convention for Eq.-style degradation: 1 - mean(levels)/clean.
/// Positive means degradation. Throws Error("NonPositiveClean").
double degradation_rate(double clean_value,
                        const std::vector<double>& level_values);

/// Raw retained-performance ratio mean(levels)/clean.
double retained_fraction(double clean_value,
                         const std::vector<double>& level_values);

/// max - min. Throws Error("InsufficientValues") on an empty input.
double range_stat(const std::vector<double>& values);

/// Sample standard deviation (n-1 divisor). Throws
/// Error("InsufficientValues") when fewer than two values are given.
double std_dev(const std::vector<double>& values);

/// One benchmark-table row: per-level scores plus the DR / R / S.d
/// aggregates for both metrics.
struct MetricReport {
  std::string condition;  // e.g. "rain"
  EvalScore clean;
  std::map<int, EvalScore> levels;  // keyed by severity level
  double dr_success = 0.0, dr_precision = 0.0;
  double retained_success = 0.0, retained_precision = 0.0;
  double range_success = 0.0, range_precision = 0.0;
  double sd_success = 0.0, sd_precision = 0.0;
  bool sd_defined = false;  // false when only one level is present
};

/// Assembles the row from per-level evaluations plus the clean run.
MetricReport build_report(const std::string& condition,
                          const std::map<int, EvalScore>& level_scores,
                          const EvalScore& clean);

}  // namespace stormbench

#endif  // STORMBENCH_METRICS_HPP_
