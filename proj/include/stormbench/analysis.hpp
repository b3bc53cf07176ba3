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

#ifndef STORMBENCH_ANALYSIS_HPP_
#define STORMBENCH_ANALYSIS_HPP_

#include <optional>
#include <string>
#include <vector>

#include "stormbench/metrics.hpp"
#include "stormbench/sequence.hpp"

namespace stormbench {

/// One frame scored under both conditions, with the three failure-analysis
/// axes attached: target range, template shape corruption, and per-frame
/// target shape corruption (both corruption axes measured as the Hausdorff
/// distance between the clean and adverse ground-truth crops).
struct PairedFrameRecord {
  std::string sequence_id;  // the clean (source) sequence id
  int frame_index = 0;
  double clean_iou = 0.0;
  double adverse_iou = 0.0;
  double target_distance = 0.0;
  double template_hausdorff = 0.0;
  double target_hausdorff = 0.0;

  double deviation() const { return clean_iou - adverse_iou; }
};

enum class AnalysisAxis { Distance, TemplateCorruption, TargetCorruption };

std::string to_string(AnalysisAxis axis);

/// Strictly increasing edges; records land in half-open bins [e_k, e_{k+1}).
struct BinSpec {
  AnalysisAxis axis = AnalysisAxis::Distance;
  std::vector<double> edges;

  void validate() const;

  /// 0..50 m in 10 m steps.
  static BinSpec default_distance();
  /// 0..3.5 in 0.25 steps, for either corruption axis.
  static BinSpec default_corruption(AnalysisAxis axis);
};

struct PairingDrops {
  std::int64_t empty_clean_crop = 0;
  std::int64_t empty_adverse_crop = 0;
  std::int64_t empty_template_crop = 0;  // drops the whole sequence

  std::int64_t total() const {
    return empty_clean_crop + empty_adverse_crop + empty_template_crop;
  }
};

struct PairedRecords {
  std::vector<PairedFrameRecord> records;
  PairingDrops drops;
};

/// Joins a clean run and an adverse run frame by frame. Adverse sequences
/// are matched to clean ones by their pre-corruption id (the part before
/// the "__" the corruption grid appends). Ground-truth crops come from the
/// boxes, not the predictions, so the corruption axes are
/// tracker-independent. Throws Error("KeyMismatch") when the runs do not
/// cover the same (sequence, frame) keys.
PairedRecords extract_paired_records(
    const std::vector<TrackResult>& clean_results,
    const std::vector<TrackResult>& adverse_results,
    const std::vector<TrackingSequence>& clean_sequences,
    const std::vector<TrackingSequence>& adverse_sequences);

struct DeviationBin {
  double lo = 0.0, hi = 0.0;
  std::int64_t count = 0;
  std::optional<double> mean_deviation;  // absent for empty bins
};

struct BinnedDeviation {
  AnalysisAxis axis = AnalysisAxis::Distance;
  std::vector<DeviationBin> bins;
  std::int64_t out_of_range = 0;
};

/// Mean IoU deviation (clean minus adverse; positive = weather hurt) per
/// bin of the chosen axis. Empty bins stay empty rather than reading as
/// zero deviation.
BinnedDeviation binned_iou_deviation(const std::vector<PairedFrameRecord>& records,
                                     const BinSpec& bins);

/// Plot-ready CSV: axis,bin_lo,bin_hi,mean_deviation,count; empty bins get
/// a blank mean. Atomic write.
void emit_analysis_csv(const std::vector<BinnedDeviation>& outputs,
                       const std::string& path);

}  // namespace stormbench

#endif  // STORMBENCH_ANALYSIS_HPP_
