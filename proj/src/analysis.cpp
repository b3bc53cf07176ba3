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

#include "stormbench/analysis.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "stormbench/cloud_io.hpp"
#include "stormbench/geometry.hpp"

namespace stormbench {

std::string to_string(AnalysisAxis axis) {
  switch (axis) {
    case AnalysisAxis::Distance: return "distance";
    case AnalysisAxis::TemplateCorruption: return "template_corruption";
    default: return "target_corruption";
  }
}

void BinSpec::validate() const {
  if (edges.size() < 2)
    throw Error("InvalidConfig", "a bin spec needs at least two edges");
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (!(edges[i] > edges[i - 1]))
      throw Error("InvalidConfig", "bin edges must be strictly increasing");
  }
}

BinSpec BinSpec::default_distance() {
  BinSpec spec;
  spec.axis = AnalysisAxis::Distance;
  for (int e = 0; e <= 50; e += 10) spec.edges.push_back(e);
  return spec;
}

BinSpec BinSpec::default_corruption(AnalysisAxis axis) {
  BinSpec spec;
  spec.axis = axis;
  for (int i = 0; i <= 14; ++i) spec.edges.push_back(0.25 * i);
  return spec;
}

namespace {

std::string source_id_of(const std::string& id) {
  const auto pos = id.find("__");
  return pos == std::string::npos ? id : id.substr(0, pos);
}

const OrientedBox3D& gt_at(const TrackingSequence& seq, std::size_t frame,
                           const char* which) {
  if (!seq.frames[frame].gt_box)
    throw Error("KeyMismatch", std::string("unlabeled ") + which +
                                   " frame in '" + seq.sequence_id + "'");
  return *seq.frames[frame].gt_box;
}

}  // namespace

PairedRecords extract_paired_records(
    const std::vector<TrackResult>& clean_results,
    const std::vector<TrackResult>& adverse_results,
    const std::vector<TrackingSequence>& clean_sequences,
    const std::vector<TrackingSequence>& adverse_sequences) {
  std::map<std::string, const TrackingSequence*> clean_by_id;
  for (const auto& seq : clean_sequences) clean_by_id[seq.sequence_id] = &seq;
  std::map<std::string, const TrackingSequence*> adverse_by_source;
  for (const auto& seq : adverse_sequences)
    adverse_by_source[source_id_of(seq.sequence_id)] = &seq;
  std::map<std::string, const TrackResult*> clean_run;
  for (const auto& r : clean_results) clean_run[r.sequence_id] = &r;
  std::map<std::string, const TrackResult*> adverse_run;
  for (const auto& r : adverse_results)
    adverse_run[source_id_of(r.sequence_id)] = &r;

  if (clean_run.size() != adverse_run.size())
    throw Error("KeyMismatch", "clean and adverse runs cover " +
                                   std::to_string(clean_run.size()) + " vs " +
                                   std::to_string(adverse_run.size()) +
                                   " sequences");

  PairedRecords out;
  for (const auto& [id, clean_result] : clean_run) {
    const auto adverse_it = adverse_run.find(id);
    const auto clean_seq_it = clean_by_id.find(id);
    const auto adverse_seq_it = adverse_by_source.find(id);
    if (adverse_it == adverse_run.end() || clean_seq_it == clean_by_id.end() ||
        adverse_seq_it == adverse_by_source.end())
      throw Error("KeyMismatch", "no adverse counterpart for sequence '" + id + "'");

    const TrackingSequence& clean_seq = *clean_seq_it->second;
    const TrackingSequence& adverse_seq = *adverse_seq_it->second;
    const TrackResult& adverse_result = *adverse_it->second;
    if (clean_seq.frames.size() != adverse_seq.frames.size() ||
        clean_result->boxes.size() + 1 != clean_seq.frames.size() ||
        adverse_result.boxes.size() + 1 != adverse_seq.frames.size())
      throw Error("KeyMismatch",
                  "frame counts disagree for sequence '" + id + "'");

    // Template corruption is measured once per sequence on the first-frame
    // ground-truth crops.
    const OrientedBox3D& template_box = gt_at(clean_seq, 0, "clean");
    const PointCloud clean_template =
        crop_to_box(clean_seq.frames[0].cloud, template_box);
    const PointCloud adverse_template =
        crop_to_box(adverse_seq.frames[0].cloud, template_box);
    if (clean_template.empty() || adverse_template.empty()) {
      out.drops.empty_template_crop +=
          static_cast<std::int64_t>(clean_result->boxes.size());
      continue;
    }
    const double template_h =
        hausdorff_distance(clean_template, adverse_template);

    for (std::size_t f = 1; f < clean_seq.frames.size(); ++f) {
      const OrientedBox3D& gt = gt_at(clean_seq, f, "clean");
      const PointCloud clean_crop = crop_to_box(clean_seq.frames[f].cloud, gt);
      const PointCloud adverse_crop =
          crop_to_box(adverse_seq.frames[f].cloud, gt);
      if (clean_crop.empty()) {
        ++out.drops.empty_clean_crop;
        continue;
      }
      if (adverse_crop.empty()) {
        ++out.drops.empty_adverse_crop;
        continue;
      }

      PairedFrameRecord rec;
      rec.sequence_id = id;
      rec.frame_index = static_cast<int>(f);
      rec.clean_iou = iou_3d(clean_result->boxes[f - 1], gt);
      rec.adverse_iou = iou_3d(adverse_result.boxes[f - 1], gt);
      rec.target_distance =
          target_distance(gt, clean_seq.frames[f].cloud.sensor_origin);
      rec.template_hausdorff = template_h;
      rec.target_hausdorff = hausdorff_distance(clean_crop, adverse_crop);
      out.records.push_back(std::move(rec));
    }
  }
  return out;
}

BinnedDeviation binned_iou_deviation(const std::vector<PairedFrameRecord>& records,
                                     const BinSpec& bins) {
  bins.validate();
  if (records.empty())
    throw Error("InsufficientValues", "binned_iou_deviation needs records");

  BinnedDeviation out;
  out.axis = bins.axis;
  std::vector<double> sums(bins.edges.size() - 1, 0.0);
  std::vector<std::int64_t> counts(bins.edges.size() - 1, 0);

  for (const auto& rec : records) {
    double value = 0.0;
    switch (bins.axis) {
      case AnalysisAxis::Distance: value = rec.target_distance; break;
      case AnalysisAxis::TemplateCorruption:
        value = rec.template_hausdorff;
        break;
      case AnalysisAxis::TargetCorruption: value = rec.target_hausdorff; break;
    }
    // upper_bound - 1 gives the half-open bin [e_k, e_{k+1}).
    const auto it =
        std::upper_bound(bins.edges.begin(), bins.edges.end(), value);
    const std::ptrdiff_t k = it - bins.edges.begin() - 1;
    if (k < 0 || k >= static_cast<std::ptrdiff_t>(sums.size())) {
      ++out.out_of_range;
      continue;
    }
    sums[static_cast<std::size_t>(k)] += rec.deviation();
    ++counts[static_cast<std::size_t>(k)];
  }

  for (std::size_t k = 0; k + 1 < bins.edges.size(); ++k) {
    DeviationBin bin;
    bin.lo = bins.edges[k];
    bin.hi = bins.edges[k + 1];
    bin.count = counts[k];
    if (counts[k] > 0)
      bin.mean_deviation = sums[k] / static_cast<double>(counts[k]);
    out.bins.push_back(bin);
  }
  return out;
}

void emit_analysis_csv(const std::vector<BinnedDeviation>& outputs,
                       const std::string& path) {
  std::ostringstream csv;
  csv << "axis,bin_lo,bin_hi,mean_deviation,count\n";
  for (const auto& binned : outputs) {
    for (const auto& bin : binned.bins) {
      csv << to_string(binned.axis) << "," << bin.lo << "," << bin.hi << ",";
      if (bin.mean_deviation) csv << *bin.mean_deviation;
      csv << "," << bin.count << "\n";
    }
  }
  write_text_atomic(csv.str(), path);
}

}  // namespace stormbench
