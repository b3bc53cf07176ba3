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

#include "stormbench/tracker.hpp"

#include <algorithm>
#include <cmath>

#include "stormbench/geometry.hpp"

namespace stormbench {

namespace {

Vec3 centroid_of(const PointCloud& cloud) {
  return cloud.xyz.colwise().mean().transpose();
}

// Points within the axis-aligned bounding box of `box`, expanded by
// `margin` on every axis.
PointCloud search_region(const PointCloud& frame, const OrientedBox3D& box,
                         double margin) {
  const auto corners = box.bev_corners();
  const double x_lo = corners.col(0).minCoeff() - margin;
  const double x_hi = corners.col(0).maxCoeff() + margin;
  const double y_lo = corners.col(1).minCoeff() - margin;
  const double y_hi = corners.col(1).maxCoeff() + margin;
  const double z_lo = box.center.z() - 0.5 * box.h - margin;
  const double z_hi = box.center.z() + 0.5 * box.h + margin;

  std::vector<Eigen::Index> hits;
  for (Eigen::Index i = 0; i < frame.size(); ++i) {
    const double x = frame.xyz(i, 0), y = frame.xyz(i, 1), z = frame.xyz(i, 2);
    if (x >= x_lo && x <= x_hi && y >= y_lo && y <= y_hi && z >= z_lo &&
        z <= z_hi)
      hits.push_back(i);
  }
  PointCloud out;
  out.frame_index = frame.frame_index;
  out.sensor_origin = frame.sensor_origin;
  out.xyz.resize(static_cast<Eigen::Index>(hits.size()), 3);
  out.intensity.resize(static_cast<Eigen::Index>(hits.size()));
  for (std::size_t k = 0; k < hits.size(); ++k) {
    out.xyz.row(static_cast<Eigen::Index>(k)) = frame.xyz.row(hits[k]);
    out.intensity[static_cast<Eigen::Index>(k)] = frame.intensity[hits[k]];
  }
  return out;
}

}  // namespace

void CentroidShiftTracker::init(const PointCloud& template_crop,
                                const OrientedBox3D&) {
  has_centroid_ = !template_crop.empty();
  last_centroid_ = has_centroid_ ? centroid_of(template_crop) : Vec3::Zero();
}

TrackStep CentroidShiftTracker::track(const PointCloud& search_cloud,
                                      const OrientedBox3D& previous) {
  const PointCloud in_box = crop_to_box(search_cloud, previous);
  if (in_box.empty() || !has_centroid_) return {previous, true};

  const Vec3 now = centroid_of(in_box);
  const Vec3 shift = now - last_centroid_;
  OrientedBox3D next = previous;
  next.center += shift;

  // Re-measure inside the moved box so the stored centroid matches the
  // state the next frame will be compared against.
  const PointCloud settled = crop_to_box(search_cloud, next);
  last_centroid_ = settled.empty() ? now : centroid_of(settled);
  return {next, false};
}

std::vector<TrackResult> run_reference_tracker(
    Tracker& tracker, const std::vector<TrackingSequence>& sequences,
    const ReferenceTrackerOptions& options) {
  std::vector<TrackResult> results;
  results.reserve(sequences.size());

  for (const auto& seq : sequences) {
    seq.validate();
    if (!seq.frames.front().gt_box)
      throw Error("InvalidSequence",
                  "sequence '" + seq.sequence_id +
                      "' has no template ground truth");
    const OrientedBox3D template_box = *seq.frames.front().gt_box;
    tracker.init(crop_to_box(seq.frames.front().cloud, template_box),
                 template_box);

    TrackResult result;
    result.sequence_id = seq.sequence_id;
    OrientedBox3D previous = template_box;
    for (std::size_t f = 1; f < seq.frames.size(); ++f) {
      const PointCloud search =
          search_region(seq.frames[f].cloud, previous, options.search_margin);
      TrackStep step;
      if (search.empty()) {
        step = {previous, true};
      } else {
        step = tracker.track(search, previous);
      }
      if (step.fallback) ++result.fallback_count;
      result.boxes.push_back(step.box);
      previous = step.box;
    }
    results.push_back(std::move(result));
  }
  return results;
}

}  // namespace stormbench
