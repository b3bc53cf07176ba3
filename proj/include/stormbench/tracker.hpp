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

#ifndef STORMBENCH_TRACKER_HPP_
#define STORMBENCH_TRACKER_HPP_

#include <memory>
#include <string>
#include <vector>

#include "stormbench/metrics.hpp"
#include "stormbench/sequence.hpp"

namespace stormbench {

struct TrackStep {
  OrientedBox3D box;
  bool fallback = false;  // tracker had nothing to work with
};

/// Behavioural contract for anything the harness can score: initialized
/// once with the template crop and box, then asked for a box per frame
/// given the search cloud and the previous state. Implementations must be
/// deterministic.
class Tracker {
 public:
  virtual ~Tracker() = default;
  virtual std::string name() const = 0;
  virtual void init(const PointCloud& template_crop,
                    const OrientedBox3D& template_box) = 0;
  virtual TrackStep track(const PointCloud& search_cloud,
                          const OrientedBox3D& previous) = 0;
};

/// Repeats the previous box. The do-nothing baseline.
class ConstantPositionTracker : public Tracker {
 public:
  std::string name() const override { return "constant-position"; }
  void init(const PointCloud&, const OrientedBox3D&) override {}
  TrackStep track(const PointCloud&, const OrientedBox3D& previous) override {
    return {previous, false};
  }
};

/// Translates the previous box by the shift of the centroid of the points
/// inside it. Falls back to constant position when the box is empty.
class CentroidShiftTracker : public Tracker {
 public:
  std::string name() const override { return "centroid-shift"; }
  void init(const PointCloud& template_crop,
            const OrientedBox3D& template_box) override;
  TrackStep track(const PointCloud& search_cloud,
                  const OrientedBox3D& previous) override;

 private:
  Vec3 last_centroid_ = Vec3::Zero();
  bool has_centroid_ = false;
};

struct ReferenceTrackerOptions {
  double search_margin = 2.0;  // axis-aligned expansion of the previous box
};

/// Runs a tracker over every sequence: template taken from frame 0's
/// ground-truth crop, search region = points within the axis-aligned
/// expansion of the previous predicted box. Deterministic; empty search
/// regions fall back to the previous box and are counted.
std::vector<TrackResult> run_reference_tracker(
    Tracker& tracker, const std::vector<TrackingSequence>& sequences,
    const ReferenceTrackerOptions& options = {});

}  // namespace stormbench

#endif  // STORMBENCH_TRACKER_HPP_
