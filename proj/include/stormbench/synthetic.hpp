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

#ifndef STORMBENCH_SYNTHETIC_HPP_
#define STORMBENCH_SYNTHETIC_HPP_

#include <cstdint>
#include <string>

#include "stormbench/config.hpp"
#include "stormbench/sequence.hpp"

namespace stormbench {

/// Desk-scale LiDAR scene: a rigid cuboid target moving along a linear or
/// arc trajectory over a ring-structured ground sweep, plus optional
/// clutter. Ground-truth boxes are exact by construction.
struct SceneSpec {
  std::string id = "synthetic-scene";
  Category category = Category::Car;
  int n_frames = 20;

  Vec3 start{8.0, 0.0, -1.05};   // first-frame target center
  Vec3 velocity{0.2, 0.0, 0.0};  // meters per frame
  double turn_rate = 0.0;        // radians per frame; != 0 bends the path
  bool yaw_follows_heading = false;
  double yaw = 0.0;              // fixed target yaw when not following

  double target_l = 4.0, target_w = 2.0, target_h = 1.5;
  int target_points = 200;  // rigid surface sample, drawn once per scene

  int ground_rings = 8;     // 0 disables the ground sweep
  int points_per_ring = 120;
  double sensor_height = 1.8;      // ground plane at z = -sensor_height
  double ground_near = 3.0;        // innermost ring radius
  double ground_far = 40.0;        // outermost ring radius

  int clutter_points = 0;          // per frame, resampled each frame
  double clutter_range = 30.0;

  void validate() const;

  /// Reads the [scene] section (keys named after the fields).
  static SceneSpec from_config(const ConfigFile& cfg);
};

/// Deterministic under (spec, seed). The target's surface sample pattern is
/// rigid across frames; ground and clutter are resampled per frame.
TrackingSequence generate_synthetic_scene(const SceneSpec& spec,
                                          std::uint64_t seed);

}  // namespace stormbench

#endif  // STORMBENCH_SYNTHETIC_HPP_
