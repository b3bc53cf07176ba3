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

#include "stormbench/synthetic.hpp"

#include <cmath>
#include <vector>

#include "stormbench/geometry.hpp"
#include "stormbench/rng.hpp"

namespace stormbench {

namespace {

constexpr std::uint64_t kTargetStream = 0x746172676574ULL;
constexpr std::uint64_t kFrameStream = 0x6672616D65ULL;

// Uniform sample on the surface of an axis-aligned cuboid centered at the
// origin, faces weighted by area.
Vec3 sample_box_surface(Rng& rng, double l, double w, double h) {
  const double area_lw = l * w, area_lh = l * h, area_wh = w * h;
  const double total = 2.0 * (area_lw + area_lh + area_wh);
  double pick = rng.uniform(0.0, total);
  const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
  const double u = rng.uniform(), v = rng.uniform();
  if (pick < 2.0 * area_lw) {  // top/bottom
    return {(u - 0.5) * l, (v - 0.5) * w, sign * 0.5 * h};
  }
  pick -= 2.0 * area_lw;
  if (pick < 2.0 * area_lh) {  // sides along l
    return {(u - 0.5) * l, sign * 0.5 * w, (v - 0.5) * h};
  }
  return {sign * 0.5 * l, (u - 0.5) * w, (v - 0.5) * h};  // ends
}

struct Trajectory {
  std::vector<Vec3> centers;
  std::vector<double> yaws;
};

Trajectory make_trajectory(const SceneSpec& spec) {
  Trajectory t;
  Vec3 center = spec.start;
  Vec3 step = spec.velocity;
  for (int i = 0; i < spec.n_frames; ++i) {
    t.centers.push_back(center);
    double yaw = spec.yaw;
    if (spec.yaw_follows_heading && step.head<2>().norm() > 0.0)
      yaw = std::atan2(step.y(), step.x());
    t.yaws.push_back(normalize_yaw(yaw));
    if (spec.turn_rate != 0.0) {
      const double c = std::cos(spec.turn_rate), s = std::sin(spec.turn_rate);
      step = Vec3{c * step.x() - s * step.y(), s * step.x() + c * step.y(),
                  step.z()};
      center += step;
    } else {
      // Direct evaluation keeps integer-valued velocities exact.
      center = spec.start + static_cast<double>(i + 1) * spec.velocity;
    }
  }
  return t;
}

}  // namespace

void SceneSpec::validate() const {
  if (n_frames < 2)
    throw Error("InvalidConfig", "scene needs at least 2 frames");
  if (!(target_l > 0.0 && target_w > 0.0 && target_h > 0.0))
    throw Error("InvalidConfig", "target extents must be positive");
  if (target_points < 1)
    throw Error("InvalidConfig", "target_points must be >= 1");
  if (ground_rings < 0 || points_per_ring < 0 || clutter_points < 0)
    throw Error("InvalidConfig", "counts must be non-negative");
  if (ground_rings > 0 && !(ground_far > ground_near && ground_near > 0.0))
    throw Error("InvalidConfig", "ground ring radii must satisfy 0 < near < far");
}

SceneSpec SceneSpec::from_config(const ConfigFile& cfg) {
  SceneSpec s;
  s.id = cfg.get("scene.id").value_or(s.id);
  if (const auto cat = cfg.get("scene.category"))
    s.category = category_from_string(*cat);
  s.n_frames = static_cast<int>(cfg.get_int("scene.n_frames", s.n_frames));
  s.start = {cfg.get_double("scene.start_x", s.start.x()),
             cfg.get_double("scene.start_y", s.start.y()),
             cfg.get_double("scene.start_z", s.start.z())};
  s.velocity = {cfg.get_double("scene.velocity_x", s.velocity.x()),
                cfg.get_double("scene.velocity_y", s.velocity.y()),
                cfg.get_double("scene.velocity_z", s.velocity.z())};
  s.turn_rate = cfg.get_double("scene.turn_rate", s.turn_rate);
  s.yaw_follows_heading =
      cfg.get_bool("scene.yaw_follows_heading", s.yaw_follows_heading);
  s.yaw = cfg.get_double("scene.yaw", s.yaw);
  s.target_l = cfg.get_double("scene.target_l", s.target_l);
  s.target_w = cfg.get_double("scene.target_w", s.target_w);
  s.target_h = cfg.get_double("scene.target_h", s.target_h);
  s.target_points =
      static_cast<int>(cfg.get_int("scene.target_points", s.target_points));
  s.ground_rings =
      static_cast<int>(cfg.get_int("scene.ground_rings", s.ground_rings));
  s.points_per_ring =
      static_cast<int>(cfg.get_int("scene.points_per_ring", s.points_per_ring));
  s.sensor_height = cfg.get_double("scene.sensor_height", s.sensor_height);
  s.ground_near = cfg.get_double("scene.ground_near", s.ground_near);
  s.ground_far = cfg.get_double("scene.ground_far", s.ground_far);
  s.clutter_points =
      static_cast<int>(cfg.get_int("scene.clutter_points", s.clutter_points));
  s.clutter_range = cfg.get_double("scene.clutter_range", s.clutter_range);
  s.validate();
  return s;
}

TrackingSequence generate_synthetic_scene(const SceneSpec& spec,
                                          std::uint64_t seed) {
  spec.validate();

  // Rigid target pattern: local surface offsets + per-point intensity are
  // drawn once and transformed into each frame. (A LiDAR would resample,
  // but a stable pattern gives exact-by-construction motion for the harness.)
  Rng target_rng(derive_seed(seed, kTargetStream));
  std::vector<Vec3> local(static_cast<std::size_t>(spec.target_points));
  std::vector<double> target_intensity(local.size());
  for (auto& p : local)
    p = sample_box_surface(target_rng, spec.target_l, spec.target_w,
                           spec.target_h);
  for (auto& v : target_intensity) v = target_rng.uniform(0.3, 0.9);

  const Trajectory traj = make_trajectory(spec);

  TrackingSequence seq;
  seq.sequence_id = spec.id;
  seq.category = spec.category;
  seq.condition_tags.insert("weather:clean");

  for (int f = 0; f < spec.n_frames; ++f) {
    Rng rng(derive_seed(derive_seed(seed, kFrameStream),
                        static_cast<std::uint64_t>(f)));
    const Vec3 center = traj.centers[static_cast<std::size_t>(f)];
    const double yaw = traj.yaws[static_cast<std::size_t>(f)];
    const OrientedBox3D gt(center, spec.target_l, spec.target_w, spec.target_h,
                           yaw);

    std::vector<Vec3> pts;
    std::vector<double> intensity;
    const double c = std::cos(yaw), s = std::sin(yaw);
    for (std::size_t i = 0; i < local.size(); ++i) {
      const Vec3& q = local[i];
      pts.push_back({c * q.x() - s * q.y() + center.x(),
                     s * q.x() + c * q.y() + center.y(), q.z() + center.z()});
      intensity.push_back(target_intensity[i]);
    }

    for (int ring = 0; ring < spec.ground_rings; ++ring) {
      const double radius =
          spec.ground_near + (spec.ground_far - spec.ground_near) *
                                 static_cast<double>(ring) /
                                 std::max(1, spec.ground_rings - 1);
      for (int j = 0; j < spec.points_per_ring; ++j) {
        const double az = 2.0 * M_PI *
                              (static_cast<double>(j) +
                               rng.uniform(-0.3, 0.3)) /
                              static_cast<double>(spec.points_per_ring);
        pts.push_back({radius * std::cos(az), radius * std::sin(az),
                       -spec.sensor_height});
        intensity.push_back(rng.uniform(0.05, 0.4));
      }
    }

    for (int j = 0; j < spec.clutter_points; ++j) {
      Vec3 p;
      do {
        const double r = spec.clutter_range * std::sqrt(rng.uniform());
        const double az = rng.uniform(0.0, 2.0 * M_PI);
        p = {r * std::cos(az), r * std::sin(az),
             rng.uniform(-spec.sensor_height + 0.05, -spec.sensor_height + 3.0)};
      } while (point_in_box(p, gt));
      pts.push_back(p);
      intensity.push_back(rng.uniform(0.1, 0.8));
    }

    Frame frame;
    frame.cloud.frame_index = f;
    frame.cloud.xyz.resize(static_cast<Eigen::Index>(pts.size()), 3);
    frame.cloud.intensity.resize(static_cast<Eigen::Index>(pts.size()));
    for (std::size_t i = 0; i < pts.size(); ++i) {
      frame.cloud.xyz.row(static_cast<Eigen::Index>(i)) = pts[i].transpose();
      frame.cloud.intensity[static_cast<Eigen::Index>(i)] = intensity[i];
    }
    frame.gt_box = gt;
    frame.timestamp = 0.1 * static_cast<double>(f);
    seq.frames.push_back(std::move(frame));
  }
  return seq;
}

}  // namespace stormbench
