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

#ifndef STORMBENCH_TYPES_HPP_
#define STORMBENCH_TYPES_HPP_

#include <Eigen/Core>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace stormbench {

using Vec3 = Eigen::Vector3d;
using Vec2 = Eigen::Vector2d;

/// N x 3 row-per-point coordinate block. All metric-bearing geometry is
/// double precision; the on-disk cloud format is float32 (see cloud_io.hpp).
using PointMatrix = Eigen::Matrix<double, Eigen::Dynamic, 3>;

/// Error with a stable machine-readable code ("EmptyCloud", "SchemaMismatch",
/// ...) next to the human-readable message. Tests and the CLI dispatch on
/// code(), never on the message text.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

/// One LiDAR sweep: per-point xyz in meters (sensor frame, z up) plus a
/// reflectance value in [0,1]. Point order is significant only for I/O
/// round-tripping; no geometric result may depend on it.
struct PointCloud {
  PointMatrix xyz;               // N x 3
  Eigen::VectorXd intensity;     // N
  int frame_index = 0;
  Vec3 sensor_origin = Vec3::Zero();

  Eigen::Index size() const noexcept { return xyz.rows(); }
  bool empty() const noexcept { return xyz.rows() == 0; }

  Vec3 point(Eigen::Index i) const { return xyz.row(i).transpose(); }

  static PointCloud zeros(Eigen::Index n) {
    PointCloud c;
    c.xyz = PointMatrix::Zero(n, 3);
    c.intensity = Eigen::VectorXd::Zero(n);
    return c;
  }

  /// Enforces the type invariants: matching row counts, finite coordinates,
  /// intensity in [0,1]. Throws Error("InvalidCloud", ...).
  void validate() const {
    if (intensity.size() != xyz.rows())
      throw Error("InvalidCloud", "intensity size " +
                                      std::to_string(intensity.size()) +
                                      " != point count " +
                                      std::to_string(xyz.rows()));
    if (!xyz.allFinite() || !sensor_origin.allFinite())
      throw Error("InvalidCloud", "non-finite coordinate");
    for (Eigen::Index i = 0; i < intensity.size(); ++i) {
      const double v = intensity[i];
      if (!(v >= 0.0 && v <= 1.0))
        throw Error("InvalidCloud",
                    "intensity out of [0,1] at row " + std::to_string(i));
    }
  }
};

/// Normalizes an angle to (-pi, pi].
inline double normalize_yaw(double yaw) {
  constexpr double kTwoPi = 2.0 * M_PI;
  double y = std::fmod(yaw, kTwoPi);
  if (y <= -M_PI) y += kTwoPi;
  if (y > M_PI) y -= kTwoPi;
  return y;
}

/// Upright oriented box: center (m), extents l/w/h (m), yaw about z in
/// (-pi, pi]. l runs along the box x axis at yaw 0, w along y, h along z.
struct OrientedBox3D {
  Vec3 center = Vec3::Zero();
  double l = 1.0, w = 1.0, h = 1.0;
  double yaw = 0.0;

  OrientedBox3D() = default;
  OrientedBox3D(const Vec3& center_, double l_, double w_, double h_,
                double yaw_)
      : center(center_), l(l_), w(w_), h(h_), yaw(normalize_yaw(yaw_)) {}

  double volume() const noexcept { return l * w * h; }

  void validate() const {
    if (!(l > 0.0 && w > 0.0 && h > 0.0))
      throw Error("InvalidBox", "extents must be positive");
    if (!center.allFinite() || !std::isfinite(yaw))
      throw Error("InvalidBox", "non-finite box parameter");
    if (!(yaw > -M_PI - 1e-12 && yaw <= M_PI + 1e-12))
      throw Error("InvalidBox", "yaw not normalized to (-pi, pi]");
  }

  /// World -> box frame (translate by -center, rotate by -yaw).
  Vec3 to_box_frame(const Vec3& p) const {
    const double c = std::cos(yaw), s = std::sin(yaw);
    const Vec3 d = p - center;
    return {c * d.x() + s * d.y(), -s * d.x() + c * d.y(), d.z()};
  }

  /// Box frame -> world.
  Vec3 to_world_frame(const Vec3& p) const {
    const double c = std::cos(yaw), s = std::sin(yaw);
    return {c * p.x() - s * p.y() + center.x(),
            s * p.x() + c * p.y() + center.y(), p.z() + center.z()};
  }

  /// The four bird's-eye-view corners, counter-clockwise.
  Eigen::Matrix<double, 4, 2> bev_corners() const {
    const double c = std::cos(yaw), s = std::sin(yaw);
    const double hl = 0.5 * l, hw = 0.5 * w;
    Eigen::Matrix<double, 4, 2> local;
    local << hl, hw, -hl, hw, -hl, -hw, hl, -hw;
    Eigen::Matrix<double, 4, 2> out;
    for (int i = 0; i < 4; ++i) {
      out(i, 0) = c * local(i, 0) - s * local(i, 1) + center.x();
      out(i, 1) = s * local(i, 0) + c * local(i, 1) + center.y();
    }
    return out;
  }
};

}  // namespace stormbench

#endif  // STORMBENCH_TYPES_HPP_
