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

#ifndef STORMBENCH_GEOMETRY_HPP_
#define STORMBENCH_GEOMETRY_HPP_

#include <vector>

#include "stormbench/types.hpp"

namespace stormbench {

struct ContainmentResult {
  Eigen::Index count = 0;
  std::vector<bool> mask;  // aligned with input point order
};

/// Boundary-inclusive oriented-box containment: a point is inside iff its
/// box-frame coordinates satisfy |x'| <= l/2, |y'| <= w/2, |z'| <= h/2.
/// The <= convention makes the "< 10 points of target" dataset filter
/// reproducible.
ContainmentResult points_in_box(const PointCloud& cloud,
                                const OrientedBox3D& box);

/// Convenience test for a single point, same boundary rule.
bool point_in_box(const Vec3& p, const OrientedBox3D& box);

/// New cloud holding only the points inside `box` (input order preserved).
PointCloud crop_to_box(const PointCloud& cloud, const OrientedBox3D& box);

/// Area of the intersection of the two boxes' bird's-eye-view rectangles,
/// by convex polygon clipping. Degenerate (edge/corner) contact yields 0.
double bev_intersection_area(const OrientedBox3D& a, const OrientedBox3D& b);

/// 3D IoU: (BEV polygon intersection area x vertical interval overlap)
/// divided by the union volume. Symmetric; always in [0, 1].
double iou_3d(const OrientedBox3D& a, const OrientedBox3D& b);

/// Bird's-eye-view IoU of the two yaw-rotated rectangles, for comparison
/// against the 3D convention (see iou_3d).
double iou_bev(const OrientedBox3D& a, const OrientedBox3D& b);

/// Symmetric Hausdorff distance over xyz (intensity ignored):
///   max( max_a min_b ||p-q||, max_b min_a ||p-q|| ).
/// Backed by a k-d tree; the value matches the O(n*m) brute force within
/// double-precision exactness. Throws Error("EmptyCloud") on empty input.
double hausdorff_distance(const PointCloud& a, const PointCloud& b);

/// Ground-plane (xy) range from `origin` to the box center; the vertical
/// offset is deliberately excluded so distance bins are sensor-height
/// independent.
double target_distance(const OrientedBox3D& box,
                       const Vec3& origin = Vec3::Zero());

/// Applies a z-rotation plus translation to a cloud (upright transforms keep
/// yaw-parameterized boxes closed under the same motion).
PointCloud transformed(const PointCloud& cloud, double rot_z,
                       const Vec3& translation);
OrientedBox3D transformed(const OrientedBox3D& box, double rot_z,
                          const Vec3& translation);

}  // namespace stormbench

#endif  // STORMBENCH_GEOMETRY_HPP_
