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

#include "stormbench/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "stormbench/kdtree.hpp"

namespace stormbench {

namespace {

// Signed area of a 2D polygon (shoelace); positive for CCW winding.
double polygon_signed_area(const std::vector<Vec2>& poly) {
  const std::size_t n = poly.size();
  if (n < 3) return 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& p = poly[i];
    const Vec2& q = poly[(i + 1) % n];
    acc += p.x() * q.y() - q.x() * p.y();
  }
  return 0.5 * acc;
}

// Sutherland-Hodgman clip of a convex subject polygon against the half-plane
// on the left of the directed edge a->b.
std::vector<Vec2> clip_against_edge(const std::vector<Vec2>& subject,
                                    const Vec2& a, const Vec2& b) {
  std::vector<Vec2> out;
  out.reserve(subject.size() + 1);
  const Vec2 edge = b - a;
  auto side = [&](const Vec2& p) {
    return edge.x() * (p.y() - a.y()) - edge.y() * (p.x() - a.x());
  };
  const std::size_t n = subject.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& cur = subject[i];
    const Vec2& nxt = subject[(i + 1) % n];
    const double sc = side(cur);
    const double sn = side(nxt);
    if (sc >= 0.0) out.push_back(cur);
    if ((sc > 0.0 && sn < 0.0) || (sc < 0.0 && sn > 0.0)) {
      const double t = sc / (sc - sn);
      out.push_back(cur + t * (nxt - cur));
    }
  }
  return out;
}

std::vector<Vec2> box_bev_polygon(const OrientedBox3D& box) {
  const auto corners = box.bev_corners();
  std::vector<Vec2> poly(4);
  for (int i = 0; i < 4; ++i) poly[i] = corners.row(i).transpose();
  return poly;
}

double vertical_overlap(const OrientedBox3D& a, const OrientedBox3D& b) {
  const double lo = std::max(a.center.z() - 0.5 * a.h, b.center.z() - 0.5 * b.h);
  const double hi = std::min(a.center.z() + 0.5 * a.h, b.center.z() + 0.5 * b.h);
  return std::max(0.0, hi - lo);
}

// Directed Hausdorff: max over rows of `from` of the nearest distance into
// the tree built over `to`. Returns the squared value.
double directed_hausdorff_sq(const PointMatrix& from, const KdTree3& to) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < from.rows(); ++i) {
    worst = std::max(worst, to.nearest(from.row(i).transpose()).sq_dist);
  }
  return worst;
}

}  // namespace

ContainmentResult points_in_box(const PointCloud& cloud,
                                const OrientedBox3D& box) {
  box.validate();
  ContainmentResult result;
  result.mask.resize(static_cast<std::size_t>(cloud.size()), false);
  const double c = std::cos(box.yaw), s = std::sin(box.yaw);
  const double hl = 0.5 * box.l, hw = 0.5 * box.w, hh = 0.5 * box.h;
  for (Eigen::Index i = 0; i < cloud.size(); ++i) {
    const double dx = cloud.xyz(i, 0) - box.center.x();
    const double dy = cloud.xyz(i, 1) - box.center.y();
    const double dz = cloud.xyz(i, 2) - box.center.z();
    const double bx = c * dx + s * dy;
    const double by = -s * dx + c * dy;
    if (std::abs(bx) <= hl && std::abs(by) <= hw && std::abs(dz) <= hh) {
      result.mask[static_cast<std::size_t>(i)] = true;
      ++result.count;
    }
  }
  return result;
}

bool point_in_box(const Vec3& p, const OrientedBox3D& box) {
  const Vec3 q = box.to_box_frame(p);
  return std::abs(q.x()) <= 0.5 * box.l && std::abs(q.y()) <= 0.5 * box.w &&
         std::abs(q.z()) <= 0.5 * box.h;
}

PointCloud crop_to_box(const PointCloud& cloud, const OrientedBox3D& box) {
  const ContainmentResult in = points_in_box(cloud, box);
  PointCloud out;
  out.frame_index = cloud.frame_index;
  out.sensor_origin = cloud.sensor_origin;
  out.xyz.resize(in.count, 3);
  out.intensity.resize(in.count);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < cloud.size(); ++i) {
    if (in.mask[static_cast<std::size_t>(i)]) {
      out.xyz.row(k) = cloud.xyz.row(i);
      out.intensity[k] = cloud.intensity[i];
      ++k;
    }
  }
  return out;
}

// Clipping a by b and b by a agree only up to round-off, so callers order
// the arguments canonically to make the overlap exactly symmetric.
bool box_less(const OrientedBox3D& a, const OrientedBox3D& b) {
  const auto key = [](const OrientedBox3D& box) {
    return std::array<double, 7>{box.center.x(), box.center.y(), box.center.z(),
                                 box.l,          box.w,          box.h,
                                 box.yaw};
  };
  return key(a) < key(b);
}

double bev_intersection_area(const OrientedBox3D& a, const OrientedBox3D& b) {
  const OrientedBox3D& first = box_less(b, a) ? b : a;
  const OrientedBox3D& second = box_less(b, a) ? a : b;
  std::vector<Vec2> poly = box_bev_polygon(first);
  const std::vector<Vec2> clip = box_bev_polygon(second);
  for (std::size_t i = 0; i < clip.size() && !poly.empty(); ++i) {
    poly = clip_against_edge(poly, clip[i], clip[(i + 1) % clip.size()]);
  }
  // Both inputs are CCW, so the clipped polygon is CCW; tiny negative areas
  // from degenerate contact are flushed to zero rather than epsilon-inflated.
  return std::max(0.0, polygon_signed_area(poly));
}

double iou_3d(const OrientedBox3D& a, const OrientedBox3D& b) {
  a.validate();
  b.validate();
  const double inter =
      bev_intersection_area(a, b) * vertical_overlap(a, b);
  if (inter <= 0.0) return 0.0;
  const double uni = a.volume() + b.volume() - inter;
  return std::clamp(inter / uni, 0.0, 1.0);
}

double iou_bev(const OrientedBox3D& a, const OrientedBox3D& b) {
  a.validate();
  b.validate();
  const double inter = bev_intersection_area(a, b);
  if (inter <= 0.0) return 0.0;
  const double uni = a.l * a.w + b.l * b.w - inter;
  return std::clamp(inter / uni, 0.0, 1.0);
}

double hausdorff_distance(const PointCloud& a, const PointCloud& b) {
  if (a.empty() || b.empty())
    throw Error("EmptyCloud", "hausdorff_distance requires non-empty clouds");
  const KdTree3 tree_a(a.xyz);
  const KdTree3 tree_b(b.xyz);
  const double sq = std::max(directed_hausdorff_sq(a.xyz, tree_b),
                             directed_hausdorff_sq(b.xyz, tree_a));
  return std::sqrt(sq);
}

double target_distance(const OrientedBox3D& box, const Vec3& origin) {
  return (box.center.head<2>() - origin.head<2>()).norm();
}

PointCloud transformed(const PointCloud& cloud, double rot_z,
                       const Vec3& translation) {
  PointCloud out = cloud;
  const double c = std::cos(rot_z), s = std::sin(rot_z);
  for (Eigen::Index i = 0; i < cloud.size(); ++i) {
    const double x = cloud.xyz(i, 0), y = cloud.xyz(i, 1);
    out.xyz(i, 0) = c * x - s * y + translation.x();
    out.xyz(i, 1) = s * x + c * y + translation.y();
    out.xyz(i, 2) = cloud.xyz(i, 2) + translation.z();
  }
  const Vec3 o = cloud.sensor_origin;
  out.sensor_origin = {c * o.x() - s * o.y() + translation.x(),
                       s * o.x() + c * o.y() + translation.y(),
                       o.z() + translation.z()};
  return out;
}

OrientedBox3D transformed(const OrientedBox3D& box, double rot_z,
                          const Vec3& translation) {
  const double c = std::cos(rot_z), s = std::sin(rot_z);
  OrientedBox3D out = box;
  out.center = {c * box.center.x() - s * box.center.y() + translation.x(),
                s * box.center.x() + c * box.center.y() + translation.y(),
                box.center.z() + translation.z()};
  out.yaw = normalize_yaw(box.yaw + rot_z);
  return out;
}

}  // namespace stormbench
