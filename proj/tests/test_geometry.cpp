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

#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "stormbench/geometry.hpp"
#include "stormbench/rng.hpp"

using namespace stormbench;

namespace {

PointCloud single_point(double x, double y, double z) {
  PointCloud c = PointCloud::zeros(1);
  c.xyz << x, y, z;
  return c;
}

}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("points_in_box counts the box center") {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const OrientedBox3D box = oracles::random_box(rng);
    const PointCloud cloud = single_point(box.center.x(), box.center.y(),
                                          box.center.z());
    CHECK(points_in_box(cloud, box).count == 1);
  }
}

TEST_CASE("points_in_box boundary is inclusive") {
  const OrientedBox3D cube(Vec3::Zero(), 1.0, 1.0, 1.0, 0.0);
  CHECK(points_in_box(single_point(0.5, 0.5, 0.5), cube).count == 1);
  CHECK(points_in_box(single_point(0.5 + 1e-9, 0.5, 0.5), cube).count == 0);
}

TEST_CASE("points_in_box matches a per-point rotation oracle") {
  Rng rng(11);
  const OrientedBox3D box({0.0, 0.0, 0.0}, 2.0, 1.0, 1.0, M_PI / 4.0);
  const PointCloud cloud = oracles::random_cloud(1000, rng, 2.0);

  const auto result = points_in_box(cloud, box);
  Eigen::Index oracle_count = 0;
  for (Eigen::Index i = 0; i < cloud.size(); ++i) {
    const bool inside = oracles::point_in_box_oracle(cloud.point(i), box);
    if (inside) ++oracle_count;
    CHECK(result.mask[static_cast<std::size_t>(i)] == inside);
  }
  CHECK(result.count == oracle_count);
  CHECK(result.count > 0);  // fixture sanity: the box is not empty
}

TEST_CASE("points_in_box is invariant under a shared rigid transform") {
  Rng rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    const OrientedBox3D box = oracles::random_box(rng);
    const PointCloud cloud = oracles::random_cloud(300, rng, 4.0);
    const double rot = rng.uniform(-M_PI, M_PI);
    const Vec3 shift{rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0),
                     rng.uniform(-2.0, 2.0)};
    const auto before = points_in_box(cloud, box);
    const auto after =
        points_in_box(transformed(cloud, rot, shift), transformed(box, rot, shift));
    CHECK(before.count == after.count);
  }
}

TEST_CASE("empty cloud yields zero count") {
  PointCloud empty = PointCloud::zeros(0);
  const OrientedBox3D box(Vec3::Zero(), 1.0, 1.0, 1.0, 0.0);
  CHECK(points_in_box(empty, box).count == 0);
}

TEST_CASE("iou_3d identities") {
  const OrientedBox3D box({1.0, -2.0, 0.5}, 4.0, 2.0, 1.5, 0.3);
  CHECK(iou_3d(box, box) == doctest::Approx(1.0).epsilon(1e-12));

  // Disjoint BEV rectangles.
  const OrientedBox3D far_box({100.0, 0.0, 0.5}, 4.0, 2.0, 1.5, 0.3);
  CHECK(iou_3d(box, far_box) == 0.0);

  // Two axis-aligned unit cubes offset by 0.5 along x: IoU = 0.5 / 1.5.
  const OrientedBox3D a(Vec3::Zero(), 1.0, 1.0, 1.0, 0.0);
  const OrientedBox3D b({0.5, 0.0, 0.0}, 1.0, 1.0, 1.0, 0.0);
  CHECK(iou_3d(a, b) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("iou_3d yaw + pi occupies the same cuboid") {
  Rng rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    const OrientedBox3D box = oracles::random_box(rng);
    OrientedBox3D flipped = box;
    flipped.yaw = normalize_yaw(box.yaw + M_PI);
    CHECK(iou_3d(box, flipped) == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("iou_3d is symmetric and within [0,1]") {
  Rng rng(19);
  for (int trial = 0; trial < 50; ++trial) {
    const OrientedBox3D a = oracles::random_box(rng);
    const OrientedBox3D b = oracles::random_box(rng);
    const double ab = iou_3d(a, b);
    CHECK(ab == iou_3d(b, a));
    CHECK(ab >= 0.0);
    CHECK(ab <= 1.0);
  }
}

TEST_CASE("iou_3d matches the axis-aligned closed form at right-angle yaws") {
  Rng rng(23);
  const double yaws[] = {0.0, M_PI / 2.0, M_PI, -M_PI / 2.0};
  for (int trial = 0; trial < 40; ++trial) {
    OrientedBox3D a = oracles::random_box(rng);
    OrientedBox3D b = oracles::random_box(rng);
    a.yaw = yaws[trial % 4];
    b.yaw = yaws[(trial / 4) % 4];

    // Closed form: interval overlaps of the axis-aligned footprints.
    auto footprint = [](const OrientedBox3D& box, double& dx, double& dy) {
      const bool swapped = std::abs(std::abs(box.yaw) - M_PI / 2.0) < 1e-9;
      dx = swapped ? box.w : box.l;
      dy = swapped ? box.l : box.w;
    };
    double ax, ay, bx, by;
    footprint(a, ax, ay);
    footprint(b, bx, by);
    auto overlap = [](double ca, double la, double cb, double lb) {
      return std::max(0.0, std::min(ca + la / 2, cb + lb / 2) -
                               std::max(ca - la / 2, cb - lb / 2));
    };
    const double inter = overlap(a.center.x(), ax, b.center.x(), bx) *
                         overlap(a.center.y(), ay, b.center.y(), by) *
                         overlap(a.center.z(), a.h, b.center.z(), b.h);
    const double expected =
        inter <= 0.0 ? 0.0 : inter / (a.volume() + b.volume() - inter);
    CHECK(iou_3d(a, b) == doctest::Approx(expected).epsilon(1e-9));
  }
}

TEST_CASE("iou_3d of a rotated pair matches the Monte-Carlo oracle") {
  const OrientedBox3D a(Vec3::Zero(), 4.0, 2.0, 1.5, 0.0);
  const OrientedBox3D b(Vec3::Zero(), 4.0, 2.0, 1.5, M_PI / 6.0);
  const double mc = oracles::mc_iou_oracle(a, b, 1000000, 99);
  CHECK(std::abs(iou_3d(a, b) - mc) <= 0.003);
}

TEST_CASE("touching boxes have zero IoU without epsilon inflation") {
  const OrientedBox3D a(Vec3::Zero(), 2.0, 2.0, 2.0, 0.0);
  const OrientedBox3D edge({2.0, 0.0, 0.0}, 2.0, 2.0, 2.0, 0.0);
  CHECK(iou_3d(a, edge) == 0.0);
  const OrientedBox3D stacked({0.0, 0.0, 2.0}, 2.0, 2.0, 2.0, 0.0);
  CHECK(iou_3d(a, stacked) == 0.0);
}

TEST_CASE("iou_bev ignores the vertical axis") {
  const OrientedBox3D a(Vec3::Zero(), 2.0, 2.0, 1.0, 0.0);
  OrientedBox3D lifted = a;
  lifted.center.z() = 10.0;
  CHECK(iou_bev(a, lifted) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(iou_3d(a, lifted) == 0.0);
}

TEST_CASE("hausdorff_distance basics") {
  const PointCloud p = single_point(0.0, 0.0, 0.0);
  const PointCloud q = single_point(3.0, 4.0, 0.0);
  CHECK(hausdorff_distance(p, q) == doctest::Approx(5.0).epsilon(1e-15));

  Rng rng(29);
  const PointCloud cloud = oracles::random_cloud(200, rng);
  CHECK(hausdorff_distance(cloud, cloud) == 0.0);

  CHECK_THROWS_WITH_AS(hausdorff_distance(PointCloud::zeros(0), q),
                       doctest::Contains("EmptyCloud"), Error);
}

TEST_CASE("hausdorff_distance equals the brute force on random clouds") {
  Rng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const PointCloud a = oracles::random_cloud(500, rng, 5.0);
    const PointCloud b = oracles::random_cloud(500, rng, 5.0);
    const double fast = hausdorff_distance(a, b);
    const double slow = oracles::brute_hausdorff(a, b);
    CHECK(std::abs(fast - slow) <= 1e-12);
  }
}

TEST_CASE("hausdorff_distance properties: symmetry and triangle inequality") {
  Rng rng(37);
  for (int trial = 0; trial < 10; ++trial) {
    const PointCloud a = oracles::random_cloud(60, rng);
    const PointCloud b = oracles::random_cloud(50, rng);
    const PointCloud c = oracles::random_cloud(70, rng);
    const double ab = hausdorff_distance(a, b);
    const double ba = hausdorff_distance(b, a);
    const double bc = hausdorff_distance(b, c);
    const double ac = hausdorff_distance(a, c);
    CHECK(ab == ba);
    CHECK(ac <= ab + bc + 1e-12);
  }
}

TEST_CASE("hausdorff_distance zero implies equal point sets") {
  Rng rng(41);
  const PointCloud a = oracles::random_cloud(50, rng);
  PointCloud shuffled = a;
  // Reverse the order; the set is unchanged.
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    shuffled.xyz.row(i) = a.xyz.row(a.size() - 1 - i);
    shuffled.intensity[i] = a.intensity[a.size() - 1 - i];
  }
  CHECK(hausdorff_distance(a, shuffled) == 0.0);

  PointCloud moved = a;
  moved.xyz(0, 0) += 0.5;
  CHECK(hausdorff_distance(a, moved) > 0.0);
}

TEST_CASE("target_distance is the ground-plane range") {
  const OrientedBox3D at_origin(Vec3::Zero(), 1.0, 1.0, 1.0, 0.0);
  CHECK(target_distance(at_origin) == 0.0);

  const OrientedBox3D high({3.0, 4.0, 10.0}, 1.0, 1.0, 1.0, 0.0);
  CHECK(target_distance(high) == doctest::Approx(5.0).epsilon(1e-15));

  Rng rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    const OrientedBox3D box = oracles::random_box(rng);
    const double expected = std::sqrt(box.center.x() * box.center.x() +
                                      box.center.y() * box.center.y());
    CHECK(target_distance(box) == doctest::Approx(expected).epsilon(1e-14));
  }
}

TEST_CASE("box invariants are enforced") {
  CHECK_THROWS_WITH_AS(OrientedBox3D(Vec3::Zero(), -1.0, 1.0, 1.0, 0.0).validate(),
                       doctest::Contains("InvalidBox"), Error);
  CHECK(normalize_yaw(3.0 * M_PI) == doctest::Approx(M_PI));
  CHECK(normalize_yaw(-M_PI) == doctest::Approx(M_PI));
}

}  // TEST_SUITE
