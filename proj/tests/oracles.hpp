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

// Brute-force oracles for the test suites. Everything here is written
// independently of the library's implementation paths: containment is
// re-derived from explicit rotations, Hausdorff from the O(n*m) double
// loop, IoU from Monte-Carlo volume estimation, gradients from central
// finite differences.

#ifndef STORMBENCH_TESTS_ORACLES_HPP_
#define STORMBENCH_TESTS_ORACLES_HPP_

#include <Eigen/Geometry>
#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <vector>

#include "stormbench/lgcm.hpp"
#include "stormbench/rng.hpp"
#include "stormbench/types.hpp"

namespace oracles {

using stormbench::OrientedBox3D;
using stormbench::PointCloud;
using stormbench::Rng;
using stormbench::Vec3;

// Containment via an explicit inverse rotation matrix (not the library's
// inline trigonometry).
inline bool point_in_box_oracle(const Vec3& p, const OrientedBox3D& box) {
  Eigen::Matrix3d rot;
  rot = Eigen::AngleAxisd(-box.yaw, Vec3::UnitZ());
  const Vec3 local = rot * (p - box.center);
  return std::abs(local.x()) <= box.l / 2.0 &&
         std::abs(local.y()) <= box.w / 2.0 &&
         std::abs(local.z()) <= box.h / 2.0;
}

// Monte-Carlo 3D IoU: sample uniformly inside box a, estimate the overlap
// fraction, convert to volumes.
inline double mc_iou_oracle(const OrientedBox3D& a, const OrientedBox3D& b,
                            int samples, std::uint64_t seed) {
  Rng rng(seed);
  Eigen::Matrix3d rot_a;
  rot_a = Eigen::AngleAxisd(a.yaw, Vec3::UnitZ());
  long hits = 0;
  for (int i = 0; i < samples; ++i) {
    const Vec3 local{rng.uniform(-a.l / 2.0, a.l / 2.0),
                     rng.uniform(-a.w / 2.0, a.w / 2.0),
                     rng.uniform(-a.h / 2.0, a.h / 2.0)};
    const Vec3 world = rot_a * local + a.center;
    if (point_in_box_oracle(world, b)) ++hits;
  }
  const double inter =
      a.volume() * static_cast<double>(hits) / static_cast<double>(samples);
  const double uni = a.volume() + b.volume() - inter;
  return inter / uni;
}

// O(n*m) symmetric Hausdorff.
inline double brute_hausdorff(const PointCloud& a, const PointCloud& b) {
  auto directed = [](const PointCloud& from, const PointCloud& to) {
    double worst = 0.0;
    for (Eigen::Index i = 0; i < from.size(); ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (Eigen::Index j = 0; j < to.size(); ++j) {
        best = std::min(best, (from.xyz.row(i) - to.xyz.row(j)).squaredNorm());
      }
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::sqrt(std::max(directed(a, b), directed(b, a)));
}

// Linear-scan ball query: all hits sorted by (distance, index), capped at k.
inline std::vector<Eigen::Index> brute_ball_query(
    const Vec3& key, const stormbench::PointMatrix& points, double radius,
    int k) {
  std::vector<std::pair<double, Eigen::Index>> hits;
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    const double d = (points.row(i).transpose() - key).norm();
    if (d <= radius) hits.emplace_back(d, i);
  }
  std::sort(hits.begin(), hits.end());
  std::vector<Eigen::Index> out;
  for (const auto& [d, i] : hits) {
    if (static_cast<int>(out.size()) == k) break;
    out.push_back(i);
  }
  return out;
}

// Central finite differences of the alignment loss with respect to the
// primary features; returns the max relative error against the analytic
// gradient.
inline double gradient_check(const std::vector<Eigen::VectorXd>& aux,
                             const std::vector<Eigen::VectorXd>& primary,
                             double step = 1e-6) {
  const stormbench::AlignmentResult base = stormbench::alignment_loss(aux, primary);
  double max_rel = 0.0;
  for (std::size_t i = 0; i < primary.size(); ++i) {
    for (Eigen::Index j = 0; j < primary[i].size(); ++j) {
      auto perturbed = primary;
      perturbed[i][j] += step;
      const double up = stormbench::alignment_loss(aux, perturbed).loss;
      perturbed[i][j] -= 2.0 * step;
      const double down = stormbench::alignment_loss(aux, perturbed).loss;
      const double fd = (up - down) / (2.0 * step);
      const double analytic = base.grad_primary[i][j];
      const double rel =
          std::abs(fd - analytic) / std::max(1e-12, std::abs(analytic));
      max_rel = std::max(max_rel, rel);
    }
  }
  return max_rel;
}

// Test data helpers.

inline PointCloud random_cloud(Eigen::Index n, Rng& rng, double extent = 2.0) {
  PointCloud cloud;
  cloud.xyz.resize(n, 3);
  cloud.intensity.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (int c = 0; c < 3; ++c) cloud.xyz(i, c) = rng.uniform(-extent, extent);
    cloud.intensity[i] = rng.uniform();
  }
  return cloud;
}

// Order-sensitive digest of a cloud's exact bit patterns, for golden runs.
inline std::uint64_t cloud_checksum(const PointCloud& cloud) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  auto mix_double = [&h](double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof(bits));
    for (int b = 0; b < 8; ++b) {
      h ^= (bits >> (8 * b)) & 0xFF;
      h *= 0x100000001B3ULL;
    }
  };
  for (Eigen::Index i = 0; i < cloud.size(); ++i) {
    mix_double(cloud.xyz(i, 0));
    mix_double(cloud.xyz(i, 1));
    mix_double(cloud.xyz(i, 2));
    mix_double(cloud.intensity[i]);
  }
  return h;
}

inline bool clouds_identical(const PointCloud& a, const PointCloud& b) {
  return a.size() == b.size() && a.xyz == b.xyz && a.intensity == b.intensity;
}

inline OrientedBox3D random_box(Rng& rng) {
  return OrientedBox3D({rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0),
                        rng.uniform(-0.5, 0.5)},
                       rng.uniform(1.5, 5.0), rng.uniform(1.0, 3.0),
                       rng.uniform(1.0, 2.5), rng.uniform(-M_PI, M_PI));
}

}  // namespace oracles

#endif  // STORMBENCH_TESTS_ORACLES_HPP_
