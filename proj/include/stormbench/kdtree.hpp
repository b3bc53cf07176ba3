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

#ifndef STORMBENCH_KDTREE_HPP_
#define STORMBENCH_KDTREE_HPP_

#include <algorithm>
#include <limits>
#include <numeric>
#include <vector>

#include "stormbench/types.hpp"

namespace stormbench {

/// Static 3-d tree over the rows of a point matrix. Exact nearest-neighbour
/// queries only: squared distances are computed with the same arithmetic as
/// a brute-force scan, so query results agree with it bit for bit.
class KdTree3 {
 public:
  explicit KdTree3(const PointMatrix& points) : points_(points) {
    const Eigen::Index n = points_.rows();
    order_.resize(static_cast<std::size_t>(n));
    std::iota(order_.begin(), order_.end(), Eigen::Index{0});
    nodes_.reserve(static_cast<std::size_t>(n));
    root_ = n > 0 ? build(0, n) : -1;
  }

  struct Nearest {
    Eigen::Index index = -1;
    double sq_dist = std::numeric_limits<double>::infinity();
  };

  /// Nearest row to `q` by squared Euclidean distance.
  Nearest nearest(const Vec3& q) const {
    Nearest best;
    if (root_ >= 0) search(root_, q, best);
    return best;
  }

 private:
  struct Node {
    Eigen::Index point;  // row index into points_
    int axis;
    int left = -1;
    int right = -1;
  };

  int build(Eigen::Index lo, Eigen::Index hi) {
    Vec3 mn = Vec3::Constant(std::numeric_limits<double>::infinity());
    Vec3 mx = -mn;
    for (Eigen::Index i = lo; i < hi; ++i) {
      const Vec3 p = points_.row(order_[static_cast<std::size_t>(i)]).transpose();
      mn = mn.cwiseMin(p);
      mx = mx.cwiseMax(p);
    }
    int axis = 0;
    (mx - mn).maxCoeff(&axis);

    const Eigen::Index mid = lo + (hi - lo) / 2;
    auto first = order_.begin() + lo, middle = order_.begin() + mid,
         last = order_.begin() + hi;
    std::nth_element(first, middle, last, [&](Eigen::Index a, Eigen::Index b) {
      return points_(a, axis) < points_(b, axis);
    });

    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back({order_[static_cast<std::size_t>(mid)], axis});
    if (mid > lo) nodes_[static_cast<std::size_t>(id)].left = build(lo, mid);
    if (hi > mid + 1) nodes_[static_cast<std::size_t>(id)].right = build(mid + 1, hi);
    return id;
  }

  void search(int id, const Vec3& q, Nearest& best) const {
    const Node& node = nodes_[static_cast<std::size_t>(id)];
    const double sq = (points_.row(node.point).transpose() - q).squaredNorm();
    if (sq < best.sq_dist) best = {node.point, sq};

    const double delta = q[node.axis] - points_(node.point, node.axis);
    const int near = delta < 0.0 ? node.left : node.right;
    const int far = delta < 0.0 ? node.right : node.left;
    if (near >= 0) search(near, q, best);
    if (far >= 0 && delta * delta < best.sq_dist) search(far, q, best);
  }

  const PointMatrix points_;
  std::vector<Eigen::Index> order_;
  std::vector<Node> nodes_;
  int root_ = -1;
};

}  // namespace stormbench

#endif  // STORMBENCH_KDTREE_HPP_
