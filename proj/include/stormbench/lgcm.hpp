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

#ifndef STORMBENCH_LGCM_HPP_
#define STORMBENCH_LGCM_HPP_

#include <cstdint>
#include <vector>

#include "stormbench/config.hpp"
#include "stormbench/types.hpp"

namespace stormbench {

/// A (down-sampled) point set with one feature row per point.
struct FeatureCloud {
  PointMatrix points;      // M x 3
  Eigen::MatrixXd features;  // M x D

  Eigen::Index size() const noexcept { return points.rows(); }
  Eigen::Index width() const noexcept { return features.cols(); }

  void validate() const {
    if (points.rows() != features.rows())
      throw Error("InvalidFeatureCloud", "points/features row mismatch");
    if (points.rows() < 1)
      throw Error("InvalidFeatureCloud", "feature cloud must be non-empty");
    if (!points.allFinite() || !features.allFinite())
      throw Error("InvalidFeatureCloud", "non-finite entry");
  }
};

/// Shared key-point parameters: ball radius and neighbour cap.
struct KeyPointParams {
  double radius = 0.3;  // m
  int k = 16;

  void validate() const {
    if (!(radius > 0.0)) throw Error("InvalidConfig", "radius must be > 0");
    if (k < 1) throw Error("InvalidConfig", "k must be >= 1");
  }
};

/// Greedy farthest-point sampling. The first pick is the point nearest the
/// centroid; each next pick maximizes the min distance to the selected set.
/// All ties break toward the lowest index. Returns indices in selection
/// order. Throws Error("SampleSizeExceedsCloud") when m > |cloud|.
std::vector<Eigen::Index> farthest_point_sample(const PointMatrix& points,
                                                Eigen::Index m);

/// Up to k nearest indices within `radius` of `key` (ties toward the lowest
/// index); empty when nothing is in range.
std::vector<Eigen::Index> ball_query(const Vec3& key, const PointMatrix& points,
                                     double radius, int k);

struct AggregatedFeature {
  Eigen::VectorXd feature;  // width D; all-zero sentinel when !found
  bool found = false;
};

/// Coordinate-wise max over the features of the ball-query neighbours of
/// `key`. Callers must skip keys with found == false.
AggregatedFeature aggregate_local_feature(const Vec3& key,
                                          const FeatureCloud& cloud,
                                          double radius, int k);

struct AlignmentResult {
  double loss = 0.0;
  std::vector<Eigen::VectorXd> grad_primary;
  std::vector<Eigen::VectorXd> grad_aux;
};

/// Mean unsquared-L2 alignment objective over paired features:
///   loss = (1/N) sum_i ||a_i - p_i||.
/// Gradients are analytic, with Huber-style smoothing below delta_smooth so
/// the zero-residual case stays differentiable. With stop_aux the auxiliary
/// gradient is zeroed (one-directional transfer); otherwise
/// grad_aux == -grad_primary.
AlignmentResult alignment_loss(const std::vector<Eigen::VectorXd>& aux_feats,
                               const std::vector<Eigen::VectorXd>& primary_feats,
                               bool stop_aux = false,
                               double delta_smooth = 1e-8);

struct LgcmConfig {
  int m = 128;          // FPS key-point count (clamped to the aux cloud size)
  KeyPointParams ball;  // shared radius / k
  bool stop_aux = false;

  static LgcmConfig from_config(const ConfigFile& cfg);
};

struct LgcmDiagnostics {
  Eigen::Index keys_total = 0;
  Eigen::Index keys_used = 0;
  Eigen::Index skipped_empty_primary = 0;
  Eigen::Index skipped_empty_aux = 0;
};

struct LgcmResult {
  double loss = 0.0;
  // Per surviving key, aligned with diagnostics.keys_used.
  std::vector<Eigen::Index> key_indices;  // into the aux cloud
  std::vector<Eigen::VectorXd> grad_primary;
  std::vector<Eigen::VectorXd> grad_aux;
  LgcmDiagnostics diagnostics;
};

/// Full contrastive-alignment pass: FPS keys on the auxiliary points, ball
/// aggregation per branch against its own cloud, mean-L2 loss over keys
/// where both balls are non-empty. Throws Error("NoSurvivingKeys") when
/// every key is skipped.
LgcmResult lgcm_pipeline(const FeatureCloud& primary, const FeatureCloud& aux,
                         const LgcmConfig& config);

/// Deterministic local-geometry descriptor (D = 10) standing in for a
/// learned backbone: neighbour count (normalized by k), centroid offset (3),
/// covariance eigenvalues sorted descending (3), and the
/// linearity/planarity/sphericity shape scores (3). Rank-deficient
/// neighbourhoods produce zeros in the affected entries.
FeatureCloud toy_descriptor(const PointCloud& cloud, double radius, int k);

constexpr int kToyDescriptorWidth = 10;

}  // namespace stormbench

#endif  // STORMBENCH_LGCM_HPP_
