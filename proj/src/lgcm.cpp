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

#include "stormbench/lgcm.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

namespace stormbench {

std::vector<Eigen::Index> farthest_point_sample(const PointMatrix& points,
                                                Eigen::Index m) {
  const Eigen::Index n = points.rows();
  if (m < 1 || m > n)
    throw Error("SampleSizeExceedsCloud",
                "requested " + std::to_string(m) + " samples from " +
                    std::to_string(n) + " points");

  const Vec3 centroid = points.colwise().mean().transpose();
  Eigen::Index first = 0;
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double d = (points.row(i).transpose() - centroid).squaredNorm();
    if (d < best) {  // strict < breaks ties toward the lowest index
      best = d;
      first = i;
    }
  }

  std::vector<Eigen::Index> selected;
  selected.reserve(static_cast<std::size_t>(m));
  selected.push_back(first);

  Eigen::VectorXd min_sq =
      (points.rowwise() - points.row(first)).rowwise().squaredNorm();
  for (Eigen::Index s = 1; s < m; ++s) {
    Eigen::Index pick = 0;
    double far = -1.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (min_sq[i] > far) {
        far = min_sq[i];
        pick = i;
      }
    }
    selected.push_back(pick);
    const Eigen::VectorXd d =
        (points.rowwise() - points.row(pick)).rowwise().squaredNorm();
    min_sq = min_sq.cwiseMin(d);
  }
  return selected;
}

std::vector<Eigen::Index> ball_query(const Vec3& key, const PointMatrix& points,
                                     double radius, int k) {
  KeyPointParams{radius, k}.validate();
  const double r2 = radius * radius;
  std::vector<std::pair<double, Eigen::Index>> in_ball;
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    const double d2 = (points.row(i).transpose() - key).squaredNorm();
    if (d2 <= r2) in_ball.emplace_back(d2, i);
  }
  std::sort(in_ball.begin(), in_ball.end());  // (distance, index) orders ties
  if (in_ball.size() > static_cast<std::size_t>(k)) in_ball.resize(static_cast<std::size_t>(k));
  std::vector<Eigen::Index> out;
  out.reserve(in_ball.size());
  for (const auto& [d2, i] : in_ball) out.push_back(i);
  return out;
}

AggregatedFeature aggregate_local_feature(const Vec3& key,
                                          const FeatureCloud& cloud,
                                          double radius, int k) {
  cloud.validate();
  AggregatedFeature out;
  out.feature = Eigen::VectorXd::Zero(cloud.width());
  const auto neighbours = ball_query(key, cloud.points, radius, k);
  if (neighbours.empty()) return out;
  out.found = true;
  out.feature = cloud.features.row(neighbours.front()).transpose();
  for (std::size_t j = 1; j < neighbours.size(); ++j) {
    out.feature = out.feature.cwiseMax(
        cloud.features.row(neighbours[j]).transpose());
  }
  return out;
}

AlignmentResult alignment_loss(const std::vector<Eigen::VectorXd>& aux_feats,
                               const std::vector<Eigen::VectorXd>& primary_feats,
                               bool stop_aux, double delta_smooth) {
  if (aux_feats.size() != primary_feats.size() || aux_feats.empty())
    throw Error("LengthMismatch",
                "alignment_loss needs equal-length non-empty feature lists");
  const Eigen::Index width = aux_feats.front().size();
  const double n = static_cast<double>(aux_feats.size());

  AlignmentResult result;
  result.grad_primary.reserve(aux_feats.size());
  result.grad_aux.reserve(aux_feats.size());
  for (std::size_t i = 0; i < aux_feats.size(); ++i) {
    if (aux_feats[i].size() != width || primary_feats[i].size() != width)
      throw Error("DimensionMismatch",
                  "feature width mismatch at pair " + std::to_string(i));
    const Eigen::VectorXd residual = primary_feats[i] - aux_feats[i];
    const double norm = residual.norm();
    result.loss += norm / n;
    const double denom = std::max(norm, delta_smooth) * n;
    Eigen::VectorXd grad_p = residual / denom;
    result.grad_aux.push_back(stop_aux ? Eigen::VectorXd::Zero(width).eval()
                                       : (-grad_p).eval());
    result.grad_primary.push_back(std::move(grad_p));
  }
  return result;
}

LgcmConfig LgcmConfig::from_config(const ConfigFile& cfg) {
  LgcmConfig c;
  c.m = static_cast<int>(cfg.get_int("lgcm.m", c.m));
  c.ball.radius = cfg.get_double("lgcm.radius", c.ball.radius);
  c.ball.k = static_cast<int>(cfg.get_int("lgcm.k", c.ball.k));
  c.stop_aux = cfg.get_bool("lgcm.stop_aux", c.stop_aux);
  if (c.m < 1) throw Error("InvalidConfig", "lgcm.m must be >= 1");
  c.ball.validate();
  return c;
}

LgcmResult lgcm_pipeline(const FeatureCloud& primary, const FeatureCloud& aux,
                         const LgcmConfig& config) {
  primary.validate();
  aux.validate();
  config.ball.validate();

  // Keys live on the auxiliary branch's down-sampled points; both branches
  // aggregate against their own cloud at the shared key positions.
  const Eigen::Index m =
      std::min<Eigen::Index>(static_cast<Eigen::Index>(config.m), aux.size());
  const auto keys = farthest_point_sample(aux.points, m);

  LgcmResult result;
  result.diagnostics.keys_total = m;
  std::vector<Eigen::VectorXd> aux_feats, primary_feats;
  for (const Eigen::Index key_idx : keys) {
    const Vec3 key = aux.points.row(key_idx).transpose();
    const auto from_aux =
        aggregate_local_feature(key, aux, config.ball.radius, config.ball.k);
    const auto from_primary = aggregate_local_feature(
        key, primary, config.ball.radius, config.ball.k);
    if (!from_aux.found) ++result.diagnostics.skipped_empty_aux;
    if (!from_primary.found) ++result.diagnostics.skipped_empty_primary;
    if (!from_aux.found || !from_primary.found) continue;
    result.key_indices.push_back(key_idx);
    aux_feats.push_back(from_aux.feature);
    primary_feats.push_back(from_primary.feature);
  }
  result.diagnostics.keys_used =
      static_cast<Eigen::Index>(result.key_indices.size());
  if (result.key_indices.empty())
    throw Error("NoSurvivingKeys",
                "every key had an empty ball in at least one branch");

  AlignmentResult alignment =
      alignment_loss(aux_feats, primary_feats, config.stop_aux);
  result.loss = alignment.loss;
  result.grad_primary = std::move(alignment.grad_primary);
  result.grad_aux = std::move(alignment.grad_aux);
  return result;
}

FeatureCloud toy_descriptor(const PointCloud& cloud, double radius, int k) {
  if (cloud.empty())
    throw Error("EmptyCloud", "toy_descriptor requires a non-empty cloud");
  KeyPointParams{radius, k}.validate();

  FeatureCloud out;
  out.points = cloud.xyz;
  out.features = Eigen::MatrixXd::Zero(cloud.size(), kToyDescriptorWidth);

  for (Eigen::Index i = 0; i < cloud.size(); ++i) {
    const Vec3 p = cloud.point(i);
    const auto neighbours = ball_query(p, cloud.xyz, radius, k);
    const double count = static_cast<double>(neighbours.size());
    out.features(i, 0) = count / static_cast<double>(k);
    if (neighbours.empty()) continue;

    Vec3 centroid = Vec3::Zero();
    for (const Eigen::Index j : neighbours) centroid += cloud.point(j);
    centroid /= count;
    out.features.block<1, 3>(i, 1) = (centroid - p).transpose();

    if (neighbours.size() < 2) continue;
    Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
    for (const Eigen::Index j : neighbours) {
      const Vec3 d = cloud.point(j) - centroid;
      cov += d * d.transpose();
    }
    cov /= count;

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(cov);
    // Eigen returns ascending eigenvalues; the descriptor wants descending.
    Vec3 lambda = solver.eigenvalues().reverse();
    lambda = lambda.cwiseMax(0.0);  // flush tiny negative round-off
    out.features.block<1, 3>(i, 4) = lambda.transpose();
    if (lambda[0] > 0.0) {
      out.features(i, 7) = (lambda[0] - lambda[1]) / lambda[0];  // linearity
      out.features(i, 8) = (lambda[1] - lambda[2]) / lambda[0];  // planarity
      out.features(i, 9) = lambda[2] / lambda[0];                // sphericity
    }
  }
  return out;
}

}  // namespace stormbench
