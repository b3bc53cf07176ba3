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

#include "stormbench/randomize.hpp"

#include <algorithm>
#include <cmath>

#include "stormbench/rng.hpp"

namespace stormbench {

namespace {

int fractional_count(int absolute, double fraction, Eigen::Index cloud_size) {
  if (absolute > 0) return absolute;
  const int n = static_cast<int>(
      std::floor(fraction * static_cast<double>(cloud_size)));
  return std::max(1, n);
}

}  // namespace

int RandomizationConfig::n_max_for(Eigen::Index cloud_size) const {
  return fractional_count(n_max_abs, n_max_frac, cloud_size);
}

int RandomizationConfig::r_max_for(Eigen::Index cloud_size) const {
  return fractional_count(r_max_abs, r_max_frac, cloud_size);
}

void RandomizationConfig::validate() const {
  if (n_max_abs < 0 || r_max_abs < 0)
    throw Error("InvalidConfig", "n_max/r_max must be non-negative");
  if (n_max_abs == 0 && !(n_max_frac > 0.0))
    throw Error("InvalidConfig", "n_max_frac must be positive");
  if (r_max_abs == 0 && !(r_max_frac > 0.0))
    throw Error("InvalidConfig", "r_max_frac must be positive");
  if (!(noise_sigma >= 0.0) || !(jitter_a >= 0.0))
    throw Error("InvalidConfig", "noise_sigma and jitter_a must be >= 0");
  if (!(gate_p >= 0.0 && gate_p <= 1.0 && branch_p >= 0.0 && branch_p <= 1.0))
    throw Error("InvalidConfig", "gate_p and branch_p must be in [0, 1]");
}

RandomizationConfig RandomizationConfig::from_config(const ConfigFile& cfg) {
  RandomizationConfig c;
  c.n_max_abs = static_cast<int>(cfg.get_int("randomization.n_max", c.n_max_abs));
  c.n_max_frac = cfg.get_double("randomization.n_max_frac", c.n_max_frac);
  c.r_max_abs = static_cast<int>(cfg.get_int("randomization.r_max", c.r_max_abs));
  c.r_max_frac = cfg.get_double("randomization.r_max_frac", c.r_max_frac);
  c.noise_sigma = cfg.get_double("randomization.noise_sigma", c.noise_sigma);
  c.jitter_a = cfg.get_double("randomization.jitter_a", c.jitter_a);
  c.gate_p = cfg.get_double("randomization.gate_p", c.gate_p);
  c.branch_p = cfg.get_double("randomization.branch_p", c.branch_p);
  c.seed = static_cast<std::uint64_t>(
      cfg.get_int("randomization.seed", static_cast<std::int64_t>(c.seed)));
  c.validate();
  return c;
}

RandomizedCloud randomize(const PointCloud& cloud,
                          const RandomizationConfig& config) {
  if (cloud.empty())
    throw Error("EmptyCloud", "randomize requires a non-empty cloud");
  config.validate();

  RandomizedCloud result;
  result.trace = {};
  Rng rng(config.seed);

  if (rng.uniform() < config.gate_p) {
    result.cloud = cloud;
    result.trace.passed_through = true;
    return result;
  }

  AugmentationTrace& trace = result.trace;
  const Eigen::Index n_in = cloud.size();

  trace.noise_fired = rng.uniform() < config.branch_p;
  int n_noise = 0;
  PointMatrix noise_xyz;
  Eigen::VectorXd noise_intensity;
  if (trace.noise_fired) {
    const int n_max = config.n_max_for(n_in);
    n_noise = 1 + static_cast<int>(
                      rng.uniform_index(static_cast<std::uint64_t>(n_max)));
    noise_xyz.resize(n_noise, 3);
    noise_intensity.resize(n_noise);
    for (int j = 0; j < n_noise; ++j) {
      const Eigen::Index anchor = static_cast<Eigen::Index>(
          rng.uniform_index(static_cast<std::uint64_t>(n_in)));
      for (int c = 0; c < 3; ++c) {
        noise_xyz(j, c) = cloud.xyz(anchor, c) + config.noise_sigma * rng.normal();
      }
      noise_intensity[j] = cloud.intensity[anchor];
    }
    trace.noise_added = n_noise;
  }

  trace.dropout_fired = rng.uniform() < config.branch_p;
  std::vector<bool> drop(static_cast<std::size_t>(n_in), false);
  if (trace.dropout_fired) {
    const int r_max = config.r_max_for(n_in);
    int r = 1 + static_cast<int>(
                    rng.uniform_index(static_cast<std::uint64_t>(r_max)));
    // Dropout may not delete the whole cloud; at least one original point
    // survives.
    if (r >= n_in) {
      r = static_cast<int>(n_in) - 1;
      trace.dropout_clamped = true;
    }
    // Partial Fisher-Yates over the index range gives r distinct indices.
    std::vector<Eigen::Index> indices(static_cast<std::size_t>(n_in));
    for (Eigen::Index i = 0; i < n_in; ++i)
      indices[static_cast<std::size_t>(i)] = i;
    for (int j = 0; j < r; ++j) {
      const std::size_t pick =
          static_cast<std::size_t>(j) +
          static_cast<std::size_t>(rng.uniform_index(
              static_cast<std::uint64_t>(n_in - j)));
      std::swap(indices[static_cast<std::size_t>(j)], indices[pick]);
      drop[static_cast<std::size_t>(indices[static_cast<std::size_t>(j)])] = true;
      trace.dropped_indices.push_back(indices[static_cast<std::size_t>(j)]);
    }
    std::sort(trace.dropped_indices.begin(), trace.dropped_indices.end());
    trace.dropped = r;
  }

  trace.jitter_fired = rng.uniform() < config.branch_p;

  // Assemble (P u noise \ dropout), surviving originals first in input
  // order, then the injected noise points.
  const Eigen::Index n_out =
      n_in - trace.dropped + static_cast<Eigen::Index>(n_noise);
  PointCloud out;
  out.frame_index = cloud.frame_index;
  out.sensor_origin = cloud.sensor_origin;
  out.xyz.resize(n_out, 3);
  out.intensity.resize(n_out);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < n_in; ++i) {
    if (drop[static_cast<std::size_t>(i)]) continue;
    out.xyz.row(k) = cloud.xyz.row(i);
    out.intensity[k] = cloud.intensity[i];
    ++k;
  }
  for (int j = 0; j < n_noise; ++j) {
    out.xyz.row(k) = noise_xyz.row(j);
    out.intensity[k] = noise_intensity[j];
    ++k;
  }

  if (trace.jitter_fired && config.jitter_a > 0.0) {
    for (Eigen::Index i = 0; i < n_out; ++i) {
      for (int c = 0; c < 3; ++c) {
        out.xyz(i, c) += rng.uniform(-config.jitter_a, config.jitter_a);
      }
    }
  }

  result.cloud = std::move(out);
  return result;
}

}  // namespace stormbench
