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

#ifndef STORMBENCH_RANDOMIZE_HPP_
#define STORMBENCH_RANDOMIZE_HPP_

#include <cstdint>
#include <vector>

#include "stormbench/config.hpp"
#include "stormbench/types.hpp"

namespace stormbench {

/// Knobs for the three-branch stochastic augmentation. Counts may be given
/// as absolute values or (by default) as fractions of the input cloud size;
/// fractions keep the augmentation meaningful across dense and sparse scans.
struct RandomizationConfig {
  // Either absolute counts (> 0) or fractions of cloud size (used when the
  // absolute value is 0).
  int n_max_abs = 0;            // max injected noise points
  double n_max_frac = 0.20;
  int r_max_abs = 0;            // max dropped points
  double r_max_frac = 0.30;

  double noise_sigma = 0.1;     // m, std of noise-point displacement
  double jitter_a = 0.05;       // m, half-width of U(-a, a) jitter
  double gate_p = 0.5;          // probability of emitting the input unchanged
  double branch_p = 0.5;        // per-branch activation probability
  std::uint64_t seed = 0;

  int n_max_for(Eigen::Index cloud_size) const;
  int r_max_for(Eigen::Index cloud_size) const;

  void validate() const;

  /// Reads the [randomization] section (n_max, n_max_frac, r_max,
  /// r_max_frac, noise_sigma, jitter_a, gate_p, branch_p, seed).
  static RandomizationConfig from_config(const ConfigFile& cfg);
};

/// What the augmentation actually did, for test introspection.
struct AugmentationTrace {
  bool passed_through = false;  // gate short-circuit: output == input
  bool noise_fired = false;
  bool dropout_fired = false;
  bool jitter_fired = false;
  int noise_added = 0;
  int dropped = 0;
  bool dropout_clamped = false;  // r was reduced to keep >= 1 point
  std::vector<Eigen::Index> dropped_indices;  // into the input cloud
};

struct RandomizedCloud {
  PointCloud cloud;
  AugmentationTrace trace;
};

/// Stochastic domain randomization:
///   with probability gate_p the input is returned unchanged; otherwise
///   three independent branch_p coins decide noise injection (n ~ U{1..n_max}
///   Gaussian offsets from randomly chosen existing points), dropout
///   (r ~ U{1..r_max} distinct indices, clamped so >= 1 point survives), and
///   per-point jitter (i.i.d. U(-a, a) per coordinate). Composition order is
///   (P u noise \ dropout) + jitter: injected noise is jittered too, dropped
///   points are not. Deterministic under config.seed.
RandomizedCloud randomize(const PointCloud& cloud,
                          const RandomizationConfig& config);

}  // namespace stormbench

#endif  // STORMBENCH_RANDOMIZE_HPP_
