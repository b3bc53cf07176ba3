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

#ifndef STORMBENCH_DATASET_HPP_
#define STORMBENCH_DATASET_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "stormbench/manifest.hpp"
#include "stormbench/sequence.hpp"
#include "stormbench/weather.hpp"

namespace stormbench {

struct GridOptions {
  std::vector<WeatherKind> kinds = {WeatherKind::Rain, WeatherKind::Fog,
                                    WeatherKind::Snow};
  std::vector<int> levels = {1, 2, 3, 4, 5};
  SeverityTable table;
  bool include_clean_copy = true;
};

struct GridSummary {
  std::int64_t input_frames = 0;
  std::int64_t corrupted_frames = 0;  // excludes the clean copies
  std::int64_t corrupted_sequences = 0;
  std::map<std::string, std::int64_t> frames_per_kind;
};

/// Applies the kind x level corruption grid to every input sequence and
/// writes the result (plus a clean copy) under out_dir, manifest included.
/// With the default 3 x 5 grid the corrupted frame count is exactly
/// 15 x input frames. Deterministic under (inputs, seed): per-variant seeds
/// derive from (seed, sequence id, frame position), never from the order
/// work happens to be scheduled in.
DatasetManifest build_corruption_grid(const std::vector<TrackingSequence>& clean,
                                      const std::string& out_dir,
                                      std::uint64_t seed,
                                      const GridOptions& options = {},
                                      GridSummary* summary = nullptr);

struct FilterStats {
  std::int64_t frames_dropped = 0;
  std::int64_t runs_discarded = 0;   // contiguous runs shorter than min_len
  std::int64_t sequences_in = 0;
  std::int64_t sequences_out = 0;
};

/// The real-data screening rules: drop frames whose ground-truth box holds
/// fewer than min_points points, split the survivors at the gaps into
/// maximal contiguous runs, keep runs of at least min_len frames as new
/// sequences (ids suffixed "-0", "-1", ...). Idempotent.
std::vector<TrackingSequence> filter_real_sequences(
    const std::vector<TrackingSequence>& raw, int min_points = 10,
    int min_len = 5, FilterStats* stats = nullptr);

struct GroupedManifest {
  std::map<std::string, DatasetManifest> groups;  // tag value -> sub-manifest
  DatasetManifest untagged;
};

/// Partitions a manifest's sequences by the value of a "key:value" condition
/// tag. Sequences without the key are reported separately, never silently
/// merged into a group.
GroupedManifest group_by_condition(const DatasetManifest& manifest,
                                   const std::string& tag_key);

}  // namespace stormbench

#endif  // STORMBENCH_DATASET_HPP_
