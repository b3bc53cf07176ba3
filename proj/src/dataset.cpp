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

#include "stormbench/dataset.hpp"

#include <algorithm>
#include <filesystem>

#include "stormbench/geometry.hpp"
#include "stormbench/parallel.hpp"

namespace stormbench {

namespace fs = std::filesystem;

DatasetManifest build_corruption_grid(const std::vector<TrackingSequence>& clean,
                                      const std::string& out_dir,
                                      std::uint64_t seed,
                                      const GridOptions& options,
                                      GridSummary* summary) {
  options.table.validate();
  for (const auto& seq : clean) seq.validate();
  fs::create_directories(out_dir);

  struct Job {
    const TrackingSequence* source;
    bool is_clean;
    WeatherKind kind;
    int level;
  };
  std::vector<Job> jobs;
  for (const auto& seq : clean) {
    if (options.include_clean_copy)
      jobs.push_back({&seq, true, WeatherKind::Rain, 0});
    for (const WeatherKind kind : options.kinds) {
      for (const int level : options.levels) {
        jobs.push_back({&seq, false, kind, level});
      }
    }
  }

  std::vector<SequenceEntry> entries(jobs.size());
  parallel_for(jobs.size(), [&](std::size_t i) {
    const Job& job = jobs[i];
    if (job.is_clean) {
      TrackingSequence copy = *job.source;
      copy.condition_tags.insert("weather:clean");
      entries[i] = write_sequence(copy, out_dir, "sequences/" + copy.sequence_id,
                                  copy.sequence_id);
    } else {
      TrackingSequence corrupted = corrupt_sequence(
          *job.source, job.kind, job.level, seed, options.table);
      corrupted.sequence_id = job.source->sequence_id + "__" +
                              to_string(job.kind) + "-" +
                              std::to_string(job.level);
      entries[i] = write_sequence(corrupted, out_dir,
                                  "sequences/" + corrupted.sequence_id,
                                  job.source->sequence_id);
    }
  });

  DatasetManifest manifest;
  manifest.name = "corruption-grid";
  manifest.seed = seed;
  manifest.provenance["tool"] = "stormbench corrupt";
  manifest.provenance["kinds"] = std::to_string(options.kinds.size());
  manifest.provenance["levels"] = std::to_string(options.levels.size());
  for (int lv = 1; lv <= 5; ++lv) {
    manifest.provenance["fog_mor_" + std::to_string(lv)] =
        std::to_string(options.table.fog_mor[lv - 1]);
    manifest.provenance["rain_rate_" + std::to_string(lv)] =
        std::to_string(options.table.rain_rate[lv - 1]);
    manifest.provenance["snow_rate_" + std::to_string(lv)] =
        std::to_string(options.table.snow_rate[lv - 1]);
  }
  manifest.sequences = std::move(entries);
  write_manifest(manifest, (fs::path(out_dir) / "manifest.json").string());

  if (summary != nullptr) {
    *summary = {};
    for (const auto& seq : clean)
      summary->input_frames += static_cast<std::int64_t>(seq.frames.size());
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      if (jobs[i].is_clean) continue;
      summary->corrupted_frames += manifest.sequences[i].frame_count;
      ++summary->corrupted_sequences;
      summary->frames_per_kind[to_string(jobs[i].kind)] +=
          manifest.sequences[i].frame_count;
    }
  }
  return manifest;
}

std::vector<TrackingSequence> filter_real_sequences(
    const std::vector<TrackingSequence>& raw, int min_points, int min_len,
    FilterStats* stats) {
  if (min_len < 2)
    throw Error("InvalidConfig",
                "min_len must be >= 2 (a sequence needs a template frame "
                "plus a tracked frame)");
  FilterStats local;
  local.sequences_in = static_cast<std::int64_t>(raw.size());

  std::vector<TrackingSequence> out;
  for (const auto& seq : raw) {
    std::vector<bool> keep(seq.frames.size(), false);
    for (std::size_t i = 0; i < seq.frames.size(); ++i) {
      const Frame& frame = seq.frames[i];
      if (!frame.gt_box)
        throw Error("InvalidSequence",
                    "filter_real_sequences requires ground-truth boxes ('" +
                        seq.sequence_id + "')");
      keep[i] =
          points_in_box(frame.cloud, *frame.gt_box).count >= min_points;
      if (!keep[i]) ++local.frames_dropped;
    }

    // A sequence that survives in one piece keeps its id (which also makes
    // the filter idempotent); only split products get "-<run>" suffixes.
    const bool intact =
        std::find(keep.begin(), keep.end(), false) == keep.end();
    if (intact && seq.frames.size() >= static_cast<std::size_t>(min_len)) {
      out.push_back(seq);
      continue;
    }

    int run_index = 0;
    std::size_t i = 0;
    while (i < seq.frames.size()) {
      if (!keep[i]) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < seq.frames.size() && keep[j]) ++j;
      const std::size_t run_len = j - i;
      if (run_len >= static_cast<std::size_t>(min_len)) {
        TrackingSequence sub;
        sub.sequence_id =
            seq.sequence_id + "-" + std::to_string(run_index);
        sub.category = seq.category;
        sub.condition_tags = seq.condition_tags;
        sub.frames.assign(seq.frames.begin() + static_cast<std::ptrdiff_t>(i),
                          seq.frames.begin() + static_cast<std::ptrdiff_t>(j));
        out.push_back(std::move(sub));
        ++run_index;
      } else {
        ++local.runs_discarded;
      }
      i = j;
    }
  }

  local.sequences_out = static_cast<std::int64_t>(out.size());
  if (stats != nullptr) *stats = local;
  return out;
}

GroupedManifest group_by_condition(const DatasetManifest& manifest,
                                   const std::string& tag_key) {
  GroupedManifest result;
  result.untagged.name = manifest.name + "/untagged";
  result.untagged.seed = manifest.seed;
  const std::string prefix = tag_key + ":";

  for (const auto& entry : manifest.sequences) {
    std::string value;
    for (const auto& tag : entry.condition_tags) {
      if (tag.rfind(prefix, 0) == 0) {
        value = tag.substr(prefix.size());
        break;
      }
    }
    if (value.empty()) {
      result.untagged.sequences.push_back(entry);
      continue;
    }
    auto [it, inserted] = result.groups.try_emplace(value);
    if (inserted) {
      it->second.name = manifest.name + "/" + tag_key + "=" + value;
      it->second.seed = manifest.seed;
      it->second.provenance = manifest.provenance;
    }
    it->second.sequences.push_back(entry);
  }
  return result;
}

}  // namespace stormbench
