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

#ifndef STORMBENCH_MANIFEST_HPP_
#define STORMBENCH_MANIFEST_HPP_

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "stormbench/sequence.hpp"

namespace stormbench {

inline constexpr const char* kManifestSchema = "stormbench-manifest/1";

/// Descriptor of one on-disk sequence. Paths are relative: `dir` to the
/// manifest's directory, cloud/label files to `dir`.
struct SequenceEntry {
  std::string id;
  std::string source_id;  // pre-corruption id; empty when not derived
  Category category = Category::Car;
  std::int64_t frame_count = 0;
  std::string dir;
  std::vector<std::string> cloud_files;
  std::string labels_file;  // empty when unlabeled
  std::set<std::string> condition_tags;
  std::vector<double> timestamps;  // optional; defaults to 0.1 s steps

  /// Id the corruption grid derived this entry from (falls back to id).
  const std::string& origin() const {
    return source_id.empty() ? id : source_id;
  }
};

/// Index of a dataset build: what sequences exist, where their files live,
/// and the exact configuration + seed that produced them.
struct DatasetManifest {
  std::string name;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> provenance;  // config echo, free-form
  std::vector<SequenceEntry> sequences;

  std::int64_t total_frames() const {
    std::int64_t n = 0;
    for (const auto& s : sequences) n += s.frame_count;
    return n;
  }
};

/// Serializes to the documented JSON schema (atomic write).
void write_manifest(const DatasetManifest& manifest, const std::string& path);

/// Parses and validates structure; with `verify` also checks that every
/// referenced cloud file exists with a well-formed size and that counts
/// match. Throws Error("SchemaMismatch") / Error("CountMismatch").
DatasetManifest read_manifest(const std::string& path, bool verify = false);

/// Writes a sequence's frames (clouds + labels) under root/rel_dir and
/// returns its manifest entry.
SequenceEntry write_sequence(const TrackingSequence& seq,
                             const std::string& root,
                             const std::string& rel_dir,
                             const std::string& source_id = "");

/// Loads the frames referenced by an entry. `manifest_dir` is the directory
/// containing the manifest file.
TrackingSequence load_sequence(const SequenceEntry& entry,
                               const std::string& manifest_dir);

/// Loads every sequence in the manifest.
std::vector<TrackingSequence> load_all_sequences(const DatasetManifest& manifest,
                                                 const std::string& manifest_dir);

}  // namespace stormbench

#endif  // STORMBENCH_MANIFEST_HPP_
