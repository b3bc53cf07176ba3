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

#include "stormbench/manifest.hpp"

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "stormbench/cloud_io.hpp"

namespace stormbench {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string frame_file_name(std::size_t index) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%06zu.bin", index);
  return buf;
}

json entry_to_json(const SequenceEntry& e) {
  json j{{"id", e.id},
         {"category", to_string(e.category)},
         {"frame_count", e.frame_count},
         {"dir", e.dir},
         {"cloud_files", e.cloud_files},
         {"condition_tags", e.condition_tags}};
  if (!e.source_id.empty()) j["source_id"] = e.source_id;
  if (!e.labels_file.empty()) j["labels_file"] = e.labels_file;
  if (!e.timestamps.empty()) j["timestamps"] = e.timestamps;
  return j;
}

SequenceEntry entry_from_json(const json& j) {
  for (const char* field : {"id", "category", "frame_count", "dir", "cloud_files"}) {
    if (!j.contains(field))
      throw Error("SchemaMismatch",
                  std::string("sequence entry missing field: ") + field);
  }
  SequenceEntry e;
  e.id = j["id"].get<std::string>();
  e.category = category_from_string(j["category"].get<std::string>());
  e.frame_count = j["frame_count"].get<std::int64_t>();
  e.dir = j["dir"].get<std::string>();
  e.cloud_files = j["cloud_files"].get<std::vector<std::string>>();
  if (j.contains("source_id")) e.source_id = j["source_id"].get<std::string>();
  if (j.contains("labels_file"))
    e.labels_file = j["labels_file"].get<std::string>();
  if (j.contains("condition_tags"))
    e.condition_tags = j["condition_tags"].get<std::set<std::string>>();
  if (j.contains("timestamps"))
    e.timestamps = j["timestamps"].get<std::vector<double>>();
  if (e.frame_count != static_cast<std::int64_t>(e.cloud_files.size()))
    throw Error("CountMismatch",
                "entry '" + e.id + "': frame_count " +
                    std::to_string(e.frame_count) + " != " +
                    std::to_string(e.cloud_files.size()) + " cloud files");
  return e;
}

}  // namespace

void write_manifest(const DatasetManifest& manifest, const std::string& path) {
  json j{{"schema", kManifestSchema},
         {"name", manifest.name},
         {"seed", manifest.seed},
         {"provenance", manifest.provenance}};
  json seqs = json::array();
  for (const auto& e : manifest.sequences) seqs.push_back(entry_to_json(e));
  j["sequences"] = std::move(seqs);
  write_text_atomic(j.dump(2) + "\n", path);
}

DatasetManifest read_manifest(const std::string& path, bool verify) {
  std::ifstream in(path);
  if (!in) throw Error("Unreadable", "cannot open manifest: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error("SchemaMismatch", path + ": " + e.what());
  }
  if (!j.contains("schema") || j["schema"].get<std::string>() != kManifestSchema)
    throw Error("SchemaMismatch",
                path + ": expected schema " + std::string(kManifestSchema));
  for (const char* field : {"name", "sequences"}) {
    if (!j.contains(field))
      throw Error("SchemaMismatch",
                  path + ": missing field " + std::string(field));
  }
  DatasetManifest m;
  m.name = j["name"].get<std::string>();
  if (j.contains("seed")) m.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("provenance"))
    m.provenance = j["provenance"].get<std::map<std::string, std::string>>();
  for (const auto& je : j["sequences"]) m.sequences.push_back(entry_from_json(je));

  if (verify) {
    const fs::path base = fs::path(path).parent_path();
    for (const auto& e : m.sequences) {
      for (const auto& file : e.cloud_files) {
        const fs::path p = base / e.dir / file;
        std::error_code ec;
        const auto size = fs::file_size(p, ec);
        if (ec)
          throw Error("CountMismatch",
                      "entry '" + e.id + "': missing cloud file " + p.string());
        if (size % 16 != 0)
          throw Error("CountMismatch",
                      "entry '" + e.id + "': malformed cloud file " + p.string());
      }
    }
  }
  return m;
}

SequenceEntry write_sequence(const TrackingSequence& seq, const std::string& root,
                             const std::string& rel_dir,
                             const std::string& source_id) {
  const fs::path dir = fs::path(root) / rel_dir;
  fs::create_directories(dir);

  SequenceEntry entry;
  entry.id = seq.sequence_id;
  entry.source_id = source_id;
  entry.category = seq.category;
  entry.frame_count = static_cast<std::int64_t>(seq.frames.size());
  entry.dir = rel_dir;
  entry.condition_tags = seq.condition_tags;

  std::map<int, OrientedBox3D> labels;
  bool any_label = false;
  for (std::size_t i = 0; i < seq.frames.size(); ++i) {
    const std::string file = frame_file_name(i);
    write_cloud_bin(seq.frames[i].cloud, (dir / file).string());
    entry.cloud_files.push_back(file);
    entry.timestamps.push_back(seq.frames[i].timestamp);
    if (seq.frames[i].gt_box) {
      labels[static_cast<int>(i)] = *seq.frames[i].gt_box;
      any_label = true;
    }
  }
  if (any_label) {
    entry.labels_file = "labels.jsonl";
    write_labels_jsonl(labels, (dir / entry.labels_file).string());
  }
  return entry;
}

TrackingSequence load_sequence(const SequenceEntry& entry,
                               const std::string& manifest_dir) {
  const fs::path dir = fs::path(manifest_dir) / entry.dir;
  TrackingSequence seq;
  seq.sequence_id = entry.id;
  seq.category = entry.category;
  seq.condition_tags = entry.condition_tags;

  std::map<int, OrientedBox3D> labels;
  if (!entry.labels_file.empty())
    labels = read_labels_jsonl((dir / entry.labels_file).string());

  for (std::size_t i = 0; i < entry.cloud_files.size(); ++i) {
    Frame frame;
    frame.cloud = read_cloud_bin((dir / entry.cloud_files[i]).string());
    frame.cloud.frame_index = static_cast<int>(i);
    frame.timestamp = i < entry.timestamps.size() ? entry.timestamps[i]
                                                  : 0.1 * static_cast<double>(i);
    const auto it = labels.find(static_cast<int>(i));
    if (it != labels.end()) frame.gt_box = it->second;
    seq.frames.push_back(std::move(frame));
  }
  return seq;
}

std::vector<TrackingSequence> load_all_sequences(const DatasetManifest& manifest,
                                                 const std::string& manifest_dir) {
  std::vector<TrackingSequence> out;
  out.reserve(manifest.sequences.size());
  for (const auto& e : manifest.sequences)
    out.push_back(load_sequence(e, manifest_dir));
  return out;
}

}  // namespace stormbench
