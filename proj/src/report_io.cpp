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

#include "stormbench/report_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "stormbench/cloud_io.hpp"

namespace stormbench {

using nlohmann::json;

std::vector<TrackResult> read_predictions_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("Unreadable", "cannot open prediction file: " + path);

  // sequence_id -> (frame_index -> box); frame indices must form 1..K.
  std::map<std::string, std::map<int, OrientedBox3D>> by_sequence;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw Error("SchemaMismatch",
                  path + ":" + std::to_string(lineno) + ": " + e.what());
    }
    for (const char* field : {"sequence_id", "frame_index", "cx", "cy", "cz",
                              "l", "w", "h", "yaw"}) {
      if (!j.contains(field))
        throw Error("SchemaMismatch", path + ":" + std::to_string(lineno) +
                                          ": missing field " + field);
    }
    const OrientedBox3D box({j["cx"].get<double>(), j["cy"].get<double>(),
                             j["cz"].get<double>()},
                            j["l"].get<double>(), j["w"].get<double>(),
                            j["h"].get<double>(), j["yaw"].get<double>());
    by_sequence[j["sequence_id"].get<std::string>()]
               [j["frame_index"].get<int>()] = box;
  }

  std::vector<TrackResult> results;
  for (const auto& [id, frames] : by_sequence) {
    TrackResult result;
    result.sequence_id = id;
    int expected = 1;
    for (const auto& [index, box] : frames) {
      if (index != expected)
        throw Error("SchemaMismatch",
                    "sequence '" + id + "': expected frame_index " +
                        std::to_string(expected) + ", got " +
                        std::to_string(index));
      result.boxes.push_back(box);
      ++expected;
    }
    results.push_back(std::move(result));
  }
  return results;
}

void write_predictions_jsonl(const std::vector<TrackResult>& results,
                             const std::string& path) {
  std::ostringstream out;
  for (const auto& result : results) {
    for (std::size_t i = 0; i < result.boxes.size(); ++i) {
      const OrientedBox3D& box = result.boxes[i];
      json j{{"sequence_id", result.sequence_id},
             {"frame_index", static_cast<int>(i + 1)},
             {"cx", box.center.x()},
             {"cy", box.center.y()},
             {"cz", box.center.z()},
             {"l", box.l},
             {"w", box.w},
             {"h", box.h},
             {"yaw", box.yaw}};
      out << j.dump() << "\n";
    }
  }
  write_text_atomic(out.str(), path);
}

namespace {

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

}  // namespace

std::string report_to_csv(const std::vector<MetricReport>& reports) {
  std::ostringstream out;
  out << "condition,level,success,precision,dr_s,dr_p,range_s,range_p,sd_s,sd_p\n";
  if (!reports.empty()) {
    const EvalScore& clean = reports.front().clean;
    out << "clean,-," << fmt(clean.success) << "," << fmt(clean.precision)
        << ",,,,,,\n";
  }
  for (const auto& r : reports) {
    for (const auto& [level, score] : r.levels) {
      out << r.condition << "," << level << "," << fmt(score.success) << ","
          << fmt(score.precision) << ",,,,,,\n";
    }
    out << r.condition << ",all,,," << fmt(r.dr_success) << ","
        << fmt(r.dr_precision) << "," << fmt(r.range_success) << ","
        << fmt(r.range_precision) << ","
        << (r.sd_defined ? fmt(r.sd_success) : "0") << ","
        << (r.sd_defined ? fmt(r.sd_precision) : "0") << "\n";
  }
  return out.str();
}

std::string report_to_json(const std::vector<MetricReport>& reports) {
  json root = json::array();
  for (const auto& r : reports) {
    json levels = json::array();
    for (const auto& [level, score] : r.levels) {
      levels.push_back({{"level", level},
                        {"success", score.success},
                        {"precision", score.precision},
                        {"frames", score.frames}});
    }
    root.push_back({{"condition", r.condition},
                    {"clean",
                     {{"success", r.clean.success},
                      {"precision", r.clean.precision},
                      {"frames", r.clean.frames}}},
                    {"levels", levels},
                    {"dr_success", r.dr_success},
                    {"dr_precision", r.dr_precision},
                    {"retained_success", r.retained_success},
                    {"retained_precision", r.retained_precision},
                    {"range_success", r.range_success},
                    {"range_precision", r.range_precision},
                    {"sd_success", r.sd_success},
                    {"sd_precision", r.sd_precision},
                    {"sd_defined", r.sd_defined}});
  }
  return root.dump(2) + "\n";
}

void write_report(const std::vector<MetricReport>& reports,
                  const std::string& csv_path, const std::string& json_path) {
  write_text_atomic(report_to_csv(reports), csv_path);
  if (!json_path.empty()) write_text_atomic(report_to_json(reports), json_path);
}

}  // namespace stormbench
