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

#ifndef STORMBENCH_REPORT_IO_HPP_
#define STORMBENCH_REPORT_IO_HPP_

#include <string>
#include <vector>

#include "stormbench/metrics.hpp"

namespace stormbench {

// Prediction files are the contract external trackers must emit to be
// scored: JSON lines, one object per tracked frame,
//   {"sequence_id":, "frame_index":, "cx":, "cy":, "cz":,
//    "l":, "w":, "h":, "yaw":}
// with frame_index starting at 1 (frame 0 is the template).

std::vector<TrackResult> read_predictions_jsonl(const std::string& path);
void write_predictions_jsonl(const std::vector<TrackResult>& results,
                             const std::string& path);

/// CSV rows: one per (condition, level), one "all" aggregate row per
/// condition carrying DR/R/S.d, and a leading clean row. Columns:
///   condition,level,success,precision,dr_s,dr_p,range_s,range_p,sd_s,sd_p
std::string report_to_csv(const std::vector<MetricReport>& reports);

/// JSON mirror of the same content.
std::string report_to_json(const std::vector<MetricReport>& reports);

void write_report(const std::vector<MetricReport>& reports,
                  const std::string& csv_path, const std::string& json_path);

}  // namespace stormbench

#endif  // STORMBENCH_REPORT_IO_HPP_
