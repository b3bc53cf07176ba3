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

#ifndef STORMBENCH_CLOUD_IO_HPP_
#define STORMBENCH_CLOUD_IO_HPP_

#include <map>
#include <string>

#include "stormbench/types.hpp"

namespace stormbench {

// Cloud files use the de-facto velodyne layout: consecutive little-endian
// float32 (x, y, z, intensity) quadruples, no header. In-memory precision is
// double; writing quantizes to float32.

/// Throws Error("TruncatedFile") when the byte length is not a multiple of
/// 16, Error("Unreadable") on I/O failure.
PointCloud read_cloud_bin(const std::string& path);

/// Atomic (write-to-temp, rename). Throws Error("Unwritable").
void write_cloud_bin(const PointCloud& cloud, const std::string& path);

/// Label sidecar: JSON lines, one object per labeled frame:
///   {"frame_index": i, "cx":, "cy":, "cz":, "l":, "w":, "h":, "yaw":}
/// with yaw in radians.
std::map<int, OrientedBox3D> read_labels_jsonl(const std::string& path);
void write_labels_jsonl(const std::map<int, OrientedBox3D>& labels,
                        const std::string& path);

/// Writes `text` atomically (temp file + rename). Shared by every emitter
/// so no command leaves a partial output behind on failure.
void write_text_atomic(const std::string& text, const std::string& path);

}  // namespace stormbench

#endif  // STORMBENCH_CLOUD_IO_HPP_
