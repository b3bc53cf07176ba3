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

#include "stormbench/cloud_io.hpp"

#include <bit>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace stormbench {

namespace {

static_assert(sizeof(float) == 4 && std::numeric_limits<float>::is_iec559,
              "cloud files require IEEE-754 float32");

float load_f32_le(const unsigned char* bytes) {
  std::uint32_t bits = static_cast<std::uint32_t>(bytes[0]) |
                       static_cast<std::uint32_t>(bytes[1]) << 8 |
                       static_cast<std::uint32_t>(bytes[2]) << 16 |
                       static_cast<std::uint32_t>(bytes[3]) << 24;
  return std::bit_cast<float>(bits);
}

void store_f32_le(float value, unsigned char* bytes) {
  const std::uint32_t bits = std::bit_cast<std::uint32_t>(value);
  bytes[0] = static_cast<unsigned char>(bits & 0xFF);
  bytes[1] = static_cast<unsigned char>((bits >> 8) & 0xFF);
  bytes[2] = static_cast<unsigned char>((bits >> 16) & 0xFF);
  bytes[3] = static_cast<unsigned char>((bits >> 24) & 0xFF);
}

}  // namespace

PointCloud read_cloud_bin(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("Unreadable", "cannot open cloud file: " + path);
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  if (in.bad()) throw Error("Unreadable", "read failure: " + path);
  if (bytes.size() % 16 != 0)
    throw Error("TruncatedFile", path + ": " + std::to_string(bytes.size()) +
                                     " bytes is not a multiple of 16");
  const Eigen::Index n = static_cast<Eigen::Index>(bytes.size() / 16);
  PointCloud cloud;
  cloud.xyz.resize(n, 3);
  cloud.intensity.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const unsigned char* rec = bytes.data() + 16 * i;
    cloud.xyz(i, 0) = load_f32_le(rec);
    cloud.xyz(i, 1) = load_f32_le(rec + 4);
    cloud.xyz(i, 2) = load_f32_le(rec + 8);
    cloud.intensity[i] = load_f32_le(rec + 12);
  }
  return cloud;
}

void write_text_atomic(const std::string& text, const std::string& path) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path tmp = target.parent_path() /
                       (target.filename().string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("Unwritable", "cannot open for write: " + tmp.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw Error("Unwritable", "write failure: " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error("Unwritable", "cannot move into place: " + path);
  }
}

void write_cloud_bin(const PointCloud& cloud, const std::string& path) {
  std::string bytes(static_cast<std::size_t>(cloud.size()) * 16, '\0');
  auto* data = reinterpret_cast<unsigned char*>(bytes.data());
  for (Eigen::Index i = 0; i < cloud.size(); ++i) {
    unsigned char* rec = data + 16 * i;
    store_f32_le(static_cast<float>(cloud.xyz(i, 0)), rec);
    store_f32_le(static_cast<float>(cloud.xyz(i, 1)), rec + 4);
    store_f32_le(static_cast<float>(cloud.xyz(i, 2)), rec + 8);
    store_f32_le(static_cast<float>(cloud.intensity[i]), rec + 12);
  }
  write_text_atomic(bytes, path);
}

std::map<int, OrientedBox3D> read_labels_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("Unreadable", "cannot open label file: " + path);
  std::map<int, OrientedBox3D> labels;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw Error("SchemaMismatch", path + ":" + std::to_string(lineno) +
                                        ": " + e.what());
    }
    for (const char* field :
         {"frame_index", "cx", "cy", "cz", "l", "w", "h", "yaw"}) {
      if (!j.contains(field))
        throw Error("SchemaMismatch", path + ":" + std::to_string(lineno) +
                                          ": missing field " + field);
    }
    OrientedBox3D box({j["cx"].get<double>(), j["cy"].get<double>(),
                       j["cz"].get<double>()},
                      j["l"].get<double>(), j["w"].get<double>(),
                      j["h"].get<double>(), j["yaw"].get<double>());
    labels[j["frame_index"].get<int>()] = box;
  }
  return labels;
}

void write_labels_jsonl(const std::map<int, OrientedBox3D>& labels,
                        const std::string& path) {
  std::ostringstream out;
  for (const auto& [index, box] : labels) {
    nlohmann::json j{{"frame_index", index}, {"cx", box.center.x()},
                     {"cy", box.center.y()}, {"cz", box.center.z()},
                     {"l", box.l},           {"w", box.w},
                     {"h", box.h},           {"yaw", box.yaw}};
    out << j.dump() << "\n";
  }
  write_text_atomic(out.str(), path);
}

}  // namespace stormbench
