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

#ifndef STORMBENCH_SEQUENCE_HPP_
#define STORMBENCH_SEQUENCE_HPP_

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "stormbench/types.hpp"

namespace stormbench {

enum class Category { Car, Pedestrian };

inline std::string to_string(Category c) {
  return c == Category::Car ? "Car" : "Pedestrian";
}

inline Category category_from_string(const std::string& s) {
  if (s == "Car") return Category::Car;
  if (s == "Pedestrian") return Category::Pedestrian;
  throw Error("SchemaMismatch", "unknown category: " + s);
}

/// One timestamped sweep plus (for labeled data) the target's ground-truth
/// box in the same sensor frame.
struct Frame {
  PointCloud cloud;
  std::optional<OrientedBox3D> gt_box;
  double timestamp = 0.0;
};

/// The benchmark unit: an ordered run of frames following one target. The
/// first frame provides the template; trackers are scored on the rest.
/// Condition tags are "key:value" strings ("weather:rain-3", "road:covered").
struct TrackingSequence {
  std::string sequence_id;
  Category category = Category::Car;
  std::vector<Frame> frames;
  std::set<std::string> condition_tags;

  std::size_t frame_count() const noexcept { return frames.size(); }

  void validate() const {
    if (frames.size() < 2)
      throw Error("InvalidSequence",
                  "sequence '" + sequence_id + "' needs a template frame plus "
                  "at least one tracked frame");
    for (std::size_t i = 1; i < frames.size(); ++i) {
      if (frames[i].timestamp < frames[i - 1].timestamp)
        throw Error("InvalidSequence",
                    "timestamps must be non-decreasing in '" + sequence_id + "'");
    }
  }

  /// Value of a "key:value" tag, if present.
  std::optional<std::string> tag_value(const std::string& key) const {
    const std::string prefix = key + ":";
    for (const auto& tag : condition_tags) {
      if (tag.rfind(prefix, 0) == 0) return tag.substr(prefix.size());
    }
    return std::nullopt;
  }
};

}  // namespace stormbench

#endif  // STORMBENCH_SEQUENCE_HPP_
