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

#ifndef STORMBENCH_CONFIG_HPP_
#define STORMBENCH_CONFIG_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "stormbench/types.hpp"

namespace stormbench {

/// Key/value text config with INI-style sections:
///
///   # comment
///   [randomization]
///   jitter_a = 0.05
///
/// Keys are stored as "section.key" ("" section for keys before any header).
/// Unknown keys are preserved; readers pull what they need.
class ConfigFile {
 public:
  ConfigFile() = default;

  static ConfigFile parse(const std::string& text);
  static ConfigFile load(const std::string& path);  // Error("Unreadable")

  bool has(const std::string& key) const { return values_.count(key) > 0; }

  std::optional<std::string> get(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;

  void set(const std::string& key, const std::string& value) {
    values_[key] = value;
  }

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace stormbench

#endif  // STORMBENCH_CONFIG_HPP_
