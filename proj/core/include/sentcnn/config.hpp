// Copyright 2026 The sentcnn Authors.
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
#ifndef SENTCNN_CONFIG_HPP_
#define SENTCNN_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sentcnn {

// Flat `key=value` text. Blank lines and lines starting with '#' are ignored;
// whitespace around keys and values is trimmed. Later assignments win.
class KeyValueConfig {
 public:
  KeyValueConfig() = default;

  static KeyValueConfig parse(std::string_view text,
                              std::string_view source = "<config>");
  static KeyValueConfig load(const std::filesystem::path& path);

  // Parses one "key=value" override.
  void set_assignment(std::string_view assignment);
  void set(std::string key, std::string value);
  void merge(const KeyValueConfig& overrides);

  bool contains(const std::string& key) const;
  std::optional<std::string> get(const std::string& key) const;
  std::string get_string(const std::string& key, std::string fallback) const;
  std::string require_string(const std::string& key) const;
  std::uint64_t get_uint(const std::string& key, std::uint64_t fallback) const;
  double get_double(const std::string& key, double fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;

  // Throws InputError naming the first key that is neither in `known` nor
  // starts with one of `known_prefixes`.
  void check_known(const std::vector<std::string>& known,
                   const std::vector<std::string>& known_prefixes = {}) const;

  const std::map<std::string, std::string>& entries() const { return entries_; }

  // Sorted key=value lines.
  void write(std::ostream& out) const;

 private:
  std::map<std::string, std::string> entries_;
};

// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

}  // namespace sentcnn

#endif  // SENTCNN_CONFIG_HPP_
