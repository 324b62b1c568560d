// Copyright 2026 The transmon-drag Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace transmon {

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view data);

/// Writes to a temporary sibling and renames it over `path`.
void write_atomic(const std::filesystem::path& path, std::string_view contents);

/// Shortest representation that parses back to the same double.
std::string format_number(double v);

/// CSV with a provenance preamble:
///   # config: <resolved config, one line>
///   # content_sha256: <sha256 of the config text + "\n" + every line below this one>
///   # <extra comment lines>
///   header row, data rows
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);

  void comment(std::string line);
  void row(const std::vector<std::string>& cells);
  void row(const std::vector<double>& cells);

  std::string render(const nlohmann::json& config) const;
  void write(const std::filesystem::path& path, const nlohmann::json& config) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::string> comments_;
  std::string body_;
};

/// {"config": ..., "content_sha256": ..., "result": ...}; the hash covers
/// config.dump() + "\n" + result.dump().
std::string render_report(const nlohmann::json& config, const nlohmann::json& result);
void write_report(const std::filesystem::path& path, const nlohmann::json& config,
                  const nlohmann::json& result);

}  // namespace transmon
