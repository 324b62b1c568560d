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
#include <vector>

#include "transmon/config.hpp"
#include "transmon/optimizer.hpp"

namespace transmon {

struct CommandOutput {
  std::vector<std::filesystem::path> files;
  /// One-line human summary for the terminal.
  std::string summary;
};

/// Truncated model described by the config's model section.
TruncatedModel model_from_config(const RunConfig& cfg);

CommandOutput cmd_model(const RunConfig& cfg, const std::filesystem::path& out_dir);
CommandOutput cmd_simulate(const RunConfig& cfg, const std::filesystem::path& out_dir);
CommandOutput cmd_sweep(const RunConfig& cfg, const std::filesystem::path& out_dir);
CommandOutput cmd_spectrum(const RunConfig& cfg, const std::filesystem::path& out_dir);
/// FOM table for curves previously written by `sweep`.
CommandOutput cmd_fom(const RunConfig& cfg, const std::filesystem::path& curves_csv,
                      const std::filesystem::path& out_dir);

/// Parses a curves.csv written by cmd_sweep.
std::vector<FidelityCurve> read_curves_csv(const std::filesystem::path& path);

}  // namespace transmon
