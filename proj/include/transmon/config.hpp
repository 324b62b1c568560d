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

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "transmon/lattice.hpp"
#include "transmon/optimizer.hpp"
#include "transmon/pulses.hpp"

namespace transmon {

struct ModelSection {
  TransmonParams params;
  int dim = 3;
  /// Keep only lambda_{i,i+1}.
  bool adjacent_couplings_only = false;
  /// Wavefunctions written by `model`.
  int wavefunction_levels = 4;
};

struct PulseSection {
  EnvelopeFamily family = EnvelopeFamily::kGaussian;
  double tp_ns = 10.0;
  double w = 1.0;
  double theta_rad = 3.141592653589793;
  std::vector<double> alphas = {-1.0, 0.5};
  double a_x = 1.0;
  double a_y = 0.0;
  double detuning_ghz = 0.0;
  bool optimize = false;
};

struct RunSection {
  std::optional<double> dt_ps;
  double sample_dt_ps = 5.0;
  int pad_factor = 8;
  int jobs = 1;
  int trajectory_stride = 50;
  int trajectory_level = 0;
  bool fidelity_trace = false;
  std::string out_dir;
};

struct SweepSection {
  std::vector<double> tp_ns;
  std::vector<double> a_y = {0.0, 1.0, 2.0};
  std::vector<double> w = {1.0};
  EnvelopeFamily family = EnvelopeFamily::kGaussian;
  bool optimize = true;
  std::vector<std::pair<double, double>> fom_windows_ns = {{10.0, 18.0}, {17.0, 25.0}};
};

struct SpectrumSection {
  std::vector<double> w = {1.0, 0.5};
  std::vector<double> tp_ns = {15.0};
  std::vector<double> a_y = {1.0};
  /// Also emit the A_y = 0 spectrum of every configuration and the hole depth.
  bool pairs = true;
  double linewidth_threshold = 1e-2;
  /// Magnitudes are divided by the carrier peak of this A_y = 0 pulse.
  double reference_tp_ns = 15.0;
  double reference_w = 1.0;
};

struct RunConfig {
  ModelSection model;
  PulseSection pulse;
  RunSection run;
  SweepSection sweep;
  OptimizeConfig optimizer;
  SpectrumSection spectrum;

  /// Every field, defaults included.
  nlohmann::json to_json() const;
  void validate() const;
  double dt_ns() const { return run.dt_ps ? *run.dt_ps * 1e-3 : 0.0; }
  Envelope envelope() const;
  DriveConfig drive() const;
};

RunConfig config_from_json(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);

EnvelopeFamily envelope_family_from_string(const std::string& name);

}  // namespace transmon
