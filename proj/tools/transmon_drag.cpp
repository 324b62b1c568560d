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

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "transmon/commands.hpp"

namespace {

namespace fs = std::filesystem;
using namespace transmon;

enum ExitCode : int {
  kOk = 0,
  kUnexpected = 1,
  kValidation = 2,
  kNumerical = 3,
  kIo = 4,
};

constexpr const char* kOutRootEnv = "TRANSMON_DRAG_OUT";

fs::path resolve_out_dir(const std::string& flag, const RunConfig& cfg, const std::string& command) {
  if (!flag.empty()) return flag;
  if (!cfg.run.out_dir.empty()) return cfg.run.out_dir;
  if (const char* root = std::getenv(kOutRootEnv); root != nullptr && *root != '\0') {
    return fs::path(root) / command;
  }
  return fs::path("transmon-drag-out") / command;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Transmon DRAG pulse simulation and calibration"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string out_flag;
  std::optional<int> jobs;
  std::optional<double> dt_ps;
  std::string curves_path;
  app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--out", out_flag,
                 std::string("Output directory (default: $") + kOutRootEnv + "/<command>)");
  app.add_option("--jobs", jobs, "Worker threads for sweeps")->check(CLI::PositiveNumber);
  app.add_option("--dt-ps", dt_ps, "Integration step in ps")->check(CLI::PositiveNumber);

  auto* model = app.add_subcommand("model", "Lattice spectrum, wavefunctions and truncated model");
  auto* simulate = app.add_subcommand("simulate", "Propagate one pulse and report fidelities");
  auto* sweep_cmd = app.add_subcommand("sweep", "Infidelity curves over t_p, A_y and W");
  auto* spectrum = app.add_subcommand("spectrum", "Drive power spectra and hole depths");
  auto* fom = app.add_subcommand("fom", "Figures of merit for an existing curves.csv");
  fom->add_option("--curves", curves_path, "curves.csv written by sweep")
      ->required()
      ->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }

  try {
    RunConfig cfg = config_path.empty() ? config_from_json(nlohmann::json::object())
                                        : load_config(config_path);
    if (jobs) cfg.run.jobs = *jobs;
    if (dt_ps) cfg.run.dt_ps = *dt_ps;
    cfg.validate();

    CommandOutput out;
    std::string name;
    if (model->parsed()) {
      name = "model";
      out = cmd_model(cfg, resolve_out_dir(out_flag, cfg, name));
    } else if (simulate->parsed()) {
      name = "simulate";
      out = cmd_simulate(cfg, resolve_out_dir(out_flag, cfg, name));
    } else if (sweep_cmd->parsed()) {
      name = "sweep";
      out = cmd_sweep(cfg, resolve_out_dir(out_flag, cfg, name));
    } else if (spectrum->parsed()) {
      name = "spectrum";
      out = cmd_spectrum(cfg, resolve_out_dir(out_flag, cfg, name));
    } else {
      name = "fom";
      out = cmd_fom(cfg, curves_path, resolve_out_dir(out_flag, cfg, name));
    }
    std::cout << name << ": " << out.summary << "\n";
    for (const auto& f : out.files) std::cout << "  wrote " << f.string() << "\n";
    return kOk;
  } catch (const ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kValidation;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  } catch (const IoError& e) {
    std::cerr << "i/o failure: " << e.what() << "\n";
    return kIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "i/o failure: " << e.what() << "\n";
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUnexpected;
  }
}
