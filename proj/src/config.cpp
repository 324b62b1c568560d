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

#include "transmon/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace transmon {
namespace {

using nlohmann::json;

// Reads one config section and rejects keys nobody asked for.
class Section {
 public:
  Section(const json& doc, std::string name) : name_(std::move(name)) {
    if (doc.contains(name_)) {
      node_ = doc.at(name_);
      if (!node_.is_object()) throw ValidationError("section '" + name_ + "' must be an object");
    } else {
      node_ = json::object();
    }
  }

  template <typename T>
  void read(const std::string& key, T& out) {
    seen_.insert(key);
    if (!node_.contains(key)) return;
    try {
      out = node_.at(key).get<T>();
    } catch (const json::exception& ex) {
      throw ValidationError(where(key) + ": " + ex.what());
    }
  }

  template <typename T>
  void read(const std::string& key, std::optional<T>& out) {
    seen_.insert(key);
    if (!node_.contains(key) || node_.at(key).is_null()) return;
    T value{};
    read(key, value);
    out = value;
  }

  void read_family(const std::string& key, EnvelopeFamily& out) {
    std::string name = to_string(out);
    read(key, name);
    out = envelope_family_from_string(name);
  }

  // Either a list or {"start", "stop", "step"}.
  void read_grid(const std::string& key, std::vector<double>& out) {
    seen_.insert(key);
    if (!node_.contains(key)) return;
    const json& v = node_.at(key);
    if (v.is_array()) {
      read(key, out);
      return;
    }
    if (!v.is_object()) throw ValidationError(where(key) + " must be a list or a range object");
    for (const auto& [k, unused] : v.items()) {
      if (k != "start" && k != "stop" && k != "step") {
        throw ValidationError(where(key) + ": unknown key '" + k + "'");
      }
    }
    double start = 0.0;
    double stop = 0.0;
    double step = 0.0;
    try {
      start = v.at("start").get<double>();
      stop = v.at("stop").get<double>();
      step = v.at("step").get<double>();
    } catch (const json::exception& ex) {
      throw ValidationError(where(key) + ": " + ex.what());
    }
    if (!(step > 0.0) || !(stop >= start)) throw ValidationError(where(key) + ": bad range");
    const int n = static_cast<int>(std::floor((stop - start) / step + 1e-9)) + 1;
    if (n > 100000) throw ValidationError(where(key) + ": range too long");
    out.clear();
    for (int i = 0; i < n; ++i) out.push_back(start + i * step);
  }

  void finish() const {
    for (const auto& [key, unused] : node_.items()) {
      if (!seen_.count(key)) throw ValidationError("unknown key '" + name_ + "." + key + "'");
    }
  }

 private:
  std::string where(const std::string& key) const { return "'" + name_ + "." + key + "'"; }

  std::string name_;
  json node_;
  std::set<std::string> seen_;
};

std::vector<double> default_durations() {
  std::vector<double> grid;
  for (int t = 8; t <= 30; ++t) grid.push_back(t);
  return grid;
}

void require_finite(double v, const std::string& what) {
  if (!std::isfinite(v)) throw ValidationError(what + " must be finite");
}

void require_ascending(const std::vector<double>& v, const std::string& what) {
  if (v.empty()) throw ValidationError(what + " must not be empty");
  for (std::size_t i = 0; i < v.size(); ++i) {
    require_finite(v[i], what);
    if (i > 0 && !(v[i] > v[i - 1])) throw ValidationError(what + " must be strictly ascending");
  }
}

}  // namespace

EnvelopeFamily envelope_family_from_string(const std::string& name) {
  if (name == "gaussian") return EnvelopeFamily::kGaussian;
  if (name == "cosine") return EnvelopeFamily::kCosine;
  throw ValidationError("unknown envelope family '" + name + "' (gaussian or cosine)");
}

RunConfig config_from_json(const json& doc) {
  if (!doc.is_object()) throw ValidationError("config must be a JSON object");
  static const std::set<std::string> kSections = {"model", "pulse", "run", "sweep", "optimizer",
                                                  "spectrum"};
  for (const auto& [key, unused] : doc.items()) {
    if (!kSections.count(key)) throw ValidationError("unknown section '" + key + "'");
  }

  RunConfig cfg;
  cfg.sweep.tp_ns = default_durations();

  Section model(doc, "model");
  model.read("ej_ghz", cfg.model.params.ej_ghz);
  model.read("ej_over_ec", cfg.model.params.ej_over_ec);
  model.read("ec_ghz", cfg.model.params.charging_ghz);
  model.read("grid_sites", cfg.model.params.grid_sites);
  model.read("phase_min_rad", cfg.model.params.phase_min);
  model.read("phase_max_rad", cfg.model.params.phase_max);
  model.read("dim", cfg.model.dim);
  model.read("adjacent_couplings_only", cfg.model.adjacent_couplings_only);
  model.read("wavefunction_levels", cfg.model.wavefunction_levels);
  model.finish();

  Section pulse(doc, "pulse");
  pulse.read_family("family", cfg.pulse.family);
  pulse.read("tp_ns", cfg.pulse.tp_ns);
  pulse.read("w", cfg.pulse.w);
  pulse.read("theta_rad", cfg.pulse.theta_rad);
  pulse.read("alphas", cfg.pulse.alphas);
  pulse.read("a_x", cfg.pulse.a_x);
  pulse.read("a_y", cfg.pulse.a_y);
  pulse.read("detuning_ghz", cfg.pulse.detuning_ghz);
  pulse.read("optimize", cfg.pulse.optimize);
  pulse.finish();

  Section run(doc, "run");
  run.read("dt_ps", cfg.run.dt_ps);
  run.read("sample_dt_ps", cfg.run.sample_dt_ps);
  run.read("pad_factor", cfg.run.pad_factor);
  run.read("jobs", cfg.run.jobs);
  run.read("trajectory_stride", cfg.run.trajectory_stride);
  run.read("trajectory_level", cfg.run.trajectory_level);
  run.read("fidelity_trace", cfg.run.fidelity_trace);
  run.read("out_dir", cfg.run.out_dir);
  run.finish();

  Section sweep(doc, "sweep");
  sweep.read_grid("tp_ns", cfg.sweep.tp_ns);
  sweep.read("a_y", cfg.sweep.a_y);
  sweep.read("w", cfg.sweep.w);
  sweep.read_family("family", cfg.sweep.family);
  sweep.read("optimize", cfg.sweep.optimize);
  sweep.read("fom_windows_ns", cfg.sweep.fom_windows_ns);
  sweep.finish();

  Section opt(doc, "optimizer");
  double half_width_ghz = angular_to_ghz(cfg.optimizer.delta_half_width);
  double resolution_ghz = angular_to_ghz(cfg.optimizer.delta_resolution);
  opt.read("delta_half_width_ghz", half_width_ghz);
  opt.read("delta_resolution_ghz", resolution_ghz);
  opt.read("ax_min", cfg.optimizer.ax_min);
  opt.read("ax_max", cfg.optimizer.ax_max);
  opt.read("ax_resolution", cfg.optimizer.ax_resolution);
  opt.read("tol", cfg.optimizer.tol);
  opt.read("max_rounds", cfg.optimizer.max_rounds);
  opt.read("amplitude_first", cfg.optimizer.amplitude_first);
  opt.read("max_widenings", cfg.optimizer.max_widenings);
  std::string line_search = cfg.optimizer.line_search == LineSearch::kBrent ? "brent" : "golden";
  opt.read("line_search", line_search);
  opt.finish();
  if (line_search == "brent") {
    cfg.optimizer.line_search = LineSearch::kBrent;
  } else if (line_search == "golden") {
    cfg.optimizer.line_search = LineSearch::kGolden;
  } else {
    throw ValidationError("optimizer.line_search must be 'brent' or 'golden'");
  }
  cfg.optimizer.delta_half_width = ghz_to_angular(half_width_ghz);
  cfg.optimizer.delta_resolution = ghz_to_angular(resolution_ghz);

  Section spectrum(doc, "spectrum");
  spectrum.read("w", cfg.spectrum.w);
  spectrum.read_grid("tp_ns", cfg.spectrum.tp_ns);
  spectrum.read("a_y", cfg.spectrum.a_y);
  spectrum.read("pairs", cfg.spectrum.pairs);
  spectrum.read("linewidth_threshold", cfg.spectrum.linewidth_threshold);
  spectrum.read("reference_tp_ns", cfg.spectrum.reference_tp_ns);
  spectrum.read("reference_w", cfg.spectrum.reference_w);
  spectrum.finish();

  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("cannot read config '" + path + "'");
  json doc;
  try {
    doc = json::parse(buffer.str(), nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& ex) {
    throw ValidationError("config '" + path + "' is not valid JSON: " + ex.what());
  }
  return config_from_json(doc);
}

void RunConfig::validate() const {
  model.params.validate();
  if (model.dim < 2) throw ValidationError("model.dim must be at least 2");
  if (model.dim > model.params.grid_sites) throw ValidationError("model.dim exceeds grid_sites");
  if (model.wavefunction_levels < 1 || model.wavefunction_levels > model.params.grid_sites) {
    throw ValidationError("model.wavefunction_levels out of range");
  }

  require_finite(pulse.tp_ns, "pulse.tp_ns");
  require_finite(pulse.w, "pulse.w");
  require_finite(pulse.a_x, "pulse.a_x");
  require_finite(pulse.a_y, "pulse.a_y");
  require_finite(pulse.detuning_ghz, "pulse.detuning_ghz");
  (void)envelope();

  if (run.dt_ps && !(*run.dt_ps > 0.0 && std::isfinite(*run.dt_ps))) {
    throw ValidationError("run.dt_ps must be positive");
  }
  if (!(run.sample_dt_ps > 0.0) || !std::isfinite(run.sample_dt_ps)) {
    throw ValidationError("run.sample_dt_ps must be positive");
  }
  if (run.pad_factor < 1) throw ValidationError("run.pad_factor must be at least 1");
  if (run.jobs < 1) throw ValidationError("run.jobs must be at least 1");
  if (run.trajectory_stride < 0) throw ValidationError("run.trajectory_stride must be >= 0");
  if (run.trajectory_level < 0 || run.trajectory_level >= model.dim) {
    throw ValidationError("run.trajectory_level out of range");
  }

  require_ascending(sweep.tp_ns, "sweep.tp_ns");
  if (sweep.a_y.empty()) throw ValidationError("sweep.a_y must not be empty");
  for (double a : sweep.a_y) require_finite(a, "sweep.a_y");
  if (sweep.family == EnvelopeFamily::kGaussian && sweep.w.empty()) {
    throw ValidationError("sweep.w must not be empty");
  }
  for (double w : sweep.w) {
    if (!(w > 0.0) || !std::isfinite(w)) throw ValidationError("sweep.w entries must be positive");
  }
  for (const auto& [lo, hi] : sweep.fom_windows_ns) {
    if (!(lo < hi)) throw ValidationError("sweep.fom_windows_ns entries must satisfy start < end");
  }
  optimizer.validate();

  for (double w : spectrum.w) {
    if (!(w > 0.0) || !std::isfinite(w)) throw ValidationError("spectrum.w entries must be positive");
  }
  for (double t : spectrum.tp_ns) {
    if (!(t > 0.0) || !std::isfinite(t)) throw ValidationError("spectrum.tp_ns entries must be positive");
  }
  if (!(spectrum.linewidth_threshold > 0.0 && spectrum.linewidth_threshold < 1.0)) {
    throw ValidationError("spectrum.linewidth_threshold must lie in (0, 1)");
  }
  if (!(spectrum.reference_tp_ns > 0.0) || !(spectrum.reference_w > 0.0)) {
    throw ValidationError("spectrum reference pulse must have positive tp_ns and w");
  }
}

Envelope RunConfig::envelope() const {
  if (pulse.family == EnvelopeFamily::kGaussian) return GaussianEnvelope(pulse.tp_ns, pulse.w);
  return CosineEnvelope(pulse.tp_ns, pulse.theta_rad, pulse.alphas);
}

DriveConfig RunConfig::drive() const {
  return DriveConfig{envelope(), pulse.a_x, pulse.a_y, ghz_to_angular(pulse.detuning_ghz)};
}

json RunConfig::to_json() const {
  json doc;
  json& m = doc["model"];
  m["ej_ghz"] = model.params.ej_ghz;
  m["ej_over_ec"] = model.params.ej_over_ec;
  m["ec_ghz"] = model.params.charging_ghz ? json(*model.params.charging_ghz) : json(nullptr);
  m["grid_sites"] = model.params.grid_sites;
  m["phase_min_rad"] = model.params.phase_min;
  m["phase_max_rad"] = model.params.phase_max;
  m["dim"] = model.dim;
  m["adjacent_couplings_only"] = model.adjacent_couplings_only;
  m["wavefunction_levels"] = model.wavefunction_levels;

  json& p = doc["pulse"];
  p["family"] = to_string(pulse.family);
  p["tp_ns"] = pulse.tp_ns;
  p["w"] = pulse.w;
  p["theta_rad"] = pulse.theta_rad;
  p["alphas"] = pulse.alphas;
  p["a_x"] = pulse.a_x;
  p["a_y"] = pulse.a_y;
  p["detuning_ghz"] = pulse.detuning_ghz;
  p["optimize"] = pulse.optimize;

  json& r = doc["run"];
  r["dt_ps"] = run.dt_ps ? json(*run.dt_ps) : json(nullptr);
  r["sample_dt_ps"] = run.sample_dt_ps;
  r["pad_factor"] = run.pad_factor;
  r["jobs"] = run.jobs;
  r["trajectory_stride"] = run.trajectory_stride;
  r["trajectory_level"] = run.trajectory_level;
  r["fidelity_trace"] = run.fidelity_trace;
  r["out_dir"] = run.out_dir;

  json& s = doc["sweep"];
  s["tp_ns"] = sweep.tp_ns;
  s["a_y"] = sweep.a_y;
  s["w"] = sweep.w;
  s["family"] = to_string(sweep.family);
  s["optimize"] = sweep.optimize;
  s["fom_windows_ns"] = sweep.fom_windows_ns;

  json& o = doc["optimizer"];
  o["delta_half_width_ghz"] = angular_to_ghz(optimizer.delta_half_width);
  o["delta_resolution_ghz"] = angular_to_ghz(optimizer.delta_resolution);
  o["ax_min"] = optimizer.ax_min;
  o["ax_max"] = optimizer.ax_max;
  o["ax_resolution"] = optimizer.ax_resolution;
  o["tol"] = optimizer.tol;
  o["max_rounds"] = optimizer.max_rounds;
  o["amplitude_first"] = optimizer.amplitude_first;
  o["max_widenings"] = optimizer.max_widenings;
  o["line_search"] = optimizer.line_search == LineSearch::kBrent ? "brent" : "golden";

  json& sp = doc["spectrum"];
  sp["w"] = spectrum.w;
  sp["tp_ns"] = spectrum.tp_ns;
  sp["a_y"] = spectrum.a_y;
  sp["pairs"] = spectrum.pairs;
  sp["linewidth_threshold"] = spectrum.linewidth_threshold;
  sp["reference_tp_ns"] = spectrum.reference_tp_ns;
  sp["reference_w"] = spectrum.reference_w;
  return doc;
}

}  // namespace transmon
