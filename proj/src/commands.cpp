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

#include "transmon/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "transmon/output.hpp"
#include "transmon/propagator.hpp"
#include "transmon/spectra.hpp"

namespace transmon {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string optional_cell(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string();
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

std::string label(const std::string& prefix, double v) { return prefix + format_number(v); }

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_double(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("cannot parse " + what + " value '" + text + "'");
  }
}

void add_fom_rows(const std::vector<FidelityCurve>& curves,
                  const std::vector<std::pair<double, double>>& windows, CsvWriter& csv,
                  json& summary) {
  summary = json::array();
  for (const auto& [lo, hi] : windows) {
    json entry;
    entry["window_ns"] = {lo, hi};
    json values = json::array();
    std::optional<FomResult> best;
    for (const auto& curve : curves) {
      if (curve.points.empty() || lo < curve.points.front().duration ||
          hi > curve.points.back().duration) {
        continue;
      }
      const FomResult r = figure_of_merit(curve, lo, hi);
      csv.row({format_number(lo), format_number(hi), to_string(curve.family),
               optional_cell(curve.cutoff), format_number(curve.a_y), format_number(r.fom)});
      values.push_back({{"family", to_string(curve.family)},
                        {"w", optional_json(curve.cutoff)},
                        {"a_y", curve.a_y},
                        {"fom", r.fom}});
      if (!best || r.fom > best->fom) best = r;
    }
    entry["values"] = values;
    if (best) {
      entry["best"] = {{"w", optional_json(best->cutoff)}, {"a_y", best->a_y}, {"fom", best->fom}};
    } else {
      entry["best"] = nullptr;
      entry["note"] = "window outside every curve";
    }
    summary.push_back(entry);
  }
}

}  // namespace

TruncatedModel model_from_config(const RunConfig& cfg) {
  TruncatedModel model = build_truncated_model(cfg.model.params, cfg.model.dim);
  return cfg.model.adjacent_couplings_only ? model.adjacent_couplings_only() : model;
}

CommandOutput cmd_model(const RunConfig& cfg, const fs::path& out_dir) {
  const json config = cfg.to_json();
  const TransmonParams& p = cfg.model.params;
  const LatticeHamiltonian h = build_lattice(p);
  const int levels = std::max({cfg.model.wavefunction_levels, cfg.model.dim, 4});
  const EigenSystem eigs = solve_eigensystem(h, levels);
  const TransitionFrequencies tf = transition_frequencies(eigs);
  const Eigen::VectorXd phi = phase_operator(h);
  const TruncatedModel model = model_from_config(cfg);
  const TruncatedModel four = truncate(eigs, phi, 4);

  CommandOutput out;
  std::vector<std::string> header = {"index", "phi_rad"};
  for (int j = 0; j < cfg.model.wavefunction_levels; ++j) header.push_back("psi" + std::to_string(j));
  CsvWriter wf(header);
  for (int k = 0; k < h.size(); ++k) {
    std::vector<double> row = {static_cast<double>(k), h.phase_coords[k]};
    for (int j = 0; j < cfg.model.wavefunction_levels; ++j) row.push_back(eigs.states(k, j));
    wf.row(row);
  }
  out.files.push_back(out_dir / "wavefunctions.csv");
  wf.write(out.files.back(), config);

  json energies = json::array();
  for (int j = 0; j < levels; ++j) {
    energies.push_back(angular_to_ghz(eigs.energies(j) - eigs.energies(0)));
  }
  const double ej = p.ej_ghz;
  const double ec = p.ec_ghz();
  const double l01 = four.lambda(0, 1);
  json result;
  result["omega01_ghz"] = tf.omega01.ghz();
  result["omega12_ghz"] = tf.omega12.ghz();
  result["anharmonicity_ghz"] = tf.anharmonicity.ghz();
  result["anharmonicity_over_omega01"] = tf.anharmonicity.ghz() / tf.omega01.ghz();
  result["analytic_omega01_ghz"] = std::sqrt(8.0 * ej * ec) - ec;
  result["ec_ghz"] = ec;
  result["hopping_ghz"] = angular_to_ghz(h.hopping);
  result["spacing_rad"] = h.spacing;
  result["energies_ghz"] = energies;
  result["lambda_ratios"] = {{"lambda12_over_lambda01", four.lambda(1, 2) / l01},
                             {"lambda23_over_lambda01", four.lambda(2, 3) / l01},
                             {"lambda03_over_lambda01", four.lambda(0, 3) / l01}};
  result["truncated_model"] = to_json(model);
  out.files.push_back(out_dir / "model.json");
  write_report(out.files.back(), config, result);

  std::ostringstream s;
  s << "omega01 = " << tf.omega01.ghz() << " GHz, Delta2/omega01 = "
    << tf.anharmonicity.ghz() / tf.omega01.ghz();
  out.summary = s.str();
  return out;
}

CommandOutput cmd_simulate(const RunConfig& cfg, const fs::path& out_dir) {
  const json config = cfg.to_json();
  const TruncatedModel model = model_from_config(cfg);
  DriveConfig drive = cfg.drive();
  json result;

  if (cfg.pulse.optimize) {
    OptimizeConfig oc = cfg.optimizer;
    oc.dt = cfg.dt_ns();
    const OptimizedPulse best = optimize_pulse(model, drive, oc);
    drive.detuning = best.detuning;
    drive.a_x = best.a_x;
    result["optimization"] = {{"detuning_ghz", angular_to_ghz(best.detuning)},
                              {"a_x", best.a_x},
                              {"infidelity", best.infidelity},
                              {"rounds", best.rounds},
                              {"evaluations", best.evaluations},
                              {"warnings", best.warnings}};
  }

  EvolveOptions options;
  options.dt = cfg.dt_ns();
  options.trajectory_stride = cfg.run.trajectory_stride;
  options.trajectory_level = cfg.run.trajectory_level;
  const PropagationResult prop = evolve(model, drive, options);
  const FidelityReport report = fidelity_report(prop);
  const DriveSignal signal(drive, model);

  result["drive"] = {{"family", to_string(cfg.pulse.family)},
                     {"tp_ns", drive.duration()},
                     {"a_x", drive.a_x},
                     {"a_y", drive.a_y},
                     {"detuning_ghz", angular_to_ghz(drive.detuning)},
                     {"carrier_ghz", angular_to_ghz(signal.carrier())},
                     {"base_amplitude", signal.base_amplitude()}};
  result["fidelity"] = {{"f_two_state", report.f_two_state},
                        {"infidelity", 1.0 - report.f_two_state},
                        {"f_full", report.f_full},
                        {"gamma2", optional_json(report.gamma2)},
                        {"leakage_ratio", optional_json(report.leakage_ratio)}};
  result["propagator"] = {{"re", matrix_json(prop.propagator.real())},
                          {"im", matrix_json(prop.propagator.imag())}};
  result["dt_ns"] = prop.dt_used;
  result["steps"] = prop.steps;

  CommandOutput out;
  out.files.push_back(out_dir / "report.json");
  write_report(out.files.back(), config, result);

  if (!prop.trajectory.empty()) {
    std::vector<std::string> header = {"t_ns"};
    for (int j = 0; j < model.dim(); ++j) header.push_back("p" + std::to_string(j));
    CsvWriter traj(header);
    traj.comment("initial level " + std::to_string(cfg.run.trajectory_level));
    for (const auto& sample : prop.trajectory) {
      std::vector<double> row = {sample.time};
      for (int j = 0; j < model.dim(); ++j) row.push_back(sample.populations(j));
      traj.row(row);
    }
    out.files.push_back(out_dir / "trajectory.csv");
    traj.write(out.files.back(), config);
  }

  const SampledSignal s = sample_drive(drive, model, cfg.run.sample_dt_ps * 1e-3);
  CsvWriter sig({"t_ns", "s_x", "s_y", "s"});
  for (std::size_t i = 0; i < s.times.size(); ++i) {
    sig.row(std::vector<double>{s.times[i], s.in_phase[i], s.quadrature[i], s.total[i]});
  }
  out.files.push_back(out_dir / "signal.csv");
  sig.write(out.files.back(), config);

  if (cfg.run.fidelity_trace) {
    const int stride = std::max(cfg.run.trajectory_stride, 1);
    CsvWriter trace({"t_ns", "f_lab", "f_rotating"});
    for (const auto& pt : fidelity_trace(model, drive, stride, cfg.dt_ns())) {
      trace.row(std::vector<double>{pt.time, pt.lab, pt.rotating});
    }
    out.files.push_back(out_dir / "fidelity_trace.csv");
    trace.write(out.files.back(), config);
  }

  std::ostringstream msg;
  msg << "1 - F' = " << 1.0 - report.f_two_state << ", F = " << report.f_full;
  out.summary = msg.str();
  return out;
}

CommandOutput cmd_sweep(const RunConfig& cfg, const fs::path& out_dir) {
  const json config = cfg.to_json();
  const TruncatedModel model = model_from_config(cfg);
  SweepSpec spec;
  spec.durations = cfg.sweep.tp_ns;
  spec.drag_amplitudes = cfg.sweep.a_y;
  spec.cutoffs = cfg.sweep.w;
  spec.family = cfg.sweep.family;
  spec.optimize = cfg.sweep.optimize;
  spec.optimizer = cfg.optimizer;
  spec.optimizer.dt = cfg.dt_ns();
  spec.jobs = cfg.run.jobs;
  const std::vector<FidelityCurve> curves = sweep(model, spec);

  CsvWriter csv({"family", "dim", "w", "a_y", "optimized", "tp_ns", "infidelity",
                 "infidelity_floored", "detuning_ghz", "a_x", "gamma2", "leakage_ratio",
                 "slope_per_ns", "evaluations"});
  csv.comment("infidelity_floored = max(infidelity, " + format_number(kInfidelityFloor) + ")");
  json curve_summary = json::array();
  for (const auto& c : curves) {
    double best = 1.0;
    double best_tp = 0.0;
    for (const auto& p : c.points) {
      const double ratio_den = p.infidelity;
      std::optional<double> ratio;
      if (p.gamma2 && ratio_den > 0.0) ratio = *p.gamma2 / ratio_den;
      csv.row({to_string(c.family), std::to_string(c.dim), optional_cell(c.cutoff),
               format_number(c.a_y), c.optimized ? "1" : "0", format_number(p.duration),
               format_number(p.infidelity), format_number(std::max(p.infidelity, kInfidelityFloor)),
               format_number(angular_to_ghz(p.detuning)), format_number(p.a_x),
               optional_cell(p.gamma2), optional_cell(ratio), format_number(p.slope),
               std::to_string(p.evaluations)});
      if (p.infidelity < best) {
        best = p.infidelity;
        best_tp = p.duration;
      }
    }
    curve_summary.push_back({{"family", to_string(c.family)},
                             {"w", optional_json(c.cutoff)},
                             {"a_y", c.a_y},
                             {"min_infidelity", best},
                             {"at_tp_ns", best_tp}});
  }
  CommandOutput out;
  out.files.push_back(out_dir / "curves.csv");
  csv.write(out.files.back(), config);

  CsvWriter fom({"window_start_ns", "window_end_ns", "family", "w", "a_y", "fom"});
  json fom_summary;
  add_fom_rows(curves, cfg.sweep.fom_windows_ns, fom, fom_summary);
  out.files.push_back(out_dir / "fom.csv");
  fom.write(out.files.back(), config);

  json result;
  result["dim"] = model.dim();
  result["curves"] = curve_summary;
  result["fom"] = fom_summary;
  out.files.push_back(out_dir / "sweep.json");
  write_report(out.files.back(), config, result);

  out.summary = std::to_string(curves.size()) + " curves x " +
                std::to_string(cfg.sweep.tp_ns.size()) + " durations";
  return out;
}

CommandOutput cmd_spectrum(const RunConfig& cfg, const fs::path& out_dir) {
  const json config = cfg.to_json();
  const TruncatedModel model = model_from_config(cfg);
  const double sample_dt = cfg.run.sample_dt_ps * 1e-3;
  const int pad = cfg.run.pad_factor;
  const SpectrumSection& sc = cfg.spectrum;

  const DriveConfig reference{GaussianEnvelope(sc.reference_tp_ns, sc.reference_w), 1.0, 0.0, 0.0};
  const double ref_peak = power_spectrum(reference, model, sample_dt, pad).peak();
  const double w01 = angular_to_ghz(model.omega01());
  std::optional<double> delta2;
  if (const auto d2 = model.anharmonicity()) delta2 = angular_to_ghz(*d2);

  CommandOutput out;
  json entries = json::array();
  for (double w : sc.w) {
    for (double tp : sc.tp_ns) {
      for (double a_y : sc.a_y) {
        const DriveConfig drive{GaussianEnvelope(tp, w), 1.0, a_y, 0.0};
        const SpectrumResult spec = normalized(power_spectrum(drive, model, sample_dt, pad), ref_peak);
        std::optional<SpectrumResult> plain;
        if (sc.pairs && a_y != 0.0) {
          plain = normalized(power_spectrum(DriveConfig{GaussianEnvelope(tp, w), 1.0, 0.0, 0.0},
                                            model, sample_dt, pad),
                             ref_peak);
        }
        std::vector<std::string> header = {"f_ghz", "magnitude"};
        if (plain) header.push_back("magnitude_no_drag");
        CsvWriter csv(header);
        csv.comment("magnitude = dt*|DFT| divided by " + format_number(ref_peak) +
                    " (carrier peak of the A_y=0 reference pulse)");
        for (std::size_t k = 0; k < spec.freqs_ghz.size(); ++k) {
          std::vector<double> row = {spec.freqs_ghz[k], spec.magnitude[k]};
          if (plain) row.push_back(plain->magnitude[k]);
          csv.row(row);
        }
        const std::string name =
            "spectrum_" + label("w", w) + "_" + label("tp", tp) + "_" + label("ay", a_y) + ".csv";
        out.files.push_back(out_dir / name);
        csv.write(out.files.back(), config);

        json e = {{"file", name},
                  {"w", w},
                  {"tp_ns", tp},
                  {"a_y", a_y},
                  {"peak_ghz", spec.peak_frequency_ghz()},
                  {"bin_width_ghz", spec.bin_width_ghz()},
                  {"linewidth_ghz", linewidth(spec, sc.linewidth_threshold)},
                  {"power_at_omega01_minus_1ghz", std::pow(spec.magnitude_at(w01 - 1.0), 2)}};
        if (plain && delta2) {
          e["hole_depth"] = spectral_hole_depth(spec, *plain, w01 - 2.0 * *delta2, w01 - *delta2);
        }
        entries.push_back(e);
      }
    }
  }
  json result;
  result["omega01_ghz"] = w01;
  result["anharmonicity_ghz"] = optional_json(delta2);
  result["reference_peak"] = ref_peak;
  result["linewidth_threshold"] = sc.linewidth_threshold;
  result["spectra"] = entries;
  out.files.push_back(out_dir / "spectrum.json");
  write_report(out.files.back(), config, result);
  out.summary = std::to_string(entries.size()) + " spectra";
  return out;
}

std::vector<FidelityCurve> read_curves_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open curves file " + path.string());
  std::string line;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    header = split_csv_line(line);
    break;
  }
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < header.size(); ++i) col[header[i]] = i;
  for (const char* need : {"family", "dim", "w", "a_y", "optimized", "tp_ns", "infidelity"}) {
    if (!col.count(need)) throw ValidationError("curves file lacks column '" + std::string(need) + "'");
  }

  std::vector<FidelityCurve> curves;
  std::map<std::string, std::size_t> index;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size()) throw ValidationError("malformed row in " + path.string());
    const std::string key = cells[col["family"]] + "|" + cells[col["dim"]] + "|" +
                            cells[col["w"]] + "|" + cells[col["a_y"]] + "|" + cells[col["optimized"]];
    auto it = index.find(key);
    if (it == index.end()) {
      FidelityCurve c;
      c.family = envelope_family_from_string(cells[col["family"]]);
      c.dim = static_cast<int>(parse_double(cells[col["dim"]], "dim"));
      if (!cells[col["w"]].empty()) c.cutoff = parse_double(cells[col["w"]], "w");
      c.a_y = parse_double(cells[col["a_y"]], "a_y");
      c.optimized = cells[col["optimized"]] == "1";
      it = index.emplace(key, curves.size()).first;
      curves.push_back(c);
    }
    CurvePoint p;
    p.duration = parse_double(cells[col["tp_ns"]], "tp_ns");
    p.infidelity = parse_double(cells[col["infidelity"]], "infidelity");
    auto& pts = curves[it->second].points;
    if (!pts.empty() && !(p.duration > pts.back().duration)) {
      throw ValidationError("curve durations in " + path.string() + " are not ascending");
    }
    pts.push_back(p);
  }
  if (curves.empty()) throw ValidationError("no curves in " + path.string());
  return curves;
}

CommandOutput cmd_fom(const RunConfig& cfg, const fs::path& curves_csv, const fs::path& out_dir) {
  const json config = cfg.to_json();
  const auto curves = read_curves_csv(curves_csv);
  CsvWriter fom({"window_start_ns", "window_end_ns", "family", "w", "a_y", "fom"});
  json summary;
  add_fom_rows(curves, cfg.sweep.fom_windows_ns, fom, summary);
  CommandOutput out;
  out.files.push_back(out_dir / "fom.csv");
  fom.write(out.files.back(), config);
  json result;
  result["source"] = curves_csv.filename().string();
  result["fom"] = summary;
  out.files.push_back(out_dir / "fom.json");
  write_report(out.files.back(), config, result);
  out.summary = std::to_string(summary.size()) + " windows";
  return out;
}

}  // namespace transmon
