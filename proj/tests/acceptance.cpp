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

// Acceptance run: prints one PASS/FAIL line per criterion and exits non-zero
// if any criterion fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "transmon/optimizer.hpp"
#include "transmon/spectra.hpp"

namespace transmon {
namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

std::vector<std::pair<int, Verdict>> g_results;

void report(int id, const std::string& title, Verdict v) {
  std::printf("%s criterion %d (%s): %s\n", v.pass ? "PASS" : "FAIL", id, title.c_str(),
              v.detail.c_str());
  std::fflush(stdout);
  g_results.emplace_back(id, std::move(v));
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

int jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

const TruncatedModel& model(int dim) {
  static std::map<int, TruncatedModel> cache;
  auto it = cache.find(dim);
  if (it == cache.end()) it = cache.emplace(dim, build_truncated_model({}, dim)).first;
  return it->second;
}

std::vector<double> range(double a, double b, double step) {
  std::vector<double> out;
  for (double x = a; x <= b + 1e-9; x += step) out.push_back(x);
  return out;
}

const std::vector<double> kDragAmps = {0.0, 1.0, 2.0, 2.5};

std::vector<FidelityCurve> run_sweep(int dim, EnvelopeFamily family, std::vector<double> cutoffs,
                                     std::vector<double> durations, std::vector<double> amps,
                                     bool optimize = true) {
  SweepSpec s;
  s.family = family;
  s.cutoffs = std::move(cutoffs);
  s.durations = std::move(durations);
  s.drag_amplitudes = std::move(amps);
  s.optimize = optimize;
  s.jobs = jobs();
  return sweep(model(dim), s);
}

const FidelityCurve& find_curve(const std::vector<FidelityCurve>& cs, double a_y,
                                std::optional<double> w = std::nullopt) {
  for (const auto& c : cs) {
    if (c.a_y == a_y && (!w || (c.cutoff && *c.cutoff == *w))) return c;
  }
  throw std::runtime_error("curve not found");
}

double at(const FidelityCurve& c, double tp) {
  for (const auto& p : c.points) {
    if (std::abs(p.duration - tp) < 1e-9) return p.infidelity;
  }
  throw std::runtime_error("t_p not on curve");
}

// First pulse width at which the log-interpolated infidelity drops below `level`.
double shoulder(const FidelityCurve& c, double level) {
  const auto& p = c.points;
  for (std::size_t i = 1; i < p.size(); ++i) {
    if (p[i].infidelity < level && p[i - 1].infidelity >= level) {
      const double a = std::log10(p[i - 1].infidelity);
      const double b = std::log10(p[i].infidelity);
      return p[i - 1].duration + (a - std::log10(level)) / (a - b) * (p[i].duration - p[i - 1].duration);
    }
  }
  return std::nan("");
}

// 1. Spectrum of the default junction.
Verdict model_spectrum() {
  const TransmonParams p;
  const LatticeHamiltonian h = build_lattice(p);
  const TransitionFrequencies tf = transition_frequencies(solve_eigensystem(h, 3));
  const double w01 = tf.omega01.ghz();
  const double ratio = tf.anharmonicity.ghz() / w01;
  const double ec = p.ec_ghz();
  const double analytic = std::sqrt(8.0 * p.ej_ghz * ec) - ec;
  const bool ok = std::abs(w01 - 6.0) <= 0.12 && std::abs(ratio - 0.04) <= 0.005 &&
                  std::abs(w01 - analytic) <= 0.03 * analytic;
  return {ok, "omega01=" + fmt("%.5f", w01) + " GHz, Delta2/omega01=" + fmt("%.5f", ratio) +
                  ", analytic=" + fmt("%.5f", analytic) + " GHz"};
}

// 2. Coupling ratios.
Verdict matrix_elements() {
  const TruncatedModel& m = model(4);
  const double l01 = std::abs(m.lambda(0, 1));
  const double r12 = std::abs(m.lambda(1, 2)) / l01;
  const double r23 = std::abs(m.lambda(2, 3)) / l01;
  const double r03 = std::abs(m.lambda(0, 3)) / l01;
  const bool ok = std::abs(r12 / std::sqrt(2.08) - 1.0) <= 0.01 && std::abs(r23 / 1.8 - 1.0) <= 0.02 &&
                  r03 >= 0.004 && r03 <= 0.016;
  return {ok, "l12/l01=" + fmt("%.5f", r12) + " (target " + fmt("%.5f", std::sqrt(2.08)) +
                  "), l23/l01=" + fmt("%.5f", r23) + ", l03/l01=" + fmt("%.5f", r03)};
}

// 3. Three-level model against the full lattice under a slow drive.
Verdict truncation_equivalence() {
  const TransmonParams p;
  const LatticeHamiltonian h = build_lattice(p);
  const EigenSystem eigs = solve_eigensystem(h, 3);
  const TruncatedModel m = truncate(eigs, phase_operator(h), 3);
  const DriveConfig d{GaussianEnvelope(100.0, 0.5), 1.0, 0.0, 0.0};
  const LatticeTrajectory lat = evolve_lattice(h, eigs, m, d, 0, 3, 20000);
  EvolveOptions o;
  o.initial_levels = {0};
  o.trajectory_stride = 1;
  const PropagationResult r = evolve(m, d, o);
  double worst = 0.0;
  std::size_t j = 0;
  for (std::size_t i = 0; i < lat.times.size(); ++i) {
    const double t = lat.times[i];
    while (j + 1 < r.trajectory.size() && r.trajectory[j + 1].time < t) ++j;
    const auto& a = r.trajectory[j];
    const auto& b = r.trajectory[std::min(j + 1, r.trajectory.size() - 1)];
    const double f = b.time > a.time ? (t - a.time) / (b.time - a.time) : 0.0;
    for (int level = 0; level < 3; ++level) {
      const double pm = (1 - f) * a.populations(level) + f * b.populations(level);
      worst = std::max(worst, std::abs(pm - lat.populations[i](level)));
    }
  }
  return {worst <= 1e-3, "max population difference " + fmt("%.3e", worst) + " over " +
                             std::to_string(lat.times.size()) + " samples (t_p=100 ns, W=0.5)"};
}

// 4. Four versus eight levels, and the three-to-four level shoulder shift.
Verdict saturation(const std::vector<FidelityCurve>& d3_w06, const std::vector<FidelityCurve>& d4_w06) {
  const std::vector<double> tps = {10.0, 16.0, 22.0, 28.0};
  const std::vector<double> amps = {0.0, 2.0};
  const auto d4 = run_sweep(4, EnvelopeFamily::kGaussian, {0.6, 1.0}, tps, amps);
  const auto d8 = run_sweep(8, EnvelopeFamily::kGaussian, {0.6, 1.0}, tps, amps);
  double worst = 0.0;
  double worst_rel = 0.0;
  for (std::size_t c = 0; c < d4.size(); ++c) {
    for (std::size_t i = 0; i < tps.size(); ++i) {
      const double a = d4[c].points[i].infidelity;
      const double b = d8[c].points[i].infidelity;
      worst = std::max(worst, std::abs(a - b));
      worst_rel = std::max(worst_rel, std::abs(a - b) / std::max(a, b));
    }
  }
  std::ostringstream shifts;
  double sum = 0.0;
  int n = 0;
  for (double a : kDragAmps) {
    const double s = shoulder(find_curve(d4_w06, a), 1e-6) - shoulder(find_curve(d3_w06, a), 1e-6);
    shifts << (n ? "," : "") << fmt("%.2f", s);
    if (std::isfinite(s)) {
      sum += s;
      ++n;
    }
  }
  const double mean = n ? sum / n : std::nan("");
  const bool identical = worst <= 1e-8;
  const bool shifted = n == static_cast<int>(kDragAmps.size()) && mean >= 3.0 && mean <= 7.0;
  return {identical && shifted,
          std::string(identical ? "" : "[dim4 vs dim8 differ] ") + "max |dim4-dim8|=" +
              fmt("%.3e", worst) + " (relative " + fmt("%.3f", worst_rel) + "); shoulder shift mean " +
              fmt("%.2f", mean) + " ns, per A_y {0,1,2,2.5}: " + shifts.str()};
}

// 5. Unoptimized half DRAG at mid-grid.
Verdict unoptimized_drag() {
  const double tp = 19.0;
  const auto cs = run_sweep(3, EnvelopeFamily::kGaussian, {1.0}, {tp - 1, tp, tp + 1}, {0.0, 1.0}, false);
  const double plain = at(find_curve(cs, 0.0), tp);
  const double half = at(find_curve(cs, 1.0), tp);
  return {plain >= 10.0 * half, "t_p=19 ns: 1-F'=" + fmt("%.3e", plain) + " -> " + fmt("%.3e", half) +
                                    " (x" + fmt("%.1f", plain / half) + ")"};
}

// 6. Optimized full DRAG at 10 ns.
Verdict optimized_drag(const std::vector<FidelityCurve>& w1) {
  const double v = at(find_curve(w1, 2.0), 10.0);
  return {v <= 1e-5, "W=1, A_y=2, t_p=10 ns: 1-F'=" + fmt("%.3e", v)};
}

std::vector<double> ranking(const std::vector<FidelityCurve>& cs, double tp) {
  std::vector<double> amps = kDragAmps;
  std::sort(amps.begin(), amps.end(),
            [&](double a, double b) { return at(find_curve(cs, a), tp) < at(find_curve(cs, b), tp); });
  return amps;
}

// 7. Cosine pulse against the W=1 Gaussian.
Verdict cosine_parity(const std::vector<FidelityCurve>& cos, const std::vector<FidelityCurve>& w1) {
  int rank_mismatch = 0;
  int sign_mismatch = 0;
  double worst = 1.0;
  std::string worst_at;
  const auto& tps = cos.front().points;
  for (const auto& p : tps) {
    const double tp = p.duration;
    if (ranking(cos, tp) != ranking(w1, tp)) ++rank_mismatch;
    for (double a : kDragAmps) {
      const double x = at(find_curve(cos, a), tp);
      const double y = at(find_curve(w1, a), tp);
      const double ratio = std::max(x, y) / std::min(x, y);
      if (ratio > worst) {
        worst = ratio;
        worst_at = "A_y=" + fmt("%g", a) + ", t_p=" + fmt("%g", tp);
      }
      const auto& pc = find_curve(cos, a).points;
      const auto& pg = find_curve(w1, a).points;
      for (std::size_t i = 0; i < pc.size(); ++i) {
        if (std::abs(pc[i].duration - tp) > 1e-9) continue;
        for (std::size_t k = 0; k < pg.size(); ++k) {
          if (std::abs(pg[k].duration - tp) > 1e-9) continue;
          if ((pc[i].detuning < 0) != (pg[k].detuning < 0)) ++sign_mismatch;
        }
      }
    }
  }
  const bool ok = rank_mismatch == 0 && worst <= 10.0;
  return {ok, std::to_string(rank_mismatch) + " t_p with a different A_y ranking; largest pointwise ratio " +
                  fmt("%.1f", worst) + " at " + worst_at + "; detuning sign mismatches " +
                  std::to_string(sign_mismatch)};
}

// 8. Spectral hole below the qubit line.
Verdict spectral_hole() {
  const TruncatedModel& m = model(3);
  const double f01 = angular_to_ghz(m.omega01());
  const double d2 = angular_to_ghz(*m.anharmonicity());
  auto depth = [&](double w) {
    const DriveConfig plain{GaussianEnvelope(15.0, w), 1.0, 0.0, 0.0};
    DriveConfig drag = plain;
    drag.a_y = 1.0;
    return spectral_hole_depth(power_spectrum(drag, m, 0.005, 8), power_spectrum(plain, m, 0.005, 8),
                               f01 - 2.0 * d2, f01 - d2);
  };
  const double sharp = depth(1.0);
  const double soft = depth(0.5);
  const bool ok = sharp < 1.0 && soft > 0.5;
  return {ok, std::string(soft > 0.5 ? "" : "[W=0.5 also shows a hole] ") + "W=1 ratio " +
                  fmt("%.4f", sharp) + " (<1), W=0.5 ratio " + fmt("%.4f", soft) + " (>0.5)"};
}

// 9. Little DRAG benefit for long W=0.6 pulses.
Verdict low_weight(const std::vector<FidelityCurve>& w06) {
  double worst = 0.0;
  double worst_tp = 0.0;
  double mean_plain = 0.0;
  double mean_best = 0.0;
  int n = 0;
  for (const auto& p : find_curve(w06, 0.0).points) {
    if (p.duration <= 20.0) continue;
    double best = 1.0;
    for (double a : kDragAmps) {
      if (a > 0.0) best = std::min(best, at(find_curve(w06, a), p.duration));
    }
    const double gain = p.infidelity / best;
    if (gain > worst) {
      worst = gain;
      worst_tp = p.duration;
    }
    mean_plain += p.infidelity;
    mean_best += best;
    ++n;
  }
  return {worst < 10.0, "largest DRAG gain x" + fmt("%.1f", worst) + " at t_p=" + fmt("%g", worst_tp) +
                            " ns; window-mean gain x" + fmt("%.1f", mean_plain / mean_best) + " over " +
                            std::to_string(n) + " widths"};
}

// 10. Integrator and envelope checks.
Verdict numerical_integrity() {
  const TruncatedModel& m = model(3);
  double unit = 0.0;
  double oracle = 0.0;
  double halving = 0.0;
  for (double ay : {0.0, 2.0}) {
    const DriveConfig d{GaussianEnvelope(10.0, 1.0), 1.0, ay, ghz_to_angular(-0.013)};
    const double dt = default_time_step(m, d);
    EvolveOptions coarse;
    coarse.dt = dt;
    EvolveOptions fine;
    fine.dt = dt / 2.0;
    const PropagationResult a = evolve(m, d, coarse);
    const PropagationResult b = evolve(m, d, fine);
    const auto n = a.propagator.cols();
    unit = std::max(unit, (a.propagator.adjoint() * a.propagator - Eigen::MatrixXcd::Identity(n, n))
                              .cwiseAbs()
                              .maxCoeff());
    halving = std::max(halving, (a.propagator - b.propagator).cwiseAbs().maxCoeff());

    EvolveOptions frozen = coarse;
    frozen.piecewise_constant_drive = true;
    const PropagationResult r = evolve(m, d, frozen);
    const DriveSignal signal(d, m);
    const TimeGrid grid = TimeGrid::uniform(d.duration(), dt);
    const Eigen::MatrixXcd h0 = m.h0().cast<std::complex<double>>().asDiagonal();
    const Eigen::MatrixXcd sx = m.sigma_x().cast<std::complex<double>>();
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(3, 3);
    for (int k = 0; k < grid.steps; ++k) {
      const double s = signal.sample(grid.step_start(k)).total;
      u = testing::expm(std::complex<double>(0.0, -grid.step_size(k)) * (h0 + s * sx)) * u;
    }
    oracle = std::max(oracle, (r.propagator - u).cwiseAbs().maxCoeff());
  }

  double norm = 0.0;
  double deriv = 0.0;
  for (double w : {0.4, 0.6, 1.0, 1.2}) {
    for (double tp : {5.0, 15.0, 30.0}) {
      const GaussianEnvelope g(tp, w);
      norm = std::max(norm, std::abs(testing::simpson([&](double t) { return g.value(t); }, 0.0, tp, 4000) - 1.0));
      const double h = 1e-5 * tp;
      for (int i = 1; i < 50; ++i) {
        const double t = tp * i / 50.0;
        const double fd = (g.value(t + h) - g.value(t - h)) / (2.0 * h);
        deriv = std::max(deriv, std::abs(fd - g.derivative(t)));
      }
    }
  }
  const bool ok = unit <= 1e-8 && oracle <= 1e-8 && halving <= 1e-9 && norm <= 1e-9 && deriv <= 1e-6;
  return {ok, "unitarity " + fmt("%.1e", unit) + ", matrix-exponential " + fmt("%.1e", oracle) +
                  ", step halving " + fmt("%.1e", halving) + ", unit area " + fmt("%.1e", norm) +
                  ", derivative " + fmt("%.1e", deriv)};
}

// 11. Figure-of-merit ranking across cutoffs.
Verdict fom_ranking(const std::vector<FidelityCurve>& gauss) {
  auto best_of = [&](double lo, double hi, std::optional<double> only_w) {
    FomResult best{};
    best.fom = -1.0;
    for (const auto& c : gauss) {
      if (only_w && *c.cutoff != *only_w) continue;
      const FomResult f = figure_of_merit(c, lo, hi);
      if (f.fom > best.fom) best = f;
    }
    return best;
  };
  const FomResult fast = best_of(10.0, 18.0, std::nullopt);
  const bool fast_ok = *fast.cutoff == 1.0 && std::abs(fast.a_y - 2.5) <= 0.5;

  const FomResult slow = best_of(17.0, 25.0, std::nullopt);
  const FomResult slow06 = best_of(17.0, 25.0, 0.6);
  double lo = 1.0;
  double hi = 0.0;
  for (const auto& c : gauss) {
    if (*c.cutoff != 0.6) continue;
    const double f = figure_of_merit(c, 17.0, 25.0).fom;
    lo = std::min(lo, f);
    hi = std::max(hi, f);
  }
  const bool slow_ok = slow.fom - slow06.fom <= 1e-6 && hi - lo <= 1e-6;
  return {fast_ok && slow_ok,
          "[10,18] best W=" + fmt("%g", *fast.cutoff) + " A_y=" + fmt("%g", fast.a_y) +
              " FOM=" + fmt("%.8f", fast.fom) + "; [17,25] best W=" + fmt("%g", *slow.cutoff) +
              " A_y=" + fmt("%g", slow.a_y) + ", W=0.6 gap " + fmt("%.1e", slow.fom - slow06.fom) +
              ", W=0.6 A_y spread " + fmt("%.1e", hi - lo)};
}

int run() {
  report(1, "model spectrum", model_spectrum());
  report(2, "matrix elements", matrix_elements());
  report(3, "truncation equivalence", truncation_equivalence());

  const std::vector<double> grid = range(8.0, 30.0, 1.0);
  const auto gauss = run_sweep(3, EnvelopeFamily::kGaussian, {0.4, 0.6, 0.8, 1.0, 1.2}, grid, kDragAmps);
  std::vector<FidelityCurve> w1;
  std::vector<FidelityCurve> w06;
  for (const auto& c : gauss) {
    if (*c.cutoff == 1.0) w1.push_back(c);
    if (*c.cutoff == 0.6) w06.push_back(c);
  }
  const auto d4_w06 = run_sweep(4, EnvelopeFamily::kGaussian, {0.6}, grid, kDragAmps);
  report(4, "multi-level saturation", saturation(w06, d4_w06));
  report(5, "unoptimized DRAG", unoptimized_drag());
  report(6, "optimized DRAG", optimized_drag(w1));
  const auto cos = run_sweep(3, EnvelopeFamily::kCosine, {}, range(8.0, 30.0, 2.0), kDragAmps);
  report(7, "cosine-pulse parity", cosine_parity(cos, w1));
  report(8, "spectral hole", spectral_hole());
  report(9, "low-spectral-weight regime", low_weight(w06));
  report(10, "numerical integrity", numerical_integrity());
  report(11, "FOM ranking", fom_ranking(gauss));

  int failed = 0;
  for (const auto& [id, v] : g_results) failed += v.pass ? 0 : 1;
  std::printf("%d of %zu criteria passed\n", static_cast<int>(g_results.size()) - failed, g_results.size());
  return failed == 0 ? 0 : 1;
}

}  // namespace
}  // namespace transmon

int main() {
  try {
    return transmon::run();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "acceptance run aborted: %s\n", e.what());
    return 2;
  }
}
