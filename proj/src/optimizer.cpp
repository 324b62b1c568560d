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

#include "transmon/optimizer.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

namespace transmon {

void OptimizeConfig::validate() const {
  if (!(delta_half_width > 0.0) || !(ax_max > ax_min)) {
    throw ValidationError("optimizer brackets must be non-empty");
  }
  if (!(tol > 0.0)) throw ValidationError("optimizer tolerance must be positive");
  if (max_rounds < 1) throw ValidationError("optimizer needs at least one round");
  if (!(delta_resolution > 0.0) || !(ax_resolution > 0.0)) {
    throw ValidationError("line-search resolutions must be positive");
  }
  if (max_widenings < 0) throw ValidationError("max_widenings must be non-negative");
}

namespace {

struct Coordinate {
  const char* name;
  double value;
  double lo;
  double hi;
  double resolution;
};

}  // namespace

OptimizedPulse optimize_pulse(const TruncatedModel& model, const DriveConfig& drive,
                              const OptimizeConfig& cfg) {
  cfg.validate();

  // The step must resolve the fastest carrier the search can reach.
  DriveConfig fastest = drive;
  fastest.detuning =
      std::abs(drive.detuning) + cfg.delta_half_width * std::pow(2.0, cfg.max_widenings);
  const double dt = cfg.dt > 0.0 ? cfg.dt : default_time_step(model, fastest);
  const Evolver evolver(model, drive.envelope, dt);

  EvolveOptions qubit;
  qubit.initial_levels = {0, 1};

  OptimizedPulse out;
  auto objective = [&](double detuning, double a_x) {
    DriveConfig d = drive;
    d.detuning = detuning;
    d.a_x = a_x;
    ++out.evaluations;
    return 1.0 - two_state_fidelity(evolver.run(d, qubit));
  };

  out.detuning = drive.detuning;
  out.a_x = drive.a_x;
  out.infidelity = objective(out.detuning, out.a_x);
  out.history.push_back(out.infidelity);

  Coordinate delta{"detuning", drive.detuning, drive.detuning - cfg.delta_half_width,
                   drive.detuning + cfg.delta_half_width, cfg.delta_resolution};
  Coordinate amp{"A_x", drive.a_x, cfg.ax_min, cfg.ax_max, cfg.ax_resolution};

  auto search = [&](Coordinate& c, bool is_delta) {
    int widenings = 0;
    while (true) {
      auto along = [&](double x) {
        return is_delta ? objective(x, out.a_x) : objective(out.detuning, x);
      };
      const LineMinimum lm = cfg.line_search == LineSearch::kBrent
                                 ? brent_minimize(along, c.lo, c.hi, c.resolution)
                                 : golden_section(along, c.lo, c.hi, c.resolution);
      const double start = c.value;
      if (lm.value < out.infidelity) {
        out.infidelity = lm.value;
        c.value = lm.x;
        (is_delta ? out.detuning : out.a_x) = lm.x;
      }
      const double width = c.hi - c.lo;
      const double edge = 0.01 * width;
      const bool pinned = c.value - c.lo < edge || c.hi - c.value < edge;
      if (!pinned || c.value == start) return;
      if (widenings == cfg.max_widenings) {
        std::ostringstream msg;
        msg << c.name << " optimum pinned at bracket edge " << c.value << " after " << widenings
            << " widenings";
        out.warnings.push_back(msg.str());
        return;
      }
      ++widenings;
      std::ostringstream msg;
      msg << "widening " << c.name << " bracket around " << c.value;
      out.warnings.push_back(msg.str());
      c.lo = c.value - width;
      c.hi = c.value + width;
    }
  };

  for (int round = 1; round <= cfg.max_rounds; ++round) {
    const double before = out.infidelity;
    const double delta_start = out.detuning;
    const double amp_start = out.a_x;
    if (cfg.amplitude_first) {
      search(amp, false);
      search(delta, true);
    } else {
      search(delta, true);
      search(amp, false);
    }
    out.rounds = round;
    out.history.push_back(out.infidelity);
    if (before - out.infidelity < cfg.tol) break;

    // Re-centre on the new point and narrow to a few times the last move.
    const double dmove = std::abs(out.detuning - delta_start);
    const double amove = std::abs(out.a_x - amp_start);
    const double dhalf = std::max(4.0 * dmove, 64.0 * cfg.delta_resolution);
    const double ahalf = std::max(4.0 * amove, 64.0 * cfg.ax_resolution);
    delta.lo = out.detuning - dhalf;
    delta.hi = out.detuning + dhalf;
    amp.lo = out.a_x - ahalf;
    amp.hi = out.a_x + ahalf;
  }

  if (model.dim() >= 3) {
    DriveConfig best = drive;
    best.detuning = out.detuning;
    best.a_x = out.a_x;
    out.gamma2 = leakage_population(evolver.run(best, qubit));
  }
  return out;
}

std::string to_string(EnvelopeFamily family) {
  return family == EnvelopeFamily::kGaussian ? "gaussian" : "cosine";
}

void SweepSpec::validate() const {
  if (durations.empty()) throw ValidationError("sweep needs at least one pulse width");
  for (std::size_t i = 0; i < durations.size(); ++i) {
    if (!(durations[i] > 0.0)) throw ValidationError("pulse widths must be positive");
    if (i > 0 && !(durations[i] > durations[i - 1])) {
      throw ValidationError("pulse widths must be strictly ascending");
    }
  }
  if (drag_amplitudes.empty()) throw ValidationError("sweep needs at least one A_y");
  if (family == EnvelopeFamily::kGaussian && cutoffs.empty()) {
    throw ValidationError("gaussian sweep needs at least one cutoff W");
  }
  if (jobs < 1) throw ValidationError("jobs must be at least 1");
  optimizer.validate();
}

namespace {

Envelope make_envelope(EnvelopeFamily family, double duration, std::optional<double> cutoff) {
  if (family == EnvelopeFamily::kGaussian) return GaussianEnvelope(duration, *cutoff);
  return CosineEnvelope::standard_pi(duration);
}

CurvePoint evaluate_point(const TruncatedModel& model, const SweepSpec& spec, double a_y,
                          std::optional<double> cutoff, double duration) {
  DriveConfig drive{make_envelope(spec.family, duration, cutoff), 1.0, a_y, 0.0};
  CurvePoint p;
  p.duration = duration;
  if (spec.optimize) {
    const OptimizedPulse best = optimize_pulse(model, drive, spec.optimizer);
    p.infidelity = best.infidelity;
    p.detuning = best.detuning;
    p.a_x = best.a_x;
    p.gamma2 = best.gamma2;
    p.evaluations = best.evaluations;
  } else {
    EvolveOptions options;
    options.dt = spec.optimizer.dt;
    options.initial_levels = {0, 1};
    const PropagationResult r = evolve(model, drive, options);
    p.infidelity = 1.0 - two_state_fidelity(r);
    if (model.dim() >= 3) p.gamma2 = leakage_population(r);
    p.evaluations = 1;
  }
  return p;
}

void fill_slopes(FidelityCurve& curve) {
  auto& pts = curve.points;
  const std::size_t n = pts.size();
  if (n < 2) return;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i == 0 ? 0 : i - 1;
    const std::size_t hi = i + 1 == n ? n - 1 : i + 1;
    pts[i].slope =
        (pts[hi].infidelity - pts[lo].infidelity) / (pts[hi].duration - pts[lo].duration);
  }
}

}  // namespace

std::vector<FidelityCurve> sweep(const TruncatedModel& model, const SweepSpec& spec) {
  spec.validate();

  std::vector<FidelityCurve> curves;
  std::vector<std::optional<double>> cutoffs;
  if (spec.family == EnvelopeFamily::kGaussian) {
    for (double w : spec.cutoffs) cutoffs.emplace_back(w);
  } else {
    cutoffs.emplace_back(std::nullopt);
  }
  for (const auto& w : cutoffs) {
    for (double a_y : spec.drag_amplitudes) {
      FidelityCurve c;
      c.a_y = a_y;
      c.cutoff = w;
      c.dim = model.dim();
      c.family = spec.family;
      c.optimized = spec.optimize;
      c.points.resize(spec.durations.size());
      curves.push_back(std::move(c));
    }
  }

  const std::size_t per_curve = spec.durations.size();
  const std::size_t total = curves.size() * per_curve;
  std::atomic<std::size_t> next{0};
  std::mutex failure_mutex;
  std::exception_ptr failure;
  std::string failure_where;

  auto worker = [&] {
    while (true) {
      const std::size_t task = next.fetch_add(1);
      if (task >= total) return;
      FidelityCurve& c = curves[task / per_curve];
      const double duration = spec.durations[task % per_curve];
      try {
        c.points[task % per_curve] = evaluate_point(model, spec, c.a_y, c.cutoff, duration);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) {
          failure = std::current_exception();
          std::ostringstream where;
          where << "A_y=" << c.a_y;
          if (c.cutoff) where << " W=" << *c.cutoff;
          where << " t_p=" << duration;
          failure_where = where.str();
        }
        next.store(total);
        return;
      }
    }
  };

  const int threads = std::min<int>(spec.jobs, static_cast<int>(total));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  if (failure) {
    try {
      std::rethrow_exception(failure);
    } catch (const ValidationError& e) {
      throw ValidationError("sweep point " + failure_where + ": " + e.what());
    } catch (const NumericalError& e) {
      throw NumericalError("sweep point " + failure_where + ": " + e.what());
    }
  }
  for (auto& c : curves) fill_slopes(c);
  return curves;
}

namespace {

double infidelity_at(const std::vector<CurvePoint>& pts, double t) {
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (t <= pts[i].duration) {
      const double span = pts[i].duration - pts[i - 1].duration;
      const double w = (t - pts[i - 1].duration) / span;
      return (1.0 - w) * pts[i - 1].infidelity + w * pts[i].infidelity;
    }
  }
  return pts.back().infidelity;
}

}  // namespace

FomResult figure_of_merit(const FidelityCurve& curve, double start, double end) {
  const auto& pts = curve.points;
  if (pts.size() < 2) throw ValidationError("figure of merit needs at least two curve points");
  if (!(end > start)) throw ValidationError("figure of merit window must have positive width");
  constexpr double slack = 1e-9;
  if (start < pts.front().duration - slack || end > pts.back().duration + slack) {
    throw ValidationError("figure of merit window lies outside the curve data");
  }

  // Trapezoid rule over curve nodes inside the window plus the window edges.
  std::vector<std::pair<double, double>> nodes;
  nodes.emplace_back(start, infidelity_at(pts, start));
  for (const auto& p : pts) {
    if (p.duration > start + slack && p.duration < end - slack) {
      nodes.emplace_back(p.duration, p.infidelity);
    }
  }
  nodes.emplace_back(end, infidelity_at(pts, end));

  double integral = 0.0;
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    integral += 0.5 * (nodes[i].second + nodes[i - 1].second) * (nodes[i].first - nodes[i - 1].first);
  }
  return {curve.a_y, curve.cutoff, start, end, 1.0 - integral / (end - start)};
}

}  // namespace transmon
