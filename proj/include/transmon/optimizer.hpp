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

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "transmon/propagator.hpp"

namespace transmon {

/// Golden-section alone, or golden-section with parabolic steps (Brent).
enum class LineSearch { kGolden, kBrent };

struct OptimizeConfig {
  double delta_half_width = ghz_to_angular(0.05);  // rad/ns, bracket is +-this
  double ax_min = 0.9;
  double ax_max = 1.1;
  /// Stop when a full round improves the infidelity by less than this.
  double tol = 1e-8;
  int max_rounds = 50;
  /// Golden-section stopping widths.
  double delta_resolution = 1e-6;  // rad/ns
  double ax_resolution = 1e-6;
  /// Line search order: detuning first unless set.
  bool amplitude_first = false;
  /// How many times a bracket may be doubled when the optimum hits an edge.
  int max_widenings = 4;
  double dt = 0.0;  // ns, 0 = default_time_step
  LineSearch line_search = LineSearch::kBrent;

  void validate() const;
};

struct OptimizedPulse {
  double detuning = 0.0;  // rad/ns
  double a_x = 1.0;
  double infidelity = 1.0;
  std::optional<double> gamma2;
  int rounds = 0;
  int evaluations = 0;
  /// Best infidelity after each round (index 0 is the starting point).
  std::vector<double> history;
  std::vector<std::string> warnings;
};

/// Taxi-cab co-optimization of detuning and A_x: alternating golden-section
/// line searches on 1 - F' until a round gains less than `tol`. The drive's
/// envelope and A_y are held fixed; its detuning and A_x seed the search.
OptimizedPulse optimize_pulse(const TruncatedModel& model, const DriveConfig& drive,
                              const OptimizeConfig& cfg = {});

/// Golden-section minimization of f on [lo, hi] to bracket width `resolution`.
/// Returns (argmin, min) over every point evaluated.
struct LineMinimum {
  double x = 0.0;
  double value = 0.0;
  int evaluations = 0;
};
template <typename F>
LineMinimum golden_section(F&& f, double lo, double hi, double resolution);

enum class EnvelopeFamily { kGaussian, kCosine };

std::string to_string(EnvelopeFamily family);

struct SweepSpec {
  std::vector<double> durations;        // ns, ascending
  std::vector<double> drag_amplitudes;  // A_y values
  std::vector<double> cutoffs;          // W values; ignored for kCosine
  EnvelopeFamily family = EnvelopeFamily::kGaussian;
  bool optimize = true;
  OptimizeConfig optimizer;
  int jobs = 1;

  void validate() const;
};

struct CurvePoint {
  double duration = 0.0;
  double infidelity = 1.0;
  double detuning = 0.0;
  double a_x = 1.0;
  std::optional<double> gamma2;
  /// Finite-difference d(1 - F')/dt_p along the curve, per ns.
  double slope = 0.0;
  int evaluations = 0;
};

struct FidelityCurve {
  double a_y = 0.0;
  std::optional<double> cutoff;
  int dim = 0;
  EnvelopeFamily family = EnvelopeFamily::kGaussian;
  bool optimized = false;
  std::vector<CurvePoint> points;
};

/// Evaluates every (A_y, W) curve over the duration grid. Points run on
/// `spec.jobs` worker threads; the output order depends only on the inputs.
std::vector<FidelityCurve> sweep(const TruncatedModel& model, const SweepSpec& spec);

struct FomResult {
  double a_y = 0.0;
  std::optional<double> cutoff;
  double window_start = 0.0;
  double window_end = 0.0;
  double fom = 0.0;
};

/// 1 minus the trapezoid-rule mean of the infidelity over [start, end].
FomResult figure_of_merit(const FidelityCurve& curve, double start, double end);

/// Infidelity reported on log axes is floored here.
inline constexpr double kInfidelityFloor = 1e-10;

template <typename F>
LineMinimum golden_section(F&& f, double lo, double hi, double resolution) {
  constexpr double kInvPhi = 0.6180339887498949;
  LineMinimum best;
  double a = lo;
  double b = hi;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  best.evaluations = 2;
  best.x = f1 <= f2 ? x1 : x2;
  best.value = std::min(f1, f2);
  while (b - a > resolution) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
      ++best.evaluations;
      if (f1 < best.value) {
        best.value = f1;
        best.x = x1;
      }
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
      ++best.evaluations;
      if (f2 < best.value) {
        best.value = f2;
        best.x = x2;
      }
    }
  }
  return best;
}

/// Brent's minimizer: golden-section steps on [lo, hi] accelerated by
/// parabolic interpolation through the three best points. Stops when the
/// bracket around the best point is narrower than `resolution`.
template <typename F>
LineMinimum brent_minimize(F&& f, double lo, double hi, double resolution) {
  constexpr double kCGold = 0.3819660112501051;
  double a = lo;
  double b = hi;
  double x = a + kCGold * (b - a);
  double w = x;
  double v = x;
  double fx = f(x);
  double fw = fx;
  double fv = fx;
  double d = 0.0;
  double e = 0.0;
  LineMinimum out;
  out.evaluations = 1;
  const double tol1 = 0.25 * resolution;
  const double tol2 = 2.0 * tol1;
  while (true) {
    const double xm = 0.5 * (a + b);
    if (std::abs(x - xm) <= tol2 - 0.5 * (b - a)) break;
    bool golden = true;
    if (std::abs(e) > tol1) {
      const double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) p = -p;
      q = std::abs(q);
      const double e_prev = e;
      e = d;
      if (std::abs(p) < std::abs(0.5 * q * e_prev) && p > q * (a - x) && p < q * (b - x)) {
        d = p / q;
        const double u = x + d;
        if (u - a < tol2 || b - u < tol2) d = xm >= x ? tol1 : -tol1;
        golden = false;
      }
    }
    if (golden) {
      e = (x >= xm ? a : b) - x;
      d = kCGold * e;
    }
    const double u = std::abs(d) >= tol1 ? x + d : x + (d > 0.0 ? tol1 : -tol1);
    const double fu = f(u);
    ++out.evaluations;
    if (fu <= fx) {
      (u >= x ? a : b) = x;
      v = w;
      fv = fw;
      w = x;
      fw = fx;
      x = u;
      fx = fu;
    } else {
      (u < x ? a : b) = u;
      if (fu <= fw || w == x) {
        v = w;
        fv = fw;
        w = u;
        fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u;
        fv = fu;
      }
    }
  }
  out.x = x;
  out.value = fx;
  return out;
}

}  // namespace transmon
