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
#include <string>

#include "transmon/units.hpp"

namespace transmon {

/// Fixed-step time grid on [0, duration]. Every step but the last has width
/// `dt`; the last is shortened so the grid lands exactly on `duration`.
struct TimeGrid {
  double duration = 0.0;
  double dt = 0.0;
  int steps = 0;

  static TimeGrid uniform(double duration, double dt) {
    if (!(duration > 0.0) || !(dt > 0.0) || !std::isfinite(duration) || !std::isfinite(dt)) {
      throw ValidationError("time grid needs a positive duration and step");
    }
    const double ratio = duration / dt;
    int n = static_cast<int>(std::ceil(ratio - 1e-6));
    n = std::max(n, 1);
    return TimeGrid{duration, dt, n};
  }

  double step_start(int k) const { return k * dt; }
  double step_size(int k) const { return k + 1 < steps ? dt : duration - (steps - 1) * dt; }
  double step_end(int k) const { return k + 1 < steps ? (k + 1) * dt : duration; }

  /// Node 2k is the start of step k, 2k+1 its midpoint and 2k+2 its end.
  int nodes() const { return 2 * steps + 1; }
  double node_time(int node) const {
    const int k = node / 2;
    if (node % 2 == 1) return step_start(k) + 0.5 * step_size(k);
    return k < steps ? step_start(k) : duration;
  }
};

/// Classic fourth-order Runge-Kutta over a TimeGrid.
///
/// `deriv(step, stage, y, dy)` writes dy/dt; stage 0, 1, 2 are the start,
/// midpoint and end of the step. `after_step(step, y)` runs after each step.
template <typename State, typename Deriv, typename Observer>
void integrate_rk4(const TimeGrid& grid, State& y, Deriv&& deriv, Observer&& after_step) {
  State k1 = y;
  State k2 = y;
  State k3 = y;
  State k4 = y;
  State probe = y;
  for (int step = 0; step < grid.steps; ++step) {
    const double h = grid.step_size(step);
    deriv(step, 0, y, k1);
    probe = y + (0.5 * h) * k1;
    deriv(step, 1, probe, k2);
    probe = y + (0.5 * h) * k2;
    deriv(step, 1, probe, k3);
    probe = y + h * k3;
    deriv(step, 2, probe, k4);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    after_step(step, y);
  }
}

}  // namespace transmon
