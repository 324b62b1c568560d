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

#include "transmon/propagator.hpp"

#include <array>
#include <cmath>
#include <sstream>
#include <numbers>
#include <string>

namespace transmon {
namespace {

using cd = std::complex<double>;

constexpr double kMaxStep = 0.5e-3;        // ns
constexpr double kMaxPhasePerStep = 0.05;  // rad
constexpr double kUnitarityLimit = 1e-7;

Eigen::VectorXcd frame_phases(const Eigen::VectorXd& energies, double t) {
  Eigen::VectorXcd p(energies.size());
  for (Eigen::Index j = 0; j < energies.size(); ++j) p(j) = std::polar(1.0, energies(j) * t);
  return p;
}

void check_propagator(const Eigen::MatrixXcd& u) {
  if (!u.allFinite()) {
    throw NumericalError("propagation produced non-finite amplitudes");
  }
  const Eigen::MatrixXcd gram = u.adjoint() * u;
  const double drift =
      (gram - Eigen::MatrixXcd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
  if (drift > kUnitarityLimit) {
    std::ostringstream msg;
    msg << "propagator lost unitarity (max |U^dag U - I| = " << drift << "); reduce the time step";
    throw NumericalError(msg.str());
  }
}

struct QubitState {
  cd zero;
  cd one;
};

// Cardinal states and their images under the X gate.
const std::array<std::pair<QubitState, QubitState>, 6>& cardinal_states() {
  static const auto table = [] {
    const double r = 1.0 / std::numbers::sqrt2;
    const cd i(0.0, 1.0);
    std::array<std::pair<QubitState, QubitState>, 6> t{};
    const std::array<QubitState, 6> in = {{{r, r},
                                           {r, -r},
                                           {r, -i * r},
                                           {r, i * r},
                                           {1.0, 0.0},
                                           {0.0, 1.0}}};
    for (std::size_t k = 0; k < in.size(); ++k) {
      t[k] = {in[k], QubitState{in[k].one, in[k].zero}};
    }
    return t;
  }();
  return table;
}

// U must have at least rows 0..1 and columns for levels 0 and 1 at index 0, 1.
double six_state_average(const Eigen::MatrixXcd& u) {
  double sum = 0.0;
  for (const auto& [in, target] : cardinal_states()) {
    const cd out0 = u(0, 0) * in.zero + u(0, 1) * in.one;
    const cd out1 = u(1, 0) * in.zero + u(1, 1) * in.one;
    const cd overlap = std::conj(target.zero) * out0 + std::conj(target.one) * out1;
    sum += std::norm(overlap);
  }
  return sum / 6.0;
}

int column_of(const PropagationResult& result, int level) {
  for (std::size_t c = 0; c < result.columns.size(); ++c) {
    if (result.columns[c] == level) return static_cast<int>(c);
  }
  throw ValidationError("level " + std::to_string(level) + " was not propagated");
}

// Qubit-block columns (levels 0 and 1) of a result as a dim x 2 matrix.
Eigen::MatrixXcd qubit_columns(const PropagationResult& result, const Eigen::MatrixXcd& u) {
  Eigen::MatrixXcd out(u.rows(), 2);
  out.col(0) = u.col(column_of(result, 0));
  out.col(1) = u.col(column_of(result, 1));
  return out;
}

}  // namespace

std::complex<double> PropagationResult::amplitude(int to, int from) const {
  if (to < 0 || to >= dim()) {
    throw ValidationError("level " + std::to_string(to) + " out of range");
  }
  return propagator(to, column_of(*this, from));
}

Eigen::MatrixXcd PropagationResult::rotating_frame() const {
  return frame_phases(energies, duration).asDiagonal() * propagator;
}

double default_time_step(const TruncatedModel& model, const DriveConfig& drive) {
  const double omega_max = model.h0()(model.dim() - 1) + std::abs(drive.carrier(model));
  return std::min(kMaxStep, kMaxPhasePerStep / omega_max);
}

Evolver::Evolver(TruncatedModel model, Envelope envelope, double dt, Frame frame)
    : model_(std::move(model)),
      envelope_(std::move(envelope)),
      frame_(frame),
      grid_(TimeGrid::uniform(envelope_duration(envelope_), dt)) {
  const int nodes = grid_.nodes();
  const int d = model_.dim();
  node_times_.resize(nodes);
  xi_.resize(nodes);
  dxi_.resize(nodes);
  for (int n = 0; n < nodes; ++n) {
    const double t = grid_.node_time(n);
    node_times_[n] = t;
    xi_[n] = envelope_value(envelope_, t);
    dxi_[n] = envelope_derivative(envelope_, t);
  }
  if (frame_ == Frame::kInteraction) {
    phases_.resize(static_cast<std::size_t>(nodes) * d);
    for (int n = 0; n < nodes; ++n) {
      for (int j = 0; j < d; ++j) {
        phases_[static_cast<std::size_t>(n) * d + j] = std::polar(1.0, model_.h0()(j) * node_times_[n]);
      }
    }
  }
}

PropagationResult Evolver::run(const DriveConfig& drive, const EvolveOptions& options) const {
  return integrate(drive, options, 0, {});
}

PropagationResult Evolver::integrate(
    const DriveConfig& drive, const EvolveOptions& options, int stride,
    const std::function<void(double, const Eigen::MatrixXcd&)>& obs) const {
  if (!(drive.envelope == envelope_)) {
    throw ValidationError("drive envelope differs from the one this evolver was built for");
  }
  const DriveSignal signal(drive, model_);
  const int d = model_.dim();

  std::vector<int> columns = options.initial_levels;
  if (columns.empty()) {
    for (int j = 0; j < d; ++j) columns.push_back(j);
  }
  for (int level : columns) {
    if (level < 0 || level >= d) {
      throw ValidationError("initial level " + std::to_string(level) + " out of range");
    }
  }
  const int ncols = static_cast<int>(columns.size());

  const int nodes = grid_.nodes();
  std::vector<double> s(nodes);
  const double carrier = signal.carrier();
  const double xs = signal.in_phase_scale();
  const double ys = signal.quadrature_scale();
  // cos/sin of the carrier on the uniform half-step lattice by rotation,
  // re-anchored every 64 nodes; the shortened final step is evaluated directly.
  const double half = 0.5 * grid_.dt;
  const double rot_c = std::cos(carrier * half);
  const double rot_s = std::sin(carrier * half);
  double c = 1.0;
  double sn = 0.0;
  const int uniform_nodes = 2 * (grid_.steps - 1) + 1;
  for (int n = 0; n < nodes; ++n) {
    if (n >= uniform_nodes || n % 64 == 0) {
      const double phase = carrier * node_times_[n];
      c = std::cos(phase);
      sn = std::sin(phase);
    }
    s[n] = xs * c * xi_[n] + ys * sn * dxi_[n];
    const double next_c = c * rot_c - sn * rot_s;
    sn = sn * rot_c + c * rot_s;
    c = next_c;
  }

  std::vector<double> sigma(static_cast<std::size_t>(d) * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) sigma[i * d + j] = model_.lambda(i, j);
  }
  const Eigen::VectorXd& energies = model_.h0();
  const bool frozen = options.piecewise_constant_drive;
  const bool interaction = frame_ == Frame::kInteraction;

  Eigen::MatrixXcd y = Eigen::MatrixXcd::Zero(d, ncols);
  for (int c = 0; c < ncols; ++c) y(columns[c], c) = 1.0;

  std::vector<double> ur(d);
  std::vector<double> ui(d);
  auto deriv = [&](int step, int stage, const Eigen::MatrixXcd& in, Eigen::MatrixXcd& out) {
    const int node = 2 * step + stage;
    const double drive_now = s[frozen ? 2 * step : node];
    if (interaction) {
      const cd* p = &phases_[static_cast<std::size_t>(node) * d];
      for (int c = 0; c < ncols; ++c) {
        const cd* col = in.data() + static_cast<std::size_t>(c) * d;
        cd* dst = out.data() + static_cast<std::size_t>(c) * d;
        // Written out in real arithmetic: std::complex products go through the
        // slow NaN-safe path without -fcx-limited-range.
        for (int j = 0; j < d; ++j) {
          const double pr = p[j].real();
          const double pi = p[j].imag();
          const double yr = col[j].real();
          const double yi = col[j].imag();
          ur[j] = pr * yr + pi * yi;
          ui[j] = pr * yi - pi * yr;
        }
        for (int i = 0; i < d; ++i) {
          const double* row = &sigma[static_cast<std::size_t>(i) * d];
          double re = 0.0;
          double im = 0.0;
          for (int j = 0; j < d; ++j) {
            re += row[j] * ur[j];
            im += row[j] * ui[j];
          }
          const double wr = p[i].real() * re - p[i].imag() * im;
          const double wi = p[i].real() * im + p[i].imag() * re;
          dst[i] = cd(drive_now * wi, -drive_now * wr);
        }
      }
    } else {
      for (int c = 0; c < ncols; ++c) {
        const cd* col = in.data() + static_cast<std::size_t>(c) * d;
        cd* dst = out.data() + static_cast<std::size_t>(c) * d;
        for (int i = 0; i < d; ++i) {
          const double* row = &sigma[static_cast<std::size_t>(i) * d];
          double re = energies(i) * col[i].real();
          double im = energies(i) * col[i].imag();
          for (int j = 0; j < d; ++j) {
            re += drive_now * row[j] * col[j].real();
            im += drive_now * row[j] * col[j].imag();
          }
          dst[i] = cd(im, -re);
        }
      }
    }
  };

  PropagationResult result;
  result.columns = columns;
  result.energies = energies;
  result.duration = grid_.duration;
  result.dt_used = grid_.dt;
  result.steps = grid_.steps;

  int traj_col = -1;
  if (options.trajectory_stride > 0) {
    for (int c = 0; c < ncols; ++c) {
      if (columns[c] == options.trajectory_level) traj_col = c;
    }
    if (traj_col < 0) {
      throw ValidationError("trajectory level was not propagated");
    }
    result.trajectory.push_back({0.0, y.col(traj_col).cwiseAbs2()});
  }

  auto to_interaction = [&](double t, const Eigen::MatrixXcd& state) -> Eigen::MatrixXcd {
    if (interaction) return state;
    return frame_phases(energies, t).asDiagonal() * state;
  };
  if (obs && stride > 0) obs(0.0, to_interaction(0.0, y));

  integrate_rk4(grid_, y, deriv, [&](int step, const Eigen::MatrixXcd& state) {
    const bool last = step + 1 == grid_.steps;
    const double t = grid_.step_end(step);
    if (traj_col >= 0 && ((step + 1) % options.trajectory_stride == 0 || last)) {
      result.trajectory.push_back({t, state.col(traj_col).cwiseAbs2()});
    }
    if (obs && stride > 0 && ((step + 1) % stride == 0 || last)) obs(t, to_interaction(t, state));
  });

  if (interaction) {
    result.propagator = frame_phases(energies, grid_.duration).conjugate().asDiagonal() * y;
  } else {
    result.propagator = y;
  }
  check_propagator(result.propagator);
  return result;
}

PropagationResult evolve(const TruncatedModel& model, const DriveConfig& drive,
                         const EvolveOptions& options) {
  const double dt = options.dt > 0.0 ? options.dt : default_time_step(model, drive);
  const Evolver evolver(model, drive.envelope, dt, options.frame);
  return evolver.run(drive, options);
}

double transition_probability(const PropagationResult& result, int from, int to) {
  return std::norm(result.amplitude(to, from));
}

double two_state_fidelity(const Eigen::MatrixXcd& u) {
  if (u.rows() < 2 || u.cols() < 2) {
    throw ValidationError("two-state fidelity needs at least a 2x2 propagator");
  }
  return 0.5 * (std::norm(u(1, 0)) + std::norm(u(0, 1)));
}

double two_state_fidelity(const PropagationResult& result) {
  return 0.5 * (transition_probability(result, 0, 1) + transition_probability(result, 1, 0));
}

double six_state_fidelity(const Eigen::MatrixXcd& u) {
  if (u.rows() < 2 || u.cols() < 2) {
    throw ValidationError("six-state fidelity needs at least a 2x2 propagator");
  }
  return six_state_average(u);
}

double full_fidelity(const PropagationResult& result) {
  if (result.dim() < 2) {
    throw ValidationError("full fidelity needs a model of dimension >= 2");
  }
  return six_state_average(qubit_columns(result, result.rotating_frame()));
}

double lab_frame_fidelity(const PropagationResult& result) {
  return six_state_average(qubit_columns(result, result.propagator));
}

double full_fidelity(const TruncatedModel& model, const DriveConfig& drive, double dt) {
  EvolveOptions options;
  options.dt = dt;
  options.initial_levels = {0, 1};
  return full_fidelity(evolve(model, drive, options));
}

double leakage_population(const PropagationResult& result) {
  if (result.dim() < 3) {
    throw ValidationError("leakage population needs a model with a level 2");
  }
  return 0.5 * (transition_probability(result, 0, 2) + transition_probability(result, 1, 2));
}

FidelityReport fidelity_report(const PropagationResult& result) {
  FidelityReport report;
  report.f_two_state = two_state_fidelity(result);
  report.f_full = full_fidelity(result);
  if (result.dim() >= 3) {
    report.gamma2 = leakage_population(result);
    const double infidelity = 1.0 - report.f_two_state;
    if (infidelity > 0.0) report.leakage_ratio = *report.gamma2 / infidelity;
  }
  return report;
}

std::vector<FidelityTracePoint> fidelity_trace(const TruncatedModel& model,
                                               const DriveConfig& drive, int stride, double dt) {
  if (stride < 1) {
    throw ValidationError("trace stride must be positive");
  }
  const double step = dt > 0.0 ? dt : default_time_step(model, drive);
  const Evolver evolver(model, drive.envelope, step);
  EvolveOptions options;
  options.initial_levels = {0, 1};
  std::vector<FidelityTracePoint> out;
  evolver.run_observed(drive, options, stride, [&](double t, const Eigen::MatrixXcd& y_rot) {
    const Eigen::MatrixXcd y_lab = frame_phases(model.h0(), t).conjugate().asDiagonal() * y_rot;
    out.push_back({t, six_state_average(y_lab), six_state_average(y_rot)});
  });
  return out;
}

double adiabatic_leakage_estimate(const TruncatedModel& model, double drive_slope, int from,
                                  int to) {
  if (from < 0 || to < 0 || from >= model.dim() || to >= model.dim()) {
    throw ValidationError("adiabatic estimate: level out of range");
  }
  const double gap = model.h0()(to) - model.h0()(from);
  if (gap == 0.0) {
    throw ValidationError("adiabatic estimate: degenerate levels");
  }
  const double element = drive_slope * model.lambda(to, from);
  return element * element / std::pow(gap, 4);
}

double adiabatic_leakage_estimate(const TruncatedModel& model, const DriveConfig& drive, double t,
                                  int from, int to) {
  return adiabatic_leakage_estimate(model, DriveSignal(drive, model).slope(t), from, to);
}

LatticeTrajectory evolve_lattice(const LatticeHamiltonian& h, const EigenSystem& eigs,
                                 const TruncatedModel& model, const DriveConfig& drive,
                                 int initial_level, int tracked, int stride, double dt) {
  const int n = h.size();
  if (eigs.states.rows() != n) {
    throw ValidationError("eigensystem does not belong to this lattice");
  }
  if (initial_level < 0 || initial_level >= eigs.levels() || tracked < 1 ||
      tracked > eigs.levels()) {
    throw ValidationError("lattice evolution: level selection out of range");
  }
  if (stride < 1) {
    throw ValidationError("lattice evolution: stride must be positive");
  }
  const double e0 = eigs.energies(0);
  double bound = 0.0;
  for (int k = 0; k < n; ++k) bound = std::max(bound, std::abs(h.onsite[k] - e0) + 2.0 * h.hopping);
  const double step = dt > 0.0 ? dt : kMaxPhasePerStep / bound;

  const DriveSignal signal(drive, model);
  const TimeGrid grid = TimeGrid::uniform(drive.duration(), step);
  const Eigen::MatrixXd basis = eigs.states.leftCols(tracked);

  Eigen::VectorXcd psi = eigs.states.col(initial_level).cast<cd>();
  double drive_now = 0.0;
  auto deriv = [&](int k, int stage, const Eigen::VectorXcd& in, Eigen::VectorXcd& out) {
    const double t = grid.node_time(2 * k + stage);
    drive_now = signal.sample(t).total;
    const double tau = h.hopping;
    for (int i = 0; i < n; ++i) {
      cd acc = (h.onsite[i] - e0 + drive_now * h.phase_coords[i]) * in(i);
      if (i > 0) acc -= tau * in(i - 1);
      if (i + 1 < n) acc -= tau * in(i + 1);
      out(i) = cd(acc.imag(), -acc.real());
    }
  };

  LatticeTrajectory out;
  out.dt_used = step;
  auto record = [&](double t, const Eigen::VectorXcd& state) {
    out.times.push_back(t);
    out.populations.push_back((basis.transpose().cast<cd>() * state).cwiseAbs2());
  };
  record(0.0, psi);
  integrate_rk4(grid, psi, deriv, [&](int k, const Eigen::VectorXcd& state) {
    if ((k + 1) % stride == 0 || k + 1 == grid.steps) record(grid.step_end(k), state);
  });
  if (!psi.allFinite()) {
    throw NumericalError("lattice propagation produced non-finite amplitudes");
  }
  return out;
}

}  // namespace transmon
