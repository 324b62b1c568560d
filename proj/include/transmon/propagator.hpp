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

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "transmon/lattice.hpp"
#include "transmon/pulses.hpp"
#include "transmon/rk4.hpp"
#include "transmon/truncation.hpp"

namespace transmon {

/// Frame the Runge-Kutta integration runs in. Both solve the same lab-frame
/// Schroedinger equation without a rotating-wave approximation. kInteraction
/// integrates c(t) = exp(i H0 t) psi(t), so the bare level phases are exact and
/// only the drive term is discretized; kLab integrates psi(t) directly.
enum class Frame { kInteraction, kLab };

struct EvolveOptions {
  double dt = 0.0;  // ns; 0 selects default_time_step
  Frame frame = Frame::kInteraction;
  /// Basis levels to propagate as initial states; empty means all.
  std::vector<int> initial_levels;
  /// Hold the drive at its step-start value within each step.
  bool piecewise_constant_drive = false;
  /// Record populations every `trajectory_stride` steps (0 disables).
  int trajectory_stride = 0;
  int trajectory_level = 0;
};

struct TrajectorySample {
  double time = 0.0;
  Eigen::VectorXd populations;
};

struct PropagationResult {
  /// Lab-frame U(t_p, 0); column c is the image of basis level columns[c].
  Eigen::MatrixXcd propagator;
  std::vector<int> columns;
  Eigen::VectorXd energies;  // h0 of the model, rad/ns
  double duration = 0.0;
  double dt_used = 0.0;
  int steps = 0;
  std::vector<TrajectorySample> trajectory;

  int dim() const { return static_cast<int>(propagator.rows()); }
  /// <to|U|from>; throws if `from` was not propagated.
  std::complex<double> amplitude(int to, int from) const;
  /// exp(i H0 t_p) U, the propagator in the frame rotating with H0.
  Eigen::MatrixXcd rotating_frame() const;
};

struct FidelityReport {
  double f_two_state = 0.0;
  double f_full = 0.0;
  std::optional<double> gamma2;
  std::optional<double> leakage_ratio;  // gamma2 / (1 - F')
};

/// min(0.5 ps, 0.05 / omega_max) with omega_max the top level energy plus the
/// carrier.
double default_time_step(const TruncatedModel& model, const DriveConfig& drive);

/// Propagator for repeated runs of one model and one pulse envelope with
/// varying amplitudes and detuning. Bare-level phases and envelope samples on
/// the integration grid are computed once.
class Evolver {
 public:
  Evolver(TruncatedModel model, Envelope envelope, double dt, Frame frame = Frame::kInteraction);

  const TruncatedModel& model() const { return model_; }
  const TimeGrid& grid() const { return grid_; }

  /// Runs the drive (its envelope must match the one given at construction).
  PropagationResult run(const DriveConfig& drive, const EvolveOptions& options) const;

  /// Runs and hands (time, interaction-frame state) to `observer` after every
  /// `stride` steps, including t = 0 and the final step.
  template <typename Observer>
  PropagationResult run_observed(const DriveConfig& drive, const EvolveOptions& options,
                                 int stride, Observer&& observer) const;

 private:
  PropagationResult integrate(const DriveConfig& drive, const EvolveOptions& options, int stride,
                              const std::function<void(double, const Eigen::MatrixXcd&)>& obs) const;

  TruncatedModel model_;
  Envelope envelope_;
  Frame frame_;
  TimeGrid grid_;
  std::vector<double> node_times_;
  std::vector<double> xi_;
  std::vector<double> dxi_;
  // phases_[node * dim + j] = exp(i E_j t_node); interaction frame only.
  std::vector<std::complex<double>> phases_;
};

PropagationResult evolve(const TruncatedModel& model, const DriveConfig& drive,
                         const EvolveOptions& options = {});

double transition_probability(const PropagationResult& result, int from, int to);

/// F' = (|<1|U|0>|^2 + |<0|U|1>|^2) / 2.
double two_state_fidelity(const PropagationResult& result);
double two_state_fidelity(const Eigen::MatrixXcd& u);

/// Average over the six cardinal qubit states of |<X psi| U_rot |psi>|^2 with
/// U_rot the rotating-frame propagator restricted to the qubit rows.
double full_fidelity(const PropagationResult& result);
/// Same average without the frame correction.
double lab_frame_fidelity(const PropagationResult& result);
/// Six-state average for an arbitrary propagator given in the frame to score.
double six_state_fidelity(const Eigen::MatrixXcd& u);
double full_fidelity(const TruncatedModel& model, const DriveConfig& drive, double dt = 0.0);

/// Gamma_2 = (P(0->2) + P(1->2)) / 2.
double leakage_population(const PropagationResult& result);

FidelityReport fidelity_report(const PropagationResult& result);

struct FidelityTracePoint {
  double time = 0.0;
  double lab = 0.0;
  double rotating = 0.0;
};

/// Six-state fidelity against the X target along the pulse, in the lab and the
/// rotating frame.
std::vector<FidelityTracePoint> fidelity_trace(const TruncatedModel& model,
                                               const DriveConfig& drive, int stride,
                                               double dt = 0.0);

/// |<n| dH/dt |l>|^2 / omega_ln^4 for dH/dt = slope * sigma_x.
double adiabatic_leakage_estimate(const TruncatedModel& model, double drive_slope, int from,
                                  int to);
double adiabatic_leakage_estimate(const TruncatedModel& model, const DriveConfig& drive, double t,
                                  int from = 1, int to = 2);

/// Populations of the lowest lattice eigenstates while driving the full
/// finite-difference Hamiltonian (site basis, lab frame).
struct LatticeTrajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> populations;
  double dt_used = 0.0;
};

/// Drives the lattice with S(t) phi, where S is built for `model` (which sets
/// the calibration and carrier). `tracked` eigenstates of `eigs` are projected
/// out every `stride` steps. dt = 0 selects 0.05 / ||H - E_0||.
LatticeTrajectory evolve_lattice(const LatticeHamiltonian& h, const EigenSystem& eigs,
                                 const TruncatedModel& model, const DriveConfig& drive,
                                 int initial_level, int tracked, int stride, double dt = 0.0);

template <typename Observer>
PropagationResult Evolver::run_observed(const DriveConfig& drive, const EvolveOptions& options,
                                        int stride, Observer&& observer) const {
  return integrate(drive, options, stride,
                   [&observer](double t, const Eigen::MatrixXcd& y) { observer(t, y); });
}

}  // namespace transmon
