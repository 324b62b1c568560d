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

#include <variant>
#include <vector>

#include "transmon/truncation.hpp"

namespace transmon {

/// Truncated Gaussian of unit area on [0, t_p], centred at t_p/2 and shifted
/// down by its endpoint value G = exp(-2/W^2) so it vanishes at both ends.
class GaussianEnvelope {
 public:
  GaussianEnvelope(double duration_ns, double cutoff_w);

  double duration() const { return duration_; }
  double cutoff() const { return cutoff_; }
  double gamma() const { return gamma_; }
  double endpoint_value() const { return endpoint_; }
  double normalization() const { return norm_; }
  double center() const { return 0.5 * duration_; }

  double value(double t) const;
  double derivative(double t) const;
  double second_derivative(double t) const;
  double area() const { return 1.0; }

  friend bool operator==(const GaussianEnvelope&, const GaussianEnvelope&) = default;

 private:
  double duration_;
  double cutoff_;
  double gamma_;
  double endpoint_;
  double norm_;
};

/// xi(t) = theta/t_p + (2 pi/t_p) sum_k alpha_k cos(2 k pi t / t_p), k = 0, 1, ...
/// theta = pi with alphas {-1, 1/2} is the standard (1 - cos) shape (with
/// negative sign; the calibrated amplitude absorbs it).
class CosineEnvelope {
 public:
  CosineEnvelope(double duration_ns, double theta, std::vector<double> alphas);
  static CosineEnvelope standard_pi(double duration_ns) {
    return CosineEnvelope(duration_ns, std::numbers::pi, {-1.0, 0.5});
  }

  double duration() const { return duration_; }
  double theta() const { return theta_; }
  const std::vector<double>& alphas() const { return alphas_; }

  double value(double t) const;
  double derivative(double t) const;
  double second_derivative(double t) const;
  /// Exact integral over [0, t_p]: theta + 2 pi alpha_0.
  double area() const;

  friend bool operator==(const CosineEnvelope&, const CosineEnvelope&) = default;

 private:
  double duration_;
  double theta_;
  std::vector<double> alphas_;
};

using Envelope = std::variant<GaussianEnvelope, CosineEnvelope>;

double envelope_duration(const Envelope& env);
double envelope_value(const Envelope& env, double t);
double envelope_derivative(const Envelope& env, double t);
double envelope_second_derivative(const Envelope& env, double t);
double envelope_area(const Envelope& env);

/// Two-quadrature drive. The carrier is omega01 + detuning of the model the
/// drive is evaluated against.
struct DriveConfig {
  Envelope envelope;
  double a_x = 1.0;
  double a_y = 0.0;
  double detuning = 0.0;  // rad/ns

  double duration() const { return envelope_duration(envelope); }
  double carrier(const TruncatedModel& model) const { return model.omega01() + detuning; }
};

/// Drive components. The derivative quadrature enters with the sign for which
/// a positive A_y suppresses leakage into level 2: S = S_x + S_y.
struct DriveSample {
  double in_phase = 0.0;    // S_x = A_x B cos(w t) xi(t)
  double quadrature = 0.0;  // S_y = A_y B c sin(w t) dxi/dt
  double total = 0.0;
};

/// Amplitude B that turns the envelope into a resonant pi rotation of the
/// qubit transition under the rotating-wave approximation:
/// lambda_01 * B * area(envelope) = pi.
double calibrate_base_amplitude(const TruncatedModel& model, const Envelope& env);

/// DRAG coefficient |lambda_12/lambda_01|^2 / (4 Delta_2) in ns.
double drag_coefficient(const TruncatedModel& model);

/// Precomputed factors for evaluating one drive against one model.
class DriveSignal {
 public:
  DriveSignal(const DriveConfig& cfg, const TruncatedModel& model);

  const DriveConfig& config() const { return cfg_; }
  double base_amplitude() const { return base_; }
  double carrier() const { return carrier_; }
  /// Prefactor of the in-phase term, A_x B.
  double in_phase_scale() const { return x_scale_; }
  /// Prefactor of the derivative term, A_y B |lambda_12/lambda_01|^2/(4 Delta_2).
  double quadrature_scale() const { return y_scale_; }

  DriveSample sample(double t) const;
  /// Samples from precomputed envelope values.
  DriveSample sample(double t, double xi, double dxi) const;
  /// dS/dt, analytic.
  double slope(double t) const;

 private:
  DriveConfig cfg_;
  double base_;
  double carrier_;
  double x_scale_;
  double y_scale_;
};

/// S(t) for the given drive and model.
DriveSample drive_signal(double t, const DriveConfig& cfg, const TruncatedModel& model);

}  // namespace transmon
