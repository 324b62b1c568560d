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

#include "transmon/pulses.hpp"

#include <cmath>
#include <string>

namespace transmon {
namespace {

void check_time(double t, double duration) {
  const double slack = 1e-12 * duration;
  if (!(t >= -slack && t <= duration + slack)) {
    throw ValidationError("time " + std::to_string(t) + " ns outside pulse window [0, " +
                          std::to_string(duration) + "]");
  }
}

}  // namespace

GaussianEnvelope::GaussianEnvelope(double duration_ns, double cutoff_w)
    : duration_(duration_ns), cutoff_(cutoff_w) {
  if (!(duration_ns > 0.0) || !std::isfinite(duration_ns)) {
    throw ValidationError("pulse width must be positive");
  }
  if (!(cutoff_w > 0.0) || !std::isfinite(cutoff_w)) {
    throw ValidationError("cutoff W must be positive");
  }
  gamma_ = cutoff_ * duration_ / (2.0 * std::numbers::sqrt2);
  endpoint_ = std::exp(-2.0 / (cutoff_ * cutoff_));
  norm_ = gamma_ * std::sqrt(std::numbers::pi) * std::erf(std::numbers::sqrt2 / cutoff_) -
          duration_ * endpoint_;
}

double GaussianEnvelope::value(double t) const {
  check_time(t, duration_);
  const double x = (t - center()) / gamma_;
  return (std::exp(-x * x) - endpoint_) / norm_;
}

double GaussianEnvelope::derivative(double t) const {
  check_time(t, duration_);
  const double x = (t - center()) / gamma_;
  return -2.0 * x / gamma_ * std::exp(-x * x) / norm_;
}

double GaussianEnvelope::second_derivative(double t) const {
  check_time(t, duration_);
  const double x = (t - center()) / gamma_;
  return (4.0 * x * x - 2.0) / (gamma_ * gamma_) * std::exp(-x * x) / norm_;
}

CosineEnvelope::CosineEnvelope(double duration_ns, double theta, std::vector<double> alphas)
    : duration_(duration_ns), theta_(theta), alphas_(std::move(alphas)) {
  if (!(duration_ns > 0.0) || !std::isfinite(duration_ns)) {
    throw ValidationError("pulse width must be positive");
  }
  if (alphas_.empty()) {
    throw ValidationError("cosine envelope needs at least one coefficient");
  }
}

double CosineEnvelope::value(double t) const {
  check_time(t, duration_);
  const double w = kTwoPi / duration_;
  double sum = 0.0;
  for (std::size_t k = 0; k < alphas_.size(); ++k) {
    sum += alphas_[k] * std::cos(static_cast<double>(k) * w * t);
  }
  return theta_ / duration_ + w * sum;
}

double CosineEnvelope::derivative(double t) const {
  check_time(t, duration_);
  const double w = kTwoPi / duration_;
  double sum = 0.0;
  for (std::size_t k = 1; k < alphas_.size(); ++k) {
    const double kw = static_cast<double>(k) * w;
    sum -= alphas_[k] * kw * std::sin(kw * t);
  }
  return w * sum;
}

double CosineEnvelope::second_derivative(double t) const {
  check_time(t, duration_);
  const double w = kTwoPi / duration_;
  double sum = 0.0;
  for (std::size_t k = 1; k < alphas_.size(); ++k) {
    const double kw = static_cast<double>(k) * w;
    sum -= alphas_[k] * kw * kw * std::cos(kw * t);
  }
  return w * sum;
}

double CosineEnvelope::area() const { return theta_ + kTwoPi * alphas_.front(); }

double envelope_duration(const Envelope& env) {
  return std::visit([](const auto& e) { return e.duration(); }, env);
}
double envelope_value(const Envelope& env, double t) {
  return std::visit([t](const auto& e) { return e.value(t); }, env);
}
double envelope_derivative(const Envelope& env, double t) {
  return std::visit([t](const auto& e) { return e.derivative(t); }, env);
}
double envelope_second_derivative(const Envelope& env, double t) {
  return std::visit([t](const auto& e) { return e.second_derivative(t); }, env);
}
double envelope_area(const Envelope& env) {
  return std::visit([](const auto& e) { return e.area(); }, env);
}

double calibrate_base_amplitude(const TruncatedModel& model, const Envelope& env) {
  const double l01 = model.lambda(0, 1);
  if (l01 == 0.0) {
    throw ValidationError("cannot calibrate: lambda_01 is zero");
  }
  const double area = envelope_area(env);
  if (area == 0.0) {
    throw ValidationError("cannot calibrate: envelope has zero area");
  }
  return std::numbers::pi / (l01 * area);
}

double drag_coefficient(const TruncatedModel& model) {
  const auto delta2 = model.anharmonicity();
  const auto ratio = model.coupling_ratio12();
  if (!delta2 || !ratio) {
    throw ValidationError("DRAG needs the anharmonicity and lambda_12 of the model");
  }
  if (*delta2 == 0.0) {
    throw ValidationError("DRAG coefficient is singular for zero anharmonicity");
  }
  return (*ratio) * (*ratio) / (4.0 * (*delta2));
}

DriveSignal::DriveSignal(const DriveConfig& cfg, const TruncatedModel& model)
    : cfg_(cfg),
      base_(calibrate_base_amplitude(model, cfg.envelope)),
      carrier_(cfg.carrier(model)) {
  if (!std::isfinite(cfg.a_x) || !std::isfinite(cfg.a_y) || !std::isfinite(cfg.detuning)) {
    throw ValidationError("drive amplitudes and detuning must be finite");
  }
  if (!(carrier_ > 0.0)) {
    throw ValidationError("drive carrier frequency must be positive");
  }
  x_scale_ = cfg.a_x * base_;
  y_scale_ = cfg.a_y == 0.0 ? 0.0 : cfg.a_y * base_ * drag_coefficient(model);
}

DriveSample DriveSignal::sample(double t, double xi, double dxi) const {
  DriveSample s;
  s.in_phase = x_scale_ * std::cos(carrier_ * t) * xi;
  s.quadrature = y_scale_ * std::sin(carrier_ * t) * dxi;
  s.total = s.in_phase + s.quadrature;
  return s;
}

DriveSample DriveSignal::sample(double t) const {
  return sample(t, envelope_value(cfg_.envelope, t), envelope_derivative(cfg_.envelope, t));
}

double DriveSignal::slope(double t) const {
  const double xi = envelope_value(cfg_.envelope, t);
  const double dxi = envelope_derivative(cfg_.envelope, t);
  const double d2xi = envelope_second_derivative(cfg_.envelope, t);
  const double c = std::cos(carrier_ * t);
  const double s = std::sin(carrier_ * t);
  const double dx = x_scale_ * (-carrier_ * s * xi + c * dxi);
  const double dy = y_scale_ * (carrier_ * c * dxi + s * d2xi);
  return dx + dy;
}

DriveSample drive_signal(double t, const DriveConfig& cfg, const TruncatedModel& model) {
  return DriveSignal(cfg, model).sample(t);
}

}  // namespace transmon
