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

#include "transmon/spectra.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <mutex>
#include <string>

namespace transmon {
namespace {

// FFTW planning is not thread safe.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};

int sample_count(double duration, double dt) {
  return static_cast<int>(std::floor(duration / dt + 1e-9)) + 1;
}

}  // namespace

SampledSignal sample_drive(const DriveConfig& drive, const TruncatedModel& model, double sample_dt) {
  if (!(sample_dt > 0.0) || !std::isfinite(sample_dt)) {
    throw ValidationError("sample interval must be positive");
  }
  const DriveSignal signal(drive, model);
  const double tp = drive.duration();
  const int n = sample_count(tp, sample_dt);
  SampledSignal out;
  out.sample_dt = sample_dt;
  out.times.reserve(n);
  out.in_phase.reserve(n);
  out.quadrature.reserve(n);
  out.total.reserve(n);
  for (int k = 0; k < n; ++k) {
    const double t = std::min(k * sample_dt, tp);
    const DriveSample s = signal.sample(t);
    out.times.push_back(t);
    out.in_phase.push_back(s.in_phase);
    out.quadrature.push_back(s.quadrature);
    out.total.push_back(s.total);
  }
  return out;
}

double SpectrumResult::bin_width_ghz() const { return 1.0 / (transform_size * sample_dt); }

double SpectrumResult::peak() const {
  return magnitude.empty() ? 0.0 : *std::max_element(magnitude.begin(), magnitude.end());
}

double SpectrumResult::peak_frequency_ghz() const {
  const auto it = std::max_element(magnitude.begin(), magnitude.end());
  return freqs_ghz[static_cast<std::size_t>(it - magnitude.begin())];
}

double SpectrumResult::magnitude_at(double f_ghz) const {
  if (freqs_ghz.empty() || f_ghz < freqs_ghz.front() || f_ghz > freqs_ghz.back()) {
    throw ValidationError("frequency " + std::to_string(f_ghz) + " GHz outside the spectrum");
  }
  const double pos = f_ghz / bin_width_ghz();
  const auto k = std::min(static_cast<std::size_t>(pos), magnitude.size() - 1);
  if (k + 1 >= magnitude.size()) return magnitude[k];
  const double frac = pos - static_cast<double>(k);
  return (1.0 - frac) * magnitude[k] + frac * magnitude[k + 1];
}

double SpectrumResult::energy() const {
  double sum = 0.0;
  const std::size_t last = magnitude.size() - 1;
  const bool has_nyquist = transform_size % 2 == 0;
  for (std::size_t k = 0; k < magnitude.size(); ++k) {
    const double w = (k == 0 || (has_nyquist && k == last)) ? 1.0 : 2.0;
    sum += w * magnitude[k] * magnitude[k];
  }
  return sum * bin_width_ghz();
}

SpectrumResult magnitude_spectrum(std::span<const double> samples, double sample_dt, int pad_factor) {
  if (samples.size() < 2) throw ValidationError("spectrum needs at least two samples");
  if (!(sample_dt > 0.0) || !std::isfinite(sample_dt)) {
    throw ValidationError("sample interval must be positive");
  }
  if (pad_factor < 1) throw ValidationError("pad factor must be at least 1");
  const int n = static_cast<int>(samples.size());
  const int m = n * pad_factor;
  const int bins = m / 2 + 1;

  std::unique_ptr<double, FftwFree> in(static_cast<double*>(fftw_malloc(sizeof(double) * m)));
  std::unique_ptr<fftw_complex, FftwFree> out(
      static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * bins)));
  if (!in || !out) throw NumericalError("FFTW allocation failed");
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_r2c_1d(m, in.get(), out.get(), FFTW_ESTIMATE);
  }
  if (plan == nullptr) throw NumericalError("FFTW could not plan a transform of size " + std::to_string(m));
  std::copy(samples.begin(), samples.end(), in.get());
  std::fill(in.get() + n, in.get() + m, 0.0);
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }

  SpectrumResult spec;
  spec.sample_dt = sample_dt;
  spec.pad_factor = pad_factor;
  spec.samples = n;
  spec.transform_size = m;
  spec.freqs_ghz.resize(bins);
  spec.magnitude.resize(bins);
  const double df = 1.0 / (m * sample_dt);
  for (int k = 0; k < bins; ++k) {
    spec.freqs_ghz[k] = k * df;
    spec.magnitude[k] = sample_dt * std::hypot(out.get()[k][0], out.get()[k][1]);
  }
  return spec;
}

SpectrumResult power_spectrum(const DriveConfig& drive, const TruncatedModel& model,
                              double sample_dt, int pad_factor) {
  const double carrier_ghz = angular_to_ghz(drive.carrier(model));
  if (!(carrier_ghz > 0.0)) throw ValidationError("carrier frequency must be positive");
  if (!(sample_dt > 0.0) || sample_dt * carrier_ghz > 1.0 / 20.0 + 1e-12) {
    throw ValidationError("sample interval " + std::to_string(sample_dt) +
                          " ns gives fewer than 20 samples per carrier period");
  }
  const SampledSignal s = sample_drive(drive, model, sample_dt);
  return magnitude_spectrum(s.total, sample_dt, pad_factor);
}

SpectrumResult normalized(const SpectrumResult& spec, double reference) {
  if (!(reference > 0.0) || !std::isfinite(reference)) {
    throw ValidationError("normalization reference must be positive");
  }
  SpectrumResult out = spec;
  for (double& v : out.magnitude) v /= reference;
  return out;
}

double spectral_hole_depth(const SpectrumResult& drag, const SpectrumResult& plain,
                           double f_lo_ghz, double f_hi_ghz) {
  if (drag.freqs_ghz.size() != plain.freqs_ghz.size() ||
      std::abs(drag.bin_width_ghz() - plain.bin_width_ghz()) > 1e-12 * plain.bin_width_ghz()) {
    throw ValidationError("spectra are on different frequency grids");
  }
  if (!(f_lo_ghz < f_hi_ghz)) throw ValidationError("empty frequency window");
  double ratio = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < plain.freqs_ghz.size(); ++k) {
    const double f = plain.freqs_ghz[k];
    if (f < f_lo_ghz || f > f_hi_ghz || plain.magnitude[k] <= 0.0) continue;
    ratio = std::min(ratio, drag.magnitude[k] / plain.magnitude[k]);
  }
  if (!std::isfinite(ratio)) throw ValidationError("no usable bins in the frequency window");
  return ratio;
}

double linewidth(const SpectrumResult& spec, double threshold) {
  if (!(threshold > 0.0) || !(threshold < 1.0)) {
    throw ValidationError("linewidth threshold must lie in (0, 1)");
  }
  const auto it = std::max_element(spec.magnitude.begin(), spec.magnitude.end());
  const std::size_t peak = static_cast<std::size_t>(it - spec.magnitude.begin());
  const double level = threshold * *it;
  const auto& mag = spec.magnitude;
  const auto& f = spec.freqs_ghz;

  std::size_t lo = peak;
  while (lo > 0 && mag[lo - 1] >= level) --lo;
  std::size_t hi = peak;
  while (hi + 1 < mag.size() && mag[hi + 1] >= level) ++hi;
  if (lo == 0 || hi + 1 == mag.size()) {
    throw ValidationError("spectrum does not fall below the linewidth threshold");
  }
  auto crossing = [&](std::size_t inside, std::size_t outside) {
    const double frac = (mag[inside] - level) / (mag[inside] - mag[outside]);
    return f[inside] + frac * (f[outside] - f[inside]);
  };
  return crossing(hi, hi + 1) - crossing(lo, lo - 1);
}

}  // namespace transmon
