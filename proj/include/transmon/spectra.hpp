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

#include <span>
#include <vector>

#include "transmon/pulses.hpp"

namespace transmon {

/// S(t) sampled on a uniform grid starting at t = 0.
struct SampledSignal {
  double sample_dt = 0.0;  // ns
  std::vector<double> times;
  std::vector<double> in_phase;
  std::vector<double> quadrature;
  std::vector<double> total;
};

/// Samples t = 0, dt, 2dt, ... up to and including t_p when it lands on the grid.
SampledSignal sample_drive(const DriveConfig& drive, const TruncatedModel& model, double sample_dt);

/// One-sided magnitude spectrum |X(f)| with X(f) = dt * sum_n x_n e^{-2 pi i f t_n}.
struct SpectrumResult {
  std::vector<double> freqs_ghz;
  std::vector<double> magnitude;
  double sample_dt = 0.0;
  int pad_factor = 1;
  int samples = 0;
  /// Total length after zero padding.
  int transform_size = 0;

  double bin_width_ghz() const;
  double peak() const;
  double peak_frequency_ghz() const;
  /// Linear interpolation between bins.
  double magnitude_at(double f_ghz) const;
  /// Sum of |X|^2 times the bin width over both signs of frequency.
  double energy() const;
};

/// Spectrum of arbitrary real samples; the DFT is done by FFTW.
SpectrumResult magnitude_spectrum(std::span<const double> samples, double sample_dt, int pad_factor);

/// Spectrum of the drive. Rejects sample_dt coarser than 1/20 of a carrier period.
SpectrumResult power_spectrum(const DriveConfig& drive, const TruncatedModel& model,
                              double sample_dt, int pad_factor = 8);

/// Copy with every magnitude divided by `reference`.
SpectrumResult normalized(const SpectrumResult& spec, double reference);

/// min over the window of drag/plain magnitude. Both spectra must share a grid.
double spectral_hole_depth(const SpectrumResult& drag, const SpectrumResult& plain,
                           double f_lo_ghz, double f_hi_ghz);

/// Width (GHz) of the contiguous band around the peak where the magnitude
/// stays at or above threshold * peak. Crossings are linearly interpolated.
double linewidth(const SpectrumResult& spec, double threshold);

}  // namespace transmon
