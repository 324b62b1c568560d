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

#include <numbers>
#include <stdexcept>
#include <string>

namespace transmon {

// Internally every energy and frequency is an angular frequency in rad/ns and
// every time is in ns. User-facing values are ordinary frequencies in GHz.
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

constexpr double ghz_to_angular(double ghz) { return kTwoPi * ghz; }
constexpr double angular_to_ghz(double rad_per_ns) { return rad_per_ns / kTwoPi; }

/// Angular frequency in rad/ns with explicit GHz conversions.
class AngularFrequency {
 public:
  constexpr AngularFrequency() = default;
  static constexpr AngularFrequency from_rad_per_ns(double w) { return AngularFrequency(w); }
  static constexpr AngularFrequency from_ghz(double f) { return AngularFrequency(ghz_to_angular(f)); }

  constexpr double rad_per_ns() const { return value_; }
  constexpr double ghz() const { return angular_to_ghz(value_); }

  friend constexpr auto operator<=>(const AngularFrequency&, const AngularFrequency&) = default;

 private:
  constexpr explicit AngularFrequency(double w) : value_(w) {}
  double value_ = 0.0;
};

// Error classes. The CLI maps each to its own exit code.

/// Invalid input: parameters, configuration documents, index ranges.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// Numerical failure: non-convergence, loss of unitarity, NaN.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// File system failure while reading configs or writing results.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace transmon
