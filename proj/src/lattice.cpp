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

#include "transmon/lattice.hpp"

#include <cmath>
#include <string>

#include "transmon/tridiagonal.hpp"

namespace transmon {

void TransmonParams::validate() const {
  if (!std::isfinite(ej_ghz) || !std::isfinite(ej_over_ec) || !std::isfinite(phase_min) ||
      !std::isfinite(phase_max)) {
    throw ValidationError("transmon parameters must be finite");
  }
  if (ej_ghz < 0.0) {
    throw ValidationError("e_j must be non-negative");
  }
  if (charging_ghz && (!std::isfinite(*charging_ghz) || *charging_ghz <= 0.0)) {
    throw ValidationError("charging energy must be positive and finite");
  }
  if (ej_ghz == 0.0 && !charging_ghz) {
    throw ValidationError("e_j = 0 requires an explicit charging energy");
  }
  if (ej_over_ec <= 0.0) {
    throw ValidationError("ej_over_ec must be positive");
  }
  if (grid_sites < 3) {
    throw ValidationError("grid_sites must be at least 3, got " + std::to_string(grid_sites));
  }
  if (!(phase_min < phase_max)) {
    throw ValidationError("phase_min must be below phase_max");
  }
}

double LatticeHamiltonian::norm() const {
  double best = 0.0;
  const int n = size();
  for (int k = 0; k < n; ++k) {
    double row = std::abs(onsite[k]);
    if (k > 0) row += std::abs(hopping);
    if (k + 1 < n) row += std::abs(hopping);
    best = std::max(best, row);
  }
  return best;
}

LatticeHamiltonian build_lattice(const TransmonParams& params) {
  params.validate();
  const double ec = ghz_to_angular(params.ec_ghz());
  const double ej = ghz_to_angular(params.ej_ghz);
  const int n = params.grid_sites;

  LatticeHamiltonian h;
  h.spacing = (params.phase_max - params.phase_min) / (n - 1);
  h.hopping = 4.0 * ec / (h.spacing * h.spacing);
  h.phase_coords.resize(n);
  h.onsite.resize(n);
  for (int k = 0; k < n; ++k) {
    const double phi = (k == n - 1) ? params.phase_max : params.phase_min + k * h.spacing;
    h.phase_coords[k] = phi;
    h.onsite[k] = 2.0 * h.hopping - ej * std::cos(phi);
  }
  return h;
}

EigenSystem solve_eigensystem(const LatticeHamiltonian& h, int n_levels) {
  const int n = h.size();
  if (n_levels < 1 || n_levels > n) {
    throw ValidationError("n_levels must be in [1, " + std::to_string(n) + "], got " +
                          std::to_string(n_levels));
  }
  const std::vector<double> off(n - 1, -h.hopping);
  TridiagonalEigen full = solve_symmetric_tridiagonal(h.onsite, off);

  EigenSystem out;
  out.energies.resize(n_levels);
  out.states.resize(n, n_levels);
  for (int j = 0; j < n_levels; ++j) {
    out.energies(j) = full.values[j];
    Eigen::VectorXd v = full.vectors.col(j);
    Eigen::Index peak = 0;
    v.cwiseAbs().maxCoeff(&peak);
    if (v(peak) < 0.0) v = -v;
    out.states.col(j) = v;
  }
  return out;
}

Eigen::VectorXd phase_operator(const LatticeHamiltonian& h) {
  return Eigen::Map<const Eigen::VectorXd>(h.phase_coords.data(), h.size());
}

TransitionFrequencies transition_frequencies(const EigenSystem& eigs) {
  if (eigs.levels() < 3) {
    throw ValidationError("transition frequencies need at least 3 levels");
  }
  const double w01 = eigs.energies(1) - eigs.energies(0);
  const double w12 = eigs.energies(2) - eigs.energies(1);
  return {AngularFrequency::from_rad_per_ns(w01), AngularFrequency::from_rad_per_ns(w12),
          AngularFrequency::from_rad_per_ns(w01 - w12)};
}

}  // namespace transmon
