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

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "transmon/units.hpp"

namespace transmon {

/// Junction constants and the phase grid.
///
/// `ej_over_ec` is the ratio to the single-electron charging energy
/// E_C = e^2/2C, so the kinetic term on the grid is 4 E_C (-d^2/dphi^2).
/// A free particle (E_J = 0) needs an explicit `charging_ghz`.
struct TransmonParams {
  double ej_ghz = 22.05;
  double ej_over_ec = 100.0;
  int grid_sites = 100;
  double phase_min = -std::numbers::pi;
  double phase_max = std::numbers::pi;
  std::optional<double> charging_ghz;

  double ec_ghz() const { return charging_ghz ? *charging_ghz : ej_ghz / ej_over_ec; }
  void validate() const;
};

/// Finite-difference Hamiltonian on the phase grid with hard walls. All
/// entries are in rad/ns. The implied matrix is
///   H = diag(onsite) - hopping * (shift up + shift down).
struct LatticeHamiltonian {
  std::vector<double> onsite;        // 2 tau - E_J cos(phi_k)
  double hopping = 0.0;              // tau = 4 E_C / a^2
  std::vector<double> phase_coords;  // phi_k
  double spacing = 0.0;              // a

  int size() const { return static_cast<int>(onsite.size()); }
  /// Infinity norm of the tridiagonal matrix.
  double norm() const;
  /// y = H x for a real or complex vector.
  template <typename In, typename Out>
  void apply(const In& x, Out& y) const;
};

/// Lowest eigenpairs of a lattice Hamiltonian.
struct EigenSystem {
  Eigen::VectorXd energies;  // rad/ns, ascending
  Eigen::MatrixXd states;    // grid_sites x n_levels, orthonormal columns

  int levels() const { return static_cast<int>(energies.size()); }
};

struct TransitionFrequencies {
  AngularFrequency omega01;
  AngularFrequency omega12;
  AngularFrequency anharmonicity;  // omega01 - omega12
};

LatticeHamiltonian build_lattice(const TransmonParams& params);

/// Solves for the lowest `n_levels` eigenpairs. The global sign of each state
/// is fixed so that its largest-magnitude component is positive.
EigenSystem solve_eigensystem(const LatticeHamiltonian& h, int n_levels);

/// Diagonal of the phase (coupling) operator, phi_k per site.
Eigen::VectorXd phase_operator(const LatticeHamiltonian& h);

TransitionFrequencies transition_frequencies(const EigenSystem& eigs);

template <typename In, typename Out>
void LatticeHamiltonian::apply(const In& x, Out& y) const {
  const int n = size();
  for (int k = 0; k < n; ++k) {
    auto acc = onsite[k] * x[k];
    if (k > 0) acc -= hopping * x[k - 1];
    if (k + 1 < n) acc -= hopping * x[k + 1];
    y[k] = acc;
  }
}

}  // namespace transmon
