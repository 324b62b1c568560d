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

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "transmon/lattice.hpp"

namespace transmon {

/// Lowest-d projection of the lattice model.
///
/// `h0` holds E_i - E_0 in rad/ns and `sigma_x` the matrix elements
/// lambda_ij = <psi_i|phi|psi_j>. The cached DRAG inputs (anharmonicity and
/// lambda_12/lambda_01) are kept even when d = 2 if the source eigensystem had
/// a third level.
class TruncatedModel {
 public:
  /// Builds a model from explicit parts. `energies` are shifted so the first
  /// entry is zero; `sigma_x` must be symmetric.
  static TruncatedModel from_parts(const Eigen::VectorXd& energies, const Eigen::MatrixXd& sigma_x,
                                   std::optional<double> anharmonicity = std::nullopt,
                                   std::optional<double> coupling_ratio12 = std::nullopt);

  int dim() const { return static_cast<int>(h0_.size()); }
  const Eigen::VectorXd& h0() const { return h0_; }
  const Eigen::MatrixXd& sigma_x() const { return sigma_x_; }
  double lambda(int i, int j) const { return sigma_x_(i, j); }

  /// E_1 - E_0 in rad/ns.
  double omega01() const { return h0_(1); }
  /// omega01 - omega12 in rad/ns, if known.
  std::optional<double> anharmonicity() const { return anharmonicity_; }
  /// |lambda_12 / lambda_01|, if known.
  std::optional<double> coupling_ratio12() const { return ratio12_; }

  /// Copy with every non-adjacent coupling (|i - j| != 1) set to zero.
  TruncatedModel adjacent_couplings_only() const;

  friend bool operator==(const TruncatedModel&, const TruncatedModel&) = default;

 private:
  TruncatedModel() = default;

  Eigen::VectorXd h0_;
  Eigen::MatrixXd sigma_x_;
  std::optional<double> anharmonicity_;
  std::optional<double> ratio12_;
};

/// Pseudo-Pauli y and z operators built from the upper and lower halves of
/// sigma_x.
struct PseudoPauliSet {
  Eigen::MatrixXcd sigma_y;
  Eigen::MatrixXcd sigma_z;
};

TruncatedModel truncate(const EigenSystem& eigs, const Eigen::VectorXd& phase_op, int dim);

PseudoPauliSet pseudo_pauli(const TruncatedModel& model);

/// Convenience: lattice -> eigensystem -> truncated model.
TruncatedModel build_truncated_model(const TransmonParams& params, int dim);

// JSON layout: {"dim", "energies_ghz": [...], "lambda": [[...]],
// "anharmonicity_ghz"?, "coupling_ratio12"?}
nlohmann::json to_json(const TruncatedModel& model);
TruncatedModel truncated_model_from_json(const nlohmann::json& doc);

}  // namespace transmon
