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

#include "transmon/truncation.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

namespace transmon {

TruncatedModel TruncatedModel::from_parts(const Eigen::VectorXd& energies,
                                          const Eigen::MatrixXd& sigma_x,
                                          std::optional<double> anharmonicity,
                                          std::optional<double> coupling_ratio12) {
  const auto d = energies.size();
  if (d < 2) {
    throw ValidationError("truncated model needs at least 2 levels");
  }
  if (sigma_x.rows() != d || sigma_x.cols() != d) {
    throw ValidationError("sigma_x must be " + std::to_string(d) + "x" + std::to_string(d));
  }
  if (!energies.allFinite() || !sigma_x.allFinite()) {
    throw ValidationError("truncated model entries must be finite");
  }
  const double scale = std::max(sigma_x.cwiseAbs().maxCoeff(), 1.0);
  if ((sigma_x - sigma_x.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw ValidationError("sigma_x must be symmetric");
  }
  for (Eigen::Index i = 1; i < d; ++i) {
    if (energies(i) < energies(i - 1)) {
      throw ValidationError("energies must be ascending");
    }
  }

  TruncatedModel m;
  m.h0_ = energies.array() - energies(0);
  m.sigma_x_ = 0.5 * (sigma_x + sigma_x.transpose());
  if (d >= 3) {
    m.anharmonicity_ = m.h0_(1) - (m.h0_(2) - m.h0_(1));
    if (m.sigma_x_(0, 1) != 0.0) {
      m.ratio12_ = std::abs(m.sigma_x_(1, 2) / m.sigma_x_(0, 1));
    }
  }
  if (anharmonicity) m.anharmonicity_ = anharmonicity;
  if (coupling_ratio12) m.ratio12_ = coupling_ratio12;
  return m;
}

TruncatedModel TruncatedModel::adjacent_couplings_only() const {
  TruncatedModel out = *this;
  for (int i = 0; i < dim(); ++i) {
    for (int j = 0; j < dim(); ++j) {
      if (std::abs(i - j) != 1) out.sigma_x_(i, j) = 0.0;
    }
  }
  return out;
}

TruncatedModel truncate(const EigenSystem& eigs, const Eigen::VectorXd& phase_op, int dim) {
  if (dim < 2) {
    throw ValidationError("truncation dimension must be at least 2");
  }
  if (dim > eigs.levels()) {
    throw ValidationError("truncation dimension " + std::to_string(dim) + " exceeds the " +
                          std::to_string(eigs.levels()) + " solved levels");
  }
  if (phase_op.size() != eigs.states.rows()) {
    throw ValidationError("phase operator size does not match the eigenvectors");
  }
  const Eigen::MatrixXd psi = eigs.states.leftCols(dim);
  Eigen::MatrixXd lambda = psi.transpose() * phase_op.asDiagonal() * psi;
  lambda = 0.5 * (lambda + lambda.transpose());

  std::optional<double> anharmonicity;
  std::optional<double> ratio;
  if (eigs.levels() >= 3) {
    anharmonicity = transition_frequencies(eigs).anharmonicity.rad_per_ns();
    const double l01 = psi.col(0).dot(phase_op.cwiseProduct(psi.col(1)));
    const double l12 =
        eigs.states.col(1).dot(phase_op.cwiseProduct(eigs.states.col(2)));
    if (l01 != 0.0) ratio = std::abs(l12 / l01);
  }
  return TruncatedModel::from_parts(eigs.energies.head(dim), lambda, anharmonicity, ratio);
}

PseudoPauliSet pseudo_pauli(const TruncatedModel& model) {
  using cd = std::complex<double>;
  const Eigen::MatrixXd upper = model.sigma_x().triangularView<Eigen::StrictlyUpper>();
  const Eigen::MatrixXd lower = upper.transpose();
  const cd i(0.0, 1.0);

  PseudoPauliSet out;
  out.sigma_y = -i * (upper - lower).cast<cd>();
  const Eigen::MatrixXcd sx = model.sigma_x().cast<cd>();
  out.sigma_z = (sx * out.sigma_y - out.sigma_y * sx) / (2.0 * i);
  return out;
}

TruncatedModel build_truncated_model(const TransmonParams& params, int dim) {
  const LatticeHamiltonian h = build_lattice(params);
  const EigenSystem eigs = solve_eigensystem(h, std::max(dim, 3));
  return truncate(eigs, phase_operator(h), dim);
}

nlohmann::json to_json(const TruncatedModel& model) {
  nlohmann::json doc;
  doc["dim"] = model.dim();
  std::vector<double> energies(model.dim());
  for (int i = 0; i < model.dim(); ++i) energies[i] = angular_to_ghz(model.h0()(i));
  doc["energies_ghz"] = energies;
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < model.dim(); ++i) {
    std::vector<double> row(model.dim());
    for (int j = 0; j < model.dim(); ++j) row[j] = model.lambda(i, j);
    rows.push_back(row);
  }
  doc["lambda"] = rows;
  if (model.anharmonicity()) doc["anharmonicity_ghz"] = angular_to_ghz(*model.anharmonicity());
  if (model.coupling_ratio12()) doc["coupling_ratio12"] = *model.coupling_ratio12();
  return doc;
}

TruncatedModel truncated_model_from_json(const nlohmann::json& doc) {
  try {
    const int d = doc.at("dim").get<int>();
    const auto energies = doc.at("energies_ghz").get<std::vector<double>>();
    const auto rows = doc.at("lambda").get<std::vector<std::vector<double>>>();
    if (static_cast<int>(energies.size()) != d || static_cast<int>(rows.size()) != d) {
      throw ValidationError("model JSON: dimension mismatch");
    }
    Eigen::VectorXd e(d);
    Eigen::MatrixXd lambda(d, d);
    for (int i = 0; i < d; ++i) {
      e(i) = ghz_to_angular(energies[i]);
      if (static_cast<int>(rows[i].size()) != d) {
        throw ValidationError("model JSON: lambda row " + std::to_string(i) + " has wrong length");
      }
      for (int j = 0; j < d; ++j) lambda(i, j) = rows[i][j];
    }
    std::optional<double> anharmonicity;
    std::optional<double> ratio;
    if (doc.contains("anharmonicity_ghz")) {
      anharmonicity = ghz_to_angular(doc["anharmonicity_ghz"].get<double>());
    }
    if (doc.contains("coupling_ratio12")) ratio = doc["coupling_ratio12"].get<double>();
    return TruncatedModel::from_parts(e, lambda, anharmonicity, ratio);
  } catch (const nlohmann::json::exception& ex) {
    throw ValidationError(std::string("model JSON: ") + ex.what());
  }
}

}  // namespace transmon
