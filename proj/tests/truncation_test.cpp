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

#include <gtest/gtest.h>

#include <cmath>
#include <complex>

namespace transmon {
namespace {

double ratio(const TruncatedModel& m, int i, int j) { return m.lambda(i, j) / m.lambda(0, 1); }

TEST(Truncation, MatrixElementRatiosForDefaultJunction) {
  const TruncatedModel m3 = build_truncated_model({}, 3);
  EXPECT_NEAR(std::abs(ratio(m3, 1, 2)) / std::sqrt(2.08), 1.0, 0.01);
  const TruncatedModel m4 = build_truncated_model({}, 4);
  EXPECT_NEAR(std::abs(ratio(m4, 2, 3)) / 1.8, 1.0, 0.02);
  EXPECT_NEAR(std::abs(ratio(m4, 0, 3)) / 0.008, 1.0, 0.5);
  ASSERT_TRUE(m3.coupling_ratio12());
  EXPECT_NEAR(*m3.coupling_ratio12(), std::abs(ratio(m3, 1, 2)), 1e-12);
}

TEST(Truncation, GaugeSymmetryAndDiagonal) {
  const TruncatedModel m = build_truncated_model({}, 5);
  EXPECT_EQ(m.h0()(0), 0.0);
  for (int i = 1; i < m.dim(); ++i) EXPECT_GT(m.h0()(i), m.h0()(i - 1));
  const double largest = m.sigma_x().cwiseAbs().maxCoeff();
  EXPECT_EQ((m.sigma_x() - m.sigma_x().transpose()).cwiseAbs().maxCoeff(), 0.0);
  for (int i = 0; i < m.dim(); ++i) EXPECT_LE(std::abs(m.lambda(i, i)), 1e-8 * largest);
}

TEST(Truncation, EnergiesMatchLatticeLevels) {
  const TransmonParams p;
  const LatticeHamiltonian h = build_lattice(p);
  const EigenSystem eigs = solve_eigensystem(h, 6);
  const TruncatedModel m = truncate(eigs, phase_operator(h), 6);
  for (int i = 0; i < 6; ++i) EXPECT_NEAR(m.h0()(i), eigs.energies(i) - eigs.energies(0), 1e-9);
  EXPECT_NEAR(m.omega01(), transition_frequencies(eigs).omega01.rad_per_ns(), 1e-12);
  EXPECT_NEAR(*m.anharmonicity(), transition_frequencies(eigs).anharmonicity.rad_per_ns(), 1e-12);
}

TEST(Truncation, TwoLevelModelIsScaledPauliX) {
  const TruncatedModel m = build_truncated_model({}, 2);
  ASSERT_EQ(m.dim(), 2);
  EXPECT_LE(std::abs(m.lambda(0, 0)), 1e-12);
  EXPECT_LE(std::abs(m.lambda(1, 1)), 1e-12);
  EXPECT_EQ(m.lambda(0, 1), m.lambda(1, 0));
  // DRAG inputs survive from the third solved level.
  EXPECT_TRUE(m.anharmonicity());
  EXPECT_TRUE(m.coupling_ratio12());
}

TEST(Truncation, RatiosStableUnderGridRefinement) {
  TransmonParams fine;
  fine.grid_sites = 200;
  const TruncatedModel a = build_truncated_model({}, 4);
  const TruncatedModel b = build_truncated_model(fine, 4);
  EXPECT_LT(std::abs(ratio(a, 1, 2) / ratio(b, 1, 2) - 1.0), 0.005);
  EXPECT_LT(std::abs(ratio(a, 2, 3) / ratio(b, 2, 3) - 1.0), 0.005);
}

TEST(Truncation, RejectsBadDimensions) {
  const TransmonParams p;
  const LatticeHamiltonian h = build_lattice(p);
  const EigenSystem eigs = solve_eigensystem(h, 3);
  EXPECT_THROW(truncate(eigs, phase_operator(h), 1), ValidationError);
  EXPECT_THROW(truncate(eigs, phase_operator(h), 4), ValidationError);
  EXPECT_THROW(TruncatedModel::from_parts(Eigen::Vector2d(0, 1), Eigen::Matrix2d{{0, 1}, {2, 0}}),
               ValidationError);
  EXPECT_THROW(TruncatedModel::from_parts(Eigen::Vector2d(1, 0), Eigen::Matrix2d{{0, 1}, {1, 0}}),
               ValidationError);
}

TEST(Truncation, PseudoPauliOfUnitTwoLevelModelArePauliMatrices) {
  const auto m = TruncatedModel::from_parts(Eigen::Vector2d(0.0, 1.0), Eigen::Matrix2d{{0, 1}, {1, 0}});
  const PseudoPauliSet s = pseudo_pauli(m);
  using cd = std::complex<double>;
  Eigen::Matrix2cd y;
  y << cd(0, 0), cd(0, -1), cd(0, 1), cd(0, 0);
  Eigen::Matrix2cd z;
  z << 1, 0, 0, -1;
  EXPECT_LT((s.sigma_y - y).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((s.sigma_z - z).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Truncation, PseudoPauliZForThreeLevelLadder) {
  // For nearest-neighbour couplings a = lambda01, b = lambda12 the commutator
  // works out by hand to diag(a^2, b^2 - a^2, -b^2).
  const TruncatedModel m = build_truncated_model({}, 3);
  const double a = m.lambda(0, 1);
  const double b = m.lambda(1, 2);
  const PseudoPauliSet s = pseudo_pauli(m);
  const double scale = b * b;
  EXPECT_NEAR(s.sigma_z(0, 0).real(), a * a, 1e-8 * scale);
  EXPECT_NEAR(s.sigma_z(1, 1).real(), b * b - a * a, 1e-8 * scale);
  EXPECT_NEAR(s.sigma_z(2, 2).real(), -b * b, 1e-8 * scale);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i != j) {
        EXPECT_LE(std::abs(s.sigma_z(i, j)), 1e-8 * scale);
      }
    }
  }
}

TEST(Truncation, PseudoPauliZIsHermitianForAnyDimension) {
  for (int d : {2, 4, 6}) {
    const PseudoPauliSet s = pseudo_pauli(build_truncated_model({}, d));
    EXPECT_LT((s.sigma_z - s.sigma_z.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((s.sigma_y + s.sigma_y.transpose()).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_EQ(s.sigma_y.real().cwiseAbs().maxCoeff(), 0.0);
  }
}

TEST(Truncation, AdjacentCouplingsOnlyZeroesTheRest) {
  const TruncatedModel m = build_truncated_model({}, 4);
  const TruncatedModel a = m.adjacent_couplings_only();
  EXPECT_EQ(a.lambda(0, 3), 0.0);
  EXPECT_EQ(a.lambda(3, 0), 0.0);
  EXPECT_EQ(a.lambda(1, 2), m.lambda(1, 2));
  EXPECT_EQ(a.h0(), m.h0());
}

TEST(Truncation, JsonRoundTrip) {
  const TruncatedModel m = build_truncated_model({}, 4);
  const TruncatedModel back = truncated_model_from_json(to_json(m));
  EXPECT_EQ(back.dim(), 4);
  EXPECT_LT((back.sigma_x() - m.sigma_x()).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((back.h0() - m.h0()).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_NEAR(*back.anharmonicity(), *m.anharmonicity(), 1e-12);
  nlohmann::json bad = to_json(m);
  bad["dim"] = 3;
  EXPECT_THROW(truncated_model_from_json(bad), ValidationError);
  EXPECT_THROW(truncated_model_from_json(nlohmann::json::object()), ValidationError);
}

}  // namespace
}  // namespace transmon
