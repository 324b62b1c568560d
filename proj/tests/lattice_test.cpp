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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "transmon/tridiagonal.hpp"

namespace transmon {
namespace {

Eigen::MatrixXd dense(const LatticeHamiltonian& h) {
  const int n = h.size();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    m(k, k) = h.onsite[k];
    if (k + 1 < n) m(k, k + 1) = m(k + 1, k) = -h.hopping;
  }
  return m;
}

TEST(Tridiagonal, MatchesJacobiOnRandomMatrices) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int n : {1, 2, 5, 17, 40}) {
    std::vector<double> d(n);
    std::vector<double> e(n > 0 ? n - 1 : 0);
    for (double& x : d) x = u(rng);
    for (double& x : e) x = u(rng);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = d[i];
    for (int i = 0; i + 1 < n; ++i) m(i, i + 1) = m(i + 1, i) = e[i];
    const auto [ref, unused] = testing::jacobi_eigen(m);
    const TridiagonalEigen got = solve_symmetric_tridiagonal(d, e);
    ASSERT_EQ(static_cast<int>(got.values.size()), n);
    for (int i = 0; i < n; ++i) {
      EXPECT_NEAR(got.values[i], ref(i), 1e-11 * std::max(1.0, std::abs(ref(i))));
      if (i > 0) {
        EXPECT_LE(got.values[i - 1], got.values[i]);
      }
      const Eigen::VectorXd v = got.vectors.col(i);
      EXPECT_LT((m * v - got.values[i] * v).norm(), 1e-11);
    }
    EXPECT_LT((got.vectors.transpose() * got.vectors - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff(),
              1e-12);
  }
}

TEST(Tridiagonal, RejectsMismatchedLengthsAndReportsNonConvergence) {
  const std::vector<double> d = {1.0, 2.0, 3.0};
  const std::vector<double> bad = {1.0};
  EXPECT_THROW(solve_symmetric_tridiagonal(d, bad), ValidationError);
  const std::vector<double> e = {1.0, 1.0};
  EXPECT_THROW(solve_symmetric_tridiagonal(d, e, 0), NumericalError);
}

TEST(Lattice, DefaultParametersGiveExpectedGridConstants) {
  const TransmonParams p;
  const LatticeHamiltonian h = build_lattice(p);
  const double a = 2.0 * std::numbers::pi / 99.0;
  EXPECT_DOUBLE_EQ(p.ec_ghz(), 0.2205);
  EXPECT_NEAR(h.spacing, a, 1e-15);
  EXPECT_NEAR(h.hopping, ghz_to_angular(4.0 * 0.2205) / (a * a), 1e-9);
  ASSERT_EQ(h.size(), 100);
  for (int k = 0; k < h.size(); ++k) {
    EXPECT_NEAR(h.onsite[k], 2.0 * h.hopping - ghz_to_angular(22.05) * std::cos(h.phase_coords[k]), 1e-9);
  }
}

TEST(Lattice, FreeParticleHasConstantOnsite) {
  TransmonParams p;
  p.ej_ghz = 0.0;
  p.charging_ghz = 0.2;
  const LatticeHamiltonian h = build_lattice(p);
  for (double v : h.onsite) EXPECT_DOUBLE_EQ(v, 2.0 * h.hopping);
}

TEST(Lattice, DoublingSitesScalesHoppingByGridSpacing) {
  TransmonParams p;
  const double t100 = build_lattice(p).hopping;
  p.grid_sites = 200;
  const double t200 = build_lattice(p).hopping;
  EXPECT_NEAR(t200 / t100, (199.0 * 199.0) / (99.0 * 99.0), 1e-12);
  EXPECT_NEAR(t200 / t100, 4.0, 0.05);
}

TEST(Lattice, ValidationRejectsBadParameters) {
  auto expect_bad = [](TransmonParams p) { EXPECT_THROW(build_lattice(p), ValidationError); };
  TransmonParams p;
  p.grid_sites = 2;
  expect_bad(p);
  p = {};
  p.ej_ghz = std::nan("");
  expect_bad(p);
  p = {};
  p.ej_over_ec = 0.0;
  expect_bad(p);
  p = {};
  p.phase_min = 1.0;
  p.phase_max = 1.0;
  expect_bad(p);
  p = {};
  p.ej_ghz = 0.0;
  expect_bad(p);
}

TEST(Lattice, DefaultSpectrumMatchesTransmonEstimate) {
  const TransmonParams p;
  const EigenSystem eigs = solve_eigensystem(build_lattice(p), 4);
  const TransitionFrequencies tf = transition_frequencies(eigs);
  const double analytic = std::sqrt(8.0 * p.ej_ghz * p.ec_ghz()) - p.ec_ghz();
  EXPECT_NEAR(analytic, 6.016, 1e-3);
  EXPECT_NEAR(tf.omega01.ghz(), 6.0, 0.12);
  EXPECT_LT(std::abs(tf.omega01.ghz() / analytic - 1.0), 0.03);
  EXPECT_NEAR(tf.anharmonicity.ghz() / tf.omega01.ghz(), 0.04, 0.005);
  EXPECT_GT(tf.anharmonicity.ghz(), 0.0);
  EXPECT_LT(std::abs(tf.anharmonicity.ghz() / p.ec_ghz() - 1.0), 0.25);
  EXPECT_NEAR(tf.omega12.rad_per_ns(), tf.omega01.rad_per_ns() - tf.anharmonicity.rad_per_ns(), 1e-12);
}

TEST(Lattice, FreeParticleMatchesDiscreteLaplacian) {
  TransmonParams p;
  p.ej_ghz = 0.0;
  p.charging_ghz = 0.25;
  p.grid_sites = 60;
  const LatticeHamiltonian h = build_lattice(p);
  const int n = h.size();
  const EigenSystem eigs = solve_eigensystem(h, 10);
  for (int k = 1; k <= 10; ++k) {
    // Dirichlet chain of n sites: 2 tau (1 - cos(k pi / (n + 1))).
    const double exact = 2.0 * h.hopping * (1.0 - std::cos(k * std::numbers::pi / (n + 1)));
    EXPECT_NEAR(eigs.energies(k - 1), exact, 1e-8 * exact) << "level " << k;
  }
}

TEST(Lattice, HarmonicLadderHasZeroAnharmonicity) {
  EigenSystem eigs;
  eigs.energies = Eigen::Vector3d(0.0, 1.5, 3.0);
  eigs.states = Eigen::MatrixXd::Identity(3, 3);
  EXPECT_DOUBLE_EQ(transition_frequencies(eigs).anharmonicity.rad_per_ns(), 0.0);
  eigs.energies = Eigen::Vector2d(0.0, 1.0);
  eigs.states = Eigen::MatrixXd::Identity(2, 2);
  EXPECT_THROW(transition_frequencies(eigs), ValidationError);
}

TEST(Lattice, EigenpairsMatchDenseOracle) {
  for (int sites : {50, 100, 200}) {
    TransmonParams p;
    p.grid_sites = sites;
    const LatticeHamiltonian h = build_lattice(p);
    const auto [ref, unused] = testing::jacobi_eigen(dense(h));
    const EigenSystem eigs = solve_eigensystem(h, 8);
    for (int i = 0; i < 8; ++i) {
      EXPECT_NEAR(eigs.energies(i), ref(i), 1e-9 * std::abs(ref(i))) << sites << " sites, level " << i;
    }
  }
}

TEST(Lattice, EigenstatesAreOrthonormalResidualSmallAndSignFixed) {
  const LatticeHamiltonian h = build_lattice({});
  const EigenSystem eigs = solve_eigensystem(h, 8);
  const Eigen::MatrixXd gram = eigs.states.transpose() * eigs.states;
  EXPECT_LE((gram - Eigen::MatrixXd::Identity(8, 8)).cwiseAbs().maxCoeff(), 1e-10);
  const Eigen::MatrixXd m = dense(h);
  for (int i = 0; i < 8; ++i) {
    const Eigen::VectorXd v = eigs.states.col(i);
    EXPECT_LE((m * v - eigs.energies(i) * v).norm(), 1e-8 * h.norm());
    Eigen::Index arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    EXPECT_GT(v(arg), 0.0);
    if (i > 0) {
      EXPECT_GT(eigs.energies(i), eigs.energies(i - 1));
    }
  }
  EXPECT_THROW(solve_eigensystem(h, 101), ValidationError);
  EXPECT_THROW(solve_eigensystem(h, 0), ValidationError);
}

TEST(Lattice, SpectrumIndependentOfWallPosition) {
  // Same spacing on both domains so only the wall position changes.
  TransmonParams narrow;
  TransmonParams wide;
  wide.phase_min = -1.2 * std::numbers::pi;
  wide.phase_max = 1.2 * std::numbers::pi;
  wide.grid_sites = static_cast<int>(std::lround(1.2 * 99.0)) + 1;
  const double a_narrow = 2.0 * std::numbers::pi / 99.0;
  wide.phase_max = wide.phase_min + a_narrow * (wide.grid_sites - 1);
  const EigenSystem e1 = solve_eigensystem(build_lattice(narrow), 4);
  const EigenSystem e2 = solve_eigensystem(build_lattice(wide), 4);
  for (int i = 0; i < 4; ++i) {
    EXPECT_NEAR(e1.energies(i) - e1.energies(0) - (e2.energies(i) - e2.energies(0)), 0.0,
                1e-6 * (e1.energies(3) - e1.energies(0)))
        << "level " << i;
  }
}

TEST(Lattice, PhaseOperatorIsAntisymmetricGrid) {
  const LatticeHamiltonian h = build_lattice({});
  const Eigen::VectorXd phi = phase_operator(h);
  ASSERT_EQ(phi.size(), 100);
  EXPECT_DOUBLE_EQ(phi(0), -std::numbers::pi);
  EXPECT_NEAR(phi(99), std::numbers::pi, 1e-14);
  for (int k = 0; k < 100; ++k) EXPECT_NEAR(phi(k), -phi(99 - k), 1e-14);
}

TEST(Lattice, ParitySelectsMatrixElements) {
  const LatticeHamiltonian h = build_lattice({});
  const EigenSystem eigs = solve_eigensystem(h, 8);
  const Eigen::VectorXd phi = phase_operator(h);
  const Eigen::MatrixXd lambda = eigs.states.transpose() * phi.asDiagonal() * eigs.states;
  EXPECT_NEAR(lambda(0, 0), 0.0, 1e-10);
  const double largest = lambda.cwiseAbs().maxCoeff();
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      if ((i + j) % 2 == 0) {
        EXPECT_LE(std::abs(lambda(i, j)), 1e-8 * largest) << i << "," << j;
      }
    }
  }
  // Odd-parity pairs beyond nearest neighbours are small but present.
  EXPECT_GT(std::abs(lambda(0, 3)), 0.0);
}

}  // namespace
}  // namespace transmon
