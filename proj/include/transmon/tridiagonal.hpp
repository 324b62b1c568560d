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

#include <Eigen/Dense>

namespace transmon {

/// Eigenpairs of a real symmetric tridiagonal matrix, ascending.
struct TridiagonalEigen {
  std::vector<double> values;
  Eigen::MatrixXd vectors;  // column j pairs with values[j]
};

/// Implicit-shift QL iteration (the EISPACK tql2 scheme) for a real symmetric
/// tridiagonal matrix with the given diagonal and first off-diagonal.
/// Throws NumericalError if an eigenvalue fails to converge within
/// `max_iterations` sweeps.
TridiagonalEigen solve_symmetric_tridiagonal(std::span<const double> diagonal,
                                             std::span<const double> off_diagonal,
                                             int max_iterations = 60);

}  // namespace transmon
