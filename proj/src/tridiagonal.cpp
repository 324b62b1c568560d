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

#include "transmon/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "transmon/units.hpp"

namespace transmon {

TridiagonalEigen solve_symmetric_tridiagonal(std::span<const double> diagonal,
                                             std::span<const double> off_diagonal,
                                             int max_iterations) {
  const int n = static_cast<int>(diagonal.size());
  if (n == 0) {
    throw ValidationError("tridiagonal solver: empty matrix");
  }
  if (static_cast<int>(off_diagonal.size()) != n - 1) {
    throw ValidationError("tridiagonal solver: off-diagonal must have n-1 entries");
  }

  std::vector<double> d(diagonal.begin(), diagonal.end());
  // e[i] couples rows i and i+1; e[n-1] is a zero sentinel.
  std::vector<double> e(n, 0.0);
  std::copy(off_diagonal.begin(), off_diagonal.end(), e.begin());
  Eigen::MatrixXd z = Eigen::MatrixXd::Identity(n, n);

  constexpr double eps = std::numeric_limits<double>::epsilon();
  double shift_sum = 0.0;
  double tst1 = 0.0;

  for (int l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
    int m = l;
    while (m < n - 1 && std::abs(e[m]) > eps * tst1) {
      ++m;
    }

    if (m > l) {
      int iter = 0;
      do {
        if (++iter > max_iterations) {
          throw NumericalError("tridiagonal solver: no convergence for eigenvalue " +
                               std::to_string(l) + " after " + std::to_string(max_iterations) +
                               " iterations");
        }
        // Wilkinson-style shift from the leading 2x2 block.
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0) {
          r = -r;
        }
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (int i = l + 2; i < n; ++i) {
          d[i] -= h;
        }
        shift_sum += h;

        // Chase the bulge back up with plane rotations.
        p = d[m];
        double c = 1.0;
        double c2 = 1.0;
        double c3 = 1.0;
        const double el1 = e[l + 1];
        double s = 0.0;
        double s2 = 0.0;
        for (int i = m - 1; i >= l; --i) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[i];
          h = c * p;
          r = std::hypot(p, e[i]);
          e[i + 1] = s * r;
          s = e[i] / r;
          c = p / r;
          p = c * d[i] - s * g;
          d[i + 1] = h + s * (c * g + s * d[i]);
          auto left = z.col(i);
          auto right = z.col(i + 1);
          for (int k = 0; k < n; ++k) {
            const double zk = right(k);
            right(k) = s * left(k) + c * zk;
            left(k) = c * left(k) - s * zk;
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > eps * tst1);
    }
    d[l] += shift_sum;
    e[l] = 0.0;
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return d[a] < d[b]; });

  TridiagonalEigen out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (int j = 0; j < n; ++j) {
    out.values[j] = d[order[j]];
    out.vectors.col(j) = z.col(order[j]);
  }
  return out;
}

}  // namespace transmon
