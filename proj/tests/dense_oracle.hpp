// Copyright 2026 The coinwalk Authors
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

// Test-only references: dense joint-space operators built directly from
// the definitions, sharing nothing with the blockwise kernels.

#ifndef COINWALK_TESTS_DENSE_ORACLE_HPP
#define COINWALK_TESTS_DENSE_ORACLE_HPP

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "coinwalk/lattice.hpp"
#include "coinwalk/rng.hpp"

namespace coinwalk::testing {

// Joint index 2 * (n + L) + c, matching JointDensityMatrix::to_dense().
inline Eigen::MatrixXd dense_step(double theta, int half_width) {
  const int sites = 2 * half_width + 1;
  const int dim = 2 * sites;
  Eigen::MatrixXd coin(2, 2);
  coin << std::cos(theta), std::sin(theta), std::sin(theta), -std::cos(theta);
  Eigen::MatrixXd c_full = Eigen::MatrixXd::Zero(dim, dim);
  for (int i = 0; i < sites; ++i) c_full.block(2 * i, 2 * i, 2, 2) = coin;
  Eigen::MatrixXd shift = Eigen::MatrixXd::Zero(dim, dim);
  for (int i = 0; i < sites; ++i) {
    if (i + 1 < sites) shift(2 * (i + 1), 2 * i) = 1.0;
    if (i - 1 >= 0) shift(2 * (i - 1) + 1, 2 * i + 1) = 1.0;
  }
  return shift * c_full;
}

inline Eigen::VectorXcd dense_vector(const JointPureState &psi) {
  const auto &a = psi.amps();
  Eigen::VectorXcd v(2 * a.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    v(2 * i) = a(i, 0);
    v(2 * i + 1) = a(i, 1);
  }
  return v;
}

// Position dephasing on the dense joint matrix: elements whose two position
// labels differ are scaled by beta.
inline Eigen::MatrixXcd dense_dephase(const Eigen::MatrixXcd &rho, double beta) {
  Eigen::MatrixXcd out = rho;
  for (Eigen::Index r = 0; r < rho.rows(); ++r) {
    for (Eigen::Index c = 0; c < rho.cols(); ++c) {
      if (r / 2 != c / 2) out(r, c) *= beta;
    }
  }
  return out;
}

// Random normalized position amplitudes on `size` consecutive sites.
inline std::vector<cplx> random_amplitudes(RngStream &rng, int size) {
  std::vector<cplx> amps(static_cast<std::size_t>(size));
  double norm = 0.0;
  for (auto &a : amps) {
    a = {2.0 * rng.uniform01() - 1.0, 2.0 * rng.uniform01() - 1.0};
    norm += std::norm(a);
  }
  for (auto &a : amps) a /= std::sqrt(norm);
  return amps;
}

inline CoinState random_coin(RngStream &rng) {
  CoinState c{{2.0 * rng.uniform01() - 1.0, 2.0 * rng.uniform01() - 1.0},
              {2.0 * rng.uniform01() - 1.0, 2.0 * rng.uniform01() - 1.0}};
  const double n = std::sqrt(c.norm_squared());
  return {c.a0 / n, c.a1 / n};
}

}  // namespace coinwalk::testing

#endif  // COINWALK_TESTS_DENSE_ORACLE_HPP
