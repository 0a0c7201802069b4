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

#ifndef COINWALK_EVOLUTION_HPP
#define COINWALK_EVOLUTION_HPP

#include <Eigen/Dense>

#include <span>

#include "coinwalk/lattice.hpp"

namespace coinwalk {

/// C(theta) = cos(theta) Z + sin(theta) X. Real orthogonal and symmetric.
class CoinOperator {
 public:
  explicit CoinOperator(double theta);

  double theta() const { return theta_; }
  const Eigen::Matrix2d &matrix() const { return matrix_; }
  double operator()(int row, int col) const { return matrix_(row, col); }

 private:
  double theta_;
  Eigen::Matrix2d matrix_;
};

CoinOperator coin_operator(double theta);

/// One step S (1 (x) C): coin toss, then |n,0> -> |n+1,0> and |n,1> -> |n-1,1>.
/// Throws BoundaryError if any amplitude sits on |n| = L.
JointPureState apply_step_pure(const JointPureState &psi, const CoinOperator &coin);

/// rho -> [S (1 (x) C)] rho [S (1 (x) C)]^dagger, computed blockwise.
///
/// Only the window of sites with nonzero population is touched; for a
/// positive semidefinite rho a zero diagonal entry implies a zero row and
/// column, so the rest of each block is known to vanish.
JointDensityMatrix apply_step_density(const JointDensityMatrix &rho, const CoinOperator &coin);

JointPureState evolve_pure(JointPureState psi, double theta, int steps);
JointDensityMatrix evolve_density(JointDensityMatrix rho, double theta, int steps);

/// Exact theta = 0 solution for |psi0>_p (x) |phi>_c:
///   (1/sqrt 2) [ |psi_{+t}>|0> + i (-1)^t |psi_{-t}>|1> ],
/// with |psi_{+-t}> the initial amplitudes displaced by +-t sites.
/// `position_amps` covers the whole lattice (one entry per site).
JointPureState closed_form_z_walk(const LatticeSpec &lattice, std::span<const cplx> position_amps,
                                  int steps);

/// Inclusive [lo, hi] storage-index window holding every nonzero population
/// of rho, or an empty optional-like {1, 0} pair when rho is identically zero.
std::pair<Eigen::Index, Eigen::Index> population_window(const JointDensityMatrix &rho);

}  // namespace coinwalk

#endif  // COINWALK_EVOLUTION_HPP
