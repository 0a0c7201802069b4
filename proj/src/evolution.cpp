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

#include "coinwalk/evolution.hpp"

#include <cmath>
#include <string>

#include "coinwalk/errors.hpp"

namespace coinwalk {

namespace {

// Displacement applied to coin component c by the conditional shift.
constexpr int kShift[2] = {+1, -1};

void check_step_count(int steps) {
  if (steps < 0) throw InvalidArgument("step count must be non-negative, got " + std::to_string(steps));
}

}  // namespace

CoinOperator::CoinOperator(double theta) : theta_(theta) {
  if (!std::isfinite(theta)) throw InvalidArgument("coin parameter theta must be finite");
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  matrix_ << c, s, s, -c;
}

CoinOperator coin_operator(double theta) { return CoinOperator(theta); }

JointPureState apply_step_pure(const JointPureState &psi, const CoinOperator &coin) {
  const auto &a = psi.amps();
  const Eigen::Index s = a.rows();
  if (a(0, 0) != 0.0 || a(0, 1) != 0.0 || a(s - 1, 0) != 0.0 || a(s - 1, 1) != 0.0) {
    throw BoundaryError("walk step would push amplitude off the lattice edge (|n| = " +
                        std::to_string(psi.lattice().half_width()) + ")");
  }
  Eigen::MatrixX2cd out = Eigen::MatrixX2cd::Zero(s, 2);
  // Coin component 0 moves up one row, component 1 moves down one row.
  out.col(0).segment(1, s - 1) = coin(0, 0) * a.col(0).head(s - 1) + coin(0, 1) * a.col(1).head(s - 1);
  out.col(1).segment(0, s - 1) = coin(1, 0) * a.col(0).tail(s - 1) + coin(1, 1) * a.col(1).tail(s - 1);
  return JointPureState(psi.lattice(), std::move(out));
}

std::pair<Eigen::Index, Eigen::Index> population_window(const JointDensityMatrix &rho) {
  const Eigen::Index s = rho.lattice().site_count();
  const auto &d0 = rho.block(0, 0);
  const auto &d1 = rho.block(1, 1);
  auto occupied = [&](Eigen::Index i) { return d0(i, i) != 0.0 || d1(i, i) != 0.0; };
  Eigen::Index lo = 0;
  while (lo < s && !occupied(lo)) ++lo;
  if (lo == s) return {1, 0};
  Eigen::Index hi = s - 1;
  while (!occupied(hi)) --hi;
  return {lo, hi};
}

JointDensityMatrix apply_step_density(const JointDensityMatrix &rho, const CoinOperator &coin) {
  const auto &lattice = rho.lattice();
  const Eigen::Index s = lattice.site_count();
  const auto [lo, hi] = population_window(rho);
  auto next = JointDensityMatrix::zeros(lattice);
  if (lo > hi) return next;
  if (lo == 0 || hi == s - 1) {
    throw BoundaryError("walk step would push population off the lattice edge (|n| = " +
                        std::to_string(lattice.half_width()) + ")");
  }
  const Eigen::Index w = hi - lo + 1;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      // C is real, so C rho C^dagger mixes blocks with real weights C_ac C_bd.
      auto dst = next.block(a, b).block(lo + kShift[a], lo + kShift[b], w, w);
      dst = (coin(a, 0) * coin(b, 0)) * rho.block(0, 0).block(lo, lo, w, w);
      dst += (coin(a, 0) * coin(b, 1)) * rho.block(0, 1).block(lo, lo, w, w);
      dst += (coin(a, 1) * coin(b, 0)) * rho.block(1, 0).block(lo, lo, w, w);
      dst += (coin(a, 1) * coin(b, 1)) * rho.block(1, 1).block(lo, lo, w, w);
    }
  }
  return next;
}

JointPureState evolve_pure(JointPureState psi, double theta, int steps) {
  check_step_count(steps);
  const CoinOperator coin(theta);
  for (int t = 0; t < steps; ++t) psi = apply_step_pure(psi, coin);
  return psi;
}

JointDensityMatrix evolve_density(JointDensityMatrix rho, double theta, int steps) {
  check_step_count(steps);
  const CoinOperator coin(theta);
  for (int t = 0; t < steps; ++t) rho = apply_step_density(rho, coin);
  return rho;
}

JointPureState closed_form_z_walk(const LatticeSpec &lattice, std::span<const cplx> position_amps,
                                  int steps) {
  check_step_count(steps);
  const Eigen::Index s = lattice.site_count();
  if (static_cast<Eigen::Index>(position_amps.size()) != s) {
    throw InvalidArgument("closed-form walk needs one amplitude per lattice site");
  }
  double pnorm = 0.0;
  for (const auto &a : position_amps) pnorm += std::norm(a);
  if (!(pnorm > 0.0)) throw InvalidArgument("closed-form walk needs a nonzero initial state");
  const double scale = 1.0 / std::sqrt(2.0 * pnorm);
  const cplx phase1 = cplx(0.0, steps % 2 == 0 ? 1.0 : -1.0);

  Eigen::MatrixX2cd out = Eigen::MatrixX2cd::Zero(s, 2);
  for (Eigen::Index i = 0; i < s; ++i) {
    const cplx a = position_amps[static_cast<std::size_t>(i)];
    if (a == 0.0) continue;
    const Eigen::Index up = i + steps;
    const Eigen::Index down = i - steps;
    if (up >= s || down < 0) {
      throw BoundaryError("closed-form walk displaces support beyond the lattice edge");
    }
    out(up, 0) = a * scale;
    out(down, 1) = phase1 * a * scale;
  }
  return JointPureState(lattice, std::move(out));
}

}  // namespace coinwalk
