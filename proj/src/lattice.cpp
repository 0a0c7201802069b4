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

#include "coinwalk/lattice.hpp"

#include <cmath>
#include <string>

#include "coinwalk/errors.hpp"

namespace coinwalk {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

}  // namespace

LatticeSpec::LatticeSpec(int half_width) : half_width_(half_width) {
  if (half_width < 1) {
    throw InvalidArgument("lattice half-width must be >= 1, got " + std::to_string(half_width));
  }
}

LatticeSpec LatticeSpec::for_walk(int steps, int support_radius) {
  if (steps < 0 || support_radius < 0) {
    throw InvalidArgument("lattice sizing needs non-negative steps and support radius");
  }
  // LatticeSpec needs at least one site each side of the origin.
  return LatticeSpec(std::max(1, steps + support_radius));
}

CoinState CoinState::phi() { return {kInvSqrt2, cplx(0.0, kInvSqrt2)}; }

CoinState CoinState::phi_perp() { return {cplx(0.0, kInvSqrt2), kInvSqrt2}; }

JointPureState::JointPureState(LatticeSpec lattice, Eigen::MatrixX2cd amps)
    : lattice_(lattice), amps_(std::move(amps)) {
  if (amps_.rows() != lattice_.site_count()) {
    throw InvalidArgument("amplitude table has " + std::to_string(amps_.rows()) +
                          " rows, lattice has " + std::to_string(lattice_.site_count()) + " sites");
  }
}

JointDensityMatrix::JointDensityMatrix(LatticeSpec lattice, Blocks blocks)
    : lattice_(lattice), blocks_(std::move(blocks)) {
  const auto s = lattice_.site_count();
  for (const auto &b : blocks_) {
    if (b.rows() != s || b.cols() != s) {
      throw InvalidArgument("density block shape does not match lattice");
    }
  }
}

JointDensityMatrix JointDensityMatrix::zeros(LatticeSpec lattice) {
  const auto s = lattice.site_count();
  Blocks b;
  for (auto &m : b) m = Eigen::MatrixXcd::Zero(s, s);
  return JointDensityMatrix(lattice, std::move(b));
}

double JointDensityMatrix::trace() const {
  return block(0, 0).diagonal().real().sum() + block(1, 1).diagonal().real().sum();
}

double JointDensityMatrix::purity() const {
  // Tr rho^2 = sum |rho_ij|^2 for Hermitian rho.
  double acc = 0.0;
  for (const auto &b : blocks_) acc += b.squaredNorm();
  return acc;
}

double JointDensityMatrix::hermiticity_error() const {
  double err = 0.0;
  for (int c = 0; c < 2; ++c) {
    for (int d = 0; d < 2; ++d) {
      err = std::max(err, (block(c, d) - block(d, c).adjoint()).cwiseAbs().maxCoeff());
    }
  }
  return err;
}

Eigen::MatrixXcd JointDensityMatrix::to_dense() const {
  const auto s = lattice_.site_count();
  Eigen::MatrixXcd dense(2 * s, 2 * s);
  for (int c = 0; c < 2; ++c) {
    for (int d = 0; d < 2; ++d) {
      const auto &b = block(c, d);
      for (Eigen::Index j = 0; j < s; ++j) {
        for (Eigen::Index i = 0; i < s; ++i) dense(2 * i + c, 2 * j + d) = b(i, j);
      }
    }
  }
  return dense;
}

JointDensityMatrix &JointDensityMatrix::operator+=(const JointDensityMatrix &other) {
  if (!(other.lattice_ == lattice_)) throw InvalidArgument("adding density matrices on different lattices");
  for (std::size_t k = 0; k < blocks_.size(); ++k) blocks_[k] += other.blocks_[k];
  return *this;
}

JointDensityMatrix &JointDensityMatrix::operator*=(double scale) {
  for (auto &b : blocks_) b *= scale;
  return *this;
}

double JointDensityMatrix::max_abs_diff(const JointDensityMatrix &other) const {
  if (!(other.lattice_ == lattice_)) throw InvalidArgument("comparing density matrices on different lattices");
  double err = 0.0;
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    err = std::max(err, (blocks_[k] - other.blocks_[k]).cwiseAbs().maxCoeff());
  }
  return err;
}

int gaussian_support_radius(double sigma, double cutoff) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw InvalidArgument("gaussian sigma must be positive and finite");
  }
  if (!(cutoff > 0.0) || cutoff >= 1.0) throw InvalidArgument("gaussian cutoff must lie in (0, 1)");
  // exp(-r^2/(4 sigma^2)) >= cutoff  <=>  r <= 2 sigma sqrt(-ln cutoff).
  int r = static_cast<int>(std::floor(2.0 * sigma * std::sqrt(-std::log(cutoff))));
  while (r > 0 && std::exp(-double(r) * r / (4.0 * sigma * sigma)) < cutoff) --r;
  while (std::exp(-double(r + 1) * (r + 1) / (4.0 * sigma * sigma)) >= cutoff) ++r;
  return r;
}

JointPureState make_localized_initial(const LatticeSpec &lattice) {
  const auto phi = CoinState::phi();
  Eigen::MatrixX2cd amps = Eigen::MatrixX2cd::Zero(lattice.site_count(), 2);
  amps(lattice.index(0), 0) = phi.a0;
  amps(lattice.index(0), 1) = phi.a1;
  return JointPureState(lattice, std::move(amps));
}

JointPureState make_gaussian_initial(const LatticeSpec &lattice, double sigma, double cutoff) {
  const int radius = gaussian_support_radius(sigma, cutoff);
  if (radius > lattice.half_width()) {
    throw InvalidArgument("gaussian support radius " + std::to_string(radius) +
                          " exceeds lattice half-width " + std::to_string(lattice.half_width()));
  }
  Eigen::VectorXd weights = Eigen::VectorXd::Zero(lattice.site_count());
  // Fill symmetric pairs from the same value so that reflection symmetry is exact.
  for (int n = 0; n <= radius; ++n) {
    const double w = std::exp(-double(n) * n / (4.0 * sigma * sigma));
    weights(lattice.index(n)) = w;
    weights(lattice.index(-n)) = w;
  }
  weights /= weights.norm();
  const auto phi = CoinState::phi();
  Eigen::MatrixX2cd amps(lattice.site_count(), 2);
  amps.col(0) = weights.cast<cplx>() * phi.a0;
  amps.col(1) = weights.cast<cplx>() * phi.a1;
  return JointPureState(lattice, std::move(amps));
}

JointPureState make_custom_initial(const LatticeSpec &lattice, std::span<const cplx> position_amps,
                                   const CoinState &coin, int first_site) {
  if (position_amps.empty()) throw InvalidArgument("custom initial state needs at least one amplitude");
  const int last_site = first_site + static_cast<int>(position_amps.size()) - 1;
  if (!lattice.contains(first_site) || !lattice.contains(last_site)) {
    throw InvalidArgument("custom initial support [" + std::to_string(first_site) + ", " +
                          std::to_string(last_site) + "] does not fit the lattice");
  }
  double pnorm = 0.0;
  for (const auto &a : position_amps) pnorm += std::norm(a);
  if (!(pnorm > 0.0) || !std::isfinite(pnorm)) {
    throw InvalidArgument("custom initial position amplitudes are all zero or not finite");
  }
  const double cnorm = coin.norm_squared();
  if (!(cnorm > 0.0) || !std::isfinite(cnorm)) throw InvalidArgument("custom coin state is zero");
  const double scale = 1.0 / std::sqrt(pnorm * cnorm);

  Eigen::MatrixX2cd amps = Eigen::MatrixX2cd::Zero(lattice.site_count(), 2);
  for (std::size_t k = 0; k < position_amps.size(); ++k) {
    const int row = lattice.index(first_site + static_cast<int>(k));
    amps(row, 0) = position_amps[k] * coin.a0 * scale;
    amps(row, 1) = position_amps[k] * coin.a1 * scale;
  }
  return JointPureState(lattice, std::move(amps));
}

JointDensityMatrix pure_to_density(const JointPureState &psi) {
  JointDensityMatrix::Blocks blocks;
  const auto &a = psi.amps();
  for (int c = 0; c < 2; ++c) {
    for (int d = 0; d < 2; ++d) blocks[2 * c + d] = a.col(c) * a.col(d).adjoint();
  }
  return JointDensityMatrix(psi.lattice(), std::move(blocks));
}

}  // namespace coinwalk
