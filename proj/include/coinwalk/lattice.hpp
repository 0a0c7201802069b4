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

#ifndef COINWALK_LATTICE_HPP
#define COINWALK_LATTICE_HPP

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <span>

namespace coinwalk {

using cplx = std::complex<double>;

/// Finite window n = -L ... +L of the walker line.
///
/// Storage index of site n is n + L. Lattices are sized so that a walk never
/// touches the edge (see `for_walk`); the shift treats any amplitude that
/// would leave the window as an error.
class LatticeSpec {
 public:
  explicit LatticeSpec(int half_width);

  /// Smallest lattice that holds `steps` shifts of a state supported on
  /// |n| <= support_radius.
  static LatticeSpec for_walk(int steps, int support_radius = 0);

  int half_width() const { return half_width_; }
  int site_count() const { return 2 * half_width_ + 1; }
  int index(int site) const { return site + half_width_; }
  int site(int index) const { return index - half_width_; }
  bool contains(int site) const { return site >= -half_width_ && site <= half_width_; }

  friend bool operator==(const LatticeSpec &, const LatticeSpec &) = default;

 private:
  int half_width_;
};

/// Coin amplitudes in the {|0>, |1>} basis.
struct CoinState {
  cplx a0;
  cplx a1;

  /// (|0> + i|1>)/sqrt(2), the initial coin of every walk in this library.
  static CoinState phi();
  /// (i|0> + |1>)/sqrt(2), orthogonal to phi().
  static CoinState phi_perp();
  static CoinState zero() { return {1.0, 0.0}; }
  static CoinState one() { return {0.0, 1.0}; }

  double norm_squared() const { return std::norm(a0) + std::norm(a1); }
};

/// Joint walker-coin pure state. Row = site index, column = coin bit.
class JointPureState {
 public:
  JointPureState(LatticeSpec lattice, Eigen::MatrixX2cd amps);

  const LatticeSpec &lattice() const { return lattice_; }
  const Eigen::MatrixX2cd &amps() const { return amps_; }
  cplx amp(int site, int coin) const { return amps_(lattice_.index(site), coin); }
  double norm_squared() const { return amps_.squaredNorm(); }

 private:
  LatticeSpec lattice_;
  Eigen::MatrixX2cd amps_;
};

/// Joint density matrix stored as four coin-indexed position blocks:
/// block(c, d)(i, j) = <i, c| rho |j, d>.
class JointDensityMatrix {
 public:
  using Blocks = std::array<Eigen::MatrixXcd, 4>;

  JointDensityMatrix(LatticeSpec lattice, Blocks blocks);
  /// All-zero matrix on `lattice` (not a valid state; used as an accumulator).
  static JointDensityMatrix zeros(LatticeSpec lattice);

  const LatticeSpec &lattice() const { return lattice_; }
  const Eigen::MatrixXcd &block(int c, int d) const { return blocks_[2 * c + d]; }
  Eigen::MatrixXcd &block(int c, int d) { return blocks_[2 * c + d]; }
  const Blocks &blocks() const { return blocks_; }

  cplx element(int site, int coin, int site2, int coin2) const {
    return block(coin, coin2)(lattice_.index(site), lattice_.index(site2));
  }

  double trace() const;
  /// Tr rho^2.
  double purity() const;
  /// max |block(c,d) - block(d,c)^dagger| over all entries.
  double hermiticity_error() const;
  /// Dense (2S x 2S) matrix in the joint index 2*site_index + coin.
  Eigen::MatrixXcd to_dense() const;

  JointDensityMatrix &operator+=(const JointDensityMatrix &other);
  JointDensityMatrix &operator*=(double scale);
  /// Largest elementwise modulus of the difference.
  double max_abs_diff(const JointDensityMatrix &other) const;

 private:
  LatticeSpec lattice_;
  Blocks blocks_;
};

/// Half-width of the support kept for a Gaussian of parameter sigma: the
/// largest |n| with exp(-n^2 / (4 sigma^2)) >= cutoff.
int gaussian_support_radius(double sigma, double cutoff = 1e-12);

/// |0>_p (x) |phi>_c.
JointPureState make_localized_initial(const LatticeSpec &lattice);

/// N_G sum_n exp(-n^2/(4 sigma^2)) |n>_p (x) |phi>_c, truncated to sites whose
/// unnormalized amplitude is >= cutoff and renormalized on that support.
JointPureState make_gaussian_initial(const LatticeSpec &lattice, double sigma,
                                     double cutoff = 1e-12);

/// Normalized product of arbitrary position amplitudes (placed on
/// first_site, first_site + 1, ...) and a coin state.
JointPureState make_custom_initial(const LatticeSpec &lattice,
                                   std::span<const cplx> position_amps,
                                   const CoinState &coin, int first_site = 0);

JointDensityMatrix pure_to_density(const JointPureState &psi);

}  // namespace coinwalk

#endif  // COINWALK_LATTICE_HPP
