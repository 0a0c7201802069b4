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

#ifndef COINWALK_ANALYSIS_HPP
#define COINWALK_ANALYSIS_HPP

#include <Eigen/Dense>

#include <numbers>
#include <vector>

#include "coinwalk/lattice.hpp"

namespace coinwalk {

/// Walker-only density matrix, indexed by lattice storage index.
struct PositionDensity {
  LatticeSpec lattice;
  Eigen::MatrixXcd rho;

  double trace() const { return rho.diagonal().real().sum(); }
  cplx element(int site, int site2) const { return rho(lattice.index(site), lattice.index(site2)); }
  /// |amps><amps| for a position wave function (not renormalized).
  static PositionDensity from_pure(const LatticeSpec &lattice, const Eigen::VectorXcd &amps);
};

/// P(n) over n = -L ... L.
struct PositionDistribution {
  LatticeSpec lattice;
  std::vector<double> p;

  double at(int site) const { return p[static_cast<std::size_t>(lattice.index(site))]; }
  double total() const;
  double mean() const;
};

enum class TargetKind { kEndSuperposition, kTau, kGaussianCat };

/// Pure position target |T> with unit norm.
struct TargetState {
  TargetKind kind;
  LatticeSpec lattice;
  Eigen::VectorXcd amps;
};

/// (|+l> + s|-l>)/sqrt(2), s = +1 or -1, l >= 1.
TargetState end_superposition_target(const LatticeSpec &lattice, int l, int s);

/// Conditional state of the theta = 0 walk after N steps and coin outcome j:
/// (|N> + (-1)^(N+j) |-N>)/sqrt(2).
TargetState tau_target(const LatticeSpec &lattice, int steps, int j);

/// Superposition of two Gaussians (parameter sigma) centred at +-separation/2,
/// each normalized on the lattice, combined with relative sign `sign` and
/// renormalized. A walk of t steps feeds this with separation = 2t.
TargetState gaussian_cat_target(const LatticeSpec &lattice, int separation, double sigma, int sign = +1);

/// Tr_c rho = block(0,0) + block(1,1).
PositionDensity trace_out_coin(const JointDensityMatrix &rho);

/// Diagonal of rho_p. Entries in [-1e-12, 0) are clipped to zero; anything
/// more negative throws NumericalError.
PositionDistribution position_distribution(const PositionDensity &rho);
PositionDistribution position_distribution(const JointPureState &psi);
PositionDistribution position_distribution(const JointDensityMatrix &rho);

/// sum n^2 P(n) - (sum n P(n))^2.
double variance(const PositionDistribution &dist);

/// Reduced 2x2 coin density matrix.
Eigen::Matrix2cd reduced_coin(const JointPureState &psi);
Eigen::Matrix2cd reduced_coin(const JointDensityMatrix &rho);

/// Von Neumann entropy (nats) of the reduced coin state; at most ln 2.
double coin_entropy(const JointPureState &psi);
double von_neumann_entropy(const Eigen::Matrix2cd &rho);

/// Coin basis used for post-selection: j = 0 -> |phi>, j = 1 -> |phi_perp>.
CoinState postselection_coin(int j);

struct ConditionalPosition {
  PositionDensity state;
  double probability;
};

struct ConditionalPurePosition {
  LatticeSpec lattice;
  Eigen::VectorXcd amps;
  double probability;
};

/// Tr_c[Pi_j rho Pi_j] / Tr[Pi_j rho] together with Tr[Pi_j rho].
/// Throws DegeneratePostselection when the probability is below 1e-12.
ConditionalPosition project_coin(const JointDensityMatrix &rho, int j);
ConditionalPurePosition project_coin(const JointPureState &psi, int j);

/// <T| rho_p |T>.
double fidelity(const PositionDensity &rho, const TargetState &target);
double fidelity(const PositionDensity &rho, const Eigen::VectorXcd &target);

struct EndFidelity {
  double value;
  int k;
  int s;
};

/// max over s of the fidelity with (|-(N-2k)> + s|N-2k>)/sqrt(2).
///
/// k counts parity-allowed sites inward from the lattice end: after N steps
/// from a point the walker only occupies sites of parity N, so site N - 2k is
/// the k-th reachable site. Ties keep s = +1.
EndFidelity end_fidelity(const PositionDensity &rho, int steps, int k);

/// Maximum of end_fidelity over k = 0 ... k_max (first k wins ties).
EndFidelity best_end_fidelity(const PositionDensity &rho, int steps, int k_max = 3);

struct CriticalThetaOptions {
  double lower = 1e-4;
  double upper = std::numbers::pi / 4;
  int scan_points = 400;
  double tolerance = 1e-5;
};

/// g(theta) = P_theta(N) - ratio * P_theta(N - 2) for the walk from
/// |0>_p (x) |phi>_c.
double end_site_excess(double theta, int steps, double ratio);

/// First theta in (lower, upper) where g changes sign from positive, located
/// by a uniform scan followed by bisection to `tolerance`.
/// Throws NoBracket when the scan sees no sign change.
double critical_theta(int steps, double ratio, const CriticalThetaOptions &options = {});

}  // namespace coinwalk

#endif  // COINWALK_ANALYSIS_HPP
