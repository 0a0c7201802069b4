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

#include "coinwalk/analysis.hpp"

#include <cmath>
#include <string>

#include "coinwalk/errors.hpp"
#include "coinwalk/evolution.hpp"

namespace coinwalk {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kMinProbability = 1e-12;
constexpr double kNegativeClip = -1e-12;

void require_site(const LatticeSpec &lattice, int site) {
  if (!lattice.contains(site)) {
    throw InvalidArgument("site " + std::to_string(site) + " lies outside the lattice of half-width " +
                          std::to_string(lattice.half_width()));
  }
}

Eigen::VectorXcd two_site(const LatticeSpec &lattice, int site_a, int site_b, int s) {
  require_site(lattice, site_a);
  require_site(lattice, site_b);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(lattice.site_count());
  v(lattice.index(site_a)) = kInvSqrt2;
  v(lattice.index(site_b)) = s * kInvSqrt2;
  return v;
}

int check_sign(int s) {
  if (s != 1 && s != -1) throw InvalidArgument("relative sign must be +1 or -1");
  return s;
}

}  // namespace

PositionDensity PositionDensity::from_pure(const LatticeSpec &lattice, const Eigen::VectorXcd &amps) {
  return {lattice, amps * amps.adjoint()};
}

double PositionDistribution::total() const {
  double acc = 0.0;
  for (double x : p) acc += x;
  return acc;
}

double PositionDistribution::mean() const {
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) acc += lattice.site(static_cast<int>(i)) * p[i];
  return acc;
}

TargetState end_superposition_target(const LatticeSpec &lattice, int l, int s) {
  if (l < 1) throw InvalidArgument("end-superposition target needs l >= 1");
  return {TargetKind::kEndSuperposition, lattice, two_site(lattice, l, -l, check_sign(s))};
}

TargetState tau_target(const LatticeSpec &lattice, int steps, int j) {
  if (steps < 1) throw InvalidArgument("tau target needs at least one step");
  if (j != 0 && j != 1) throw InvalidArgument("coin outcome j must be 0 or 1");
  const int s = (steps + j) % 2 == 0 ? 1 : -1;
  return {TargetKind::kTau, lattice, two_site(lattice, steps, -steps, s)};
}

TargetState gaussian_cat_target(const LatticeSpec &lattice, int separation, double sigma, int sign) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw InvalidArgument("gaussian cat sigma must be positive");
  check_sign(sign);
  const Eigen::Index s = lattice.site_count();
  const double centre = 0.5 * separation;
  Eigen::VectorXd plus(s), minus(s);
  for (Eigen::Index i = 0; i < s; ++i) {
    const double n = lattice.site(static_cast<int>(i));
    plus(i) = std::exp(-(n - centre) * (n - centre) / (4.0 * sigma * sigma));
    minus(i) = std::exp(-(n + centre) * (n + centre) / (4.0 * sigma * sigma));
  }
  if (!(plus.norm() > 0.0) || !(minus.norm() > 0.0)) {
    throw InvalidArgument("gaussian cat lobes fall outside the lattice");
  }
  plus /= plus.norm();
  minus /= minus.norm();
  Eigen::VectorXd amps = plus + sign * minus;
  const double norm = amps.norm();
  if (!(norm > 0.0)) throw InvalidArgument("gaussian cat target vanishes (odd cat with zero separation)");
  amps /= norm;
  return {TargetKind::kGaussianCat, lattice, amps.cast<cplx>()};
}

PositionDensity trace_out_coin(const JointDensityMatrix &rho) {
  return {rho.lattice(), rho.block(0, 0) + rho.block(1, 1)};
}

PositionDistribution position_distribution(const PositionDensity &rho) {
  std::vector<double> p(static_cast<std::size_t>(rho.rho.rows()));
  for (Eigen::Index i = 0; i < rho.rho.rows(); ++i) {
    const double x = rho.rho(i, i).real();
    if (x < kNegativeClip) {
      throw NumericalError("negative population " + std::to_string(x) + " at site " +
                           std::to_string(rho.lattice.site(static_cast<int>(i))));
    }
    p[static_cast<std::size_t>(i)] = x < 0.0 ? 0.0 : x;
  }
  return {rho.lattice, std::move(p)};
}

PositionDistribution position_distribution(const JointPureState &psi) {
  const Eigen::VectorXd w = psi.amps().rowwise().squaredNorm();
  return {psi.lattice(), std::vector<double>(w.data(), w.data() + w.size())};
}

PositionDistribution position_distribution(const JointDensityMatrix &rho) {
  return position_distribution(trace_out_coin(rho));
}

double variance(const PositionDistribution &dist) {
  double m1 = 0.0;
  double m2 = 0.0;
  for (std::size_t i = 0; i < dist.p.size(); ++i) {
    const double n = dist.lattice.site(static_cast<int>(i));
    m1 += n * dist.p[i];
    m2 += n * n * dist.p[i];
  }
  return m2 - m1 * m1;
}

Eigen::Matrix2cd reduced_coin(const JointPureState &psi) {
  // rho_c(c, d) = sum_n a(n, c) conj(a(n, d)).
  return psi.amps().transpose() * psi.amps().conjugate();
}

Eigen::Matrix2cd reduced_coin(const JointDensityMatrix &rho) {
  Eigen::Matrix2cd out;
  for (int c = 0; c < 2; ++c) {
    for (int d = 0; d < 2; ++d) out(c, d) = rho.block(c, d).trace();
  }
  return out;
}

double von_neumann_entropy(const Eigen::Matrix2cd &rho) {
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(rho, Eigen::EigenvaluesOnly);
  double entropy = 0.0;
  for (Eigen::Index k = 0; k < 2; ++k) {
    const double lambda = solver.eigenvalues()(k);
    if (lambda > 0.0) entropy -= lambda * std::log(lambda);
  }
  return entropy;
}

double coin_entropy(const JointPureState &psi) { return von_neumann_entropy(reduced_coin(psi)); }

CoinState postselection_coin(int j) {
  if (j == 0) return CoinState::phi();
  if (j == 1) return CoinState::phi_perp();
  throw InvalidArgument("coin outcome j must be 0 or 1");
}

ConditionalPosition project_coin(const JointDensityMatrix &rho, int j) {
  const CoinState v = postselection_coin(j);
  const cplx w[2] = {v.a0, v.a1};
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rho.lattice().site_count(), rho.lattice().site_count());
  for (int c = 0; c < 2; ++c) {
    for (int d = 0; d < 2; ++d) out += (std::conj(w[c]) * w[d]) * rho.block(c, d);
  }
  const double probability = out.diagonal().real().sum();
  if (!(probability >= kMinProbability)) {
    throw DegeneratePostselection("coin outcome " + std::to_string(j) + " has probability " +
                                  std::to_string(probability));
  }
  out /= probability;
  return {{rho.lattice(), std::move(out)}, probability};
}

ConditionalPurePosition project_coin(const JointPureState &psi, int j) {
  const CoinState v = postselection_coin(j);
  Eigen::VectorXcd amps = std::conj(v.a0) * psi.amps().col(0) + std::conj(v.a1) * psi.amps().col(1);
  const double probability = amps.squaredNorm();
  if (!(probability >= kMinProbability)) {
    throw DegeneratePostselection("coin outcome " + std::to_string(j) + " has probability " +
                                  std::to_string(probability));
  }
  amps /= std::sqrt(probability);
  return {psi.lattice(), std::move(amps), probability};
}

double fidelity(const PositionDensity &rho, const Eigen::VectorXcd &target) {
  if (target.size() != rho.rho.rows()) throw InvalidArgument("target and state live on different lattices");
  return target.dot(rho.rho * target).real();
}

double fidelity(const PositionDensity &rho, const TargetState &target) {
  if (!(target.lattice == rho.lattice)) throw InvalidArgument("target and state live on different lattices");
  return fidelity(rho, target.amps);
}

EndFidelity end_fidelity(const PositionDensity &rho, int steps, int k) {
  const int l = steps - 2 * k;
  if (k < 0 || l < 1) {
    throw InvalidArgument("end target offset k = " + std::to_string(k) + " invalid for " +
                          std::to_string(steps) + " steps");
  }
  // <T|rho|T> for (|-l> + s|l>)/sqrt 2 needs only four entries.
  const cplx a = rho.element(-l, -l);
  const cplx b = rho.element(l, l);
  const cplx c = rho.element(-l, l);
  const double diag = 0.5 * (a.real() + b.real());
  const double coherence = c.real();  // Re <-l|rho|l>
  const double plus = diag + coherence;
  const double minus = diag - coherence;
  return minus > plus ? EndFidelity{minus, k, -1} : EndFidelity{plus, k, +1};
}

EndFidelity best_end_fidelity(const PositionDensity &rho, int steps, int k_max) {
  if (k_max < 0) throw InvalidArgument("k_max must be non-negative");
  if (steps < 1) throw InvalidArgument("end fidelity needs at least one step");
  EndFidelity best = end_fidelity(rho, steps, 0);
  for (int k = 1; k <= k_max && steps - 2 * k >= 1; ++k) {
    const auto candidate = end_fidelity(rho, steps, k);
    if (candidate.value > best.value) best = candidate;
  }
  return best;
}

double end_site_excess(double theta, int steps, double ratio) {
  const auto lattice = LatticeSpec::for_walk(steps);
  const auto dist = position_distribution(evolve_pure(make_localized_initial(lattice), theta, steps));
  return dist.at(steps) - ratio * dist.at(steps - 2);
}

double critical_theta(int steps, double ratio, const CriticalThetaOptions &options) {
  if (steps < 2) throw InvalidArgument("critical theta needs at least two steps");
  if (!(ratio > 1.0)) throw InvalidArgument("critical theta ratio must exceed 1");
  if (!(options.lower < options.upper) || options.scan_points < 2 || !(options.tolerance > 0.0)) {
    throw InvalidArgument("invalid critical-theta search options");
  }
  double lo = options.lower;
  double g_lo = end_site_excess(lo, steps, ratio);
  if (!(g_lo > 0.0)) {
    throw NoBracket("end-site excess is not positive at the lower scan bound");
  }
  const double h = (options.upper - options.lower) / (options.scan_points - 1);
  double hi = lo;
  bool bracketed = false;
  for (int k = 1; k < options.scan_points; ++k) {
    hi = options.lower + k * h;
    if (end_site_excess(hi, steps, ratio) <= 0.0) {
      bracketed = true;
      break;
    }
    lo = hi;
  }
  if (!bracketed) {
    throw NoBracket("no sign change of the end-site excess for N = " + std::to_string(steps) +
                    ", ratio = " + std::to_string(ratio));
  }
  while (hi - lo > options.tolerance) {
    const double mid = 0.5 * (lo + hi);
    if (end_site_excess(mid, steps, ratio) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace coinwalk
