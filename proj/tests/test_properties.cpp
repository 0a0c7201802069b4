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

// Randomized property checks. Each property draws its cases from a seeded
// generator so failures are reproducible; the case index is in the message.

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "coinwalk/analysis.hpp"
#include "coinwalk/evolution.hpp"
#include "coinwalk/lattice.hpp"
#include "coinwalk/noise.hpp"
#include "coinwalk/rng.hpp"
#include "dense_oracle.hpp"

namespace coinwalk {
namespace {

using testing::random_amplitudes;
using testing::random_coin;

constexpr double kPi = std::numbers::pi;
constexpr int kCases = 40;

class Gen {
 public:
  explicit Gen(std::uint64_t stream) : rng_(0xC017'5EEDull, stream) {}

  double real(double lo, double hi) { return lo + (hi - lo) * rng_.uniform01(); }
  int integer(int lo, int hi) { return lo + static_cast<int>(rng_.next_u64() % static_cast<std::uint64_t>(hi - lo + 1)); }
  double theta() { return real(-kPi, kPi); }

  // Generic (entangled) joint state on the central `support` sites.
  JointPureState joint_state(const LatticeSpec &lattice, int support) {
    const auto flat = random_amplitudes(rng_, 2 * support);
    Eigen::MatrixX2cd a = Eigen::MatrixX2cd::Zero(lattice.site_count(), 2);
    const int first = -support / 2;
    for (int i = 0; i < support; ++i) {
      a(lattice.index(first + i), 0) = flat[static_cast<std::size_t>(2 * i)];
      a(lattice.index(first + i), 1) = flat[static_cast<std::size_t>(2 * i + 1)];
    }
    return {lattice, a};
  }

  std::vector<double> betas(int count) {
    std::vector<double> b;
    for (int i = 0; i < count; ++i) b.push_back(rng_.uniform01());
    return b;
  }

 private:
  RngStream rng_;
};

TEST(Property, PureEvolutionIsUnitary) {
  Gen gen(1);
  for (int c = 0; c < kCases; ++c) {
    const int steps = gen.integer(0, 40);
    const int support = gen.integer(1, 9);
    const auto lattice = LatticeSpec::for_walk(steps, support);
    const auto psi0 = gen.joint_state(lattice, support);
    const auto psi = evolve_pure(psi0, gen.theta(), steps);
    EXPECT_NEAR(psi.norm_squared(), 1.0, 1e-12) << "case " << c;
  }
}

TEST(Property, DensityEvolutionMatchesPureAndStaysPhysical) {
  Gen gen(2);
  for (int c = 0; c < kCases / 2; ++c) {
    const int steps = gen.integer(0, 20);
    const int support = gen.integer(1, 5);
    const double theta = gen.theta();
    const auto lattice = LatticeSpec::for_walk(steps, support);
    const auto psi0 = gen.joint_state(lattice, support);
    const auto rho = evolve_density(pure_to_density(psi0), theta, steps);
    EXPECT_LE(rho.max_abs_diff(pure_to_density(evolve_pure(psi0, theta, steps))), 1e-12) << "case " << c;
    EXPECT_NEAR(rho.trace(), 1.0, 1e-12);
    EXPECT_NEAR(rho.purity(), 1.0, 1e-11);
    EXPECT_LE(rho.hermiticity_error(), 1e-14);
  }
}

TEST(Property, ParityFromALocalizedStart) {
  Gen gen(3);
  for (int c = 0; c < kCases; ++c) {
    const int steps = gen.integer(1, 60);
    const auto lattice = LatticeSpec::for_walk(steps);
    const auto dist = position_distribution(evolve_pure(make_localized_initial(lattice), gen.theta(), steps));
    for (int n = -steps; n <= steps; ++n) {
      if ((n + steps) % 2 != 0) ASSERT_EQ(dist.at(n), 0.0) << "case " << c << " site " << n;
    }
  }
}

// The balanced coin state with relative phase i gives a mirror-symmetric
// distribution for every real coin angle.
TEST(Property, ReflectionSymmetryOfTheBalancedStart) {
  Gen gen(4);
  for (int c = 0; c < kCases; ++c) {
    const int steps = gen.integer(1, 60);
    const auto lattice = LatticeSpec::for_walk(steps);
    const auto dist = position_distribution(evolve_pure(make_localized_initial(lattice), gen.theta(), steps));
    for (int n = 1; n <= steps; ++n) ASSERT_NEAR(dist.at(n), dist.at(-n), 1e-13) << "case " << c << " site " << n;
  }
}

// Mirroring the start (n -> -n, coin 0 <-> 1) commutes with the shift and
// conjugates the coin by X, which maps C(theta) to C(pi - theta).
TEST(Property, ReflectionCovariance) {
  Gen gen(5);
  for (int c = 0; c < kCases / 2; ++c) {
    const int steps = gen.integer(1, 30);
    const int support = gen.integer(1, 7);
    const double theta = gen.theta();
    const auto lattice = LatticeSpec::for_walk(steps, support);
    const auto psi0 = gen.joint_state(lattice, support);
    Eigen::MatrixX2cd mirrored(lattice.site_count(), 2);
    for (int n = -lattice.half_width(); n <= lattice.half_width(); ++n) {
      mirrored(lattice.index(-n), 1) = psi0.amp(n, 0);
      mirrored(lattice.index(-n), 0) = psi0.amp(n, 1);
    }
    const double theta_mirror = kPi - theta;
    const auto a = position_distribution(evolve_pure(psi0, theta, steps));
    const auto b = position_distribution(evolve_pure(JointPureState(lattice, mirrored), theta_mirror, steps));
    for (int n = -lattice.half_width(); n <= lattice.half_width(); ++n) {
      ASSERT_NEAR(a.at(n), b.at(-n), 1e-13) << "case " << c << " site " << n;
    }
  }
}

TEST(Property, NoisyEvolutionIsHermitianAndTracePreserving) {
  Gen gen(6);
  for (int c = 0; c < kCases / 2; ++c) {
    const int steps = gen.integer(1, 20);
    const int support = gen.integer(1, 5);
    const auto lattice = LatticeSpec::for_walk(steps, support);
    const auto rho0 = pure_to_density(gen.joint_state(lattice, support));
    const auto betas = gen.betas(steps);
    const auto rho = evolve_with_betas(rho0, gen.theta(), betas);
    EXPECT_NEAR(rho.trace(), 1.0, 1e-12) << "case " << c;
    EXPECT_LE(rho.hermiticity_error(), 1e-14);
    EXPECT_LE(rho.purity(), 1.0 + 1e-12);
    // Positivity: smallest eigenvalue of the dense matrix.
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(rho.to_dense());
    EXPECT_GE(eig.eigenvalues().minCoeff(), -1e-12);
  }
}

TEST(Property, PostselectionCompleteness) {
  Gen gen(7);
  for (int c = 0; c < kCases / 2; ++c) {
    const int steps = gen.integer(1, 20);
    const int support = gen.integer(1, 5);
    const auto lattice = LatticeSpec::for_walk(steps, support);
    const auto rho = evolve_with_betas(pure_to_density(gen.joint_state(lattice, support)), gen.theta(),
                                       gen.betas(steps));
    const auto c0 = project_coin(rho, 0);
    const auto c1 = project_coin(rho, 1);
    EXPECT_NEAR(c0.probability + c1.probability, 1.0, 1e-12) << "case " << c;
    const Eigen::MatrixXcd recombined = c0.probability * c0.state.rho + c1.probability * c1.state.rho;
    EXPECT_LE((recombined - trace_out_coin(rho).rho).cwiseAbs().maxCoeff(), 1e-10) << "case " << c;
    EXPECT_NEAR(c0.state.trace(), 1.0, 1e-10);
  }
}

TEST(Property, FidelityIsBounded) {
  Gen gen(8);
  for (int c = 0; c < kCases; ++c) {
    const int steps = gen.integer(2, 30);
    const auto lattice = LatticeSpec::for_walk(steps);
    const auto rho = evolve_with_betas(pure_to_density(make_localized_initial(lattice)), gen.theta(),
                                       gen.betas(steps));
    const auto traced = trace_out_coin(rho);
    const auto cond = project_coin(rho, gen.integer(0, 1)).state;
    for (const auto *state : {&traced, &cond}) {
      const double values[] = {
          fidelity(*state, end_superposition_target(lattice, gen.integer(1, steps), gen.integer(0, 1) ? 1 : -1)),
          fidelity(*state, tau_target(lattice, steps, gen.integer(0, 1))),
          fidelity(*state, gaussian_cat_target(lattice, 2 * steps, gen.real(0.5, 3.0))),
          best_end_fidelity(*state, steps).value};
      for (double f : values) {
        EXPECT_GE(f, 0.0) << "case " << c;
        EXPECT_LE(f, 1.0 + 1e-10) << "case " << c;
      }
    }
  }
}

struct BestPair {
  double traced;
  double conditional;
};

BestPair best_pair(double theta, int steps) {
  const auto lattice = LatticeSpec::for_walk(steps);
  const auto psi = evolve_pure(make_localized_initial(lattice), theta, steps);
  const auto rho = pure_to_density(psi);
  return {best_end_fidelity(trace_out_coin(rho), steps).value,
          best_end_fidelity(project_coin(rho, 0).state, steps).value};
}

TEST(Property, ConditionalStateDominatesTracedState) {
  Gen gen(9);
  for (int steps : {10, 30, 50}) {
    for (int c = 0; c < 12; ++c) {
      const double theta = gen.real(1e-6, kPi / 10);
      const auto best = best_pair(theta, steps);
      EXPECT_GT(best.conditional, best.traced) << "theta " << theta << " N " << steps;
    }
    const auto edge = best_pair(kPi / 10, steps);
    EXPECT_GT(edge.conditional, edge.traced) << "N " << steps;
  }
}

TEST(Property, ConditionalToTracedRatioIsNotAScaling) {
  std::vector<double> ratios;
  for (int steps : {10, 30, 50}) {
    for (double theta : {kPi / 100, kPi / 40, kPi / 20, kPi / 10}) {
      const auto best = best_pair(theta, steps);
      ratios.push_back(best.conditional / best.traced);
    }
  }
  const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
  EXPECT_GT(*hi / *lo - 1.0, 0.01);
}

TEST(Property, EntropyAndTracedFidelityAtZeroAngle) {
  for (int steps = 1; steps <= 40; ++steps) {
    const auto lattice = LatticeSpec::for_walk(steps);
    const auto psi = evolve_pure(make_localized_initial(lattice), 0.0, steps);
    EXPECT_NEAR(coin_entropy(psi), std::log(2.0), 1e-12) << "N " << steps;
    EXPECT_NEAR(best_end_fidelity(trace_out_coin(pure_to_density(psi)), steps).value, 0.5, 1e-12) << "N " << steps;
  }
}

TEST(Property, MonteCarloMeanIsAPhysicalState) {
  Gen gen(10);
  for (int c = 0; c < 4; ++c) {
    const int steps = gen.integer(4, 16);
    const auto lattice = LatticeSpec::for_walk(steps);
    const auto mc = monte_carlo_average(pure_to_density(make_localized_initial(lattice)), gen.theta(), steps,
                                        NoiseSpec::trajectory(gen.real(0.0, 1.0)), gen.integer(1, 30),
                                        static_cast<std::uint64_t>(gen.integer(0, 1 << 20)));
    EXPECT_NEAR(mc.mean.trace(), 1.0, 1e-12);
    EXPECT_LE(mc.mean.hermiticity_error(), 1e-14);
    for (const auto &p : mc.distributions) {
      double total = 0.0;
      for (double x : p) total += x;
      EXPECT_NEAR(total, 1.0, 1e-12);
    }
  }
}

}  // namespace
}  // namespace coinwalk
