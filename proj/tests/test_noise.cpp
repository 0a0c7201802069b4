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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "coinwalk/analysis.hpp"
#include "coinwalk/errors.hpp"
#include "coinwalk/evolution.hpp"
#include "coinwalk/noise.hpp"
#include "dense_oracle.hpp"

namespace coinwalk {
namespace {

constexpr double kPi = std::numbers::pi;

JointDensityMatrix two_site_superposition() {
  const LatticeSpec lattice(3);
  const std::vector<cplx> amps = {1.0, 1.0};
  return pure_to_density(make_custom_initial(lattice, amps, CoinState::phi()));
}

double excess_kurtosis(const PositionDistribution &p) {
  double m2 = 0.0, m4 = 0.0;
  const double mean = p.mean();
  for (int n = -p.lattice.half_width(); n <= p.lattice.half_width(); ++n) {
    const double d = n - mean;
    m2 += d * d * p.at(n);
    m4 += d * d * d * d * p.at(n);
  }
  return m4 / (m2 * m2) - 3.0;
}

TEST(NoiseSpec, AmplitudeAndModes) {
  const auto spec = NoiseSpec::from_amplitude(0.3, NoiseMode::kTrajectory);
  EXPECT_DOUBLE_EQ(spec.delta, 0.7);
  EXPECT_DOUBLE_EQ(spec.amplitude(), 0.3);
  EXPECT_DOUBLE_EQ(spec.mean_beta(), 0.85);
  EXPECT_EQ(noise_mode_from_string("exact-mean"), NoiseMode::kExactMean);
  EXPECT_EQ(noise_mode_from_string("trajectory"), NoiseMode::kTrajectory);
  EXPECT_EQ(noise_mode_from_string("off"), NoiseMode::kOff);
  EXPECT_EQ(to_string(NoiseMode::kExactMean), "exact-mean");
  EXPECT_THROW(noise_mode_from_string("gaussian"), InvalidArgument);
  EXPECT_THROW(NoiseSpec::trajectory(1.5).validate(), InvalidArgument);
  EXPECT_THROW(NoiseSpec::trajectory(-0.1).validate(), InvalidArgument);
}

TEST(SampleBeta, DegenerateIntervalAlwaysOne) {
  RngStream rng(1, 2);
  for (int i = 0; i < 1000; ++i) EXPECT_EQ(sample_beta(NoiseSpec::trajectory(1.0), rng), 1.0);
}

TEST(SampleBeta, UniformMeanOnUnitInterval) {
  RngStream rng(20170501, 0);
  double sum = 0.0, lo = 1.0, hi = 0.0;
  constexpr int kDraws = 100000;
  for (int i = 0; i < kDraws; ++i) {
    const double b = sample_beta(NoiseSpec::trajectory(0.0), rng);
    sum += b;
    lo = std::min(lo, b);
    hi = std::max(hi, b);
  }
  // Standard error 1 / sqrt(12 * 1e5) ~ 9e-4; 3 sigma band.
  EXPECT_GE(sum / kDraws, 0.497);
  EXPECT_LE(sum / kDraws, 0.503);
  EXPECT_GE(lo, 0.0);
  EXPECT_LT(hi, 1.0);
}

TEST(SampleBeta, StaysInInterval) {
  RngStream rng(3, 3);
  for (int i = 0; i < 10000; ++i) {
    const double b = sample_beta(NoiseSpec::trajectory(0.9), rng);
    EXPECT_GE(b, 0.9);
    EXPECT_LE(b, 1.0);
  }
}

TEST(SampleBeta, ReproducibleStreams) {
  RngStream a(42, 7), b(42, 7), c(42, 8);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const double x = sample_beta(NoiseSpec::trajectory(0.2), a);
    EXPECT_EQ(x, sample_beta(NoiseSpec::trajectory(0.2), b));
    differs = differs || x != sample_beta(NoiseSpec::trajectory(0.2), c);
  }
  EXPECT_TRUE(differs);
  EXPECT_THROW(sample_beta(NoiseSpec::exact_mean(0.2), a), InvalidArgument);
}

TEST(DephasingChannel, BetaOneIsIdentity) {
  const auto rho = two_site_superposition();
  EXPECT_EQ(dephasing_channel(rho, 1.0).max_abs_diff(rho), 0.0);
}

TEST(DephasingChannel, BetaZeroKeepsOnlySiteDiagonalCoinBlocks) {
  const auto rho = two_site_superposition();
  const auto out = dephasing_channel(rho, 0.0);
  for (int c = 0; c < 2; ++c) {
    for (int d = 0; d < 2; ++d) {
      for (int n = -3; n <= 3; ++n) {
        for (int m = -3; m <= 3; ++m) {
          const cplx expected = n == m ? rho.element(n, c, m, d) : cplx(0.0);
          EXPECT_EQ(out.element(n, c, m, d), expected);
        }
      }
    }
  }
  // Idempotent.
  EXPECT_EQ(dephasing_channel(out, 0.0).max_abs_diff(out), 0.0);
}

TEST(DephasingChannel, HalfBetaOnTwoSiteSuperposition) {
  const auto rho = two_site_superposition();
  const auto out = dephasing_channel(rho, 0.5);
  EXPECT_NEAR(std::abs(out.element(0, 0, 1, 1)), 0.5 * std::abs(rho.element(0, 0, 1, 1)), 1e-16);
  EXPECT_NEAR(std::abs(out.element(0, 1, 1, 0)), 0.125, 1e-16);
  // Eight site-diagonal entries of magnitude 1/4 and eight halved ones: 8/16 + 8/64.
  EXPECT_NEAR(out.purity(), 0.625, 1e-15);
  const auto dense = testing::dense_dephase(rho.to_dense(), 0.5);
  EXPECT_LE((dense - out.to_dense()).cwiseAbs().maxCoeff(), 1e-16);
  EXPECT_DOUBLE_EQ(out.trace(), 1.0);
}

TEST(DephasingChannel, RejectsOutOfRangeBeta) {
  const auto rho = two_site_superposition();
  EXPECT_THROW(dephasing_channel(rho, -0.01), InvalidArgument);
  EXPECT_THROW(dephasing_channel(rho, 1.01), InvalidArgument);
  EXPECT_THROW(dephasing_channel(rho, std::nan("")), InvalidArgument);
}

TEST(EvolveNoisy, OffModeIsBitIdenticalToNoiseless) {
  const auto lattice = LatticeSpec::for_walk(30);
  const auto rho0 = pure_to_density(make_localized_initial(lattice));
  RngStream rng(1, 0);
  const auto noisy = evolve_noisy(rho0, 0.3, 30, NoiseSpec::off(), rng);
  EXPECT_EQ(noisy.max_abs_diff(evolve_density(rho0, 0.3, 30)), 0.0);
}

TEST(EvolveNoisy, MatchesDenseChannelOracle) {
  constexpr int kSteps = 6;
  const double theta = 0.6;
  const auto lattice = LatticeSpec::for_walk(kSteps, 1);
  RngStream init(8, 0);
  const auto rho0 = pure_to_density(
      make_custom_initial(lattice, testing::random_amplitudes(init, 3), testing::random_coin(init), -1));
  const std::vector<double> betas = {0.9, 0.1, 0.5, 1.0, 0.0, 0.33};
  const auto rho = evolve_with_betas(rho0, theta, betas);
  const Eigen::MatrixXcd u = testing::dense_step(theta, lattice.half_width()).cast<cplx>();
  Eigen::MatrixXcd dense = rho0.to_dense();
  for (double b : betas) dense = testing::dense_dephase(u * dense * u.adjoint(), b);
  EXPECT_LE((dense - rho.to_dense()).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(EvolveNoisy, ExactMeanUsesMeanBeta) {
  const auto lattice = LatticeSpec::for_walk(10);
  const auto rho0 = pure_to_density(make_localized_initial(lattice));
  RngStream rng(1, 0);
  const auto a = evolve_noisy(rho0, 0.4, 10, NoiseSpec::exact_mean(0.3), rng);
  const std::vector<double> betas(10, 0.65);
  EXPECT_EQ(a.max_abs_diff(evolve_with_betas(rho0, 0.4, betas)), 0.0);
}

TEST(EvolveNoisy, OutputStaysHermitianWithUnitTrace) {
  const auto lattice = LatticeSpec::for_walk(40);
  RngStream rng(77, 1);
  const auto rho = evolve_noisy(pure_to_density(make_localized_initial(lattice)), 0.3, 40,
                                NoiseSpec::trajectory(0.2), rng);
  EXPECT_LE(rho.hermiticity_error(), 1e-14);
  EXPECT_NEAR(rho.trace(), 1.0, 1e-12);
  for (double p : position_distribution(rho).p) EXPECT_GE(p, 0.0);
}

TEST(ClosedFormFullNoise, PointInput) {
  const LatticeSpec lattice(6);
  std::vector<cplx> full(13, 0.0);
  full[6] = 1.0;
  const auto rho = closed_form_full_noise(lattice, full, 5);
  auto expected = JointDensityMatrix::zeros(lattice);
  expected.block(0, 0)(lattice.index(5), lattice.index(5)) = 0.5;
  expected.block(1, 1)(lattice.index(-5), lattice.index(-5)) = 0.5;
  EXPECT_EQ(rho.max_abs_diff(expected), 0.0);
  const std::vector<double> zeros(5, 0.0);
  const auto sim = evolve_with_betas(pure_to_density(make_localized_initial(lattice)), 0.0, zeros);
  EXPECT_LE(sim.max_abs_diff(expected), 1e-15);
}

TEST(ClosedFormFullNoise, TwoSiteWeights) {
  const LatticeSpec lattice(5);
  std::vector<cplx> full(11, 0.0);
  full[5] = std::sqrt(1.0 / 3.0);
  full[6] = std::sqrt(2.0 / 3.0);
  const auto rho = closed_form_full_noise(lattice, full, 2);
  EXPECT_NEAR(rho.element(2, 0, 2, 0).real(), 1.0 / 6.0, 1e-15);
  EXPECT_NEAR(rho.element(3, 0, 3, 0).real(), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(rho.element(-2, 1, -2, 1).real(), 1.0 / 6.0, 1e-15);
  EXPECT_NEAR(rho.element(-1, 1, -1, 1).real(), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(rho.trace(), 1.0, 1e-15);
}

TEST(ClosedFormFullNoise, NoPositionCoherences) {
  RngStream rng(4, 4);
  const LatticeSpec lattice(20);
  std::vector<cplx> full(41, 0.0);
  const auto amps = testing::random_amplitudes(rng, 6);
  for (int i = 0; i < 6; ++i) full[static_cast<std::size_t>(lattice.index(i - 3))] = amps[i];
  const auto rho = closed_form_full_noise(lattice, full, 7);
  for (int c = 0; c < 2; ++c) {
    for (int d = 0; d < 2; ++d) {
      Eigen::MatrixXcd off = rho.block(c, d);
      off.diagonal().setZero();
      EXPECT_EQ(off.cwiseAbs().maxCoeff(), 0.0);
    }
  }
}

TEST(ClosedFormFullNoise, MatchesSimulationFromSecondStep) {
  for (int trial = 0; trial < 8; ++trial) {
    RngStream rng(12, static_cast<std::uint64_t>(trial));
    const int size = 1 + trial;
    const auto lattice = LatticeSpec::for_walk(15, size);
    const auto amps = testing::random_amplitudes(rng, size);
    std::vector<cplx> full(static_cast<std::size_t>(lattice.site_count()), 0.0);
    for (int i = 0; i < size; ++i) full[static_cast<std::size_t>(lattice.index(i))] = amps[i];
    auto rho = pure_to_density(make_custom_initial(lattice, amps, CoinState::phi()));
    for (int t = 1; t <= 15; ++t) {
      rho = dephasing_channel(apply_step_density(rho, coin_operator(0.0)), 0.0);
      const double diff = rho.max_abs_diff(closed_form_full_noise(lattice, full, t));
      if (t >= 2 || size <= 2) EXPECT_LE(diff, 1e-12) << "t=" << t << " size=" << size;
    }
  }
}

TEST(ClosedFormFullNoise, OneStepCoinCoherenceForSitesTwoApart) {
  // Sites 0 and 2: the coin-0 copy of site 0 and the coin-1 copy of site 2
  // meet at site 1 after one step, so their coherence is site-diagonal.
  const LatticeSpec lattice(4);
  const std::vector<cplx> amps = {1.0, 0.0, 1.0};
  const auto rho0 = pure_to_density(make_custom_initial(lattice, amps, CoinState::phi()));
  const auto rho = dephasing_channel(apply_step_density(rho0, coin_operator(0.0)), 0.0);
  // Initial <0,0|rho|2,1> = -i/4; the Z coin flips its sign.
  EXPECT_NEAR(std::abs(rho.element(1, 0, 1, 1) - cplx(0, 0.25)), 0.0, 1e-15);
  std::vector<cplx> full(9, 0.0);
  full[4] = full[6] = 1.0;
  EXPECT_NEAR(rho.max_abs_diff(closed_form_full_noise(lattice, full, 1)), 0.25, 1e-15);
}

TEST(ClosedFormFullNoise, RejectsBadInput) {
  const LatticeSpec lattice(2);
  std::vector<cplx> zeros(5, 0.0);
  EXPECT_THROW(closed_form_full_noise(lattice, zeros, 1), InvalidArgument);
  std::vector<cplx> edge(5, 0.0);
  edge[0] = 1.0;
  EXPECT_THROW(closed_form_full_noise(lattice, edge, 1), BoundaryError);
  EXPECT_THROW(closed_form_full_noise(lattice, edge, -1), InvalidArgument);
}

TEST(MonteCarlo, SingleRealizationEqualsSingleRun) {
  const auto lattice = LatticeSpec::for_walk(20);
  const auto rho0 = pure_to_density(make_localized_initial(lattice));
  const auto spec = NoiseSpec::trajectory(0.4);
  const auto mc = monte_carlo_average(rho0, 0.5, 20, spec, 1, 99);
  RngStream rng(99, 0);
  EXPECT_EQ(mc.mean.max_abs_diff(evolve_noisy(rho0, 0.5, 20, spec, rng)), 0.0);
  ASSERT_EQ(mc.distributions.size(), 1u);
  EXPECT_THROW(monte_carlo_average(rho0, 0.5, 20, spec, 0, 99), InvalidArgument);
}

TEST(MonteCarlo, BitIdenticalAcrossThreadCounts) {
  const auto lattice = LatticeSpec::for_walk(16);
  const auto rho0 = pure_to_density(make_localized_initial(lattice));
  const auto spec = NoiseSpec::trajectory(0.1);
  const auto one = monte_carlo_average(rho0, 0.7, 16, spec, 97, 5, 1);
  for (int threads : {2, 3, 8}) {
    const auto many = monte_carlo_average(rho0, 0.7, 16, spec, 97, 5, threads);
    EXPECT_EQ(one.mean.max_abs_diff(many.mean), 0.0) << threads;
    EXPECT_EQ(one.distributions, many.distributions);
  }
}

TEST(MonteCarlo, ConvergesToExactMean) {
  constexpr int kSteps = 20;
  const auto lattice = LatticeSpec::for_walk(kSteps);
  const auto rho0 = pure_to_density(make_localized_initial(lattice));
  const auto mc = monte_carlo_average(rho0, kPi / 4, kSteps, NoiseSpec::trajectory(0.5), 2000, 20170501);
  RngStream unused(0, 0);
  const auto exact = evolve_noisy(rho0, kPi / 4, kSteps, NoiseSpec::exact_mean(0.5), unused);
  EXPECT_LE(mc.mean.max_abs_diff(exact), 5e-3);
}

TEST(MonteCarlo, FullNoiseHadamardIsNearGaussian) {
  // Classical-walk oracle: binomial with 100 steps, excess kurtosis -2/100.
  // The averaged noisy walk keeps partial coherence (variance ~217 rather
  // than 100), so only the shape is compared; the coherent walk is shown to
  // fall far outside the same band.
  constexpr int kSteps = 100;
  const auto lattice = LatticeSpec::for_walk(kSteps);
  const auto rho0 = pure_to_density(make_localized_initial(lattice));
  const auto mc = monte_carlo_average(rho0, kPi / 4, kSteps, NoiseSpec::trajectory(0.0), 100, 20170501);
  const double classical = -2.0 / kSteps;
  const double noisy = excess_kurtosis(position_distribution(mc.mean));
  const double coherent = excess_kurtosis(position_distribution(evolve_density(rho0, kPi / 4, kSteps)));
  EXPECT_LE(std::abs(noisy - classical), 0.25);
  EXPECT_GT(std::abs(coherent - classical), 0.5);
  const std::vector<double> zeros(kSteps, 0.0);
  EXPECT_NEAR(excess_kurtosis(position_distribution(evolve_with_betas(rho0, kPi / 4, zeros))), classical, 1e-9);
}

}  // namespace
}  // namespace coinwalk
