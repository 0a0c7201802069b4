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

#include "coinwalk/noise.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <optional>

#include "coinwalk/errors.hpp"
#include "coinwalk/evolution.hpp"
#include "coinwalk/parallel.hpp"

namespace coinwalk {

namespace {

// Subtrees of at most this many realizations are evaluated as one task.
constexpr int kTaskGrain = 32;

void check_beta(double beta) {
  if (!(beta >= 0.0 && beta <= 1.0)) {
    throw InvalidArgument("dephasing parameter beta must lie in [0, 1], got " + std::to_string(beta));
  }
}

std::vector<double> coin_traced_populations(const JointDensityMatrix &rho) {
  const Eigen::VectorXd p = (rho.block(0, 0).diagonal() + rho.block(1, 1).diagonal()).real();
  return {p.data(), p.data() + p.size()};
}

struct TreeSum {
  const std::map<int, JointDensityMatrix> *tasks = nullptr;
  const std::function<JointDensityMatrix(int)> *leaf = nullptr;

  JointDensityMatrix operator()(int lo, int hi) const {
    if (tasks != nullptr && hi - lo <= kTaskGrain) return tasks->at(lo);
    if (hi - lo == 1) return (*leaf)(lo);
    const int mid = lo + (hi - lo) / 2;
    auto left = (*this)(lo, mid);
    left += (*this)(mid, hi);
    return left;
  }
};

void collect_tasks(int lo, int hi, std::vector<std::pair<int, int>> &out) {
  if (hi - lo <= kTaskGrain) {
    out.emplace_back(lo, hi);
    return;
  }
  const int mid = lo + (hi - lo) / 2;
  collect_tasks(lo, mid, out);
  collect_tasks(mid, hi, out);
}

}  // namespace

std::string to_string(NoiseMode mode) {
  switch (mode) {
    case NoiseMode::kOff: return "off";
    case NoiseMode::kTrajectory: return "trajectory";
    case NoiseMode::kExactMean: return "exact-mean";
  }
  return "off";
}

NoiseMode noise_mode_from_string(const std::string &name) {
  if (name == "off") return NoiseMode::kOff;
  if (name == "trajectory") return NoiseMode::kTrajectory;
  if (name == "exact-mean") return NoiseMode::kExactMean;
  throw InvalidArgument("unknown noise mode '" + name + "' (expected off, trajectory or exact-mean)");
}

void NoiseSpec::validate() const {
  if (!(delta >= 0.0 && delta <= 1.0)) {
    throw InvalidArgument("noise delta must lie in [0, 1], got " + std::to_string(delta));
  }
}

double sample_beta(const NoiseSpec &spec, RngStream &rng) {
  if (spec.mode != NoiseMode::kTrajectory) throw InvalidArgument("sample_beta needs trajectory noise mode");
  spec.validate();
  if (spec.delta == 1.0) {
    rng.next_u64();
    return 1.0;
  }
  return spec.delta + spec.amplitude() * rng.uniform01();
}

JointDensityMatrix dephasing_channel(const JointDensityMatrix &rho, double beta) {
  check_beta(beta);
  if (beta == 1.0) return rho;
  JointDensityMatrix out = rho;
  const auto [lo, hi] = population_window(rho);
  if (lo > hi) return out;
  const Eigen::Index w = hi - lo + 1;
  for (int c = 0; c < 2; ++c) {
    for (int d = 0; d < 2; ++d) {
      auto &b = out.block(c, d);
      const Eigen::VectorXcd diag = b.diagonal();
      b.block(lo, lo, w, w) *= beta;
      b.diagonal() = diag;
    }
  }
  return out;
}

JointDensityMatrix evolve_with_betas(JointDensityMatrix rho, double theta, std::span<const double> betas) {
  const CoinOperator coin(theta);
  for (double beta : betas) rho = dephasing_channel(apply_step_density(rho, coin), beta);
  return rho;
}

JointDensityMatrix evolve_noisy(JointDensityMatrix rho, double theta, int steps, const NoiseSpec &spec,
                                RngStream &rng) {
  spec.validate();
  if (steps < 0) throw InvalidArgument("step count must be non-negative");
  const CoinOperator coin(theta);
  for (int t = 0; t < steps; ++t) {
    rho = apply_step_density(rho, coin);
    switch (spec.mode) {
      case NoiseMode::kOff:
        break;
      case NoiseMode::kTrajectory:
        rho = dephasing_channel(rho, sample_beta(spec, rng));
        break;
      case NoiseMode::kExactMean:
        rho = dephasing_channel(rho, spec.mean_beta());
        break;
    }
  }
  return rho;
}

JointDensityMatrix closed_form_full_noise(const LatticeSpec &lattice, std::span<const cplx> position_amps,
                                          int steps) {
  if (steps < 0) throw InvalidArgument("step count must be non-negative");
  const Eigen::Index s = lattice.site_count();
  if (static_cast<Eigen::Index>(position_amps.size()) != s) {
    throw InvalidArgument("closed-form full-noise walk needs one amplitude per lattice site");
  }
  double pnorm = 0.0;
  for (const auto &a : position_amps) pnorm += std::norm(a);
  if (!(pnorm > 0.0)) throw InvalidArgument("closed-form full-noise walk needs a nonzero initial state");

  auto rho = JointDensityMatrix::zeros(lattice);
  for (Eigen::Index i = 0; i < s; ++i) {
    const double weight = std::norm(position_amps[static_cast<std::size_t>(i)]) / pnorm;
    if (weight == 0.0) continue;
    if (i + steps >= s || i - steps < 0) {
      throw BoundaryError("closed-form full-noise walk displaces support beyond the lattice edge");
    }
    rho.block(0, 0)(i + steps, i + steps) = 0.5 * weight;
    rho.block(1, 1)(i - steps, i - steps) = 0.5 * weight;
  }
  return rho;
}

MonteCarloResult monte_carlo_average(const JointDensityMatrix &rho0, double theta, int steps,
                                     const NoiseSpec &spec, int realizations, std::uint64_t master_seed,
                                     int threads) {
  if (realizations < 1) throw InvalidArgument("Monte-Carlo averaging needs at least one realization");
  spec.validate();

  std::vector<std::vector<double>> distributions(static_cast<std::size_t>(realizations));
  const std::function<JointDensityMatrix(int)> leaf = [&](int r) {
    RngStream rng(master_seed, static_cast<std::uint64_t>(r));
    auto rho = evolve_noisy(rho0, theta, steps, spec, rng);
    distributions[static_cast<std::size_t>(r)] = coin_traced_populations(rho);
    return rho;
  };

  std::vector<std::pair<int, int>> ranges;
  collect_tasks(0, realizations, ranges);
  std::vector<std::optional<JointDensityMatrix>> partial(ranges.size());
  const TreeSum sequential{nullptr, &leaf};
  parallel_for(ranges.size(), threads, [&](std::size_t k) {
    partial[k] = sequential(ranges[k].first, ranges[k].second);
  });

  std::map<int, JointDensityMatrix> tasks;
  for (std::size_t k = 0; k < ranges.size(); ++k) tasks.emplace(ranges[k].first, std::move(*partial[k]));
  auto mean = TreeSum{&tasks, &leaf}(0, realizations);
  mean *= 1.0 / static_cast<double>(realizations);
  return {std::move(mean), std::move(distributions)};
}

}  // namespace coinwalk
