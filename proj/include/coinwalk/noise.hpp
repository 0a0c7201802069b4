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

#ifndef COINWALK_NOISE_HPP
#define COINWALK_NOISE_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "coinwalk/lattice.hpp"
#include "coinwalk/rng.hpp"

namespace coinwalk {

enum class NoiseMode { kOff, kTrajectory, kExactMean };

std::string to_string(NoiseMode mode);
NoiseMode noise_mode_from_string(const std::string &name);

/// Position dephasing with per-step retention probability beta_t in [delta, 1].
struct NoiseSpec {
  double delta = 1.0;
  NoiseMode mode = NoiseMode::kOff;

  /// Noise amplitude f = 1 - delta, the width of the beta_t interval.
  double amplitude() const { return 1.0 - delta; }
  /// Expected beta_t, (1 + delta) / 2.
  double mean_beta() const { return 0.5 * (1.0 + delta); }

  static NoiseSpec off() { return {1.0, NoiseMode::kOff}; }
  static NoiseSpec trajectory(double delta) { return {delta, NoiseMode::kTrajectory}; }
  static NoiseSpec exact_mean(double delta) { return {delta, NoiseMode::kExactMean}; }
  static NoiseSpec from_amplitude(double f, NoiseMode mode) { return {1.0 - f, mode}; }

  /// Throws InvalidArgument unless delta lies in [0, 1].
  void validate() const;
};

/// beta uniform on [delta, 1]. Requires trajectory mode.
double sample_beta(const NoiseSpec &spec, RngStream &rng);

/// beta rho + (1 - beta) sum_k |k><k|_p (x) <k|rho|k>.
///
/// Position off-diagonal entries of every coin block are scaled by beta; the
/// position diagonal, including coin coherences at a fixed site, is kept.
JointDensityMatrix dephasing_channel(const JointDensityMatrix &rho, double beta);

/// Step-then-channel evolution with an explicit beta schedule (one per step).
JointDensityMatrix evolve_with_betas(JointDensityMatrix rho, double theta, std::span<const double> betas);

/// N steps of step-then-channel. Trajectory mode draws beta_t from `rng`;
/// exact-mean mode uses (1 + delta)/2; off mode skips the channel entirely.
JointDensityMatrix evolve_noisy(JointDensityMatrix rho, double theta, int steps, const NoiseSpec &spec,
                                RngStream &rng);

/// Exact theta = 0, beta = 0 solution for |psi0>_p (x) |phi>_c:
///   (1/2) [ psi_{+t} (x) |0><0| + psi_{-t} (x) |1><1| ],
/// with psi_{+-t} the populations |<k|psi0>|^2 displaced by +-t.
/// `position_amps` covers the whole lattice. Exact for every t >= 2; at
/// t = 1 only when no two occupied sites are two apart (the coin coherence
/// between them lands on the position diagonal for exactly one step).
JointDensityMatrix closed_form_full_noise(const LatticeSpec &lattice, std::span<const cplx> position_amps,
                                          int steps);

struct MonteCarloResult {
  JointDensityMatrix mean;
  /// Coin-traced P(n) of every realization, indexed [realization][site index].
  std::vector<std::vector<double>> distributions;
};

/// Mean of `realizations` independent evolve_noisy runs; realization r draws
/// from RngStream(master_seed, r).
///
/// Summation is a pairwise tree over realization indices whose shape depends
/// only on the realization count, so the result is bit-identical for any
/// thread count.
MonteCarloResult monte_carlo_average(const JointDensityMatrix &rho0, double theta, int steps,
                                     const NoiseSpec &spec, int realizations, std::uint64_t master_seed,
                                     int threads = 1);

}  // namespace coinwalk

#endif  // COINWALK_NOISE_HPP
