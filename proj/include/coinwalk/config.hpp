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

#ifndef COINWALK_CONFIG_HPP
#define COINWALK_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "coinwalk/lattice.hpp"
#include "coinwalk/noise.hpp"

namespace coinwalk {

/// Bad experiment configuration. The message starts with the JSON path of
/// the offending field, e.g. "walk.theta: must lie in [0, pi/2]".
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ExperimentKind { kDistribution, kFidelitySweep, kNoiseSweep, kGaussianCat, kCriticalTheta, kOpticsVerify };

std::string to_string(ExperimentKind kind);

struct InitialStateConfig {
  enum class Kind { kOrigin, kGaussian, kCustom };

  Kind kind = Kind::kOrigin;
  double sigma = 10.0;
  double cutoff = 1e-12;
  std::vector<cplx> amplitudes;
  int first_site = 0;
  CoinState coin = CoinState::phi();

  /// Largest |n| carrying initial amplitude.
  int support_radius() const;
  LatticeSpec lattice_for(int steps) const;
  JointPureState build(const LatticeSpec &lattice) const;
  /// Position amplitudes over `lattice` (coin factored out).
  Eigen::VectorXcd position_amplitudes(const LatticeSpec &lattice) const;

  nlohmann::json to_json() const;
  static InitialStateConfig from_json(const nlohmann::json &node, const std::string &path);
};

struct NoiseConfig {
  NoiseSpec spec = NoiseSpec::off();
  int realizations = 100;
  std::uint64_t seed = 20170501;
};

enum class Postselect { kNone, kJ0, kJ1 };

/// Grid parameters; which fields matter depends on the experiment.
struct SweepConfig {
  std::string variable = "theta";
  std::vector<double> thetas;
  std::vector<int> steps;
  std::vector<double> amplitudes;
  std::vector<double> ratios;
  std::vector<int> ks;
  int k_max = 3;
  double sigma = 2.0;
  double phase_rate = 1.0;
  int masks = 2000;
};

struct OutputConfig {
  std::string directory = "out";
  std::vector<std::string> formats = {"csv", "svg", "json"};

  bool wants(const std::string &format) const;
};

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::kDistribution;
  double theta = 0.0;
  int steps = 0;
  InitialStateConfig initial;
  NoiseConfig noise;
  Postselect postselect = Postselect::kNone;
  SweepConfig sweep;
  OutputConfig output;
  int threads = 1;

  /// Parses and validates; unknown keys and out-of-range values throw
  /// ConfigError before any computation starts.
  static ExperimentConfig from_json(const nlohmann::json &doc);
  nlohmann::json to_json() const;
  void validate() const;
};

/// Default configuration reproducing one figure panel ("fig1d", "fig3", ...).
ExperimentConfig figure_config(const std::string &figure_id);
std::vector<std::string> figure_ids();

}  // namespace coinwalk

#endif  // COINWALK_CONFIG_HPP
