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

#ifndef COINWALK_EXPERIMENTS_HPP
#define COINWALK_EXPERIMENTS_HPP

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "coinwalk/config.hpp"
#include "coinwalk/lattice.hpp"

namespace coinwalk {

/// Files produced by one experiment, kept in memory until written.
struct Artifacts {
  std::vector<std::pair<std::string, std::string>> files;
  nlohmann::json summary = nlohmann::json::object();

  void add(std::string name, std::string bytes) { files.emplace_back(std::move(name), std::move(bytes)); }
  const std::string &file(const std::string &name) const;
};

/// Density matrix after `steps` steps under the configured noise: a single
/// deterministic evolution when the noise is off or has zero amplitude,
/// the exact-mean evolution, or the Monte-Carlo trajectory mean.
JointDensityMatrix evolve_configured(const JointDensityMatrix &rho0, double theta, int steps, const NoiseConfig &noise,
                                     int threads);

Artifacts run_distribution(const ExperimentConfig &cfg);
Artifacts run_fidelity_sweep(const ExperimentConfig &cfg);
Artifacts run_noise_sweep(const ExperimentConfig &cfg);
Artifacts run_gaussian_cat(const ExperimentConfig &cfg);
Artifacts run_critical_theta(const ExperimentConfig &cfg);
Artifacts run_optics_verify(const ExperimentConfig &cfg);

/// Dispatches on cfg.experiment.
Artifacts run_artifacts(const ExperimentConfig &cfg);

struct RunResult {
  std::filesystem::path directory;
  std::vector<std::string> files;
  nlohmann::json manifest;
};

/// Runs the experiment, writes every artifact plus manifest.json into
/// cfg.output.directory.
RunResult run_experiment(const ExperimentConfig &cfg);

/// Manifest: config echo, git-style content hash of the config, seed,
/// wall time and a SHA-256 per output file.
nlohmann::json build_manifest(const ExperimentConfig &cfg, const Artifacts &artifacts, double wall_seconds);

struct ManifestCheck {
  bool ok = true;
  std::vector<std::string> mismatches;
};

/// Re-runs the configuration stored in a manifest (in memory) and compares
/// every listed checksum.
ManifestCheck check_manifest(const nlohmann::json &manifest, int threads = 1);

}  // namespace coinwalk

#endif  // COINWALK_EXPERIMENTS_HPP
