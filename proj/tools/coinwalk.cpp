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

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "coinwalk/acceptance.hpp"
#include "coinwalk/config.hpp"
#include "coinwalk/errors.hpp"
#include "coinwalk/experiments.hpp"

namespace {

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::optional<std::string> out_dir;

  void apply(coinwalk::ExperimentConfig &cfg) const {
    if (seed) cfg.noise.seed = *seed;
    if (threads) cfg.threads = *threads;
    if (out_dir) cfg.output.directory = *out_dir;
    cfg.validate();
  }
};

nlohmann::json load_json(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw coinwalk::ConfigError(path + ": cannot open file");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error &e) {
    throw coinwalk::ConfigError(path + ": " + e.what());
  }
}

int execute(const coinwalk::ExperimentConfig &cfg) {
  const auto result = coinwalk::run_experiment(cfg);
  for (const auto &name : result.files) std::cout << (result.directory / name).string() << "\n";
  std::cout << (result.directory / "manifest.json").string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"coinwalk: biased-coin quantum walk simulator"};
  app.require_subcommand(1);
  Overrides overrides;
  app.add_option("--seed", overrides.seed, "Master seed for noise and phase-mask streams");
  app.add_option("--threads", overrides.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--out-dir", overrides.out_dir, "Output directory");

  auto *run = app.add_subcommand("run", "Run the experiment described by a JSON config");
  std::string config_path;
  run->add_option("config", config_path, "Config file")->required();

  auto *figure = app.add_subcommand("figure", "Reproduce a figure panel with its default settings");
  std::string figure_id;
  bool list_figures = false;
  figure->add_option("id", figure_id, "Figure id, e.g. fig1d");
  figure->add_flag("--list", list_figures, "List figure ids");

  auto *verify = app.add_subcommand("verify", "Run the acceptance suite");
  std::vector<int> criteria;
  verify->add_option("-c,--criterion", criteria, "Criterion id(s) (default: all)");

  auto *check = app.add_subcommand("check", "Re-run a manifest and compare output checksums");
  std::string manifest_path;
  check->add_option("manifest", manifest_path, "manifest.json")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      auto cfg = coinwalk::ExperimentConfig::from_json(load_json(config_path));
      overrides.apply(cfg);
      return execute(cfg);
    }
    if (*figure) {
      if (list_figures || figure_id.empty()) {
        for (const auto &id : coinwalk::figure_ids()) std::cout << id << "\n";
        return figure_id.empty() && !list_figures ? 1 : 0;
      }
      auto cfg = coinwalk::figure_config(figure_id);
      cfg.output.directory = "out/" + figure_id;
      overrides.apply(cfg);
      return execute(cfg);
    }
    if (*verify) {
      if (criteria.empty()) criteria = coinwalk::acceptance::criterion_ids();
      int failures = 0;
      for (int id : criteria) {
        const auto result = coinwalk::acceptance::run_criterion(id, overrides.threads.value_or(1));
        std::cout << coinwalk::acceptance::format_line(result) << std::endl;
        failures += result.pass ? 0 : 1;
      }
      std::cout << (criteria.size() - static_cast<std::size_t>(failures)) << "/" << criteria.size() << " passed\n";
      return failures == 0 ? 0 : 1;
    }
    if (*check) {
      const auto outcome = coinwalk::check_manifest(load_json(manifest_path), overrides.threads.value_or(1));
      for (const auto &name : outcome.mismatches) std::cout << "MISMATCH " << name << "\n";
      std::cout << (outcome.ok ? "manifest reproduced" : "manifest NOT reproduced") << "\n";
      return outcome.ok ? 0 : 1;
    }
  } catch (const coinwalk::ConfigError &e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
