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

#include "coinwalk/experiments.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "coinwalk/analysis.hpp"
#include "coinwalk/errors.hpp"
#include "coinwalk/evolution.hpp"
#include "coinwalk/noise.hpp"
#include "coinwalk/optics.hpp"
#include "coinwalk/parallel.hpp"
#include "coinwalk/report.hpp"

namespace coinwalk {

namespace {

using nlohmann::json;
using report::CsvTable;
using report::PlotSpec;
using report::Series;

constexpr double kPi = std::numbers::pi;

int postselect_outcome(const ExperimentConfig &cfg) { return cfg.postselect == Postselect::kJ1 ? 1 : 0; }

PositionDensity traced_from_pure(const JointPureState &psi) {
  const auto &a = psi.amps();
  return {psi.lattice(), a.col(0) * a.col(0).adjoint() + a.col(1) * a.col(1).adjoint()};
}

std::vector<double> site_axis(const LatticeSpec &lattice) {
  std::vector<double> x;
  for (int n = -lattice.half_width(); n <= lattice.half_width(); ++n) x.push_back(n);
  return x;
}

std::vector<double> pure_populations(const Eigen::VectorXcd &amps) {
  std::vector<double> p(static_cast<std::size_t>(amps.size()));
  for (Eigen::Index i = 0; i < amps.size(); ++i) p[static_cast<std::size_t>(i)] = std::norm(amps(i));
  return p;
}

// Two sites with the largest population (ties resolved toward lower n).
std::pair<int, int> top_two_sites(const PositionDistribution &dist) {
  int first = -dist.lattice.half_width(), second = first;
  double p1 = -1.0, p2 = -1.0;
  for (int n = -dist.lattice.half_width(); n <= dist.lattice.half_width(); ++n) {
    const double p = dist.at(n);
    if (p > p1) {
      second = first, p2 = p1;
      first = n, p1 = p;
    } else if (p > p2) {
      second = n, p2 = p;
    }
  }
  return {first, second};
}

json lobe_statistics(const PositionDistribution &dist, int sign) {
  double mass = 0.0, m1 = 0.0, m2 = 0.0;
  for (int n = -dist.lattice.half_width(); n <= dist.lattice.half_width(); ++n) {
    if (sign * n <= 0) continue;
    mass += dist.at(n);
    m1 += n * dist.at(n);
    m2 += double(n) * n * dist.at(n);
  }
  if (!(mass > 0.0)) return {{"mass", 0.0}};
  const double mean = m1 / mass;
  return {{"mass", mass}, {"mean", mean}, {"std", std::sqrt(std::max(0.0, m2 / mass - mean * mean))}};
}

std::string plot(const PlotSpec &spec, const std::vector<Series> &series) { return report::svg_plot(spec, series); }

}  // namespace

const std::string &Artifacts::file(const std::string &name) const {
  for (const auto &[n, bytes] : files) {
    if (n == name) return bytes;
  }
  throw std::out_of_range("no artifact named " + name);
}

JointDensityMatrix evolve_configured(const JointDensityMatrix &rho0, double theta, int steps, const NoiseConfig &noise,
                                     int threads) {
  const auto &spec = noise.spec;
  if (spec.mode == NoiseMode::kOff || spec.amplitude() == 0.0) return evolve_density(rho0, theta, steps);
  if (spec.mode == NoiseMode::kExactMean) {
    RngStream unused(noise.seed, 0);
    return evolve_noisy(rho0, theta, steps, spec, unused);
  }
  return monte_carlo_average(rho0, theta, steps, spec, noise.realizations, noise.seed, threads).mean;
}

Artifacts run_distribution(const ExperimentConfig &cfg) {
  const auto lattice = cfg.initial.lattice_for(cfg.steps);
  const auto rho = evolve_configured(pure_to_density(cfg.initial.build(lattice)), cfg.theta, cfg.steps, cfg.noise,
                                     cfg.threads);
  Artifacts out;
  std::optional<double> probability;
  PositionDistribution dist{lattice, {}};
  if (cfg.postselect == Postselect::kNone) {
    dist = position_distribution(trace_out_coin(rho));
  } else {
    const auto cond = project_coin(rho, postselect_outcome(cfg));
    dist = position_distribution(cond.state);
    probability = cond.probability;
  }

  CsvTable csv({"n", "P"});
  for (int n = -lattice.half_width(); n <= lattice.half_width(); ++n) csv.row().add(n).add(dist.at(n));
  out.add("distribution.csv", csv.str());

  const auto [first, second] = top_two_sites(dist);
  out.summary = {{"experiment", "distribution"},
                 {"theta", cfg.theta},
                 {"steps", cfg.steps},
                 {"total", dist.total()},
                 {"mean", dist.mean()},
                 {"variance", variance(dist)},
                 {"top_sites", {first, second}}};
  if (cfg.steps >= 1 && lattice.contains(cfg.steps)) {
    out.summary["P_end"] = {dist.at(-cfg.steps), dist.at(cfg.steps)};
  }
  if (probability) out.summary["postselection_probability"] = *probability;
  if (cfg.output.wants("svg")) {
    out.add("distribution.svg", plot({"P(n), theta = " + report::format_real(cfg.theta) + ", N = " +
                                          std::to_string(cfg.steps),
                                      "site n", "P(n)", true},
                                     {{"P(n)", site_axis(lattice), dist.p}}));
  }
  return out;
}

Artifacts run_fidelity_sweep(const ExperimentConfig &cfg) {
  const auto thetas = cfg.sweep.thetas.empty() ? std::vector<double>{cfg.theta} : cfg.sweep.thetas;
  const auto step_grid = cfg.sweep.steps.empty() ? std::vector<int>{cfg.steps} : cfg.sweep.steps;
  const bool by_theta = cfg.sweep.variable == "theta";
  const int j = postselect_outcome(cfg);

  struct Cell {
    int steps;
    double theta;
    EndFidelity traced{0, 0, 1}, conditional{0, 0, 1};
    double probability = 0;
    std::vector<double> traced_k, conditional_k;
  };
  std::vector<Cell> cells;
  if (by_theta) {
    for (int n : step_grid) {
      for (double t : thetas) cells.push_back({n, t, {0, 0, 1}, {0, 0, 1}, 0.0, {}, {}});
    }
  } else {
    for (double t : thetas) {
      for (int n : step_grid) cells.push_back({n, t, {0, 0, 1}, {0, 0, 1}, 0.0, {}, {}});
    }
  }

  parallel_for(cells.size(), cfg.threads, [&](std::size_t idx) {
    auto &cell = cells[idx];
    const auto lattice = LatticeSpec::for_walk(cell.steps);
    PositionDensity traced{lattice, {}}, conditional{lattice, {}};
    if (cfg.noise.spec.mode == NoiseMode::kOff) {
      const auto psi = evolve_pure(make_localized_initial(lattice), cell.theta, cell.steps);
      traced = traced_from_pure(psi);
      const auto cond = project_coin(psi, j);
      conditional = PositionDensity::from_pure(lattice, cond.amps);
      cell.probability = cond.probability;
    } else {
      const auto rho = evolve_configured(pure_to_density(make_localized_initial(lattice)), cell.theta, cell.steps,
                                         cfg.noise, 1);
      traced = trace_out_coin(rho);
      auto cond = project_coin(rho, j);
      conditional = std::move(cond.state);
      cell.probability = cond.probability;
    }
    cell.traced = best_end_fidelity(traced, cell.steps, cfg.sweep.k_max);
    cell.conditional = best_end_fidelity(conditional, cell.steps, cfg.sweep.k_max);
    for (int k : cfg.sweep.ks) {
      const bool valid = cell.steps - 2 * k >= 1;
      cell.traced_k.push_back(valid ? end_fidelity(traced, cell.steps, k).value : std::nan(""));
      cell.conditional_k.push_back(valid ? end_fidelity(conditional, cell.steps, k).value : std::nan(""));
    }
  });

  std::vector<std::string> header = {"steps",           "theta",         "traced_fidelity", "traced_k",
                                     "traced_s",        "conditional_fidelity", "conditional_k", "conditional_s",
                                     "probability"};
  for (int k : cfg.sweep.ks) {
    header.push_back("traced_k" + std::to_string(k));
    header.push_back("conditional_k" + std::to_string(k));
  }
  CsvTable csv(header);
  for (const auto &c : cells) {
    csv.row().add(c.steps).add(c.theta).add(c.traced.value).add(c.traced.k).add(c.traced.s);
    csv.add(c.conditional.value).add(c.conditional.k).add(c.conditional.s).add(c.probability);
    for (std::size_t i = 0; i < cfg.sweep.ks.size(); ++i) csv.add(c.traced_k[i]).add(c.conditional_k[i]);
  }
  Artifacts out;
  out.add("fidelity_sweep.csv", csv.str());

  // Summary: per outer value, number of argmax-k increments along the sweep.
  json curves = json::array();
  std::vector<Series> series;
  const std::size_t inner = by_theta ? thetas.size() : step_grid.size();
  for (std::size_t start = 0; start < cells.size(); start += inner) {
    Series tr, co;
    int increments = 0;
    for (std::size_t i = start; i < start + inner; ++i) {
      const double x = by_theta ? cells[i].theta : cells[i].steps;
      tr.x.push_back(x), tr.y.push_back(cells[i].traced.value);
      co.x.push_back(x), co.y.push_back(cells[i].conditional.value);
      if (i > start && cells[i].traced.k > cells[i - 1].traced.k) ++increments;
    }
    const auto label = by_theta ? "N=" + std::to_string(cells[start].steps)
                                : "theta=" + report::format_real(cells[start].theta).substr(0, 7);
    tr.label = "traced " + label;
    co.label = "conditional " + label;
    curves.push_back({{"curve", label}, {"traced_k_increments", increments}});
    series.push_back(std::move(tr));
    series.push_back(std::move(co));
  }
  out.summary = {{"experiment", "fidelity-sweep"}, {"variable", cfg.sweep.variable}, {"curves", curves}};
  if (cfg.output.wants("svg")) {
    out.add("fidelity_sweep.svg", plot({"best end-superposition fidelity", by_theta ? "theta" : "N", "fidelity"},
                                       series));
  }
  return out;
}

Artifacts run_noise_sweep(const ExperimentConfig &cfg) {
  const auto thetas = cfg.sweep.thetas.empty() ? std::vector<double>{2 * kPi / 5, kPi / 4, kPi / 20} : cfg.sweep.thetas;
  const auto amplitudes = cfg.sweep.amplitudes.empty() ? std::vector<double>{0.05, 0.5, 1.0} : cfg.sweep.amplitudes;
  const auto lattice = cfg.initial.lattice_for(cfg.steps);
  const auto rho0 = pure_to_density(cfg.initial.build(lattice));

  Artifacts out;
  CsvTable summary({"theta", "f", "P_minus_end", "P_plus_end", "P_origin", "variance", "top_site_1", "top_site_2",
                    "P_plus_end_stderr"});
  json cells = json::array();
  for (std::size_t ti = 0; ti < thetas.size(); ++ti) {
    for (std::size_t fi = 0; fi < amplitudes.size(); ++fi) {
      NoiseConfig noise = cfg.noise;
      noise.spec.delta = 1.0 - amplitudes[fi];
      PositionDistribution dist{lattice, {}};
      double stderr_end = 0.0;
      if (noise.spec.mode == NoiseMode::kTrajectory && noise.spec.amplitude() > 0.0) {
        const auto mc = monte_carlo_average(rho0, thetas[ti], cfg.steps, noise.spec, noise.realizations, noise.seed,
                                            cfg.threads);
        dist = position_distribution(trace_out_coin(mc.mean));
        if (cfg.steps >= 1 && mc.distributions.size() > 1) {
          const auto idx = static_cast<std::size_t>(lattice.index(cfg.steps));
          double m = 0.0, m2 = 0.0;
          for (const auto &p : mc.distributions) m += p[idx], m2 += p[idx] * p[idx];
          const double count = static_cast<double>(mc.distributions.size());
          m /= count;
          stderr_end = std::sqrt(std::max(0.0, m2 / count - m * m) / (count - 1));
        }
      } else {
        dist = position_distribution(trace_out_coin(evolve_configured(rho0, thetas[ti], cfg.steps, noise, cfg.threads)));
      }
      CsvTable cell({"n", "P"});
      for (int n = -lattice.half_width(); n <= lattice.half_width(); ++n) cell.row().add(n).add(dist.at(n));
      const auto name = "noise_t" + std::to_string(ti) + "_f" + std::to_string(fi);
      out.add(name + ".csv", cell.str());
      if (cfg.output.wants("svg")) {
        out.add(name + ".svg", plot({"theta = " + report::format_real(thetas[ti]).substr(0, 7) +
                                         ", f = " + report::format_real(amplitudes[fi]).substr(0, 5),
                                     "site n", "P(n)", true},
                                    {{"P(n)", site_axis(lattice), dist.p}}));
      }
      const auto [first, second] = top_two_sites(dist);
      const int end = std::min(cfg.steps, lattice.half_width());
      summary.row().add(thetas[ti]).add(amplitudes[fi]).add(dist.at(-end)).add(dist.at(end)).add(dist.at(0));
      summary.add(variance(dist)).add(first).add(second).add(stderr_end);
      cells.push_back({{"file", name + ".csv"}, {"theta", thetas[ti]}, {"f", amplitudes[fi]}, {"top_sites", {first, second}}});
    }
  }
  out.add("noise_summary.csv", summary.str());
  out.summary = {{"experiment", "noise-sweep"}, {"steps", cfg.steps}, {"realizations", cfg.noise.realizations},
                 {"cells", cells}};
  return out;
}

Artifacts run_gaussian_cat(const ExperimentConfig &cfg) {
  Artifacts out;
  const int j = postselect_outcome(cfg);

  // (a) distribution of the walk started from the wide Gaussian.
  const auto lattice_a = cfg.initial.lattice_for(cfg.steps);
  const auto psi_a = evolve_pure(cfg.initial.build(lattice_a), cfg.theta, cfg.steps);
  const auto dist_a = position_distribution(psi_a);
  const auto cond_a = project_coin(psi_a, j);
  const auto cond_pop = pure_populations(cond_a.amps);
  CsvTable table_a({"n", "P_traced", "P_conditional"});
  for (int n = -lattice_a.half_width(); n <= lattice_a.half_width(); ++n) {
    table_a.row().add(n).add(dist_a.at(n)).add(cond_pop[static_cast<std::size_t>(lattice_a.index(n))]);
  }
  out.add("cat_distribution.csv", table_a.str());
  const auto lobe_plus = lobe_statistics(dist_a, +1);
  const auto lobe_minus = lobe_statistics(dist_a, -1);

  // (b) fidelity with the two-Gaussian target as the walk grows.
  InitialStateConfig narrow = cfg.initial;
  narrow.sigma = cfg.sweep.sigma;
  std::vector<int> grid = cfg.sweep.steps;
  if (grid.empty()) {
    for (int n = 1; n <= cfg.steps; ++n) grid.push_back(n);
  }
  std::vector<double> fid(grid.size()), fid_traced(grid.size()), prob(grid.size());
  parallel_for(grid.size(), cfg.threads, [&](std::size_t idx) {
    const int steps = grid[idx];
    const auto lattice = narrow.lattice_for(steps);
    const auto psi = evolve_pure(narrow.build(lattice), cfg.theta, steps);
    const auto cond = project_coin(psi, j);
    const int sign = (steps + j) % 2 == 0 ? 1 : -1;
    const auto target = gaussian_cat_target(lattice, 2 * steps, narrow.sigma, sign);
    fid[idx] = fidelity(PositionDensity::from_pure(lattice, cond.amps), target);
    fid_traced[idx] = fidelity(traced_from_pure(psi), target);
    prob[idx] = cond.probability;
  });
  CsvTable table_b({"steps", "conditional_fidelity", "traced_fidelity", "probability"});
  for (std::size_t i = 0; i < grid.size(); ++i) table_b.row().add(grid[i]).add(fid[i]).add(fid_traced[i]).add(prob[i]);
  out.add("cat_fidelity.csv", table_b.str());

  // (c) noiseless vs noisy conditional state.
  auto noise_comparison = [&](const InitialStateConfig &init) {
    const auto lattice = init.lattice_for(cfg.steps);
    const auto psi0 = init.build(lattice);
    const auto clean = project_coin(evolve_pure(psi0, cfg.theta, cfg.steps), j);
    const auto noisy_rho = evolve_configured(pure_to_density(psi0), cfg.theta, cfg.steps, cfg.noise, cfg.threads);
    const auto noisy = project_coin(noisy_rho, j);
    return std::make_tuple(lattice, clean, noisy, fidelity(noisy.state, clean.amps));
  };
  const auto [lattice_c, clean_c, noisy_c, fidelity_c] = noise_comparison(cfg.initial);
  InitialStateConfig origin;
  const auto origin_result = noise_comparison(origin);
  const auto clean_pop = pure_populations(clean_c.amps);
  const auto noisy_dist = position_distribution(noisy_c.state);
  CsvTable table_c({"n", "P_noiseless", "P_noisy"});
  for (int n = -lattice_c.half_width(); n <= lattice_c.half_width(); ++n) {
    table_c.row().add(n).add(clean_pop[static_cast<std::size_t>(lattice_c.index(n))]).add(noisy_dist.at(n));
  }
  out.add("cat_noise.csv", table_c.str());

  out.summary = {{"experiment", "gaussian-cat"},
                 {"a", {{"sigma", cfg.initial.sigma}, {"steps", cfg.steps}, {"lobe_plus", lobe_plus}, {"lobe_minus", lobe_minus}}},
                 {"b", {{"sigma", narrow.sigma}, {"min_fidelity", fid.empty() ? 0.0 : *std::min_element(fid.begin(), fid.end())}}},
                 {"c",
                  {{"delta", cfg.noise.spec.delta},
                   {"realizations", cfg.noise.realizations},
                   {"fidelity", fidelity_c},
                   {"fidelity_origin_start", std::get<3>(origin_result)}}}};
  if (cfg.output.wants("svg")) {
    out.add("cat_distribution.svg", plot({"Gaussian start, sigma = " + report::format_real(cfg.initial.sigma).substr(0, 4),
                                          "site n", "P(n)"},
                                         {{"traced", site_axis(lattice_a), dist_a.p}, {"conditional", site_axis(lattice_a), cond_pop}}));
    std::vector<double> gx(grid.begin(), grid.end());
    out.add("cat_fidelity.svg", plot({"cat-state fidelity", "N", "fidelity"},
                                     {{"conditional", gx, fid}, {"traced", gx, fid_traced}}));
    out.add("cat_noise.svg", plot({"noiseless vs noisy conditional state", "site n", "P(n)"},
                                  {{"noiseless", site_axis(lattice_c), clean_pop}, {"noisy", site_axis(lattice_c), noisy_dist.p}}));
  }
  return out;
}

Artifacts run_critical_theta(const ExperimentConfig &cfg) {
  const auto ratios = cfg.sweep.ratios.empty() ? std::vector<double>{2.0, 3.0, 4.0} : cfg.sweep.ratios;
  std::vector<int> grid = cfg.sweep.steps;
  if (grid.empty()) {
    for (int n = 20; n <= 100; n += 10) grid.push_back(n);
  }
  struct Cell {
    double ratio;
    int steps;
    double theta = std::nan("");
    std::string status = "ok";
  };
  std::vector<Cell> cells;
  for (double r : ratios) {
    for (int n : grid) cells.push_back({r, n});
  }
  parallel_for(cells.size(), cfg.threads, [&](std::size_t i) {
    try {
      cells[i].theta = critical_theta(cells[i].steps, cells[i].ratio);
    } catch (const NoBracket &) {
      cells[i].status = "no-bracket";
    }
  });
  CsvTable csv({"steps", "ratio", "theta", "status"});
  std::vector<Series> series;
  json warnings = json::array();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto &c = cells[i];
    csv.row().add(c.steps).add(c.ratio).add(c.theta).add(c.status);
    if (c.status != "ok") warnings.push_back({{"steps", c.steps}, {"ratio", c.ratio}});
    if (i % grid.size() == 0) series.push_back({"r = " + report::format_real(c.ratio).substr(0, 4), {}, {}});
    series.back().x.push_back(c.steps);
    series.back().y.push_back(c.theta);
  }
  Artifacts out;
  out.add("critical_theta.csv", csv.str());
  out.summary = {{"experiment", "critical-theta"}, {"warnings", warnings}};
  if (cfg.output.wants("svg")) out.add("critical_theta.svg", plot({"critical theta", "N", "theta*"}, series));
  return out;
}

namespace {

struct OpticsCheck {
  double max_power_deviation;
  double conditional_fidelity;
  double walk_probability;
  double mesh_probability;
  double power_error;
};

OpticsCheck compare_mesh_with_walk(double theta, int steps) {
  const auto mesh = build_mesh(steps, theta);
  const auto output = propagate(mesh, PhaseMask::zeros(steps));
  const auto lattice = LatticeSpec::for_walk(steps);
  const auto psi = evolve_pure(make_localized_initial(lattice), theta, steps);
  const auto walk_p = position_distribution(psi);
  const auto mesh_p = output.site_powers();
  double dev = 0.0;
  for (std::size_t i = 0; i < mesh_p.size(); ++i) dev = std::max(dev, std::abs(mesh_p[i] - walk_p.p[i]));
  const auto detection = project_detection(mesh, output);
  const auto cond = project_coin(psi, 0);
  return {dev, std::norm(cond.amps.dot(detection.amplitudes)), cond.probability, detection.probability,
          std::abs(output.total_power() - 1.0)};
}

}  // namespace

Artifacts run_optics_verify(const ExperimentConfig &cfg) {
  const auto thetas = cfg.sweep.thetas.empty() ? std::vector<double>{cfg.theta} : cfg.sweep.thetas;
  const auto depths = cfg.sweep.steps.empty() ? std::vector<int>{cfg.steps} : cfg.sweep.steps;
  struct Cell {
    double theta;
    int steps;
    OpticsCheck check{};
  };
  std::vector<Cell> cells;
  for (double t : thetas) {
    for (int n : depths) cells.push_back({t, n});
  }
  parallel_for(cells.size(), cfg.threads, [&](std::size_t i) { cells[i].check = compare_mesh_with_walk(cells[i].theta, cells[i].steps); });

  CsvTable csv({"theta", "steps", "max_power_deviation", "conditional_fidelity", "walk_probability", "mesh_probability",
                "power_error"});
  double worst_dev = 0.0, worst_fid = 1.0;
  for (const auto &c : cells) {
    csv.row().add(c.theta).add(c.steps).add(c.check.max_power_deviation).add(c.check.conditional_fidelity);
    csv.add(c.check.walk_probability).add(c.check.mesh_probability).add(c.check.power_error);
    worst_dev = std::max(worst_dev, c.check.max_power_deviation);
    worst_fid = std::min(worst_fid, c.check.conditional_fidelity);
  }
  Artifacts out;
  out.add("optics_report.csv", csv.str());

  // Phase-noise ensemble at the configured (theta, depth).
  const auto mesh = build_mesh(cfg.steps, cfg.theta);
  const auto lattice = mesh.output_lattice();
  const int masks = cfg.sweep.masks;
  Eigen::MatrixXcd mean = Eigen::MatrixXcd::Zero(lattice.site_count(), lattice.site_count());
  constexpr int kChunk = 64;
  for (int base = 0; base < masks; base += kChunk) {
    const int count = std::min(kChunk, masks - base);
    std::vector<Eigen::MatrixXcd> slots(static_cast<std::size_t>(count));
    parallel_for(slots.size(), cfg.threads, [&](std::size_t k) {
      RngStream rng(cfg.noise.seed, static_cast<std::uint64_t>(base) + k);
      slots[k] = propagate(mesh, sample_phase_mask(mesh, cfg.sweep.phase_rate, rng)).position_density();
    });
    for (const auto &s : slots) mean += s;
  }
  mean /= static_cast<double>(masks);
  auto coherence_ratio = [](const Eigen::MatrixXcd &rho) {
    const double diag = rho.diagonal().norm();
    const double off = std::sqrt(std::max(0.0, rho.squaredNorm() - rho.diagonal().squaredNorm()));
    return off / diag;
  };
  const double noisy_ratio = coherence_ratio(mean);
  const double clean_ratio = coherence_ratio(propagate(mesh, PhaseMask::zeros(cfg.steps)).position_density());

  RngStream example_rng(cfg.noise.seed, static_cast<std::uint64_t>(masks));
  const auto example_mask = sample_phase_mask(mesh, cfg.sweep.phase_rate, example_rng);
  out.add("mesh.json", mesh_to_json(mesh, &example_mask).dump(2) + "\n");

  out.summary = {{"experiment", "optics-verify"},
                 {"max_power_deviation", worst_dev},
                 {"min_conditional_fidelity", worst_fid},
                 {"phase_noise",
                  {{"theta", cfg.theta},
                   {"steps", cfg.steps},
                   {"rate", cfg.sweep.phase_rate},
                   {"masks", masks},
                   {"offdiag_to_diag_ratio", noisy_ratio},
                   {"noiseless_offdiag_to_diag_ratio", clean_ratio}}}};
  return out;
}

Artifacts run_artifacts(const ExperimentConfig &cfg) {
  cfg.validate();
  switch (cfg.experiment) {
    case ExperimentKind::kDistribution: return run_distribution(cfg);
    case ExperimentKind::kFidelitySweep: return run_fidelity_sweep(cfg);
    case ExperimentKind::kNoiseSweep: return run_noise_sweep(cfg);
    case ExperimentKind::kGaussianCat: return run_gaussian_cat(cfg);
    case ExperimentKind::kCriticalTheta: return run_critical_theta(cfg);
    case ExperimentKind::kOpticsVerify: return run_optics_verify(cfg);
  }
  throw std::logic_error("unhandled experiment kind");
}

json build_manifest(const ExperimentConfig &cfg, const Artifacts &artifacts, double wall_seconds) {
  auto echo = cfg.to_json();
  // Thread count and destination never change the bytes produced.
  echo.erase("threads");
  echo["output"].erase("directory");
  const auto canonical = echo.dump();
  json files = json::array();
  for (const auto &[name, bytes] : artifacts.files) {
    files.push_back({{"path", name}, {"bytes", bytes.size()}, {"sha256", report::sha256_hex(bytes)}});
  }
  return {{"config", echo},
          {"input_hash", report::git_blob_id(canonical)},
          {"seed", cfg.noise.seed},
          {"wall_time_seconds", wall_seconds},
          {"files", files}};
}

RunResult run_experiment(const ExperimentConfig &cfg) {
  const auto start = std::chrono::steady_clock::now();
  auto artifacts = run_artifacts(cfg);
  if (cfg.output.wants("json")) artifacts.add("summary.json", artifacts.summary.dump(2) + "\n");
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  RunResult result;
  result.directory = cfg.output.directory;
  std::filesystem::create_directories(result.directory);
  for (const auto &[name, bytes] : artifacts.files) {
    report::write_file(result.directory / name, bytes);
    result.files.push_back(name);
  }
  result.manifest = build_manifest(cfg, artifacts, wall);
  report::write_file(result.directory / "manifest.json", result.manifest.dump(2) + "\n");
  return result;
}

ManifestCheck check_manifest(const json &manifest, int threads) {
  auto doc = manifest.at("config");
  doc["threads"] = threads;
  doc["output"]["directory"] = "unused";
  const auto cfg = ExperimentConfig::from_json(doc);
  auto artifacts = run_artifacts(cfg);
  if (cfg.output.wants("json")) artifacts.add("summary.json", artifacts.summary.dump(2) + "\n");

  ManifestCheck check;
  if (report::git_blob_id(manifest.at("config").dump()) != manifest.at("input_hash").get<std::string>()) {
    check.ok = false;
    check.mismatches.push_back("input_hash");
  }
  for (const auto &entry : manifest.at("files")) {
    const auto name = entry.at("path").get<std::string>();
    try {
      if (report::sha256_hex(artifacts.file(name)) != entry.at("sha256").get<std::string>()) {
        check.ok = false;
        check.mismatches.push_back(name);
      }
    } catch (const std::out_of_range &) {
      check.ok = false;
      check.mismatches.push_back(name + " (not produced)");
    }
  }
  return check;
}

}  // namespace coinwalk
