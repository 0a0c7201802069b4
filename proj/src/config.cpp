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

#include "coinwalk/config.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>

#include "coinwalk/errors.hpp"

namespace coinwalk {

namespace {

using nlohmann::json;

constexpr double kPi = std::numbers::pi;

[[noreturn]] void fail(const std::string &path, const std::string &message) {
  throw ConfigError(path + ": " + message);
}

// Walks one JSON object, remembering which keys were read so that leftovers
// can be reported as unknown.
class ObjectReader {
 public:
  ObjectReader(const json &node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) fail(path_, "expected an object");
  }

  bool has(const std::string &key) const { return node_.contains(key); }
  std::string child(const std::string &key) const { return path_.empty() ? key : path_ + "." + key; }

  const json &get(const std::string &key) {
    seen_.insert(key);
    if (!node_.contains(key)) fail(child(key), "missing required field");
    return node_.at(key);
  }

  double number(const std::string &key) {
    const auto &v = get(key);
    if (!v.is_number()) fail(child(key), "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(child(key), "expected a finite number");
    return x;
  }

  long long integer(const std::string &key) {
    const auto &v = get(key);
    if (!v.is_number_integer()) fail(child(key), "expected an integer");
    return v.get<long long>();
  }

  std::string string(const std::string &key) {
    const auto &v = get(key);
    if (!v.is_string()) fail(child(key), "expected a string");
    return v.get<std::string>();
  }

  template <typename T>
  std::vector<T> list(const std::string &key) {
    const auto &v = get(key);
    if (!v.is_array()) fail(child(key), "expected an array");
    std::vector<T> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const auto item_path = child(key) + "[" + std::to_string(i) + "]";
      if constexpr (std::is_integral_v<T>) {
        if (!v[i].is_number_integer()) fail(item_path, "expected an integer");
      } else if constexpr (std::is_floating_point_v<T>) {
        if (!v[i].is_number()) fail(item_path, "expected a number");
      } else {
        if (!v[i].is_string()) fail(item_path, "expected a string");
      }
      out.push_back(v[i].get<T>());
    }
    return out;
  }

  void finish() const {
    for (const auto &item : node_.items()) {
      if (!seen_.contains(item.key())) fail(child(item.key()), "unknown key");
    }
  }

 private:
  const json &node_;
  std::string path_;
  std::set<std::string> seen_;
};

cplx parse_complex(const json &v, const std::string &path) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  fail(path, "expected a real number or a [re, im] pair");
}

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

void check_theta(double theta, const std::string &path) {
  if (!(theta >= 0.0 && theta <= kPi / 2)) fail(path, "theta must lie in [0, pi/2]");
}

const std::map<std::string, ExperimentKind> &experiment_names() {
  static const std::map<std::string, ExperimentKind> names = {
      {"distribution", ExperimentKind::kDistribution},   {"fidelity-sweep", ExperimentKind::kFidelitySweep},
      {"noise-sweep", ExperimentKind::kNoiseSweep},       {"gaussian-cat", ExperimentKind::kGaussianCat},
      {"critical-theta", ExperimentKind::kCriticalTheta}, {"optics-verify", ExperimentKind::kOpticsVerify},
  };
  return names;
}

std::string postselect_name(Postselect p) {
  switch (p) {
    case Postselect::kNone: return "none";
    case Postselect::kJ0: return "j0";
    case Postselect::kJ1: return "j1";
  }
  return "none";
}

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> out;
  for (int k = 0; k < count; ++k) out.push_back(lo + (hi - lo) * k / (count - 1));
  return out;
}

std::vector<int> int_range(int lo, int hi, int step) {
  std::vector<int> out;
  for (int n = lo; n <= hi; n += step) out.push_back(n);
  return out;
}

}  // namespace

std::string to_string(ExperimentKind kind) {
  for (const auto &[name, k] : experiment_names()) {
    if (k == kind) return name;
  }
  return "distribution";
}

int InitialStateConfig::support_radius() const {
  switch (kind) {
    case Kind::kOrigin: return 0;
    case Kind::kGaussian: return gaussian_support_radius(sigma, cutoff);
    case Kind::kCustom: {
      const int last = first_site + static_cast<int>(amplitudes.size()) - 1;
      return std::max(std::abs(first_site), std::abs(last));
    }
  }
  return 0;
}

LatticeSpec InitialStateConfig::lattice_for(int steps) const {
  return LatticeSpec::for_walk(steps, support_radius());
}

JointPureState InitialStateConfig::build(const LatticeSpec &lattice) const {
  switch (kind) {
    case Kind::kOrigin: return make_localized_initial(lattice);
    case Kind::kGaussian: return make_gaussian_initial(lattice, sigma, cutoff);
    case Kind::kCustom: return make_custom_initial(lattice, amplitudes, coin, first_site);
  }
  return make_localized_initial(lattice);
}

Eigen::VectorXcd InitialStateConfig::position_amplitudes(const LatticeSpec &lattice) const {
  switch (kind) {
    case Kind::kOrigin: {
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(lattice.site_count());
      v(lattice.index(0)) = 1.0;
      return v;
    }
    case Kind::kGaussian:
      return make_gaussian_initial(lattice, sigma, cutoff).amps().col(0) * std::sqrt(2.0);
    case Kind::kCustom:
      return make_custom_initial(lattice, amplitudes, CoinState::zero(), first_site).amps().col(0);
  }
  return {};
}

json InitialStateConfig::to_json() const {
  switch (kind) {
    case Kind::kOrigin: return {{"kind", "origin"}};
    case Kind::kGaussian: return {{"kind", "gaussian"}, {"sigma", sigma}, {"cutoff", cutoff}};
    case Kind::kCustom: {
      auto amps = json::array();
      for (const auto &a : amplitudes) amps.push_back(complex_to_json(a));
      return {{"kind", "custom"},
              {"amplitudes", amps},
              {"first_site", first_site},
              {"coin", json::array({complex_to_json(coin.a0), complex_to_json(coin.a1)})}};
    }
  }
  return {};
}

InitialStateConfig InitialStateConfig::from_json(const json &node, const std::string &path) {
  ObjectReader r(node, path);
  InitialStateConfig out;
  const auto kind = r.string("kind");
  if (kind == "origin") {
    out.kind = Kind::kOrigin;
  } else if (kind == "gaussian") {
    out.kind = Kind::kGaussian;
    out.sigma = r.number("sigma");
    if (!(out.sigma > 0.0)) fail(r.child("sigma"), "must be positive");
    if (r.has("cutoff")) out.cutoff = r.number("cutoff");
    if (!(out.cutoff > 0.0 && out.cutoff <= 1e-6)) fail(r.child("cutoff"), "must lie in (0, 1e-6]");
  } else if (kind == "custom") {
    out.kind = Kind::kCustom;
    const auto &amps = r.get("amplitudes");
    if (!amps.is_array() || amps.empty()) fail(r.child("amplitudes"), "expected a non-empty array");
    double norm = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
      out.amplitudes.push_back(parse_complex(amps[i], r.child("amplitudes") + "[" + std::to_string(i) + "]"));
      norm += std::norm(out.amplitudes.back());
    }
    if (!(norm > 0.0)) fail(r.child("amplitudes"), "all amplitudes are zero");
    if (r.has("first_site")) out.first_site = static_cast<int>(r.integer("first_site"));
    if (r.has("coin")) {
      const auto &c = r.get("coin");
      if (!c.is_array() || c.size() != 2) fail(r.child("coin"), "expected two coin amplitudes");
      out.coin = {parse_complex(c[0], r.child("coin") + "[0]"), parse_complex(c[1], r.child("coin") + "[1]")};
      if (!(out.coin.norm_squared() > 0.0)) fail(r.child("coin"), "coin state is zero");
    }
  } else {
    fail(r.child("kind"), "expected origin, gaussian or custom, got '" + kind + "'");
  }
  r.finish();
  return out;
}

bool OutputConfig::wants(const std::string &format) const {
  return std::find(formats.begin(), formats.end(), format) != formats.end();
}

ExperimentConfig ExperimentConfig::from_json(const json &doc) {
  ObjectReader r(doc, "");
  ExperimentConfig cfg;

  const auto name = r.string("experiment");
  const auto it = experiment_names().find(name);
  if (it == experiment_names().end()) fail("experiment", "unknown experiment '" + name + "'");
  cfg.experiment = it->second;

  {
    ObjectReader w(r.get("walk"), "walk");
    cfg.theta = w.number("theta");
    const auto steps = w.integer("steps");
    if (steps < 0 || steps > 100000) fail("walk.steps", "must lie in [0, 100000]");
    cfg.steps = static_cast<int>(steps);
    w.finish();
  }
  if (r.has("initial")) cfg.initial = InitialStateConfig::from_json(r.get("initial"), "initial");
  if (r.has("noise")) {
    ObjectReader n(r.get("noise"), "noise");
    if (n.has("delta")) cfg.noise.spec.delta = n.number("delta");
    if (n.has("mode")) {
      try {
        cfg.noise.spec.mode = noise_mode_from_string(n.string("mode"));
      } catch (const InvalidArgument &e) {
        fail("noise.mode", e.what());
      }
    }
    if (n.has("realizations")) {
      const auto m = n.integer("realizations");
      if (m < 1 || m > 10000000) fail("noise.realizations", "must be >= 1");
      cfg.noise.realizations = static_cast<int>(m);
    }
    if (n.has("seed")) {
      const auto &s = n.get("seed");
      if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0)) {
        fail("noise.seed", "expected a non-negative integer");
      }
      cfg.noise.seed = s.get<std::uint64_t>();
    }
    n.finish();
  }
  if (r.has("postselect")) {
    const auto p = r.string("postselect");
    if (p == "none") {
      cfg.postselect = Postselect::kNone;
    } else if (p == "j0") {
      cfg.postselect = Postselect::kJ0;
    } else if (p == "j1") {
      cfg.postselect = Postselect::kJ1;
    } else {
      fail("postselect", "expected none, j0 or j1");
    }
  }
  if (r.has("sweep")) {
    ObjectReader s(r.get("sweep"), "sweep");
    auto &sw = cfg.sweep;
    if (s.has("variable")) sw.variable = s.string("variable");
    if (s.has("thetas")) sw.thetas = s.list<double>("thetas");
    if (s.has("steps")) sw.steps = s.list<int>("steps");
    if (s.has("amplitudes")) sw.amplitudes = s.list<double>("amplitudes");
    if (s.has("ratios")) sw.ratios = s.list<double>("ratios");
    if (s.has("ks")) sw.ks = s.list<int>("ks");
    if (s.has("k_max")) sw.k_max = static_cast<int>(s.integer("k_max"));
    if (s.has("sigma")) sw.sigma = s.number("sigma");
    if (s.has("phase_rate")) sw.phase_rate = s.number("phase_rate");
    if (s.has("masks")) sw.masks = static_cast<int>(s.integer("masks"));
    s.finish();
  }
  if (r.has("output")) {
    ObjectReader o(r.get("output"), "output");
    if (o.has("directory")) cfg.output.directory = o.string("directory");
    if (o.has("formats")) cfg.output.formats = o.list<std::string>("formats");
    o.finish();
  }
  if (r.has("threads")) cfg.threads = static_cast<int>(r.integer("threads"));
  r.finish();
  cfg.validate();
  return cfg;
}

void ExperimentConfig::validate() const {
  check_theta(theta, "walk.theta");
  if (steps < 0) fail("walk.steps", "must be non-negative");
  if (!(noise.spec.delta >= 0.0 && noise.spec.delta <= 1.0)) fail("noise.delta", "must lie in [0, 1]");
  if (noise.realizations < 1) fail("noise.realizations", "must be >= 1");
  if (threads < 1) fail("threads", "must be >= 1");
  for (std::size_t i = 0; i < sweep.thetas.size(); ++i) check_theta(sweep.thetas[i], "sweep.thetas[" + std::to_string(i) + "]");
  for (std::size_t i = 0; i < sweep.steps.size(); ++i) {
    if (sweep.steps[i] < 0) fail("sweep.steps[" + std::to_string(i) + "]", "must be non-negative");
  }
  for (std::size_t i = 0; i < sweep.amplitudes.size(); ++i) {
    const double f = sweep.amplitudes[i];
    if (!(f >= 0.0 && f <= 1.0)) fail("sweep.amplitudes[" + std::to_string(i) + "]", "noise amplitude must lie in [0, 1]");
  }
  for (std::size_t i = 0; i < sweep.ratios.size(); ++i) {
    if (!(sweep.ratios[i] > 1.0)) fail("sweep.ratios[" + std::to_string(i) + "]", "ratio must exceed 1");
  }
  for (std::size_t i = 0; i < sweep.ks.size(); ++i) {
    if (sweep.ks[i] < 0) fail("sweep.ks[" + std::to_string(i) + "]", "must be non-negative");
  }
  if (sweep.k_max < 0) fail("sweep.k_max", "must be non-negative");
  if (!(sweep.sigma > 0.0)) fail("sweep.sigma", "must be positive");
  if (!(sweep.phase_rate >= 0.0 && sweep.phase_rate <= 1.0)) fail("sweep.phase_rate", "must lie in [0, 1]");
  if (sweep.masks < 1) fail("sweep.masks", "must be >= 1");
  if (sweep.variable != "theta" && sweep.variable != "steps") fail("sweep.variable", "expected theta or steps");
  for (const auto &f : output.formats) {
    if (f != "csv" && f != "svg" && f != "json") fail("output.formats", "unknown format '" + f + "'");
  }
  if (output.directory.empty()) fail("output.directory", "must not be empty");

  switch (experiment) {
    case ExperimentKind::kFidelitySweep: {
      if (sweep.variable == "theta" && sweep.thetas.empty()) fail("sweep.thetas", "theta sweep needs a grid");
      if (sweep.variable == "steps" && sweep.steps.empty()) fail("sweep.steps", "steps sweep needs a grid");
      if (sweep.steps.empty() && steps < 1) fail("walk.steps", "fidelity needs >= 1 step");
      for (int n : sweep.steps) {
        if (n < 1) fail("sweep.steps", "fidelity needs >= 1 step");
      }
      break;
    }
    case ExperimentKind::kGaussianCat:
      if (initial.kind != InitialStateConfig::Kind::kGaussian) fail("initial.kind", "gaussian-cat needs a gaussian initial state");
      if (noise.spec.mode == NoiseMode::kOff) fail("noise.mode", "gaussian-cat noise comparison needs a noise mode");
      for (int n : sweep.steps) {
        if (n < 1) fail("sweep.steps", "gaussian-cat fidelity needs >= 1 step");
      }
      break;
    case ExperimentKind::kCriticalTheta:
      for (int n : sweep.steps) {
        if (n < 2) fail("sweep.steps", "critical theta needs N >= 2");
      }
      break;
    case ExperimentKind::kOpticsVerify:
      if (steps < 1) fail("walk.steps", "optics mesh needs depth >= 1");
      for (int n : sweep.steps) {
        if (n < 1) fail("sweep.steps", "optics mesh needs depth >= 1");
      }
      break;
    case ExperimentKind::kNoiseSweep:
      if (noise.spec.mode == NoiseMode::kOff) fail("noise.mode", "noise sweep needs trajectory or exact-mean mode");
      break;
    case ExperimentKind::kDistribution:
      break;
  }
}

json ExperimentConfig::to_json() const {
  json doc;
  doc["experiment"] = to_string(experiment);
  doc["walk"] = {{"theta", theta}, {"steps", steps}};
  doc["initial"] = initial.to_json();
  doc["noise"] = {{"delta", noise.spec.delta},
                  {"mode", coinwalk::to_string(noise.spec.mode)},
                  {"realizations", noise.realizations},
                  {"seed", noise.seed}};
  doc["postselect"] = postselect_name(postselect);
  doc["sweep"] = {{"variable", sweep.variable}, {"thetas", sweep.thetas},         {"steps", sweep.steps},
                  {"amplitudes", sweep.amplitudes}, {"ratios", sweep.ratios},     {"ks", sweep.ks},
                  {"k_max", sweep.k_max},           {"sigma", sweep.sigma},       {"phase_rate", sweep.phase_rate},
                  {"masks", sweep.masks}};
  doc["output"] = {{"directory", output.directory}, {"formats", output.formats}};
  doc["threads"] = threads;
  return doc;
}

std::vector<std::string> figure_ids() {
  return {"fig1a", "fig1b", "fig1c", "fig1d", "fig1e", "fig2a", "fig2b", "fig3",  "fig4a",
          "fig4b", "fig4c", "fig4d", "fig5a", "fig5b", "fig5c", "fig6a", "fig6b"};
}

ExperimentConfig figure_config(const std::string &figure_id) {
  ExperimentConfig cfg;
  cfg.output.directory = "out/" + figure_id;
  // fig1a-fig1d run from the Hadamard coin down to pi/20.
  static const std::map<std::string, double> fig1_theta = {
      {"fig1a", kPi / 4}, {"fig1b", kPi / 8}, {"fig1c", kPi / 10}, {"fig1d", kPi / 20}};
  if (const auto it = fig1_theta.find(figure_id); it != fig1_theta.end()) {
    cfg.experiment = ExperimentKind::kDistribution;
    cfg.theta = it->second;
    cfg.steps = 100;
  } else if (figure_id == "fig1e") {
    cfg.experiment = ExperimentKind::kCriticalTheta;
    cfg.steps = 100;
    cfg.sweep.ratios = {2.0, 3.0, 4.0};
    cfg.sweep.steps = int_range(20, 100, 10);
  } else if (figure_id == "fig2a" || figure_id == "fig2b") {
    cfg.experiment = ExperimentKind::kFidelitySweep;
    cfg.steps = 10;
    cfg.postselect = Postselect::kJ0;
    cfg.sweep.variable = "theta";
    cfg.sweep.thetas = linspace(0.0, kPi / 4, 201);
    cfg.sweep.steps = {10, 30, 50, 100};
    cfg.sweep.k_max = 3;
  } else if (figure_id == "fig3") {
    cfg.experiment = ExperimentKind::kNoiseSweep;
    cfg.steps = 100;
    cfg.noise.spec = NoiseSpec::trajectory(0.0);
    cfg.noise.realizations = 100;
    cfg.sweep.thetas = {2 * kPi / 5, kPi / 4, kPi / 20};
    cfg.sweep.amplitudes = {0.05, 0.5, 1.0};
  } else if (figure_id == "fig4a" || figure_id == "fig4b" || figure_id == "fig4c" || figure_id == "fig4d") {
    const bool small = figure_id == "fig4b" || figure_id == "fig4d";
    cfg.experiment = ExperimentKind::kFidelitySweep;
    cfg.theta = small ? kPi / 100 : kPi / 40;
    cfg.steps = 100;
    cfg.postselect = Postselect::kJ0;
    cfg.sweep.variable = "steps";
    cfg.sweep.thetas = {cfg.theta};
    cfg.sweep.steps = int_range(6, 100, 2);
    cfg.sweep.ks = {0, 1, 2};
  } else if (figure_id == "fig5a" || figure_id == "fig5b" || figure_id == "fig5c") {
    cfg.experiment = ExperimentKind::kGaussianCat;
    cfg.theta = kPi / 20;
    cfg.steps = 50;
    cfg.initial.kind = InitialStateConfig::Kind::kGaussian;
    cfg.initial.sigma = 10.0;
    cfg.noise.spec = NoiseSpec::trajectory(0.9);
    cfg.noise.realizations = 100;
    cfg.postselect = Postselect::kJ0;
    cfg.sweep.sigma = 2.0;
    cfg.sweep.steps = int_range(2, 100, 2);
  } else if (figure_id == "fig6a" || figure_id == "fig6b") {
    cfg.experiment = ExperimentKind::kOpticsVerify;
    cfg.theta = kPi / 20;
    cfg.steps = 20;
    cfg.postselect = Postselect::kJ0;
    cfg.sweep.thetas = {kPi / 4, kPi / 20, kPi / 40};
    cfg.sweep.steps = int_range(1, 20, 1);
    cfg.sweep.phase_rate = 1.0;
    cfg.sweep.masks = 2000;
    cfg.noise.seed = 20170501;
  } else {
    throw ConfigError("figure: unknown figure id '" + figure_id + "'");
  }
  cfg.validate();
  return cfg;
}

}  // namespace coinwalk
