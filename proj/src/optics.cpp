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

#include "coinwalk/optics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "coinwalk/errors.hpp"
#include "coinwalk/evolution.hpp"

namespace coinwalk {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kMinProbability = 1e-12;

double field_power(const Eigen::MatrixX2cd &field) { return field.squaredNorm(); }

}  // namespace

Eigen::Matrix2d BeamSplitterNode::transfer() const { return coin_operator(theta).matrix(); }

PhaseMask::PhaseMask(int depth, double rate) : depth_(depth), rate_(rate) {
  if (depth < 0) throw InvalidArgument("phase mask depth must be non-negative");
  if (!(rate >= 0.0 && rate <= 1.0)) throw InvalidArgument("phase noise rate must lie in [0, 1]");
  phases_.assign(static_cast<std::size_t>(depth_) * static_cast<std::size_t>(modes_per_layer()), 0.0);
}

std::size_t PhaseMask::offset(int layer, int site, int dir) const {
  if (layer < 0 || layer >= depth_ || site < -depth_ || site > depth_ || (dir != 0 && dir != 1)) {
    throw InvalidArgument("phase mask index out of range");
  }
  return static_cast<std::size_t>(layer) * modes_per_layer() + 2 * (site + depth_) + dir;
}

void PhaseMask::add_layer_phase(int layer, double value) {
  for (int site = -depth_; site <= depth_; ++site) {
    for (int dir = 0; dir < 2; ++dir) phases_[offset(layer, site, dir)] += value;
  }
}

OpticalMesh::OpticalMesh(int depth, double theta, MeshOptions options)
    : depth_(depth), theta_(theta), options_(options) {
  if (depth < 1) throw InvalidArgument("optical mesh depth must be >= 1, got " + std::to_string(depth));
  if (!std::isfinite(theta)) throw InvalidArgument("beam-splitter theta must be finite");
  if (!(options.attenuation > 0.0 && options.attenuation <= 1.0)) {
    throw InvalidArgument("layer attenuation must lie in (0, 1]");
  }
  // Layer n holds couplers on the sites reachable after n steps from the origin.
  layers_.resize(static_cast<std::size_t>(depth));
  for (int n = 0; n < depth; ++n) {
    for (int site = -n; site <= n; site += 2) layers_[static_cast<std::size_t>(n)].push_back({theta, n, site});
  }
  for (int site = -depth; site <= depth; site += 2) {
    projection_row_.push_back({std::numbers::pi / 4, depth, site});
  }
}

std::pair<int, int> OpticalMesh::mode_label(int k) const {
  if (k < 0 || k >= 2 * (2 * depth_ + 1)) throw InvalidArgument("mode index out of range");
  return {k / 2 - depth_, k % 2};
}

Eigen::Vector2cd OpticalMesh::prepared_coin() const {
  const cplx i(0.0, 1.0);
  if (options_.preparation == PreparationModel::kExact) {
    const auto phi = CoinState::phi();
    return {phi.a0, phi.a1};
  }
  // 50:50 coupler fed on port 0, then the quarter-wave phase on port 1.
  const Eigen::Vector2cd split = coin_operator(std::numbers::pi / 4).matrix().cast<cplx>() * Eigen::Vector2cd(1.0, 0.0);
  return {split(0), split(1) * std::exp(i * (std::numbers::pi / 2 + options_.preparation_phase_error))};
}

OpticalMesh build_mesh(int depth, double theta, MeshOptions options) {
  return OpticalMesh(depth, theta, options);
}

std::vector<double> MeshOutput::site_powers() const {
  const Eigen::VectorXd p = amplitudes.rowwise().squaredNorm();
  return {p.data(), p.data() + p.size()};
}

Eigen::MatrixXcd MeshOutput::position_density() const {
  return amplitudes.col(0) * amplitudes.col(0).adjoint() + amplitudes.col(1) * amplitudes.col(1).adjoint();
}

MeshOutput preparation_output(const OpticalMesh &mesh) {
  const auto lattice = mesh.output_lattice();
  Eigen::MatrixX2cd field = Eigen::MatrixX2cd::Zero(lattice.site_count(), 2);
  field.row(lattice.index(0)) = mesh.prepared_coin().transpose();
  return {lattice, field, {}, 1.0};
}

MeshOutput propagate(const OpticalMesh &mesh, const PhaseMask &phases) {
  if (phases.depth() != mesh.depth()) throw InvalidArgument("phase mask depth does not match the mesh");
  const auto lattice = mesh.output_lattice();
  const cplx i(0.0, 1.0);
  const double eta = mesh.options().attenuation;

  Eigen::MatrixX2cd field = preparation_output(mesh).amplitudes;
  std::vector<double> layer_powers;
  layer_powers.reserve(mesh.layers().size());
  for (const auto &layer : mesh.layers()) {
    Eigen::MatrixX2cd next = Eigen::MatrixX2cd::Zero(field.rows(), 2);
    for (const auto &node : layer) {
      const Eigen::Vector2cd in = field.row(lattice.index(node.site)).transpose();
      const Eigen::Vector2cd out = node.transfer().cast<cplx>() * in;
      // Port 0 feeds the right neighbour's port 0, port 1 the left neighbour's port 1.
      const int right = node.site + 1;
      const int left = node.site - 1;
      next(lattice.index(right), 0) += eta * out(0) * std::exp(i * phases.phase(node.layer, right, 0));
      next(lattice.index(left), 1) += eta * out(1) * std::exp(i * phases.phase(node.layer, left, 1));
    }
    field = std::move(next);
    layer_powers.push_back(field_power(field));
  }
  return {lattice, std::move(field), std::move(layer_powers), 1.0};
}

Detection project_detection(const OpticalMesh &mesh, const MeshOutput &output) {
  const auto &lattice = output.lattice;
  const cplx minus_i(0.0, -1.0);
  Eigen::VectorXcd heralded = Eigen::VectorXcd::Zero(lattice.site_count());
  for (Eigen::Index row = 0; row < lattice.site_count(); ++row) {
    const Eigen::Vector2cd in = output.amplitudes.row(row).transpose();
    if (in.isZero(0.0)) continue;
    const Eigen::Vector2cd plate(in(0), minus_i * in(1));
    const BeamSplitterNode splitter{std::numbers::pi / 4, mesh.depth(), lattice.site(static_cast<int>(row))};
    heralded(row) = (splitter.transfer().cast<cplx>() * plate)(0);
  }
  const double detected = heralded.squaredNorm();
  const double arriving = output.total_power();
  const double probability = arriving > 0.0 ? detected / arriving : 0.0;
  if (!(probability >= kMinProbability)) {
    throw DegeneratePostselection("projection row detects relative power " + std::to_string(probability));
  }
  heralded /= std::sqrt(detected);
  return {lattice, std::move(heralded), probability, detected};
}

PhaseMask sample_phase_mask(const OpticalMesh &mesh, double rate, RngStream &rng) {
  PhaseMask mask(mesh.depth(), rate);
  for (int layer = 0; layer < mesh.depth(); ++layer) {
    for (int site = -mesh.depth(); site <= mesh.depth(); ++site) {
      for (int dir = 0; dir < 2; ++dir) {
        // Two draws per mode regardless of outcome keeps streams aligned across rates.
        const double pick = rng.uniform01();
        const double angle = kTwoPi * (1.0 - rng.uniform01());
        if (pick < rate) mask.set_phase(layer, site, dir, angle);
      }
    }
  }
  return mask;
}

nlohmann::json mesh_to_json(const OpticalMesh &mesh, const PhaseMask *mask) {
  nlohmann::json doc;
  doc["depth"] = mesh.depth();
  doc["theta"] = mesh.theta();
  doc["attenuation"] = mesh.options().attenuation;
  const auto coin = mesh.prepared_coin();
  doc["preparation"] = {
      {"model", mesh.options().preparation == PreparationModel::kExact ? "exact" : "splitter-and-phase"},
      {"phase_error", mesh.options().preparation_phase_error},
      {"coin", {{coin(0).real(), coin(0).imag()}, {coin(1).real(), coin(1).imag()}}},
  };
  auto layers = nlohmann::json::array();
  for (const auto &layer : mesh.layers()) {
    auto nodes = nlohmann::json::array();
    for (const auto &node : layer) nodes.push_back({{"site", node.site}, {"theta", node.theta}});
    layers.push_back({{"layer", layer.front().layer}, {"nodes", nodes}});
  }
  doc["layers"] = std::move(layers);
  auto projection = nlohmann::json::array();
  for (const auto &node : mesh.projection_row()) projection.push_back({{"site", node.site}, {"theta", node.theta}});
  doc["projection"] = {{"phase_plate", {0.0, -std::numbers::pi / 2}}, {"nodes", projection}, {"detect_port", 0}};
  if (mask != nullptr) {
    auto rows = nlohmann::json::array();
    for (int layer = 0; layer < mask->depth(); ++layer) {
      auto row = nlohmann::json::array();
      for (int site = -mask->depth(); site <= mask->depth(); ++site) {
        row.push_back({{"site", site}, {"phases", {mask->phase(layer, site, 0), mask->phase(layer, site, 1)}}});
      }
      rows.push_back(std::move(row));
    }
    doc["phase_mask"] = {{"rate", mask->rate()}, {"layers", std::move(rows)}};
  }
  return doc;
}

}  // namespace coinwalk
