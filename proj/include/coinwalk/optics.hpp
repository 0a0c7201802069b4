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

#ifndef COINWALK_OPTICS_HPP
#define COINWALK_OPTICS_HPP

#include <Eigen/Dense>

#include <vector>

#include "json.hpp"

#include "coinwalk/lattice.hpp"
#include "coinwalk/rng.hpp"

namespace coinwalk {

/// Two-mode coupler. Input/output port 0 carries light moving toward +n
/// (coin |0>), port 1 light moving toward -n (coin |1>).
struct BeamSplitterNode {
  double theta;
  int layer;
  int site;

  /// Transfer matrix; identical to coin_operator(theta).
  Eigen::Matrix2d transfer() const;
};

/// Random phases inserted on every beam between consecutive layers (and
/// after the last one). phase(layer, site, dir) follows walk layer `layer`.
class PhaseMask {
 public:
  PhaseMask(int depth, double rate);

  static PhaseMask zeros(int depth) { return PhaseMask(depth, 0.0); }

  int depth() const { return depth_; }
  double rate() const { return rate_; }
  int modes_per_layer() const { return 2 * (2 * depth_ + 1); }
  double phase(int layer, int site, int dir) const { return phases_[offset(layer, site, dir)]; }
  void set_phase(int layer, int site, int dir, double value) { phases_[offset(layer, site, dir)] = value; }
  /// Adds `value` to every mode of one layer.
  void add_layer_phase(int layer, double value);
  const std::vector<double> &raw() const { return phases_; }

 private:
  std::size_t offset(int layer, int site, int dir) const;

  int depth_;
  double rate_;
  std::vector<double> phases_;
};

enum class PreparationModel {
  /// The walk starts directly in |0>_p (x) |phi>_c.
  kExact,
  /// A pi/4 splitter fed on port 0, then a phase pi/2 (+ error) on port 1.
  kSplitterAndPhase,
};

struct MeshOptions {
  PreparationModel preparation = PreparationModel::kExact;
  double preparation_phase_error = 0.0;
  /// Amplitude transmission per walk layer; 1 is lossless.
  double attenuation = 1.0;
};

/// Preparation stage, N rows of biased couplers and a projection row of pi/4
/// couplers preceded by a (0, -pi/2) phase plate. Detection on output port 0
/// of the projection row selects coin |phi>.
class OpticalMesh {
 public:
  OpticalMesh(int depth, double theta, MeshOptions options = {});

  int depth() const { return depth_; }
  double theta() const { return theta_; }
  const MeshOptions &options() const { return options_; }
  const std::vector<std::vector<BeamSplitterNode>> &layers() const { return layers_; }
  const std::vector<BeamSplitterNode> &projection_row() const { return projection_row_; }
  /// Sites covered by the output modes: -depth ... depth.
  LatticeSpec output_lattice() const { return LatticeSpec(std::max(1, depth_)); }

  /// Mode index k of one layer's output -> (site, direction).
  std::pair<int, int> mode_label(int k) const;
  int mode_index(int site, int dir) const { return 2 * (site + depth_) + dir; }

  /// Coin amplitudes leaving the preparation stage at site 0.
  Eigen::Vector2cd prepared_coin() const;

 private:
  int depth_;
  double theta_;
  MeshOptions options_;
  std::vector<std::vector<BeamSplitterNode>> layers_;
  std::vector<BeamSplitterNode> projection_row_;
};

OpticalMesh build_mesh(int depth, double theta, MeshOptions options = {});

struct MeshOutput {
  LatticeSpec lattice;
  /// Row = site index on `lattice`, column = direction.
  Eigen::MatrixX2cd amplitudes;
  /// Total power after each walk layer.
  std::vector<double> layer_powers;
  double input_power = 1.0;

  /// Power arriving at each site, summed over both directions.
  std::vector<double> site_powers() const;
  double total_power() const { return amplitudes.squaredNorm(); }
  /// sum over directions of |a_dir><a_dir|.
  Eigen::MatrixXcd position_density() const;
};

/// Field after the preparation stage only (no walk layers).
MeshOutput preparation_output(const OpticalMesh &mesh);

/// Layer-by-layer amplitude propagation through the mesh.
MeshOutput propagate(const OpticalMesh &mesh, const PhaseMask &phases);

struct Detection {
  LatticeSpec lattice;
  /// Normalized amplitudes of the heralded position state.
  Eigen::VectorXcd amplitudes;
  /// Detected power divided by the power reaching the projection row.
  double probability;
  double detected_power;
};

/// Sends the output field through the projection row and keeps port 0.
/// Throws DegeneratePostselection below 1e-12 relative power.
Detection project_detection(const OpticalMesh &mesh, const MeshOutput &output);

/// Each phase is 0 with probability 1 - rate, otherwise uniform on (0, 2 pi].
PhaseMask sample_phase_mask(const OpticalMesh &mesh, double rate, RngStream &rng);

nlohmann::json mesh_to_json(const OpticalMesh &mesh, const PhaseMask *mask = nullptr);

}  // namespace coinwalk

#endif  // COINWALK_OPTICS_HPP
