// Copyright 2026 The Trihom Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Contextual stochastic block model with label, structural and feature
// homophily controls, plus the feature diffusion solver it relies on.

#ifndef TRIHOM_CSBM3H_HPP_
#define TRIHOM_CSBM3H_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "trihom/graph.hpp"
#include "trihom/matrix.hpp"
#include "trihom/random.hpp"

namespace trihom {

struct Csbm3hParams {
  double h_label = 0.5;
  double h_struct = 1.0;
  double h_feat = 0.0;  // |h_feat| < 1
  std::size_t num_nodes = 1000;
  std::size_t num_classes = 3;
  std::size_t degree_min = 1;
  std::size_t degree_max = 10;
  Matrix class_means;  // C x M
  Matrix class_vars;   // C x M, diagonal covariances
  std::uint64_t seed = 0;
  int diffusion_power = 1;  // 1: (I - wA)^-1 X0, 2: (I - wA)^-2 X0
  double diffusion_tol = 1e-12;
  double rho_tol = 1e-8;

  std::size_t feature_dim() const noexcept { return class_means.cols(); }

  /// Throws kInvalidArgument on any out-of-range field.
  void validate() const;
};

/// Class means e_c * scale (requires M >= C) and a constant variance.
void set_one_hot_means(Csbm3hParams& params, std::size_t feature_dim,
                       double scale, double variance);

struct Topology {
  Graph graph;
  std::vector<ClassId> labels;
  std::vector<double> target_degrees;
  Matrix target_neighbor_dist;  // per-node rows after noise, clamp, renormalize
};

struct GeneratedGraph {
  Dataset dataset;
  std::vector<std::size_t> realized_degrees;
  Matrix structural_agnostic;  // X(0)
  double omega = 0.0;
  double rho_used = 0.0;
  std::size_t diffusion_terms = 0;
};

/// Noise-free sampling matrix: h_L on the diagonal, (1 - h_L)/(C - 1) off it.
Matrix base_class_sampling_matrix(double h_label, std::size_t num_classes);

/// Base matrix plus i.i.d. Normal(0, (1-h_S)^2/(C-1)) noise per entry, with
/// rows clamped to [0,1] and renormalized. A row that clamps to all zeros
/// becomes uniform.
Matrix class_sampling_matrix(double h_label, double h_struct,
                             std::size_t num_classes, Rng& rng);

/// Clamps a probability row to [0,1] and rescales it to sum to 1.
void legalize_row(std::span<double> row);

/// Labels, degrees, per-node neighbor distributions and the sampled graph.
/// Throws kDegenerateGraph when no edge is drawn.
Topology generate_topology(const Csbm3hParams& params, Rng& rng);

Matrix sample_structural_agnostic_features(std::span<const ClassId> labels,
                                           const Matrix& class_means,
                                           const Matrix& class_vars, Rng& rng);

struct DiffusionResult {
  Matrix features;
  std::size_t terms = 0;
};

/// X = (I - omega A)^-1 X0 by truncated Neumann series. Stops at the first
/// term whose max-norm is below tol, so ||(I - omega A) X - X0||_inf < tol.
/// Throws kNonConvergence after max_terms.
DiffusionResult solve_feature_diffusion(const Graph& graph, double omega,
                                        const Matrix& x0, double tol,
                                        std::size_t max_terms = 10'000);

/// Full pipeline; deterministic in params.seed.
GeneratedGraph generate(const Csbm3hParams& params);

}  // namespace trihom

#endif  // TRIHOM_CSBM3H_HPP_
