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

#include "trihom/csbm3h.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "trihom/error.hpp"
#include "trihom/kernels.hpp"

namespace trihom {

namespace {

// Stream ids for the sub-generators of one generate() call.
constexpr std::uint64_t kTopologyStream = 1;
constexpr std::uint64_t kFeatureStream = 2;

double max_abs(const Matrix& m) {
  double out = 0.0;
  for (double v : m.values()) out = std::max(out, std::abs(v));
  return out;
}

}  // namespace

void Csbm3hParams::validate() const {
  require(h_label >= 0.0 && h_label <= 1.0, ErrorCode::kInvalidArgument,
          "h_L must lie in [0,1]");
  require(h_struct >= 0.0 && h_struct <= 1.0, ErrorCode::kInvalidArgument,
          "h_S must lie in [0,1]");
  require(std::abs(h_feat) < 1.0, ErrorCode::kInvalidArgument,
          "|h_F| must be < 1");
  require(num_classes >= 2, ErrorCode::kInvalidArgument, "need C >= 2");
  require(num_nodes >= 2, ErrorCode::kInvalidArgument, "need N >= 2");
  require(degree_min >= 1 && degree_min <= degree_max,
          ErrorCode::kInvalidArgument, "need 1 <= d_min <= d_max");
  require(degree_max < num_nodes, ErrorCode::kInvalidArgument,
          "need d_max < N");
  require(class_means.rows() == num_classes &&
              class_vars.rows() == num_classes &&
              class_vars.cols() == class_means.cols(),
          ErrorCode::kInvalidArgument,
          "class means/vars must both be C x M");
  for (double v : class_vars.values()) {
    require(v >= 0.0, ErrorCode::kInvalidArgument,
            "class variances must be non-negative");
  }
  require(diffusion_power == 1 || diffusion_power == 2,
          ErrorCode::kInvalidArgument, "diffusion_power must be 1 or 2");
  require(diffusion_tol > 0.0 && rho_tol > 0.0, ErrorCode::kInvalidArgument,
          "tolerances must be > 0");
}

void set_one_hot_means(Csbm3hParams& params, std::size_t feature_dim,
                       double scale, double variance) {
  require(feature_dim >= params.num_classes, ErrorCode::kInvalidArgument,
          "one-hot class means need feature_dim >= num_classes");
  params.class_means = Matrix(params.num_classes, feature_dim);
  for (std::size_t c = 0; c < params.num_classes; ++c) {
    params.class_means(c, c) = scale;
  }
  params.class_vars = Matrix(params.num_classes, feature_dim, variance);
}

Matrix base_class_sampling_matrix(double h_label, std::size_t num_classes) {
  require(num_classes >= 2, ErrorCode::kInvalidArgument, "need C >= 2");
  const double off = (1.0 - h_label) / static_cast<double>(num_classes - 1);
  Matrix s(num_classes, num_classes, off);
  for (std::size_t c = 0; c < num_classes; ++c) s(c, c) = h_label;
  return s;
}

void legalize_row(std::span<double> row) {
  double sum = 0.0;
  for (double& p : row) {
    p = std::clamp(p, 0.0, 1.0);
    sum += p;
  }
  if (sum <= 0.0) {
    std::fill(row.begin(), row.end(), 1.0 / static_cast<double>(row.size()));
    return;
  }
  for (double& p : row) p /= sum;
}

namespace {

double noise_stddev(double h_struct, std::size_t num_classes) {
  return (1.0 - h_struct) / std::sqrt(static_cast<double>(num_classes - 1));
}

void add_noise(std::span<double> row, double stddev, Rng& rng) {
  if (stddev <= 0.0) return;
  std::normal_distribution<double> normal(0.0, stddev);
  for (double& p : row) p += normal(rng);
}

}  // namespace

Matrix class_sampling_matrix(double h_label, double h_struct,
                             std::size_t num_classes, Rng& rng) {
  Matrix s = base_class_sampling_matrix(h_label, num_classes);
  const double sd = noise_stddev(h_struct, num_classes);
  for (std::size_t c = 0; c < num_classes; ++c) {
    add_noise(s.row(c), sd, rng);
    legalize_row(s.row(c));
  }
  return s;
}

Topology generate_topology(const Csbm3hParams& params, Rng& rng) {
  const std::size_t n = params.num_nodes;
  const std::size_t c = params.num_classes;
  Topology topo;

  topo.labels.resize(n);
  std::uniform_int_distribution<ClassId> pick_class(0, static_cast<ClassId>(c - 1));
  for (auto& y : topo.labels) y = pick_class(rng);

  topo.target_degrees.resize(n);
  std::uniform_int_distribution<std::size_t> pick_degree(params.degree_min,
                                                         params.degree_max);
  for (auto& d : topo.target_degrees) d = static_cast<double>(pick_degree(rng));

  const Matrix base = base_class_sampling_matrix(params.h_label, c);
  const double sd = noise_stddev(params.h_struct, c);
  topo.target_neighbor_dist = Matrix(n, c);
  for (std::size_t u = 0; u < n; ++u) {
    auto row = topo.target_neighbor_dist.row(u);
    const auto src = base.row(topo.labels[u]);
    std::copy(src.begin(), src.end(), row.begin());
    add_noise(row, sd, rng);
    legalize_row(row);
  }

  kernels::EdgeSamplingInput input;
  input.target_degrees = topo.target_degrees;
  input.labels = topo.labels;
  input.row_probs = &topo.target_neighbor_dist;
  input.seed = rng();
  const std::vector<Edge> edges = kernels::sample_block_edges(input);
  if (edges.empty()) {
    fail(ErrorCode::kDegenerateGraph, "sampled graph has no edges");
  }
  topo.graph = Graph::from_edges(n, edges);
  return topo;
}

Matrix sample_structural_agnostic_features(std::span<const ClassId> labels,
                                           const Matrix& class_means,
                                           const Matrix& class_vars, Rng& rng) {
  require(class_means.rows() == class_vars.rows() &&
              class_means.cols() == class_vars.cols(),
          ErrorCode::kInvalidArgument, "class means/vars shape mismatch");
  const std::size_t m = class_means.cols();
  Matrix x(labels.size(), m);
  std::normal_distribution<double> standard(0.0, 1.0);
  for (std::size_t u = 0; u < labels.size(); ++u) {
    const ClassId y = labels[u];
    require(y < class_means.rows(), ErrorCode::kInvalidArgument,
            "label without class mean");
    for (std::size_t j = 0; j < m; ++j) {
      const double sd = std::sqrt(class_vars(y, j));
      // Draw even when sd == 0 so the stream layout does not depend on vars.
      x(u, j) = class_means(y, j) + sd * standard(rng);
    }
  }
  return x;
}

DiffusionResult solve_feature_diffusion(const Graph& graph, double omega,
                                        const Matrix& x0, double tol,
                                        std::size_t max_terms) {
  require(x0.rows() == graph.num_nodes(), ErrorCode::kInvalidArgument,
          "X0 row count must equal node count");
  require(tol > 0.0, ErrorCode::kInvalidArgument, "tol must be > 0");
  DiffusionResult out{x0, 1};
  if (omega == 0.0 || graph.num_edges() == 0) return out;

  Matrix term = x0;
  Matrix next;
  while (true) {
    kernels::adjacency_multiply(graph, term, next);
    for (double& v : next.values()) v *= omega;
    if (max_abs(next) < tol) return out;
    if (out.terms >= max_terms) {
      fail(ErrorCode::kNonConvergence,
           "Neumann series did not converge within " +
               std::to_string(max_terms) + " terms");
    }
    auto acc = out.features.values();
    const auto add = next.values();
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += add[i];
    ++out.terms;
    std::swap(term, next);
  }
}

GeneratedGraph generate(const Csbm3hParams& params) {
  params.validate();
  Rng topo_rng = make_rng(params.seed, kTopologyStream);
  Topology topo = generate_topology(params, topo_rng);

  const double rho =
      spectral_radius(topo.graph, {.tol = params.rho_tol, .max_iter = 10'000});
  const double omega = params.h_feat / rho;

  Rng feat_rng = make_rng(params.seed, kFeatureStream);
  Matrix x0 = sample_structural_agnostic_features(
      topo.labels, params.class_means, params.class_vars, feat_rng);

  DiffusionResult diffused =
      solve_feature_diffusion(topo.graph, omega, x0, params.diffusion_tol);
  std::size_t terms = diffused.terms;
  if (params.diffusion_power == 2) {
    diffused = solve_feature_diffusion(topo.graph, omega, diffused.features,
                                       params.diffusion_tol);
    terms += diffused.terms;
  }

  GeneratedGraph out;
  out.realized_degrees = degrees(topo.graph);
  out.omega = omega;
  out.rho_used = rho;
  out.diffusion_terms = terms;
  out.structural_agnostic = std::move(x0);
  out.dataset = Dataset(std::move(topo.graph), std::move(topo.labels),
                        params.num_classes, std::move(diffused.features));
  return out;
}

}  // namespace trihom
