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

#include "trihom/graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "trihom/error.hpp"
#include "trihom/kernels.hpp"

namespace trihom {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kEmptyGraph: return "EmptyGraph";
    case ErrorCode::kDegenerate: return "Degenerate";
    case ErrorCode::kDegenerateGraph: return "DegenerateGraph";
    case ErrorCode::kNonConvergence: return "NonConvergence";
    case ErrorCode::kNotApplicable: return "NotApplicable";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kInconsistentSizes: return "InconsistentSizes";
    case ErrorCode::kNonContiguousIds: return "NonContiguousIds";
    case ErrorCode::kTooFewNodes: return "TooFewNodes";
    case ErrorCode::kMissingClass: return "MissingClass";
    case ErrorCode::kConstantInput: return "ConstantInput";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

namespace {

enum class DuplicatePolicy { kReject, kDrop };

Graph build(std::size_t num_nodes, std::span<const Edge> edges,
            DuplicatePolicy policy, EdgeNormalization* stats) {
  EdgeNormalization local;
  std::vector<std::size_t> offsets(num_nodes + 1, 0);
  for (const Edge& e : edges) {
    if (e.u >= num_nodes || e.v >= num_nodes) {
      fail(ErrorCode::kInvalidArgument,
           "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
               ") references a node outside [0," + std::to_string(num_nodes) + ")");
    }
    if (e.u == e.v) {
      if (policy == DuplicatePolicy::kReject) {
        fail(ErrorCode::kInvalidArgument,
             "self-loop on node " + std::to_string(e.u));
      }
      ++local.self_loops_dropped;
      continue;
    }
    ++offsets[e.u + 1];
    ++offsets[e.v + 1];
  }
  for (std::size_t i = 0; i < num_nodes; ++i) offsets[i + 1] += offsets[i];

  std::vector<NodeId> ids(offsets.back());
  std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
  for (const Edge& e : edges) {
    if (e.u == e.v) continue;
    ids[cursor[e.u]++] = e.v;
    ids[cursor[e.v]++] = e.u;
  }

  // Sort each row and squeeze out repeats.
  std::vector<std::size_t> compact(num_nodes + 1, 0);
  std::size_t write = 0;
  std::size_t dropped_arcs = 0;
  for (std::size_t u = 0; u < num_nodes; ++u) {
    auto first = ids.begin() + static_cast<std::ptrdiff_t>(offsets[u]);
    auto last = ids.begin() + static_cast<std::ptrdiff_t>(offsets[u + 1]);
    std::sort(first, last);
    NodeId prev = 0;
    bool has_prev = false;
    for (auto it = first; it != last; ++it) {
      if (has_prev && *it == prev) {
        if (policy == DuplicatePolicy::kReject) {
          fail(ErrorCode::kInvalidArgument,
               "duplicate edge {" + std::to_string(u) + "," +
                   std::to_string(*it) + "}");
        }
        ++dropped_arcs;
        continue;
      }
      ids[write++] = *it;
      prev = *it;
      has_prev = true;
    }
    compact[u + 1] = write;
  }
  ids.resize(write);
  local.duplicates_dropped = dropped_arcs / 2;
  if (stats != nullptr) *stats = local;
  return Graph::from_csr(std::move(compact), std::move(ids));
}

}  // namespace

Graph Graph::from_edges(std::size_t num_nodes, std::span<const Edge> edges) {
  return build(num_nodes, edges, DuplicatePolicy::kReject, nullptr);
}

Graph Graph::from_edges_normalized(std::size_t num_nodes,
                                   std::span<const Edge> edges,
                                   EdgeNormalization* stats) {
  return build(num_nodes, edges, DuplicatePolicy::kDrop, stats);
}

Graph Graph::from_csr(std::vector<std::size_t> row_offsets,
                      std::vector<NodeId> neighbor_ids) {
  require(!row_offsets.empty() && row_offsets.front() == 0,
          ErrorCode::kInvalidArgument, "row_offsets must start at 0");
  require(row_offsets.back() == neighbor_ids.size(),
          ErrorCode::kInvalidArgument,
          "last row offset must equal the number of stored arcs");
  const std::size_t n = row_offsets.size() - 1;
  for (std::size_t u = 0; u < n; ++u) {
    require(row_offsets[u] <= row_offsets[u + 1], ErrorCode::kInvalidArgument,
            "row_offsets must be non-decreasing");
    for (std::size_t i = row_offsets[u]; i < row_offsets[u + 1]; ++i) {
      const NodeId v = neighbor_ids[i];
      require(v < n, ErrorCode::kInvalidArgument, "neighbor id out of range");
      require(v != u, ErrorCode::kInvalidArgument, "self-loop in CSR");
      require(i == row_offsets[u] || neighbor_ids[i - 1] < v,
              ErrorCode::kInvalidArgument,
              "neighbor lists must be strictly increasing");
    }
  }
  Graph g;
  g.row_offsets_ = std::move(row_offsets);
  g.neighbor_ids_ = std::move(neighbor_ids);
  for (std::size_t u = 0; u < n; ++u) {
    for (NodeId v : g.neighbors(static_cast<NodeId>(u))) {
      require(g.has_edge(v, static_cast<NodeId>(u)), ErrorCode::kInvalidArgument,
              "adjacency must be symmetric");
    }
  }
  return g;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  const auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edge_list() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (std::size_t u = 0; u < num_nodes(); ++u) {
    for (NodeId v : neighbors(static_cast<NodeId>(u))) {
      if (u < v) out.push_back({static_cast<NodeId>(u), v});
    }
  }
  return out;
}

Dataset::Dataset(Graph graph, std::vector<ClassId> labels,
                 std::size_t num_classes, Matrix features)
    : graph_(std::move(graph)),
      labels_(std::move(labels)),
      num_classes_(num_classes),
      features_(std::move(features)) {
  require(labels_.size() == graph_.num_nodes(), ErrorCode::kInvalidArgument,
          "label count must equal node count");
  require(features_.rows() == graph_.num_nodes(), ErrorCode::kInvalidArgument,
          "feature row count must equal node count");
  require(num_classes_ >= 1, ErrorCode::kInvalidArgument,
          "num_classes must be positive");
  for (ClassId y : labels_) {
    require(y < num_classes_, ErrorCode::kInvalidArgument,
            "label outside [0, num_classes)");
  }
}

std::vector<std::size_t> Dataset::class_sizes() const {
  std::vector<std::size_t> sizes(num_classes_, 0);
  for (ClassId y : labels_) ++sizes[y];
  return sizes;
}

std::size_t NeighborDistribution::num_isolated() const {
  return static_cast<std::size_t>(
      std::count(isolated.begin(), isolated.end(), std::uint8_t{1}));
}

std::vector<std::size_t> degrees(const Graph& graph) {
  std::vector<std::size_t> out(graph.num_nodes());
  for (std::size_t u = 0; u < out.size(); ++u) {
    out[u] = graph.degree(static_cast<NodeId>(u));
  }
  return out;
}

NeighborDistribution neighbor_distribution(const Dataset& dataset) {
  require(dataset.num_classes() >= 2, ErrorCode::kInvalidArgument,
          "neighbor distribution needs at least two classes");
  const Graph& g = dataset.graph();
  NeighborDistribution nd;
  nd.rows = kernels::neighbor_label_counts(g, dataset.labels(),
                                           dataset.num_classes());
  nd.isolated.assign(g.num_nodes(), 0);
  for (std::size_t u = 0; u < g.num_nodes(); ++u) {
    const std::size_t d = g.degree(static_cast<NodeId>(u));
    if (d == 0) {
      nd.isolated[u] = 1;
      continue;
    }
    const double inv = 1.0 / static_cast<double>(d);
    for (double& x : nd.rows.row(u)) x *= inv;
  }
  return nd;
}

double spectral_radius(const Graph& graph, SpectralRadiusOptions options) {
  require(graph.num_nodes() >= 1, ErrorCode::kInvalidArgument,
          "spectral radius of an empty graph");
  require(options.tol > 0.0, ErrorCode::kInvalidArgument, "tol must be > 0");
  if (graph.num_edges() == 0) return 0.0;

  const std::size_t n = graph.num_nodes();
  Matrix x(n, 1, 1.0 / std::sqrt(static_cast<double>(n)));
  Matrix y;
  Matrix z;
  for (std::size_t iter = 0; iter < options.max_iter; ++iter) {
    kernels::adjacency_multiply(graph, x, y);
    kernels::adjacency_multiply(graph, y, z);
    // mu = x' A^2 x = ||A x||^2 since x is unit length.
    const double mu = dot(y.values(), y.values());
    const double rho = std::sqrt(mu);
    double residual_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = z(i, 0) - mu * x(i, 0);
      residual_sq += r * r;
    }
    // Some eigenvalue lambda^2 of A^2 lies within ||r|| of mu, hence
    // |lambda - rho| <= ||r|| / rho.
    const double bound = std::sqrt(residual_sq) / rho;
    if (bound <= options.tol * std::max(1.0, rho)) return rho;
    const double norm = std::sqrt(dot(z.values(), z.values()));
    for (std::size_t i = 0; i < n; ++i) x(i, 0) = z(i, 0) / norm;
  }
  fail(ErrorCode::kNonConvergence,
       "spectral_radius did not converge after " +
           std::to_string(options.max_iter) + " iterations");
}

}  // namespace trihom
