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

#ifndef TRIHOM_GRAPH_HPP_
#define TRIHOM_GRAPH_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "trihom/matrix.hpp"

namespace trihom {

using NodeId = std::uint32_t;
using ClassId = std::uint32_t;

struct Edge {
  NodeId u;
  NodeId v;
};

/// Counts of what the lenient edge-list builder had to discard.
struct EdgeNormalization {
  std::size_t self_loops_dropped = 0;
  std::size_t duplicates_dropped = 0;
};

/// Undirected simple graph in CSR form. Each edge is stored in both
/// directions; neighbor lists are strictly increasing. Immutable after
/// construction.
class Graph {
 public:
  Graph() : row_offsets_(1, 0) {}

  /// Strict construction: throws kInvalidArgument on self-loops, duplicate
  /// edges (in either orientation) or out-of-range ids.
  static Graph from_edges(std::size_t num_nodes, std::span<const Edge> edges);

  /// Lenient construction used by loaders: drops self-loops and duplicates
  /// and reports how many were dropped. Out-of-range ids still throw.
  static Graph from_edges_normalized(std::size_t num_nodes,
                                     std::span<const Edge> edges,
                                     EdgeNormalization* stats);

  /// Adopts prebuilt CSR arrays after validating every structural invariant.
  static Graph from_csr(std::vector<std::size_t> row_offsets,
                        std::vector<NodeId> neighbor_ids);

  std::size_t num_nodes() const noexcept { return row_offsets_.size() - 1; }
  std::size_t num_arcs() const noexcept { return neighbor_ids_.size(); }
  std::size_t num_edges() const noexcept { return neighbor_ids_.size() / 2; }

  std::size_t degree(NodeId u) const noexcept {
    return row_offsets_[u + 1] - row_offsets_[u];
  }
  std::span<const NodeId> neighbors(NodeId u) const noexcept {
    return {neighbor_ids_.data() + row_offsets_[u], degree(u)};
  }
  bool has_edge(NodeId u, NodeId v) const;

  std::span<const std::size_t> row_offsets() const noexcept {
    return row_offsets_;
  }
  std::span<const NodeId> neighbor_ids() const noexcept {
    return neighbor_ids_;
  }

  /// Each undirected edge once, as (u, v) with u < v, in CSR order.
  std::vector<Edge> edge_list() const;

 private:
  std::vector<std::size_t> row_offsets_;
  std::vector<NodeId> neighbor_ids_;
};

/// Graph plus per-node class labels and a dense N x M feature block.
class Dataset {
 public:
  Dataset() = default;
  /// Validates label range and feature row count; throws kInvalidArgument.
  Dataset(Graph graph, std::vector<ClassId> labels, std::size_t num_classes,
          Matrix features);

  const Graph& graph() const noexcept { return graph_; }
  std::span<const ClassId> labels() const noexcept { return labels_; }
  ClassId label(NodeId u) const noexcept { return labels_[u]; }
  std::size_t num_classes() const noexcept { return num_classes_; }
  std::size_t num_nodes() const noexcept { return graph_.num_nodes(); }
  const Matrix& features() const noexcept { return features_; }
  std::size_t feature_dim() const noexcept { return features_.cols(); }

  /// Node count per class.
  std::vector<std::size_t> class_sizes() const;

 private:
  Graph graph_;
  std::vector<ClassId> labels_;
  std::size_t num_classes_ = 0;
  Matrix features_;
};

/// Per-node class histogram of neighbors, normalized by degree.
struct NeighborDistribution {
  Matrix rows;                        // N x C
  std::vector<std::uint8_t> isolated;  // 1 where degree is 0 (row all zero)

  std::size_t num_isolated() const;
};

std::vector<std::size_t> degrees(const Graph& graph);

/// Throws kInvalidArgument when the dataset has fewer than two classes.
NeighborDistribution neighbor_distribution(const Dataset& dataset);

struct SpectralRadiusOptions {
  double tol = 1e-8;
  std::size_t max_iter = 10'000;
};

/// Largest eigenvalue magnitude of the adjacency matrix. Power iteration on
/// A^2 from the normalized all-ones vector; stops once the eigen-residual
/// bound certifies |rho - rho_true| <= tol * max(1, rho). Bipartite graphs
/// are handled since A^2 has a dominant positive eigenvalue rho^2.
/// Throws kNonConvergence after max_iter iterations.
double spectral_radius(const Graph& graph, SpectralRadiusOptions options = {});

}  // namespace trihom

#endif  // TRIHOM_GRAPH_HPP_
