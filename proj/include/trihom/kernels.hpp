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

// Data-parallel inner loops. Each kernel exists twice with the same
// signature: `serial` is the straightforward reference kept for tests and
// benchmarks, `parallel` is the OpenMP version the library calls. Both
// produce bit-identical results: per-row work is independent and every
// reduction runs in a fixed order.

#ifndef TRIHOM_KERNELS_HPP_
#define TRIHOM_KERNELS_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "trihom/graph.hpp"
#include "trihom/matrix.hpp"

namespace trihom::kernels {

/// Inputs of the block-model edge sampler. For u < v the edge is drawn with
/// probability (p(u,v) + p(v,u)) / 2 where
///   p(u,v) = clamp((C / N) * sqrt(d_u * d_v) * row_probs(u, label(v)), 0, 1).
/// Row u draws from its own RowRng stream seeded with derive_seed(seed, u).
struct EdgeSamplingInput {
  std::span<const double> target_degrees;
  std::span<const ClassId> labels;
  const Matrix* row_probs = nullptr;  // N x C neighbor distribution
  std::uint64_t seed = 0;
};

#define TRIHOM_KERNEL_DECLS                                                  \
  /* out = A * x, out resized to x's shape. */                               \
  void adjacency_multiply(const Graph& graph, const Matrix& x, Matrix& out); \
  /* N x C matrix of neighbor label counts. */                               \
  Matrix neighbor_label_counts(const Graph& graph,                           \
                               std::span<const ClassId> labels,              \
                               std::size_t num_classes);                     \
  /* Upper-triangle edges (u < v), sorted by u then v. */                    \
  std::vector<Edge> sample_block_edges(const EdgeSamplingInput& input);      \
  /* out[v] = sum over r in reference of ||z_v - z_r||_2. */                 \
  std::vector<double> distance_sums(const Matrix& z,                         \
                                    std::span<const NodeId> reference);

namespace serial {
TRIHOM_KERNEL_DECLS
}  // namespace serial

namespace parallel {
TRIHOM_KERNEL_DECLS
}  // namespace parallel

#undef TRIHOM_KERNEL_DECLS

using parallel::adjacency_multiply;
using parallel::distance_sums;
using parallel::neighbor_label_counts;
using parallel::sample_block_edges;

}  // namespace trihom::kernels

#endif  // TRIHOM_KERNELS_HPP_
