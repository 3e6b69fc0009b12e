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

#include <cstdint>

#include "kernels_rows.hpp"
#include "trihom/kernels.hpp"

namespace trihom::kernels::parallel {

void adjacency_multiply(const Graph& graph, const Matrix& x, Matrix& out) {
  out = Matrix(x.rows(), x.cols());
  const auto n = static_cast<std::int64_t>(graph.num_nodes());
#pragma omp parallel for schedule(static)
  for (std::int64_t u = 0; u < n; ++u) {
    detail::accumulate_neighbors(graph, x, static_cast<NodeId>(u),
                                 out.row(static_cast<std::size_t>(u)));
  }
}

Matrix neighbor_label_counts(const Graph& graph,
                             std::span<const ClassId> labels,
                             std::size_t num_classes) {
  Matrix counts(graph.num_nodes(), num_classes);
  const auto n = static_cast<std::int64_t>(graph.num_nodes());
#pragma omp parallel for schedule(static)
  for (std::int64_t u = 0; u < n; ++u) {
    auto row = counts.row(static_cast<std::size_t>(u));
    for (NodeId v : graph.neighbors(static_cast<NodeId>(u))) {
      row[labels[v]] += 1.0;
    }
  }
  return counts;
}

std::vector<Edge> sample_block_edges(const EdgeSamplingInput& input) {
  const std::size_t n = input.labels.size();
  const detail::SamplingBounds bounds = detail::sampling_bounds(input);
  std::vector<std::vector<Edge>> per_row(n);
  const auto count = static_cast<std::int64_t>(n);
  // Row u has n - u - 1 candidates, so dynamic scheduling balances the load.
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t u = 0; u < count; ++u) {
    detail::sample_row(input, bounds, static_cast<NodeId>(u),
                       per_row[static_cast<std::size_t>(u)]);
  }
  std::size_t total = 0;
  for (const auto& row : per_row) total += row.size();
  std::vector<Edge> edges;
  edges.reserve(total);
  for (const auto& row : per_row) edges.insert(edges.end(), row.begin(), row.end());
  return edges;
}

std::vector<double> distance_sums(const Matrix& z,
                                  std::span<const NodeId> reference) {
  std::vector<double> out(z.rows(), 0.0);
  const auto n = static_cast<std::int64_t>(z.rows());
#pragma omp parallel for schedule(static)
  for (std::int64_t v = 0; v < n; ++v) {
    out[static_cast<std::size_t>(v)] =
        detail::distance_sum_row(z, reference, static_cast<std::size_t>(v));
  }
  return out;
}

}  // namespace trihom::kernels::parallel
