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

#include <algorithm>
#include <cmath>

#include "kernels_rows.hpp"
#include "trihom/kernels.hpp"

namespace trihom::kernels::serial {

void adjacency_multiply(const Graph& graph, const Matrix& x, Matrix& out) {
  out = Matrix(x.rows(), x.cols());
  for (std::size_t u = 0; u < graph.num_nodes(); ++u) {
    detail::accumulate_neighbors(graph, x, static_cast<NodeId>(u), out.row(u));
  }
}

Matrix neighbor_label_counts(const Graph& graph,
                             std::span<const ClassId> labels,
                             std::size_t num_classes) {
  Matrix counts(graph.num_nodes(), num_classes);
  for (std::size_t u = 0; u < graph.num_nodes(); ++u) {
    for (NodeId v : graph.neighbors(static_cast<NodeId>(u))) {
      counts(u, labels[v]) += 1.0;
    }
  }
  return counts;
}

std::vector<Edge> sample_block_edges(const EdgeSamplingInput& input) {
  const std::size_t n = input.labels.size();
  const detail::SamplingBounds bounds = detail::sampling_bounds(input);
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u) {
    detail::sample_row(input, bounds, static_cast<NodeId>(u), edges);
  }
  return edges;
}

std::vector<double> distance_sums(const Matrix& z,
                                  std::span<const NodeId> reference) {
  std::vector<double> out(z.rows(), 0.0);
  for (std::size_t v = 0; v < z.rows(); ++v) {
    out[v] = detail::distance_sum_row(z, reference, v);
  }
  return out;
}

}  // namespace trihom::kernels::serial
