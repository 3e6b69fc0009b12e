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

// Per-row bodies shared by the serial and OpenMP kernels, so both variants
// perform the same floating-point operations in the same order.

#ifndef TRIHOM_SRC_KERNELS_ROWS_HPP_
#define TRIHOM_SRC_KERNELS_ROWS_HPP_

#include <algorithm>
#include <cmath>
#include <vector>

#include "trihom/kernels.hpp"
#include "trihom/random.hpp"

namespace trihom::kernels::detail {

inline void accumulate_neighbors(const Graph& graph, const Matrix& x, NodeId u,
                                 std::span<double> out) {
  std::fill(out.begin(), out.end(), 0.0);
  for (NodeId v : graph.neighbors(u)) {
    const auto src = x.row(v);
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += src[j];
  }
}

// Quantities shared by every row of one sampling call.
struct SamplingBounds {
  std::vector<double> sqrt_deg;
  double max_sqrt_deg = 0.0;
  std::vector<double> class_max;  // max over rows of row_probs(., c)
};

inline SamplingBounds sampling_bounds(const EdgeSamplingInput& input) {
  SamplingBounds b;
  b.sqrt_deg.resize(input.target_degrees.size());
  for (std::size_t i = 0; i < b.sqrt_deg.size(); ++i) {
    b.sqrt_deg[i] = std::sqrt(input.target_degrees[i]);
    b.max_sqrt_deg = std::max(b.max_sqrt_deg, b.sqrt_deg[i]);
  }
  const Matrix& probs = *input.row_probs;
  b.class_max.assign(probs.cols(), 0.0);
  for (std::size_t r = 0; r < probs.rows(); ++r) {
    for (std::size_t c = 0; c < probs.cols(); ++c) {
      b.class_max[c] = std::max(b.class_max[c], probs(r, c));
    }
  }
  return b;
}

inline double clamp01(double p) { return std::clamp(p, 0.0, 1.0); }

// Thinning: candidates v > u are visited with Geometric(bound) gaps and each
// visited pair is kept with probability p / bound, which is an exact
// Bernoulli(p) draw per pair while touching about 2 * bound * N pairs.
inline void sample_row(const EdgeSamplingInput& input, const SamplingBounds& b,
                       NodeId u, std::vector<Edge>& out) {
  const std::size_t n = input.labels.size();
  const Matrix& probs = *input.row_probs;
  const double scale = static_cast<double>(probs.cols()) / static_cast<double>(n);
  const auto row_u = probs.row(u);
  const ClassId label_u = input.labels[u];
  const double row_max = *std::max_element(row_u.begin(), row_u.end());
  const double bound = clamp01(scale * b.sqrt_deg[u] * b.max_sqrt_deg *
                               std::max(row_max, b.class_max[label_u]));
  if (bound <= 0.0) return;
  RowRng rng(derive_seed(input.seed, u));
  const double log_miss = bound < 1.0 ? std::log1p(-bound) : 0.0;
  std::size_t v = u;
  while (true) {
    if (bound < 1.0) {
      const double skip = std::floor(std::log1p(-uniform01(rng)) / log_miss);
      if (skip >= static_cast<double>(n)) return;
      v += static_cast<std::size_t>(skip);
    }
    if (++v >= n) return;
    const double s = scale * b.sqrt_deg[u] * b.sqrt_deg[v];
    const double p_uv = clamp01(s * row_u[input.labels[v]]);
    const double p_vu = clamp01(s * probs(v, label_u));
    const double p = 0.5 * (p_uv + p_vu);
    if (uniform01(rng) * bound < p) out.push_back({u, static_cast<NodeId>(v)});
  }
}

inline double distance_sum_row(const Matrix& z,
                               std::span<const NodeId> reference,
                               std::size_t v) {
  const auto zv = z.row(v);
  double sum = 0.0;
  for (NodeId r : reference) sum += std::sqrt(squared_distance(zv, z.row(r)));
  return sum;
}

}  // namespace trihom::kernels::detail

#endif  // TRIHOM_SRC_KERNELS_ROWS_HPP_
