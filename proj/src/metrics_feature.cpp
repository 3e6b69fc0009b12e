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

#include "trihom/metrics_feature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "trihom/error.hpp"
#include "trihom/kernels.hpp"
#include "trihom/random.hpp"

namespace trihom {

namespace {

constexpr double kDegenerateEnergy = 1e-12;

double cosine(std::span<const double> a, std::span<const double> b) {
  const double na = std::sqrt(dot(a, a));
  const double nb = std::sqrt(dot(b, b));
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot(a, b) / (na * nb);
}

// Class-mean matrix (C x M); empty classes keep a zero row.
Matrix class_means(const Dataset& ds) {
  const Matrix& x = ds.features();
  Matrix means(ds.num_classes(), x.cols());
  const auto sizes = ds.class_sizes();
  for (std::size_t u = 0; u < x.rows(); ++u) {
    auto m = means.row(ds.label(static_cast<NodeId>(u)));
    const auto r = x.row(u);
    for (std::size_t j = 0; j < m.size(); ++j) m[j] += r[j];
  }
  for (std::size_t c = 0; c < means.rows(); ++c) {
    if (sizes[c] == 0) continue;
    for (double& v : means.row(c)) v /= static_cast<double>(sizes[c]);
  }
  return means;
}

}  // namespace

FeatureHomophilyEstimate estimate_feature_homophily(const Dataset& dataset,
                                                    double rho) {
  require(rho > 0.0, ErrorCode::kInvalidArgument, "rho must be > 0");
  const Matrix& x = dataset.features();
  const std::size_t n = x.rows();
  const std::size_t m = x.cols();
  const std::size_t c = dataset.num_classes();
  const auto sizes = dataset.class_sizes();

  Matrix a;
  kernels::adjacency_multiply(dataset.graph(), x, a);

  // Per-class means of x and a, then centered cross sums. For one class,
  // sum over unordered pairs of (z_u - z_v)(w_u - w_v) = n_c * sum (z - zbar)(w - wbar).
  Matrix mean_x(c, m);
  Matrix mean_a(c, m);
  for (std::size_t u = 0; u < n; ++u) {
    const ClassId y = dataset.label(static_cast<NodeId>(u));
    for (std::size_t j = 0; j < m; ++j) {
      mean_x(y, j) += x(u, j);
      mean_a(y, j) += a(u, j);
    }
  }
  for (std::size_t y = 0; y < c; ++y) {
    if (sizes[y] == 0) continue;
    const double inv = 1.0 / static_cast<double>(sizes[y]);
    for (std::size_t j = 0; j < m; ++j) {
      mean_x(y, j) *= inv;
      mean_a(y, j) *= inv;
    }
  }
  std::vector<double> sxx(m, 0.0);
  std::vector<double> sxa(m, 0.0);
  std::vector<double> saa(m, 0.0);
  for (std::size_t u = 0; u < n; ++u) {
    const ClassId y = dataset.label(static_cast<NodeId>(u));
    const double w = static_cast<double>(sizes[y]);
    for (std::size_t j = 0; j < m; ++j) {
      const double dx = x(u, j) - mean_x(y, j);
      const double da = a(u, j) - mean_a(y, j);
      sxx[j] += w * dx * dx;
      sxa[j] += w * dx * da;
      saa[j] += w * da * da;
    }
  }

  FeatureHomophilyEstimate out;
  out.rho_used = rho;
  out.per_feature.resize(m);
  double sum_clipped = 0.0;
  double sum_raw = 0.0;
  std::size_t valid = 0;
  for (std::size_t j = 0; j < m; ++j) {
    FeatureEstimate& fe = out.per_feature[j];
    fe.energy = saa[j];
    if (saa[j] < kDegenerateEnergy) {
      fe.degenerate = true;
      fe.residual = sxx[j];
      ++out.degenerate_features;
      continue;
    }
    fe.raw = rho * sxa[j] / saa[j];
    fe.clipped = std::clamp(fe.raw, -1.0, 1.0);
    const double t = fe.clipped / rho;
    fe.residual = std::max(0.0, sxx[j] - 2.0 * t * sxa[j] + t * t * saa[j]);
    sum_clipped += fe.clipped;
    sum_raw += fe.raw;
    ++valid;
  }
  require(valid > 0, ErrorCode::kDegenerate, "every feature is degenerate");
  out.h_F = sum_clipped / static_cast<double>(valid);
  out.h_F_raw = sum_raw / static_cast<double>(valid);
  return out;
}

double generalized_edge_homophily(const Dataset& dataset) {
  const Graph& g = dataset.graph();
  require(g.num_edges() > 0, ErrorCode::kEmptyGraph,
          "generalized edge homophily needs at least one edge");
  const Matrix& x = dataset.features();
  double total = 0.0;
  for (const Edge& e : g.edge_list()) total += cosine(x.row(e.u), x.row(e.v));
  return total / static_cast<double>(g.num_edges());
}

double local_similarity(const Dataset& dataset, SimilarityMode mode) {
  const Graph& g = dataset.graph();
  const Matrix& x = dataset.features();
  double total = 0.0;
  std::size_t counted = 0;
  for (std::size_t u = 0; u < g.num_nodes(); ++u) {
    const auto nb = g.neighbors(static_cast<NodeId>(u));
    if (nb.empty()) continue;
    double s = 0.0;
    for (NodeId v : nb) {
      s += mode == SimilarityMode::kCosine
               ? cosine(x.row(u), x.row(v))
               : -std::sqrt(squared_distance(x.row(u), x.row(v)));
    }
    total += s / static_cast<double>(nb.size());
    ++counted;
  }
  require(counted > 0, ErrorCode::kEmptyGraph, "every node is isolated");
  return total / static_cast<double>(counted);
}

AttributeHomophily attribute_homophily(const Dataset& dataset) {
  const Graph& g = dataset.graph();
  const Matrix& x = dataset.features();
  const std::size_t n = x.rows();
  require(g.num_edges() > 0, ErrorCode::kEmptyGraph, "every node is isolated");

  AttributeHomophily out;
  out.per_feature.assign(x.cols(), std::numeric_limits<double>::quiet_NaN());
  out.shift.assign(x.cols(), 0.0);
  double total = 0.0;
  std::vector<double> col(n);
  for (std::size_t j = 0; j < x.cols(); ++j) {
    double lo = 0.0;
    for (std::size_t u = 0; u < n; ++u) {
      col[u] = x(u, j);
      lo = std::min(lo, col[u]);
    }
    if (lo < 0.0) {
      out.shift[j] = -lo;
      for (double& v : col) v -= lo;
    }
    const double sum = std::accumulate(col.begin(), col.end(), 0.0);
    if (sum == 0.0) continue;
    double numer = 0.0;
    for (std::size_t u = 0; u < n; ++u) {
      const auto nb = g.neighbors(static_cast<NodeId>(u));
      if (nb.empty() || col[u] == 0.0) continue;
      double s = 0.0;
      for (NodeId v : nb) s += col[v];
      numer += col[u] * s / static_cast<double>(nb.size());
    }
    out.per_feature[j] = numer / sum;
    total += out.per_feature[j];
    ++out.valid_features;
  }
  require(out.valid_features > 0, ErrorCode::kDegenerate,
          "attribute homophily has no column with a non-zero sum");
  out.value = total / static_cast<double>(out.valid_features);
  return out;
}

ClassControlledResult class_controlled_feature_homophily(
    const Dataset& dataset, const ClassControlledOptions& options) {
  const Graph& g = dataset.graph();
  const std::size_t n = dataset.num_nodes();
  require(n >= 2, ErrorCode::kTooFewNodes, "need at least two nodes");

  const Matrix means = class_means(dataset);
  Matrix z = dataset.features();
  for (std::size_t u = 0; u < n; ++u) {
    const auto mu = means.row(dataset.label(static_cast<NodeId>(u)));
    auto r = z.row(u);
    for (std::size_t j = 0; j < r.size(); ++j) r[j] -= mu[j];
  }

  ClassControlledResult out;
  std::vector<NodeId> reference;
  if (n <= options.exact_threshold || options.ref_sample >= n) {
    reference.resize(n);
    std::iota(reference.begin(), reference.end(), NodeId{0});
  } else {
    require(options.ref_sample >= 2, ErrorCode::kInvalidArgument,
            "ref_sample must be >= 2");
    std::vector<NodeId> all(n);
    std::iota(all.begin(), all.end(), NodeId{0});
    Rng rng = make_rng(options.seed, 0x6366);
    std::sample(all.begin(), all.end(), std::back_inserter(reference),
                options.ref_sample, rng);
    out.sampled = true;
  }
  out.reference_size = reference.size();
  std::vector<std::uint8_t> in_ref(n, 0);
  for (NodeId r : reference) in_ref[r] = 1;

  const std::vector<double> sums = kernels::distance_sums(z, reference);
  const double size = static_cast<double>(reference.size());

  double total = 0.0;
  std::size_t counted = 0;
  for (std::size_t u = 0; u < n; ++u) {
    const auto nb = g.neighbors(static_cast<NodeId>(u));
    if (nb.empty()) continue;
    double s = 0.0;
    for (NodeId v : nb) {
      const double duv = std::sqrt(squared_distance(z.row(v), z.row(u)));
      const double d_ref = in_ref[u] ? (sums[v] - duv) / (size - 1.0)
                                     : sums[v] / size;
      s += d_ref - duv;
    }
    total += s / static_cast<double>(nb.size());
    ++counted;
  }
  require(counted > 0, ErrorCode::kEmptyGraph, "every node is isolated");
  out.value = total / static_cast<double>(counted);
  return out;
}

}  // namespace trihom
