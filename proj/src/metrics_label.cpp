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

#include "trihom/metrics_label.hpp"

#include <algorithm>
#include <vector>

#include "trihom/error.hpp"

namespace trihom {

namespace {

// Per-node count of neighbors that share the node's label.
std::vector<std::size_t> same_label_counts(const Dataset& ds) {
  const Graph& g = ds.graph();
  std::vector<std::size_t> out(g.num_nodes(), 0);
  for (std::size_t u = 0; u < g.num_nodes(); ++u) {
    const ClassId y = ds.label(static_cast<NodeId>(u));
    for (NodeId v : g.neighbors(static_cast<NodeId>(u))) {
      if (ds.label(v) == y) ++out[u];
    }
  }
  return out;
}

// Per-class degree sums D_c (arc counts).
std::vector<double> class_degree_sums(const Dataset& ds) {
  std::vector<double> d(ds.num_classes(), 0.0);
  for (std::size_t u = 0; u < ds.num_nodes(); ++u) {
    d[ds.label(static_cast<NodeId>(u))] +=
        static_cast<double>(ds.graph().degree(static_cast<NodeId>(u)));
  }
  return d;
}

void require_edges(const Dataset& ds) {
  require(ds.graph().num_edges() > 0, ErrorCode::kEmptyGraph,
          "metric needs at least one edge");
}

}  // namespace

double edge_homophily(const Dataset& dataset) {
  require_edges(dataset);
  const auto same = same_label_counts(dataset);
  std::size_t arcs = 0;
  for (std::size_t s : same) arcs += s;
  return static_cast<double>(arcs) /
         static_cast<double>(dataset.graph().num_arcs());
}

double node_homophily(const Dataset& dataset) {
  const Graph& g = dataset.graph();
  const auto same = same_label_counts(dataset);
  double total = 0.0;
  std::size_t counted = 0;
  for (std::size_t u = 0; u < g.num_nodes(); ++u) {
    const std::size_t d = g.degree(static_cast<NodeId>(u));
    if (d == 0) continue;
    total += static_cast<double>(same[u]) / static_cast<double>(d);
    ++counted;
  }
  require(counted > 0, ErrorCode::kEmptyGraph, "every node is isolated");
  return total / static_cast<double>(counted);
}

double class_homophily(const Dataset& dataset) {
  const std::size_t c = dataset.num_classes();
  require(c >= 2, ErrorCode::kInvalidArgument, "class homophily needs C >= 2");
  const auto same = same_label_counts(dataset);
  const auto deg = class_degree_sums(dataset);
  const auto sizes = dataset.class_sizes();
  std::vector<double> intra(c, 0.0);
  for (std::size_t u = 0; u < dataset.num_nodes(); ++u) {
    intra[dataset.label(static_cast<NodeId>(u))] += static_cast<double>(same[u]);
  }
  const double n = static_cast<double>(dataset.num_nodes());
  double sum = 0.0;
  for (std::size_t k = 0; k < c; ++k) {
    if (deg[k] == 0.0) continue;
    const double term = intra[k] / deg[k] - static_cast<double>(sizes[k]) / n;
    sum += std::max(0.0, term);
  }
  return sum / static_cast<double>(c - 1);
}

double adjusted_homophily(const Dataset& dataset) {
  require_edges(dataset);
  const double h_edge = edge_homophily(dataset);
  const auto deg = class_degree_sums(dataset);
  const double two_m = static_cast<double>(dataset.graph().num_arcs());
  double chance = 0.0;
  for (double d : deg) chance += (d / two_m) * (d / two_m);
  const double denom = 1.0 - chance;
  require(denom > 1e-15, ErrorCode::kDegenerate,
          "adjusted homophily undefined with a single effective class");
  return (h_edge - chance) / denom;
}

double density_aware_homophily(const Dataset& dataset) {
  const std::size_t c = dataset.num_classes();
  require(c >= 2, ErrorCode::kInvalidArgument, "density-aware needs C >= 2");
  const auto sizes = dataset.class_sizes();
  for (std::size_t s : sizes) {
    require(s >= 2, ErrorCode::kDegenerate,
            "density-aware homophily needs two nodes in every class");
  }
  // Edge counts between class pairs, each undirected edge once.
  Matrix counts(c, c);
  for (const Edge& e : dataset.graph().edge_list()) {
    const ClassId a = dataset.label(e.u);
    const ClassId b = dataset.label(e.v);
    counts(a, b) += 1.0;
    if (a != b) counts(b, a) += 1.0;
  }
  double best = 0.0;
  bool first = true;
  for (std::size_t k = 0; k < c; ++k) {
    const double nk = static_cast<double>(sizes[k]);
    const double intra = counts(k, k) / (nk * (nk - 1.0) / 2.0);
    double inter = 0.0;
    for (std::size_t j = 0; j < c; ++j) {
      if (j == k) continue;
      inter = std::max(inter, counts(k, j) / (nk * static_cast<double>(sizes[j])));
    }
    const double gap = intra - inter;
    if (first || gap < best) best = gap;
    first = false;
  }
  return (1.0 + best) / 2.0;
}

double two_hop_class_similarity(const Dataset& dataset,
                                TwoHopDenominator denominator) {
  const Graph& g = dataset.graph();
  const std::size_t n = g.num_nodes();
  std::vector<std::size_t> stamp(n, n);  // n means never visited
  double total = 0.0;
  std::size_t counted = 0;
  for (std::size_t u = 0; u < n; ++u) {
    const ClassId y = dataset.label(static_cast<NodeId>(u));
    std::size_t size = 0;
    std::size_t same = 0;
    stamp[u] = u;
    for (NodeId v : g.neighbors(static_cast<NodeId>(u))) {
      for (NodeId w : g.neighbors(v)) {
        if (stamp[w] == u) continue;
        stamp[w] = u;
        ++size;
        if (dataset.label(w) == y) ++same;
      }
    }
    if (size == 0) continue;
    const double denom = denominator == TwoHopDenominator::kDegree
                             ? static_cast<double>(g.degree(static_cast<NodeId>(u)))
                             : static_cast<double>(size);
    total += static_cast<double>(same) / denom;
    ++counted;
  }
  require(counted > 0, ErrorCode::kEmptyGraph, "no node has a two-hop set");
  return total / static_cast<double>(counted);
}

double neighbor_homophily(const Dataset& dataset, std::size_t k) {
  require(k >= 1, ErrorCode::kInvalidArgument, "k must be >= 1");
  const Graph& g = dataset.graph();
  const std::size_t n = g.num_nodes();
  std::vector<std::size_t> stamp(n, n);
  std::vector<NodeId> frontier;
  std::vector<NodeId> next;
  std::vector<std::size_t> hist(dataset.num_classes(), 0);
  double total = 0.0;
  std::size_t counted = 0;
  for (std::size_t u = 0; u < n; ++u) {
    std::fill(hist.begin(), hist.end(), 0);
    std::size_t size = 0;
    stamp[u] = u;
    frontier.assign(1, static_cast<NodeId>(u));
    for (std::size_t hop = 0; hop < k && !frontier.empty(); ++hop) {
      next.clear();
      for (NodeId v : frontier) {
        for (NodeId w : g.neighbors(v)) {
          if (stamp[w] == u) continue;
          stamp[w] = u;
          next.push_back(w);
          ++hist[dataset.label(w)];
          ++size;
        }
      }
      std::swap(frontier, next);
    }
    if (size == 0) continue;
    total += static_cast<double>(*std::max_element(hist.begin(), hist.end())) /
             static_cast<double>(size);
    ++counted;
  }
  require(counted > 0, ErrorCode::kEmptyGraph, "every node is isolated");
  return total / static_cast<double>(counted);
}

}  // namespace trihom
