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

// Label-consistency homophily measures. Undirected edges are counted once;
// degree sums (D_c) count both arc directions. Isolated nodes and nodes with
// empty hop sets are left out of node averages.

#ifndef TRIHOM_METRICS_LABEL_HPP_
#define TRIHOM_METRICS_LABEL_HPP_

#include <cstddef>

#include "trihom/graph.hpp"

namespace trihom {

/// Throws kEmptyGraph when the graph has no edges.
double edge_homophily(const Dataset& dataset);

/// Throws kEmptyGraph when every node is isolated.
double node_homophily(const Dataset& dataset);

/// Classes with zero total degree contribute nothing.
double class_homophily(const Dataset& dataset);

/// Throws kEmptyGraph without edges and kDegenerate when the chance level
/// sum_c (D_c / 2|E|)^2 equals 1.
double adjusted_homophily(const Dataset& dataset);

/// (1 + min_c (intra density_c - max_{c' != c} inter density_{c,c'})) / 2.
/// Throws kDegenerate when a class has fewer than two nodes.
double density_aware_homophily(const Dataset& dataset);

enum class TwoHopDenominator {
  kTwoHopSetSize,  // |N2(u)|
  kDegree,         // d_u, as printed in the original definition
};

/// Same-label fraction over N2(u) = (union of N(v), v in N(u)) minus {u},
/// averaged over nodes with a non-empty N2(u).
double two_hop_class_similarity(
    const Dataset& dataset,
    TwoHopDenominator denominator = TwoHopDenominator::kTwoHopSetSize);

/// Mean over nodes of (largest class count)/(size) within the ball of radius
/// k around u, u itself excluded. Throws kInvalidArgument if k == 0.
double neighbor_homophily(const Dataset& dataset, std::size_t k = 2);

}  // namespace trihom

#endif  // TRIHOM_METRICS_LABEL_HPP_
