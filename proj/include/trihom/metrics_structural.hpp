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

// Structural-aspect measures computed from per-node neighbor distributions.

#ifndef TRIHOM_METRICS_STRUCTURAL_HPP_
#define TRIHOM_METRICS_STRUCTURAL_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "trihom/graph.hpp"

namespace trihom {

struct ClassStructure {
  ClassId label = 0;
  std::size_t members = 0;  // non-isolated nodes of the class
  std::optional<double> sigma;
  std::optional<double> h_S;  // empty when the class was skipped
};

struct StructuralHomophily {
  double h_S = 0.0;
  std::vector<ClassStructure> per_class;
  std::size_t skipped_classes = 0;
};

/// h_S,c = clamp(1 - sigma_c * sqrt(C - 1), 0, 1) where sigma_c is the root
/// mean of per-entry population variances of D^N rows over the class's
/// non-isolated nodes; h_S is the mean over classes with >= 2 such nodes.
/// Throws kDegenerate when no class qualifies.
StructuralHomophily structural_homophily(const Dataset& dataset);

/// Same estimator applied to an explicit N x C neighbor-distribution block,
/// every row treated as non-isolated.
StructuralHomophily structural_homophily_from_rows(
    const Matrix& rows, std::span<const ClassId> labels, std::size_t num_classes);

enum class LiForm {
  kWeighted,  // 2 - sum p log p / sum pbar log pbar
  kLiteral,   // unweighted log sum as printed
};

/// Natural logarithm; 0 log 0 = 0. Throws kEmptyGraph without edges and
/// kDegenerate when the class-marginal entropy is zero.
double label_informativeness(const Dataset& dataset,
                             LiForm form = LiForm::kWeighted);

struct PairSampling {
  bool enabled = false;          // exact class-sum evaluation when false
  std::size_t max_pairs = 200'000;  // per expectation
  std::uint64_t seed = 0;
};

struct NeighborhoodSimilarity {
  double value = 0.0;
  double intra_mean = 0.0;
  double inter_mean = 0.0;
  bool sampled = false;
  std::size_t intra_pairs = 0;
  std::size_t inter_pairs = 0;
};

/// Mean cosine of D^N rows over same-class ordered pairs divided by the mean
/// over different-class pairs. Zero rows are left out. Exact by default via
/// per-class sums of unit rows. Throws kDegenerate when either pair set is
/// empty or the inter-class mean is below 1e-12 in magnitude.
NeighborhoodSimilarity neighborhood_similarity(const Dataset& dataset,
                                               const PairSampling& sampling = {});

/// Fraction of nodes whose mean D^N dot product with same-class nodes
/// (itself included) is at least the mean with other-class nodes.
/// Comparisons use a 1e-12 relative tolerance. Nodes without other-class
/// partners count as satisfied.
double aggregation_homophily(const Dataset& dataset);

}  // namespace trihom

#endif  // TRIHOM_METRICS_STRUCTURAL_HPP_
