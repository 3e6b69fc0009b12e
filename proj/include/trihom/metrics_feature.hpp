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

// Feature-aspect measures, including the closed-form feature homophily
// estimator that inverts the diffusion model X = (I - (h/rho) A)^-1 X0.

#ifndef TRIHOM_METRICS_FEATURE_HPP_
#define TRIHOM_METRICS_FEATURE_HPP_

#include <cstdint>
#include <vector>

#include "trihom/graph.hpp"

namespace trihom {

struct FeatureEstimate {
  double raw = 0.0;       // unconstrained minimizer h*
  double clipped = 0.0;   // h* clipped to [-1, 1]; 0 when degenerate
  double energy = 0.0;    // E = sum over same-class pairs of (da)^2
  double residual = 0.0;  // objective value at the clipped h
  bool degenerate = false;
};

struct FeatureHomophilyEstimate {
  double h_F = 0.0;      // mean of clipped values over non-degenerate features
  double h_F_raw = 0.0;  // mean of raw values over the same features
  std::vector<FeatureEstimate> per_feature;
  std::size_t degenerate_features = 0;
  double rho_used = 0.0;
};

/// Per feature m minimizes sum over unordered same-class pairs of
/// ((x_u - x_v) - (h/rho)(a_u - a_v))^2 with a = A x, giving h* = rho B / E.
/// Features with E < 1e-12 are degenerate. Throws kDegenerate when all are,
/// kInvalidArgument when rho <= 0.
FeatureHomophilyEstimate estimate_feature_homophily(const Dataset& dataset,
                                                    double rho);

/// Mean edge cosine; an edge with a zero-norm endpoint contributes 0.
/// Throws kEmptyGraph without edges.
double generalized_edge_homophily(const Dataset& dataset);

enum class SimilarityMode { kCosine, kEuclidean };

/// Mean over non-isolated nodes of the mean neighbor similarity. Euclidean
/// mode uses the negated distance. Throws kEmptyGraph if all are isolated.
double local_similarity(const Dataset& dataset, SimilarityMode mode);

struct AttributeHomophily {
  double value = 0.0;  // mean over valid features
  std::vector<double> per_feature;  // NaN for skipped features
  std::vector<double> shift;        // amount added to each column (0 if none)
  std::size_t valid_features = 0;
};

/// Columns with negative entries are shifted by -min; zero-sum columns are
/// skipped; isolated nodes add nothing to the numerator. Throws kDegenerate
/// without a valid column and kEmptyGraph if every node is isolated.
AttributeHomophily attribute_homophily(const Dataset& dataset);

struct ClassControlledOptions {
  std::size_t ref_sample = 500;
  std::size_t exact_threshold = 1000;  // exact all-nodes reference when N <= this
  std::uint64_t seed = 0;
};

struct ClassControlledResult {
  double value = 0.0;
  bool sampled = false;
  std::size_t reference_size = 0;
};

/// Mean over non-isolated u of the mean over neighbors v of
/// d(v, R minus {u}) - ||Z_v - Z_u||, with Z the class-centered features and
/// d the mean Euclidean distance to the reference set R.
ClassControlledResult class_controlled_feature_homophily(
    const Dataset& dataset, const ClassControlledOptions& options = {});

}  // namespace trihom

#endif  // TRIHOM_METRICS_FEATURE_HPP_
