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

// Correlation statistics between metric columns and performance columns.

#ifndef TRIHOM_STATS_HPP_
#define TRIHOM_STATS_HPP_

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace trihom {

/// Sample Pearson correlation. Throws kInvalidArgument on length mismatch or
/// n < 2, kConstantInput when either column has zero variance.
double pearson(std::span<const double> x, std::span<const double> y);

/// (concordant - discordant) / (n(n-1)/2); pairs tied in either column count
/// as neither. O(n log n). Throws kInvalidArgument on length mismatch or n < 2.
double kendall_tau_a(std::span<const double> x, std::span<const double> y);

/// Mid-ranks (1-based) of the values; equal values share the average rank.
std::vector<double> mid_ranks(std::span<const double> values);

struct NamedColumn {
  std::string name;
  std::vector<double> values;  // NaN marks a missing cell
};

struct CorrelationCell {
  std::string metric;
  std::string model;
  std::size_t n = 0;  // rows where both cells are present
  std::optional<double> pearson;
  std::optional<double> kendall;
  std::string pearson_error;  // reason when pearson is empty
  std::string kendall_error;
  std::optional<double> rank;          // by |pearson|, within the model
  std::optional<double> kendall_rank;  // by |kendall|, within the model
};

struct MetricSummary {
  std::string metric;
  std::optional<double> average_rank;  // over models with a ranked cell
  std::optional<double> average_kendall_rank;
};

struct CorrelationTable {
  std::vector<CorrelationCell> cells;  // metric-major order
  std::vector<MetricSummary> metrics;
};

/// Pairwise deletion of missing rows, both correlations per cell, mid-ranks
/// of descending |correlation| per model. Throws kInconsistentSizes when
/// column lengths differ.
CorrelationTable correlate_table(std::span<const NamedColumn> metrics,
                                 std::span<const NamedColumn> performances);

}  // namespace trihom

#endif  // TRIHOM_STATS_HPP_
