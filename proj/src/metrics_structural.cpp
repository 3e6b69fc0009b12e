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

#include "trihom/metrics_structural.hpp"

#include <algorithm>
#include <cmath>

#include "trihom/error.hpp"
#include "trihom/random.hpp"

namespace trihom {

namespace {

StructuralHomophily structural_from_members(
    const Matrix& rows, std::span<const ClassId> labels,
    std::span<const std::uint8_t> excluded, std::size_t num_classes) {
  require(num_classes >= 2, ErrorCode::kInvalidArgument,
          "structural homophily needs C >= 2");
  const std::size_t c = num_classes;
  const double sigma_max = 1.0 / std::sqrt(static_cast<double>(c - 1));

  std::vector<std::size_t> members(c, 0);
  Matrix mean(c, c);
  for (std::size_t u = 0; u < rows.rows(); ++u) {
    if (!excluded.empty() && excluded[u]) continue;
    const ClassId y = labels[u];
    ++members[y];
    const auto r = rows.row(u);
    for (std::size_t k = 0; k < c; ++k) mean(y, k) += r[k];
  }
  for (std::size_t y = 0; y < c; ++y) {
    if (members[y] == 0) continue;
    for (double& m : mean.row(y)) m /= static_cast<double>(members[y]);
  }
  Matrix var(c, c);
  for (std::size_t u = 0; u < rows.rows(); ++u) {
    if (!excluded.empty() && excluded[u]) continue;
    const ClassId y = labels[u];
    const auto r = rows.row(u);
    for (std::size_t k = 0; k < c; ++k) {
      const double d = r[k] - mean(y, k);
      var(y, k) += d * d;
    }
  }

  StructuralHomophily out;
  double total = 0.0;
  std::size_t included = 0;
  for (std::size_t y = 0; y < c; ++y) {
    ClassStructure cs;
    cs.label = static_cast<ClassId>(y);
    cs.members = members[y];
    if (members[y] < 2) {
      ++out.skipped_classes;
      out.per_class.push_back(cs);
      continue;
    }
    double mean_var = 0.0;
    for (std::size_t k = 0; k < c; ++k) {
      mean_var += var(y, k) / static_cast<double>(members[y]);
    }
    const double sigma = std::sqrt(mean_var / static_cast<double>(c));
    cs.sigma = sigma;
    cs.h_S = std::clamp(1.0 - sigma / sigma_max, 0.0, 1.0);
    total += *cs.h_S;
    ++included;
    out.per_class.push_back(cs);
  }
  require(included > 0, ErrorCode::kDegenerate,
          "no class has two non-isolated nodes");
  out.h_S = total / static_cast<double>(included);
  return out;
}

double plogp(double p) { return p > 0.0 ? p * std::log(p) : 0.0; }

// Unit-normalized neighbor distribution rows; zero rows stay zero and are
// flagged as unusable.
Matrix unit_rows(const NeighborDistribution& nd, std::vector<std::uint8_t>& usable) {
  Matrix out = nd.rows;
  usable.assign(out.rows(), 0);
  for (std::size_t u = 0; u < out.rows(); ++u) {
    auto r = out.row(u);
    const double norm = std::sqrt(dot(r, r));
    if (norm == 0.0) continue;
    for (double& x : r) x /= norm;
    usable[u] = 1;
  }
  return out;
}

}  // namespace

StructuralHomophily structural_homophily(const Dataset& dataset) {
  const NeighborDistribution nd = neighbor_distribution(dataset);
  return structural_from_members(nd.rows, dataset.labels(), nd.isolated,
                                 dataset.num_classes());
}

StructuralHomophily structural_homophily_from_rows(
    const Matrix& rows, std::span<const ClassId> labels,
    std::size_t num_classes) {
  require(rows.rows() == labels.size() && rows.cols() == num_classes,
          ErrorCode::kInvalidArgument, "rows must be N x C");
  return structural_from_members(rows, labels, {}, num_classes);
}

double label_informativeness(const Dataset& dataset, LiForm form) {
  const Graph& g = dataset.graph();
  require(g.num_edges() > 0, ErrorCode::kEmptyGraph,
          "label informativeness needs at least one edge");
  const std::size_t c = dataset.num_classes();
  Matrix joint(c, c);
  std::vector<double> marginal(c, 0.0);
  for (std::size_t u = 0; u < g.num_nodes(); ++u) {
    const ClassId a = dataset.label(static_cast<NodeId>(u));
    for (NodeId v : g.neighbors(static_cast<NodeId>(u))) {
      joint(a, dataset.label(v)) += 1.0;
    }
    marginal[a] += static_cast<double>(g.degree(static_cast<NodeId>(u)));
  }
  const double arcs = static_cast<double>(g.num_arcs());
  double denom = 0.0;
  for (double d : marginal) denom += plogp(d / arcs);
  require(std::abs(denom) > 0.0, ErrorCode::kDegenerate,
          "label informativeness undefined for a single effective class");
  double numer = 0.0;
  for (double count : joint.values()) {
    if (count == 0.0) continue;
    const double p = count / arcs;
    numer += form == LiForm::kWeighted ? p * std::log(p) : std::log(p);
  }
  return 2.0 - numer / denom;
}

NeighborhoodSimilarity neighborhood_similarity(const Dataset& dataset,
                                               const PairSampling& sampling) {
  const NeighborDistribution nd = neighbor_distribution(dataset);
  std::vector<std::uint8_t> usable;
  const Matrix unit = unit_rows(nd, usable);
  const std::size_t c = dataset.num_classes();
  const std::size_t n = unit.rows();

  NeighborhoodSimilarity out;
  double intra_sum = 0.0;
  double inter_sum = 0.0;
  if (!sampling.enabled) {
    Matrix class_sum(c, c);
    std::vector<double> total(c, 0.0);
    std::vector<std::size_t> members(c, 0);
    for (std::size_t u = 0; u < n; ++u) {
      if (!usable[u]) continue;
      const ClassId y = dataset.label(static_cast<NodeId>(u));
      ++members[y];
      const auto r = unit.row(u);
      for (std::size_t k = 0; k < c; ++k) {
        class_sum(y, k) += r[k];
        total[k] += r[k];
      }
    }
    double within = 0.0;
    std::size_t usable_count = 0;
    std::size_t intra_pairs = 0;
    for (std::size_t y = 0; y < c; ++y) {
      const double ss = dot(class_sum.row(y), class_sum.row(y));
      within += ss;
      // Ordered same-class pairs exclude u == v, whose cosine is exactly 1.
      intra_sum += ss - static_cast<double>(members[y]);
      intra_pairs += members[y] * (members[y] > 0 ? members[y] - 1 : 0);
      usable_count += members[y];
    }
    inter_sum = dot(total, total) - within;
    out.intra_pairs = intra_pairs;
    out.inter_pairs = usable_count * usable_count - intra_pairs - usable_count;
  } else {
    require(sampling.max_pairs > 0, ErrorCode::kInvalidArgument,
            "max_pairs must be positive");
    std::vector<NodeId> pool;
    for (std::size_t u = 0; u < n; ++u) {
      if (usable[u]) pool.push_back(static_cast<NodeId>(u));
    }
    require(pool.size() >= 2, ErrorCode::kDegenerate,
            "neighborhood similarity needs two non-isolated nodes");
    Rng rng = make_rng(sampling.seed, 0x6e73);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    const std::size_t max_attempts = 64 * sampling.max_pairs;
    for (std::size_t attempt = 0;
         attempt < max_attempts && (out.intra_pairs < sampling.max_pairs ||
                                    out.inter_pairs < sampling.max_pairs);
         ++attempt) {
      const NodeId u = pool[pick(rng)];
      const NodeId v = pool[pick(rng)];
      if (u == v) continue;
      const double cs = dot(unit.row(u), unit.row(v));
      if (dataset.label(u) == dataset.label(v)) {
        if (out.intra_pairs == sampling.max_pairs) continue;
        intra_sum += cs;
        ++out.intra_pairs;
      } else {
        if (out.inter_pairs == sampling.max_pairs) continue;
        inter_sum += cs;
        ++out.inter_pairs;
      }
    }
    out.sampled = true;
  }
  require(out.intra_pairs > 0 && out.inter_pairs > 0, ErrorCode::kDegenerate,
          "neighborhood similarity needs intra- and inter-class pairs");
  out.intra_mean = intra_sum / static_cast<double>(out.intra_pairs);
  out.inter_mean = inter_sum / static_cast<double>(out.inter_pairs);
  require(std::abs(out.inter_mean) >= 1e-12, ErrorCode::kDegenerate,
          "inter-class neighborhood similarity is zero");
  out.value = out.intra_mean / out.inter_mean;
  return out;
}

double aggregation_homophily(const Dataset& dataset) {
  const NeighborDistribution nd = neighbor_distribution(dataset);
  const std::size_t c = dataset.num_classes();
  const std::size_t n = nd.rows.rows();
  Matrix class_sum(c, c);
  std::vector<double> total(c, 0.0);
  const auto sizes = dataset.class_sizes();
  for (std::size_t u = 0; u < n; ++u) {
    const ClassId y = dataset.label(static_cast<NodeId>(u));
    const auto r = nd.rows.row(u);
    for (std::size_t k = 0; k < c; ++k) {
      class_sum(y, k) += r[k];
      total[k] += r[k];
    }
  }
  std::size_t satisfied = 0;
  for (std::size_t u = 0; u < n; ++u) {
    const ClassId y = dataset.label(static_cast<NodeId>(u));
    const auto r = nd.rows.row(u);
    const double same = dot(r, class_sum.row(y));
    const double all = dot(r, total);
    const double n_same = static_cast<double>(sizes[y]);
    const double n_other = static_cast<double>(n) - n_same;
    if (n_other == 0.0) {
      ++satisfied;
      continue;
    }
    const double intra = same / n_same;
    const double inter = (all - same) / n_other;
    if (intra >= inter - 1e-12 * std::max(1.0, std::abs(inter))) ++satisfied;
  }
  return static_cast<double>(satisfied) / static_cast<double>(n);
}

}  // namespace trihom
