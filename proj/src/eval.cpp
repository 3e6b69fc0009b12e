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

#include "trihom/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "trihom/error.hpp"
#include "trihom/metrics_feature.hpp"
#include "trihom/metrics_label.hpp"
#include "trihom/metrics_structural.hpp"
#include "trihom/random.hpp"
#include "trihom/trihom_model.hpp"

namespace trihom {

Split make_split(std::size_t num_nodes, const std::array<double, 3>& ratios,
                 std::uint64_t seed) {
  for (double r : ratios) {
    require(r > 0.0, ErrorCode::kInvalidArgument, "split ratios must be > 0");
  }
  require(std::abs(ratios[0] + ratios[1] + ratios[2] - 1.0) <= 1e-9,
          ErrorCode::kInvalidArgument, "split ratios must sum to 1");
  const double n = static_cast<double>(num_nodes);
  const auto n_train = static_cast<std::size_t>(std::llround(ratios[0] * n));
  const auto n_val = static_cast<std::size_t>(std::llround(ratios[1] * n));
  if (n_train == 0 || n_val == 0 || n_train + n_val >= num_nodes) {
    fail(ErrorCode::kTooFewNodes,
         "split of " + std::to_string(num_nodes) + " nodes leaves a part empty");
  }
  std::vector<NodeId> order(num_nodes);
  std::iota(order.begin(), order.end(), NodeId{0});
  Rng rng = make_rng(seed, 0x73706c);
  std::shuffle(order.begin(), order.end(), rng);
  Split s;
  s.seed = seed;
  const auto cut1 = order.begin() + static_cast<std::ptrdiff_t>(n_train);
  const auto cut2 = cut1 + static_cast<std::ptrdiff_t>(n_val);
  s.train.assign(order.begin(), cut1);
  s.val.assign(cut1, cut2);
  s.test.assign(cut2, order.end());
  return s;
}

double centroid_classify(const Matrix& representations,
                         std::span<const ClassId> labels,
                         std::size_t num_classes, const Split& split,
                         ScorePart part) {
  require(representations.rows() == labels.size(), ErrorCode::kInvalidArgument,
          "representation rows must match labels");
  const std::size_t m = representations.cols();
  Matrix centroid(num_classes, m);
  std::vector<std::size_t> count(num_classes, 0);
  for (NodeId u : split.train) {
    const ClassId y = labels[u];
    require(y < num_classes, ErrorCode::kInvalidArgument, "label out of range");
    ++count[y];
    auto c = centroid.row(y);
    const auto x = representations.row(u);
    for (std::size_t j = 0; j < m; ++j) c[j] += x[j];
  }
  for (std::size_t y = 0; y < num_classes; ++y) {
    if (count[y] == 0) {
      fail(ErrorCode::kMissingClass,
           "class " + std::to_string(y) + " has no training node");
    }
    for (double& v : centroid.row(y)) v /= static_cast<double>(count[y]);
  }
  const auto& scored = part == ScorePart::kTest ? split.test : split.val;
  require(!scored.empty(), ErrorCode::kTooFewNodes, "nothing to score");
  std::size_t correct = 0;
  for (NodeId u : scored) {
    const auto x = representations.row(u);
    ClassId best = 0;
    double best_d = squared_distance(x, centroid.row(0));
    for (std::size_t y = 1; y < num_classes; ++y) {
      const double d = squared_distance(x, centroid.row(y));
      if (d < best_d) {
        best_d = d;
        best = static_cast<ClassId>(y);
      }
    }
    if (best == labels[u]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(scored.size());
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Evaluates fn, storing NaN and a note when it throws a library error.
template <typename F>
double guarded(SweepRecord& rec, const char* what, F&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    rec.notes.push_back(std::string(what) + ": " +
                        std::string(error_code_name(e.code())));
    return kNaN;
  }
}

}  // namespace

SweepRecord run_sweep_point(double h_L, double h_S, double h_F,
                            std::size_t point_index, std::uint64_t seed,
                            const Csbm3hParams& gen_template,
                            const SweepOptions& options) {
  SweepRecord rec;
  rec.point_index = point_index;
  rec.h_L_target = h_L;
  rec.h_S_target = h_S;
  rec.h_F_target = h_F;
  rec.seed = seed;

  Csbm3hParams params = gen_template;
  params.h_label = h_L;
  params.h_struct = h_S;
  params.h_feat = h_F;
  params.seed = derive_seed(seed, point_index);
  const std::size_t C = params.num_classes;

  rec.Jh_target_aware = j_h_aware({h_L, h_S, h_F, C, options.theory_rho});
  rec.Jh_target_agnostic = j_h_agnostic({h_L, h_S, h_F, C, options.theory_rho});

  GeneratedGraph gen;
  try {
    gen = generate(params);
  } catch (const Error& e) {
    rec.notes.push_back("generate: " + std::string(error_code_name(e.code())));
    rec.h_L_measured = rec.h_S_measured = rec.h_F_measured = rec.rho = kNaN;
    rec.J_emp_aware = rec.J_emp_agnostic = kNaN;
    rec.Jh_theory_aware = rec.Jh_theory_agnostic = kNaN;
    rec.acc_aware = rec.acc_agnostic = kNaN;
    return rec;
  }
  const Dataset& ds = gen.dataset;
  rec.rho = gen.rho_used;
  rec.h_L_measured = guarded(rec, "h_L", [&] { return node_homophily(ds); });
  rec.h_S_measured =
      guarded(rec, "h_S", [&] { return structural_homophily(ds).h_S; });
  rec.h_F_measured = guarded(
      rec, "h_F", [&] { return estimate_feature_homophily(ds, gen.rho_used).h_F; });

  const Aggregated agg = aggregate_representations(ds);
  rec.J_emp_aware = guarded(rec, "J_emp_aware", [&] {
    return empirical_J_of(agg.H, ds.labels(), C).value;
  });
  rec.J_emp_agnostic = guarded(
      rec, "J_emp_agnostic", [&] { return empirical_J(ds, JMode::kAgnostic).value; });

  if (std::isnan(rec.h_L_measured) || std::isnan(rec.h_S_measured) ||
      std::isnan(rec.h_F_measured)) {
    rec.Jh_theory_aware = rec.Jh_theory_agnostic = kNaN;
  } else {
    const TriHomPoint measured{rec.h_L_measured, rec.h_S_measured,
                               rec.h_F_measured, C, options.theory_rho};
    rec.Jh_theory_aware = j_h_aware(measured);
    rec.Jh_theory_agnostic = j_h_agnostic(measured);
  }

  Split split;
  try {
    split = make_split(ds.num_nodes(), options.split_ratios,
                       derive_seed(params.seed, 3));
  } catch (const Error& e) {
    rec.notes.push_back("split: " + std::string(error_code_name(e.code())));
    rec.acc_aware = rec.acc_agnostic = kNaN;
    return rec;
  }
  rec.acc_aware = guarded(rec, "acc_aware", [&] {
    return centroid_classify(agg.H, ds.labels(), C, split, options.score_part);
  });
  rec.acc_agnostic = guarded(rec, "acc_agnostic", [&] {
    return centroid_classify(ds.features(), ds.labels(), C, split,
                             options.score_part);
  });
  return rec;
}

std::vector<SweepRecord> run_sweep(const SweepGrid& grid,
                                   const Csbm3hParams& gen_template,
                                   std::span<const std::uint64_t> seeds,
                                   const SweepOptions& options) {
  require(grid.num_points() > 0, ErrorCode::kInvalidArgument,
          "sweep grid is empty");
  require(!seeds.empty(), ErrorCode::kInvalidArgument, "no seeds given");
  const std::size_t ns = grid.h_S.size();
  const std::size_t nf = grid.h_F.size();
  const std::size_t per_point = seeds.size();
  const std::size_t total = grid.num_points() * per_point;
  std::vector<SweepRecord> records(total);
  const auto count = static_cast<std::int64_t>(total);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t k = 0; k < count; ++k) {
    const auto idx = static_cast<std::size_t>(k);
    const std::size_t point = idx / per_point;
    const double h_L = grid.h_L[point / (ns * nf)];
    const double h_S = grid.h_S[(point / nf) % ns];
    const double h_F = grid.h_F[point % nf];
    records[idx] = run_sweep_point(h_L, h_S, h_F, point, seeds[idx % per_point],
                                   gen_template, options);
  }
  return records;
}

}  // namespace trihom
