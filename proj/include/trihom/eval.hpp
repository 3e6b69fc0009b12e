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

// Node splits, the nearest-centroid probe classifier, and the synthetic
// (h_L, h_S, h_F) sweep driver.

#ifndef TRIHOM_EVAL_HPP_
#define TRIHOM_EVAL_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "trihom/csbm3h.hpp"
#include "trihom/graph.hpp"

namespace trihom {

struct Split {
  std::vector<NodeId> train;
  std::vector<NodeId> val;
  std::vector<NodeId> test;
  std::uint64_t seed = 0;
};

/// Seeded shuffle cut into round(r0 N), round(r1 N) and the remainder.
/// Throws kInvalidArgument for non-positive ratios or a sum off 1 by more
/// than 1e-9, kTooFewNodes when a part would be empty.
Split make_split(std::size_t num_nodes, const std::array<double, 3>& ratios,
                 std::uint64_t seed);

enum class ScorePart { kTest, kValidation };

/// Accuracy of nearest train-class centroid (Euclidean, ties to the lowest
/// class id) on the chosen part. Throws kMissingClass when a class has no
/// training node and kInvalidArgument on shape mismatch.
double centroid_classify(const Matrix& representations,
                         std::span<const ClassId> labels,
                         std::size_t num_classes, const Split& split,
                         ScorePart part = ScorePart::kTest);

struct SweepGrid {
  std::vector<double> h_L;
  std::vector<double> h_S;
  std::vector<double> h_F;

  std::size_t num_points() const { return h_L.size() * h_S.size() * h_F.size(); }
};

struct SweepOptions {
  double theory_rho = 10.0;  // rho used by the analytic columns
  std::array<double, 3> split_ratios{0.5, 0.25, 0.25};
  ScorePart score_part = ScorePart::kTest;
};

/// NaN marks a value that could not be computed; `notes` says why.
struct SweepRecord {
  std::size_t point_index = 0;
  double h_L_target = 0.0;
  double h_S_target = 0.0;
  double h_F_target = 0.0;
  std::uint64_t seed = 0;
  double h_L_measured = 0.0;
  double h_S_measured = 0.0;
  double h_F_measured = 0.0;
  double rho = 0.0;
  double J_emp_aware = 0.0;
  double J_emp_agnostic = 0.0;
  double Jh_theory_aware = 0.0;        // at the measured point
  double Jh_theory_agnostic = 0.0;
  double Jh_target_aware = 0.0;        // at the target point
  double Jh_target_agnostic = 0.0;
  double acc_aware = 0.0;
  double acc_agnostic = 0.0;
  std::vector<std::string> notes;
};

/// Runs one record per (grid point, seed), grid order h_L, h_S, h_F with
/// h_F fastest, seeds innermost. Record (i, s) generates with seed
/// derive_seed(s, i). Failures are recorded, never thrown.
std::vector<SweepRecord> run_sweep(const SweepGrid& grid,
                                   const Csbm3hParams& gen_template,
                                   std::span<const std::uint64_t> seeds,
                                   const SweepOptions& options = {});

/// Single record; exposed for tests.
SweepRecord run_sweep_point(double h_L, double h_S, double h_F,
                            std::size_t point_index, std::uint64_t seed,
                            const Csbm3hParams& gen_template,
                            const SweepOptions& options);

}  // namespace trihom

#endif  // TRIHOM_EVAL_HPP_
