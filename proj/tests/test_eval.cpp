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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

#include "test_util.hpp"
#include "trihom/error.hpp"
#include "trihom/eval.hpp"
#include "trihom/trihom_model.hpp"

namespace trihom {
namespace {

using testing::rows_to_matrix;

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::kInvalidArgument;
}

Csbm3hParams sweep_template() {
  Csbm3hParams p;
  p.num_nodes = 1000;
  set_one_hot_means(p, 3, 1.0, 1.0);
  return p;
}

TEST(MakeSplit, Sizes) {
  const Split a = make_split(100, {0.5, 0.25, 0.25}, 1);
  EXPECT_EQ(a.train.size(), 50u);
  EXPECT_EQ(a.val.size(), 25u);
  EXPECT_EQ(a.test.size(), 25u);
  const Split b = make_split(4, {0.5, 0.25, 0.25}, 1);
  EXPECT_EQ(b.train.size(), 2u);
  EXPECT_EQ(b.val.size(), 1u);
  EXPECT_EQ(b.test.size(), 1u);
}

TEST(MakeSplit, PartitionAndDeterminism) {
  for (std::size_t n : {7u, 33u, 1000u}) {
    const Split s = make_split(n, {0.6, 0.3, 0.1}, 5);
    std::set<NodeId> all;
    for (const auto* part : {&s.train, &s.val, &s.test}) all.insert(part->begin(), part->end());
    EXPECT_EQ(all.size(), n);
    EXPECT_EQ(s.train.size() + s.val.size() + s.test.size(), n);
    EXPECT_LE(std::abs(static_cast<double>(s.train.size()) - 0.6 * n), 1.0);
    EXPECT_LE(std::abs(static_cast<double>(s.val.size()) - 0.3 * n), 1.0);
    const Split t = make_split(n, {0.6, 0.3, 0.1}, 5);
    EXPECT_EQ(s.train, t.train);
    EXPECT_EQ(s.test, t.test);
  }
  EXPECT_NE(make_split(100, {0.5, 0.25, 0.25}, 1).train, make_split(100, {0.5, 0.25, 0.25}, 2).train);
}

TEST(MakeSplit, Errors) {
  EXPECT_EQ(code_of([] { make_split(2, {0.5, 0.25, 0.25}, 0); }), ErrorCode::kTooFewNodes);
  EXPECT_EQ(code_of([] { make_split(10, {0.5, 0.5, 0.5}, 0); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] { make_split(10, {1.0, 0.0, 0.0}, 0); }), ErrorCode::kInvalidArgument);
}

TEST(CentroidClassify, SeparatedClasses) {
  const std::size_t n = 60;
  Matrix x(n, 3);
  std::vector<ClassId> y(n);
  for (std::size_t u = 0; u < n; ++u) {
    y[u] = static_cast<ClassId>(u % 3);
    x(u, y[u]) = 1.0;
  }
  EXPECT_EQ(centroid_classify(x, y, 3, make_split(n, {0.5, 0.25, 0.25}, 3)), 1.0);
}

TEST(CentroidClassify, ChanceLevelForShuffledLabels) {
  const std::size_t n = 6000;
  Rng rng = make_rng(1, 0);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_int_distribution<ClassId> pick(0, 2);
  Matrix x(n, 4);
  for (double& v : x.values()) v = normal(rng);
  std::vector<ClassId> y(n);
  for (auto& v : y) v = pick(rng);
  const double acc = centroid_classify(x, y, 3, make_split(n, {0.5, 0.25, 0.25}, 2));
  EXPECT_NEAR(acc, 1.0 / 3.0, 0.05);
}

TEST(CentroidClassify, HandComputedAssignments) {
  // Train centroids at 0 and 2; the midpoint tie goes to class 0.
  const Matrix x = rows_to_matrix({{0.0}, {2.0}, {0.9}, {1.1}, {1.0}});
  const std::vector<ClassId> y{0, 1, 0, 1, 0};
  Split s;
  s.train = {0, 1};
  s.test = {2, 3, 4};
  EXPECT_EQ(centroid_classify(x, y, 2, s), 1.0);
  const std::vector<ClassId> flipped{0, 1, 1, 0, 1};
  EXPECT_EQ(centroid_classify(x, flipped, 2, s), 0.0);
  s.val = {3};
  EXPECT_EQ(centroid_classify(x, y, 2, s, ScorePart::kValidation), 1.0);
}

TEST(CentroidClassify, MissingClass) {
  const Matrix x = rows_to_matrix({{0.0}, {2.0}, {1.0}});
  Split s;
  s.train = {0};
  s.test = {2};
  EXPECT_EQ(code_of([&] { centroid_classify(x, std::vector<ClassId>{0, 1, 1}, 2, s); }),
            ErrorCode::kMissingClass);
}

TEST(Sweep, SinglePointYieldsOneRecordPerSeed) {
  const SweepGrid grid{{0.5}, {1.0}, {0.2}};
  const std::vector<std::uint64_t> seeds{4, 9, 11};
  const auto records = run_sweep(grid, sweep_template(), seeds);
  ASSERT_EQ(records.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(records[i].seed, seeds[i]);
    EXPECT_EQ(records[i].point_index, 0u);
    EXPECT_GE(records[i].acc_aware, 0.0);
    EXPECT_LE(records[i].acc_aware, 1.0);
    EXPECT_GE(records[i].acc_agnostic, 0.0);
    EXPECT_LE(records[i].acc_agnostic, 1.0);
    EXPECT_TRUE(std::isfinite(records[i].J_emp_aware));
    EXPECT_TRUE(records[i].notes.empty());
  }
}

TEST(Sweep, OrderedAndDeterministic) {
  const SweepGrid grid{{0.2, 0.9}, {0.5, 1.0}, {-0.4, 0.4}};
  const std::vector<std::uint64_t> seeds{0, 1};
  Csbm3hParams t = sweep_template();
  t.num_nodes = 300;
  const auto a = run_sweep(grid, t, seeds);
  const auto b = run_sweep(grid, t, seeds);
  ASSERT_EQ(a.size(), 16u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].point_index, i / 2);
    EXPECT_EQ(a[i].seed, seeds[i % 2]);
    EXPECT_EQ(a[i].h_L_target, grid.h_L[i / 8]);
    EXPECT_EQ(a[i].h_F_target, grid.h_F[(i / 2) % 2]);
    EXPECT_EQ(a[i].acc_aware, b[i].acc_aware);
    EXPECT_EQ(a[i].h_F_measured, b[i].h_F_measured);
    EXPECT_EQ(a[i].J_emp_agnostic, b[i].J_emp_agnostic);
  }
  // A record does not depend on which other points ran alongside it.
  const SweepRecord lone = run_sweep_point(0.9, 1.0, 0.4, 7, 1, t, SweepOptions{});
  EXPECT_EQ(lone.acc_aware, a[15].acc_aware);
  EXPECT_EQ(lone.h_S_measured, a[15].h_S_measured);
}

TEST(Sweep, DegenerateRecordsAreFlaggedNotFatal) {
  // Two nodes: most seeds draw no edge, which must surface as a note.
  Csbm3hParams t;
  t.num_nodes = 4;
  t.degree_max = 1;
  t.num_classes = 2;
  set_one_hot_means(t, 2, 1.0, 1.0);
  const std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4, 5};
  const auto records = run_sweep({{1.0}, {1.0}, {0.0}}, t, seeds);
  ASSERT_EQ(records.size(), seeds.size());
  bool flagged = false;
  for (const SweepRecord& r : records) {
    if (!r.notes.empty()) {
      flagged = true;
      EXPECT_TRUE(std::isnan(r.acc_aware) || std::isnan(r.h_S_measured) ||
                  std::isnan(r.J_emp_aware) || std::isnan(r.h_L_measured));
    }
  }
  EXPECT_TRUE(flagged);
}

std::vector<double> mean_aware_accuracy(const SweepGrid& grid, int seeds) {
  std::vector<std::uint64_t> s(static_cast<std::size_t>(seeds));
  for (int i = 0; i < seeds; ++i) s[static_cast<std::size_t>(i)] = static_cast<std::uint64_t>(i);
  const auto records = run_sweep(grid, sweep_template(), s);
  std::vector<double> mean(grid.num_points(), 0.0);
  for (const SweepRecord& r : records) mean[r.point_index] += r.acc_aware / seeds;
  return mean;
}

TEST(Sweep, AccuracyMinimumNearChanceHomophily) {
  SweepGrid grid{grid_axis(0.0, 1.0, 0.1), {1.0}, {0.0}};
  const auto acc = mean_aware_accuracy(grid, 10);
  const auto it = std::min_element(acc.begin(), acc.end());
  const double argmin = grid.h_L[static_cast<std::size_t>(it - acc.begin())];
  EXPECT_GE(argmin, 0.2 - 1e-12);
  EXPECT_LE(argmin, 0.5 + 1e-12);
  EXPECT_LT(acc[3], acc[0]);
  EXPECT_LT(acc[3], acc[10]);
}

TEST(Sweep, StructuralHomophilyHelpsAwareAccuracy) {
  SweepGrid grid{{0.8}, grid_axis(0.0, 1.0, 0.25), {0.0}};
  const auto acc = mean_aware_accuracy(grid, 10);
  for (std::size_t i = 1; i < acc.size(); ++i) {
    EXPECT_GE(acc[i], acc[i - 1] - 0.02) << "h_S " << grid.h_S[i];
  }
}

}  // namespace
}  // namespace trihom
