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

#include <cmath>
#include <functional>

#include "oracle.hpp"
#include "test_util.hpp"
#include "trihom/csbm3h.hpp"
#include "trihom/error.hpp"
#include "trihom/metrics_feature.hpp"

namespace trihom {
namespace {

using testing::make_dataset;
using testing::rows_to_matrix;

Dataset two_cliques(Matrix x) {
  return make_dataset(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}},
                      {0, 0, 0, 1, 1, 1}, 2, std::move(x));
}

GeneratedGraph generated(double h_f, double variance, std::size_t n, std::uint64_t seed) {
  Csbm3hParams p;
  p.h_label = 0.6;
  p.h_struct = 1.0;
  p.h_feat = h_f;
  p.num_nodes = n;
  p.seed = seed;
  set_one_hot_means(p, 3, 1.0, variance);
  return generate(p);
}

TEST(FeatureHomophily, ConstantColumnIsDegenerate) {
  Matrix x = rows_to_matrix({{1, 0.3}, {1, 2.0}, {1, -1.0}, {1, 0.5}, {1, 0.1}, {1, 4.0}});
  const FeatureHomophilyEstimate est = estimate_feature_homophily(two_cliques(x), 2.0);
  ASSERT_EQ(est.per_feature.size(), 2u);
  EXPECT_TRUE(est.per_feature[0].degenerate);
  EXPECT_EQ(est.per_feature[0].clipped, 0.0);
  EXPECT_EQ(est.degenerate_features, 1u);
  try {
    estimate_feature_homophily(two_cliques(Matrix(6, 2, 3.0)), 2.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerate);
  }
}

TEST(FeatureHomophily, RecoversGeneratorTargetWithoutNoise) {
  for (int i = -4; i <= 4; ++i) {
    const double h_f = 0.2 * i;
    const GeneratedGraph g = generated(h_f, 0.0, 600, static_cast<std::uint64_t>(i + 10));
    const FeatureHomophilyEstimate est = estimate_feature_homophily(g.dataset, g.rho_used);
    EXPECT_NEAR(est.h_F, h_f, 1e-6) << "target " << h_f;
    EXPECT_EQ(est.rho_used, g.rho_used);
  }
}

TEST(FeatureHomophily, NearZeroForIndependentFeatures) {
  const GeneratedGraph g = generated(0.0, 0.01, 2000, 3);
  EXPECT_NEAR(estimate_feature_homophily(g.dataset, g.rho_used).h_F, 0.0, 0.05);
}

TEST(FeatureHomophily, ScaleInvariant) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Dataset ds = testing::random_dataset(seed);
    Matrix scaled = ds.features();
    for (double& v : scaled.values()) v *= -3.7;
    const Dataset sd(ds.graph(), {ds.labels().begin(), ds.labels().end()},
                     ds.num_classes(), scaled);
    const auto a = estimate_feature_homophily(ds, 3.0);
    const auto b = estimate_feature_homophily(sd, 3.0);
    for (std::size_t j = 0; j < a.per_feature.size(); ++j) {
      EXPECT_NEAR(a.per_feature[j].raw, b.per_feature[j].raw,
                  1e-10 * std::max(1.0, std::abs(a.per_feature[j].raw)));
    }
  }
}

TEST(FeatureHomophily, ClosedFormMatchesGridScan) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Dataset ds = testing::random_dataset(seed);
    const oracle::Dense g(ds);
    const double rho = 1.0 + static_cast<double>(seed % 5);
    const auto ax = oracle::adj_times(g, g.x);
    const FeatureHomophilyEstimate est = estimate_feature_homophily(ds, rho);
    for (std::size_t j = 0; j < g.M; ++j) {
      double sxx = 0, sxa = 0, saa = 0;
      for (std::size_t u = 0; u < g.n; ++u) {
        for (std::size_t v = u + 1; v < g.n; ++v) {
          if (g.y[u] != g.y[v]) continue;
          const double dx = g.x[u][j] - g.x[v][j];
          const double da = ax[u][j] - ax[v][j];
          sxx += dx * dx;
          sxa += dx * da;
          saa += da * da;
        }
      }
      if (saa < 1e-12) continue;
      auto objective = [&](double h) {
        const double w = h / rho;
        return sxx - 2.0 * w * sxa + w * w * saa;
      };
      double best_h = -1.0;
      double best_f = objective(-1.0);
      for (int k = -10000; k <= 10000; ++k) {
        const double h = 1e-4 * k;
        const double f = objective(h);
        if (f < best_f) {
          best_f = f;
          best_h = h;
        }
      }
      EXPECT_NEAR(est.per_feature[j].clipped, best_h, 2e-4) << "seed " << seed;
      EXPECT_NEAR(est.per_feature[j].residual, objective(est.per_feature[j].clipped),
                  1e-8 * std::max(1.0, sxx));
    }
  }
}

TEST(GeneralizedEdge, Examples) {
  EXPECT_DOUBLE_EQ(generalized_edge_homophily(two_cliques(Matrix(6, 3, 2.0))), 1.0);
  const Dataset anti = make_dataset(2, {{0, 1}}, {0, 1}, 2, rows_to_matrix({{1, 2}, {-1, -2}}));
  EXPECT_DOUBLE_EQ(generalized_edge_homophily(anti), -1.0);
  EXPECT_THROW(generalized_edge_homophily(make_dataset(2, {}, {0, 1}, 2)), Error);
}

TEST(LocalSimilarity, Examples) {
  const Dataset same = two_cliques(Matrix(6, 2, 0.5));
  EXPECT_DOUBLE_EQ(local_similarity(same, SimilarityMode::kCosine), 1.0);
  EXPECT_EQ(local_similarity(same, SimilarityMode::kEuclidean), 0.0);
}

TEST(AttributeHomophilyTest, Examples) {
  const Dataset k3 = make_dataset(3, testing::complete_edges(3), {0, 0, 1}, 2, Matrix(3, 1, 1.0));
  EXPECT_DOUBLE_EQ(attribute_homophily(k3).value, 1.0);
  const Dataset onehot = two_cliques(rows_to_matrix({{1, 0}, {1, 0}, {1, 0}, {0, 1}, {0, 1}, {0, 1}}));
  const AttributeHomophily a = attribute_homophily(onehot);
  EXPECT_DOUBLE_EQ(a.value, 1.0);
  EXPECT_EQ(a.valid_features, 2u);
  EXPECT_EQ(a.shift, (std::vector<double>{0.0, 0.0}));
}

TEST(AttributeHomophilyTest, ShiftsNegativeColumnsAndSkipsZeroColumns) {
  const Dataset ds = two_cliques(rows_to_matrix({{-1, 0}, {0, 0}, {1, 0}, {2, 0}, {-2, 0}, {0, 0}}));
  const AttributeHomophily a = attribute_homophily(ds);
  EXPECT_EQ(a.shift[0], 2.0);
  EXPECT_EQ(a.valid_features, 1u);
  EXPECT_TRUE(std::isnan(a.per_feature[1]));
  try {
    attribute_homophily(two_cliques(Matrix(6, 1, 0.0)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerate);
  }
}

TEST(ClassControlled, ZeroWhenFeaturesConstantWithinClass) {
  const Dataset ds = two_cliques(rows_to_matrix({{1, 5}, {1, 5}, {1, 5}, {-3, 2}, {-3, 2}, {-3, 2}}));
  EXPECT_EQ(class_controlled_feature_homophily(ds).value, 0.0);
}

TEST(ClassControlled, SampledAgreesWithExact) {
  const GeneratedGraph g = generated(0.5, 1.0, 800, 9);
  const ClassControlledResult exact = class_controlled_feature_homophily(g.dataset);
  EXPECT_FALSE(exact.sampled);
  EXPECT_EQ(exact.reference_size, 800u);
  const int reps = 20;
  std::vector<double> est;
  for (int r = 0; r < reps; ++r) {
    ClassControlledOptions opt;
    opt.exact_threshold = 100;
    opt.seed = static_cast<std::uint64_t>(r);
    const ClassControlledResult s = class_controlled_feature_homophily(g.dataset, opt);
    EXPECT_TRUE(s.sampled);
    EXPECT_EQ(s.reference_size, 500u);
    est.push_back(s.value);
  }
  double mean = 0.0;
  for (double v : est) mean += v;
  mean /= reps;
  double var = 0.0;
  for (double v : est) var += (v - mean) * (v - mean);
  const double sd = std::sqrt(var / (reps - 1));
  EXPECT_LE(std::abs(mean - exact.value), 3.0 * sd / std::sqrt(static_cast<double>(reps)) + 1e-12);
  for (double v : est) EXPECT_LE(std::abs(v - exact.value), 4.0 * sd + 1e-12);
}

TEST(FeatureMetrics, MatchBruteForceOnRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Dataset ds = testing::random_dataset(seed);
    const oracle::Dense g(ds);
    auto check = [&](const std::function<double()>& fn, oracle::Opt want, const char* name) {
      if (!want) {
        EXPECT_THROW(fn(), Error) << name << " seed " << seed;
      } else {
        EXPECT_NEAR(fn(), *want, 1e-10) << name << " seed " << seed;
      }
    };
    const double rho = 2.5;
    const oracle::FeatureOracle fo = oracle::feature_homophily(g, rho);
    check([&] { return estimate_feature_homophily(ds, rho).h_F; }, fo.mean, "h_F");
    if (fo.mean) {
      const auto est = estimate_feature_homophily(ds, rho);
      for (std::size_t j = 0; j < fo.per_feature.size(); ++j) {
        EXPECT_EQ(est.per_feature[j].degenerate, !fo.per_feature[j].has_value());
        if (fo.per_feature[j]) {
          EXPECT_NEAR(est.per_feature[j].clipped, *fo.per_feature[j], 1e-10);
        }
      }
    }
    check([&] { return generalized_edge_homophily(ds); }, oracle::generalized_edge(g), "h_GE");
    check([&] { return local_similarity(ds, SimilarityMode::kCosine); },
          oracle::local_similarity(g, true), "h_LS cos");
    check([&] { return local_similarity(ds, SimilarityMode::kEuclidean); },
          oracle::local_similarity(g, false), "h_LS euc");
    check([&] { return attribute_homophily(ds).value; }, oracle::attribute(g), "h_attr");
    check([&] { return class_controlled_feature_homophily(ds).value; },
          oracle::class_controlled(g), "h_CF");
  }
}

TEST(FeatureMetrics, Ranges) {
  for (std::uint64_t seed = 300; seed < 320; ++seed) {
    const Dataset ds = testing::random_dataset(seed);
    const double ge = generalized_edge_homophily(ds);
    const double ls = local_similarity(ds, SimilarityMode::kCosine);
    EXPECT_GE(ge, -1.0);
    EXPECT_LE(ge, 1.0);
    EXPECT_GE(ls, -1.0);
    EXPECT_LE(ls, 1.0);
    EXPECT_LE(local_similarity(ds, SimilarityMode::kEuclidean), 0.0);
    for (const FeatureEstimate& f : estimate_feature_homophily(ds, 4.0).per_feature) {
      EXPECT_GE(f.clipped, -1.0);
      EXPECT_LE(f.clipped, 1.0);
    }
  }
}

}  // namespace
}  // namespace trihom
