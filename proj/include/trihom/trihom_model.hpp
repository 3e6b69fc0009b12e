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

// Closed-form distinguishability factors of the three-homophily model, their
// critical points, the empirical intra/inter distance ratio, and a
// finite-difference checker for the sign claims made about them.

#ifndef TRIHOM_TRIHOM_MODEL_HPP_
#define TRIHOM_TRIHOM_MODEL_HPP_

#include <optional>
#include <string>
#include <vector>

#include "trihom/graph.hpp"
#include "trihom/matrix.hpp"
#include "trihom/metrics_structural.hpp"

namespace trihom {

struct TriHomPoint {
  double h_L = 0.5;
  double h_S = 1.0;
  double h_F = 0.0;
  std::size_t C = 3;
  double rho = 10.0;
};

/// p0 = (h_L C - 1)/(C - 1).
double label_signal(double h_L, std::size_t C);

/// q = C((1 - h_L)/(C - 1))^2 + C(1 - h_S)^2/(C - 1) + p0^2.
double neighbor_second_moment(double h_L, double h_S, std::size_t C);

/// [1 - a^2 q] / [1 - a p0]^2 with a = h_F / rho.
double j_h_agnostic(const TriHomPoint& p);

/// (p0^2 / q) * j_h_agnostic(p).
double j_h_aware(const TriHomPoint& p);

/// Large-rho limit p0^2 / q of j_h_aware.
double j_h_aware_approx(double h_L, double h_S, std::size_t C);

struct GaussianSpec {
  Matrix means;  // C x M
  Matrix vars;   // C x M
};

/// Mean squared class-mean separation over ordered class pairs divided by
/// |sigma^2| / C. Throws kDegenerate when the total variance is zero.
double j_n(const GaussianSpec& spec);

/// (1 + jn * jh)^-1. Throws kDegenerate when 1 + jn * jh == 0.
double j_total(double jn, double jh);

/// rho * p0 / q, unclipped.
double critical_feature_homophily(double h_L, double h_S, std::size_t C,
                                  double rho);

struct CriticalBounds {
  std::optional<double> minus;  // empty when its discriminant is negative
  std::optional<double> plus;
};

/// Closed-form roots of critical_feature_homophily = -1 and = +1 in h_L.
CriticalBounds critical_label_bounds(double h_S, std::size_t C, double rho);

struct Aggregated {
  Matrix H;
  std::vector<std::uint8_t> fallback;  // 1 where H_u = X_u (isolated u)
};

/// Neighbor mean of feature rows; isolated nodes keep their own row.
Aggregated aggregate_representations(const Dataset& dataset);

enum class JMode { kAware, kAgnostic };

struct EmpiricalJ {
  double value = 0.0;
  double intra_mean = 0.0;
  double inter_mean = 0.0;
  std::size_t intra_pairs = 0;
  std::size_t inter_pairs = 0;
  bool sampled = false;
  double intra_var = 0.0;  // sample variances, filled only when sampled
  double inter_var = 0.0;
};

/// Mean squared distance over unordered same-class pairs divided by the mean
/// over different-class pairs, on H (aware) or X (agnostic). Exact via
/// per-class sums unless sampling is enabled. Throws kDegenerate when either
/// pair set is empty or the inter-class mean vanishes.
EmpiricalJ empirical_J(const Dataset& dataset, JMode mode,
                       const PairSampling& sampling = {});

/// Same ratio for an explicit representation block.
EmpiricalJ empirical_J_of(const Matrix& reps, std::span<const ClassId> labels,
                          std::size_t num_classes,
                          const PairSampling& sampling = {});

struct VerifyOptions {
  std::size_t C = 3;
  double rho = 50.0;
  double approx_grid_step = 0.01;
  double exact_grid_step = 0.05;
  double fd_step = 1e-5;
  double exclusion = 0.02;
  double nonneg_tol = 1e-9;
  bool negate_derivative = false;  // self-test hook: flips every derivative
};

struct SignViolation {
  std::string suite;
  double h_L = 0.0;
  double h_S = 0.0;
  double h_F = 0.0;
  std::string claim;  // "<0", ">0", ">=0" or "=0"
  double derivative = 0.0;
};

struct SuiteCount {
  std::string suite;
  std::size_t checked = 0;
  std::size_t excluded = 0;
  std::size_t violations = 0;
};

struct CriticalCheck {
  double h_S = 0.0;
  std::optional<double> h_L_minus;
  std::optional<double> h_L_plus;
  double error_minus = 0.0;  // |hat h_F(h_L^-) + 1|
  double error_plus = 0.0;   // |hat h_F(h_L^+) - 1|
  bool ordered = false;      // 0 < h_L^- < h_L^+ < 1
};

struct SignReport {
  VerifyOptions options;
  std::size_t approx_points = 0;
  std::size_t exact_points = 0;
  std::vector<SuiteCount> approx_suites;
  std::vector<SuiteCount> exact_suites;
  std::vector<SignViolation> approx_violations;
  std::vector<SignViolation> exact_violations;
  std::vector<CriticalCheck> critical_checks;
  double max_critical_error = 0.0;

  std::size_t approx_violation_count() const { return approx_violations.size(); }
  /// Violations over checked (non-excluded) derivative evaluations.
  double exact_violation_rate() const;
};

/// (a) Large-rho approximation over (h_L, h_S): sign of d/dh_L against
/// sign(h_L - 1/C) and d/dh_S >= -tol. (b) Exact forms over (h_L, h_S, h_F)
/// with exclusion bands around 1/C, h_L^-, h_L^+, hat h_F and h_F = 0.
/// Central differences throughout.
SignReport verify_theorem_signs(const VerifyOptions& options);

/// Evenly spaced values lo, lo + step, ... up to hi (inclusive within
/// step * 1e-9), computed as lo + i * step to avoid drift.
std::vector<double> grid_axis(double lo, double hi, double step);

}  // namespace trihom

#endif  // TRIHOM_TRIHOM_MODEL_HPP_
