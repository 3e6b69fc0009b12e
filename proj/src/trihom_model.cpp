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

#include "trihom/trihom_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "trihom/error.hpp"
#include "trihom/kernels.hpp"
#include "trihom/random.hpp"

namespace trihom {

double label_signal(double h_L, std::size_t C) {
  const double c = static_cast<double>(C);
  return (h_L * c - 1.0) / (c - 1.0);
}

double neighbor_second_moment(double h_L, double h_S, std::size_t C) {
  const double c = static_cast<double>(C);
  const double off = (1.0 - h_L) / (c - 1.0);
  const double p0 = label_signal(h_L, C);
  return c * off * off + c * (1.0 - h_S) * (1.0 - h_S) / (c - 1.0) + p0 * p0;
}

double j_h_agnostic(const TriHomPoint& p) {
  const double a = p.h_F / p.rho;
  const double p0 = label_signal(p.h_L, p.C);
  const double q = neighbor_second_moment(p.h_L, p.h_S, p.C);
  const double d = 1.0 - a * p0;
  return (1.0 - a * a * q) / (d * d);
}

double j_h_aware(const TriHomPoint& p) {
  const double p0 = label_signal(p.h_L, p.C);
  const double q = neighbor_second_moment(p.h_L, p.h_S, p.C);
  return p0 * p0 / q * j_h_agnostic(p);
}

double j_h_aware_approx(double h_L, double h_S, std::size_t C) {
  const double p0 = label_signal(h_L, C);
  return p0 * p0 / neighbor_second_moment(h_L, h_S, C);
}

double j_n(const GaussianSpec& spec) {
  const Matrix& mu = spec.means;
  require(mu.rows() == spec.vars.rows() && mu.cols() == spec.vars.cols(),
          ErrorCode::kInvalidArgument, "means and vars must share a shape");
  const std::size_t c = mu.rows();
  require(c >= 2, ErrorCode::kInvalidArgument, "J_N needs C >= 2");
  double total_var = 0.0;
  for (double v : spec.vars.values()) total_var += v;
  require(total_var > 0.0, ErrorCode::kDegenerate, "total variance is zero");
  double sep = 0.0;
  for (std::size_t a = 0; a < c; ++a) {
    for (std::size_t b = 0; b < c; ++b) {
      if (a != b) sep += squared_distance(mu.row(a), mu.row(b));
    }
  }
  const double cd = static_cast<double>(c);
  return (sep / (2.0 * cd * (cd - 1.0))) / (total_var / cd);
}

double j_total(double jn, double jh) {
  const double d = 1.0 + jn * jh;
  require(d != 0.0, ErrorCode::kDegenerate, "1 + J_N J_h is zero");
  return 1.0 / d;
}

double critical_feature_homophily(double h_L, double h_S, std::size_t C,
                                  double rho) {
  return rho * label_signal(h_L, C) / neighbor_second_moment(h_L, h_S, C);
}

CriticalBounds critical_label_bounds(double h_S, std::size_t C, double rho) {
  const double c = static_cast<double>(C);
  const double s = c * (c - 1.0) * (1.0 - h_S) * (1.0 - h_S);
  const double denom = 2.0 * c * (c + 1.0);
  CriticalBounds out;
  {
    const double b = 4.0 * c + c * (c - 1.0) * rho;
    const double disc =
        b * b - 4.0 * c * (c + 1.0) * (c + 1.0 + (c - 1.0) * rho + s);
    if (disc >= 0.0) out.plus = (b - std::sqrt(disc)) / denom;
  }
  {
    const double b = 4.0 * c - c * (c - 1.0) * rho;
    const double disc =
        b * b - 4.0 * c * (c + 1.0) * (c + 1.0 - (c - 1.0) * rho + s);
    if (disc >= 0.0) out.minus = (b + std::sqrt(disc)) / denom;
  }
  return out;
}

Aggregated aggregate_representations(const Dataset& dataset) {
  const Graph& g = dataset.graph();
  Aggregated out;
  kernels::adjacency_multiply(g, dataset.features(), out.H);
  out.fallback.assign(g.num_nodes(), 0);
  for (std::size_t u = 0; u < g.num_nodes(); ++u) {
    const std::size_t d = g.degree(static_cast<NodeId>(u));
    auto row = out.H.row(u);
    if (d == 0) {
      const auto x = dataset.features().row(u);
      std::copy(x.begin(), x.end(), row.begin());
      out.fallback[u] = 1;
      continue;
    }
    const double inv = 1.0 / static_cast<double>(d);
    for (double& v : row) v *= inv;
  }
  return out;
}

namespace {

EmpiricalJ finish(EmpiricalJ out, double intra_sum, double inter_sum,
                  double scale) {
  require(out.intra_pairs > 0 && out.inter_pairs > 0, ErrorCode::kDegenerate,
          "need at least one intra-class and one inter-class pair");
  out.intra_mean = intra_sum / static_cast<double>(out.intra_pairs);
  out.inter_mean = inter_sum / static_cast<double>(out.inter_pairs);
  require(out.inter_mean > 1e-12 * scale, ErrorCode::kDegenerate,
          "mean inter-class distance is zero");
  out.value = out.intra_mean / out.inter_mean;
  return out;
}

}  // namespace

EmpiricalJ empirical_J_of(const Matrix& reps, std::span<const ClassId> labels,
                          std::size_t num_classes,
                          const PairSampling& sampling) {
  require(reps.rows() == labels.size(), ErrorCode::kInvalidArgument,
          "representation rows must match labels");
  const std::size_t n = reps.rows();
  const std::size_t m = reps.cols();
  const std::size_t c = num_classes;

  double scale = 0.0;
  for (double v : reps.values()) scale += v * v;
  scale = n > 0 ? scale / static_cast<double>(n) : 0.0;

  EmpiricalJ out;
  if (sampling.enabled) {
    require(sampling.max_pairs > 0, ErrorCode::kInvalidArgument,
            "max_pairs must be positive");
    require(n >= 2, ErrorCode::kDegenerate, "need two nodes");
    Rng rng = make_rng(sampling.seed, 0x656a);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    double intra_sum = 0.0, intra_sq = 0.0, inter_sum = 0.0, inter_sq = 0.0;
    const std::size_t max_attempts = 64 * sampling.max_pairs;
    for (std::size_t attempt = 0;
         attempt < max_attempts && (out.intra_pairs < sampling.max_pairs ||
                                    out.inter_pairs < sampling.max_pairs);
         ++attempt) {
      const std::size_t u = pick(rng);
      const std::size_t v = pick(rng);
      if (u == v) continue;
      const double d = squared_distance(reps.row(u), reps.row(v));
      if (labels[u] == labels[v]) {
        if (out.intra_pairs == sampling.max_pairs) continue;
        intra_sum += d;
        intra_sq += d * d;
        ++out.intra_pairs;
      } else {
        if (out.inter_pairs == sampling.max_pairs) continue;
        inter_sum += d;
        inter_sq += d * d;
        ++out.inter_pairs;
      }
    }
    out.sampled = true;
    auto var = [](double s, double sq, std::size_t k) {
      if (k < 2) return 0.0;
      const double kd = static_cast<double>(k);
      return std::max(0.0, (sq - s * s / kd) / (kd - 1.0));
    };
    out.intra_var = var(intra_sum, intra_sq, out.intra_pairs);
    out.inter_var = var(inter_sum, inter_sq, out.inter_pairs);
    return finish(out, intra_sum, inter_sum, scale);
  }

  // Exact: with SS_c the within-class scatter and xbar_c the class mean,
  //   same-class pair sum   = sum_c n_c SS_c
  //   pair sum across c, c' = n_c' SS_c + n_c SS_c' + n_c n_c' |xbar_c - xbar_c'|^2.
  std::vector<double> count(c, 0.0);
  Matrix mean(c, m);
  for (std::size_t u = 0; u < n; ++u) {
    const ClassId y = labels[u];
    require(y < c, ErrorCode::kInvalidArgument, "label out of range");
    count[y] += 1.0;
    auto row = mean.row(y);
    const auto x = reps.row(u);
    for (std::size_t j = 0; j < m; ++j) row[j] += x[j];
  }
  for (std::size_t y = 0; y < c; ++y) {
    if (count[y] == 0.0) continue;
    for (double& v : mean.row(y)) v /= count[y];
  }
  std::vector<double> scatter(c, 0.0);
  for (std::size_t u = 0; u < n; ++u) {
    scatter[labels[u]] += squared_distance(reps.row(u), mean.row(labels[u]));
  }
  double intra_sum = 0.0;
  double inter_sum = 0.0;
  double intra_pairs = 0.0;
  double inter_pairs = 0.0;
  for (std::size_t a = 0; a < c; ++a) {
    intra_sum += count[a] * scatter[a];
    intra_pairs += count[a] * (count[a] - 1.0) / 2.0;
    for (std::size_t b = a + 1; b < c; ++b) {
      inter_sum += count[b] * scatter[a] + count[a] * scatter[b] +
                   count[a] * count[b] *
                       squared_distance(mean.row(a), mean.row(b));
      inter_pairs += count[a] * count[b];
    }
  }
  out.intra_pairs = static_cast<std::size_t>(intra_pairs);
  out.inter_pairs = static_cast<std::size_t>(inter_pairs);
  return finish(out, intra_sum, inter_sum, scale);
}

EmpiricalJ empirical_J(const Dataset& dataset, JMode mode,
                       const PairSampling& sampling) {
  if (mode == JMode::kAgnostic) {
    return empirical_J_of(dataset.features(), dataset.labels(),
                          dataset.num_classes(), sampling);
  }
  const Aggregated agg = aggregate_representations(dataset);
  return empirical_J_of(agg.H, dataset.labels(), dataset.num_classes(),
                        sampling);
}

std::vector<double> grid_axis(double lo, double hi, double step) {
  require(step > 0.0, ErrorCode::kInvalidArgument, "grid step must be > 0");
  require(lo <= hi, ErrorCode::kInvalidArgument, "grid needs lo <= hi");
  const auto count =
      static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = lo + static_cast<double>(i) * step;
  }
  return out;
}

double SignReport::exact_violation_rate() const {
  std::size_t checked = 0;
  for (const SuiteCount& s : exact_suites) checked += s.checked;
  return checked == 0 ? 0.0
                      : static_cast<double>(exact_violations.size()) /
                            static_cast<double>(checked);
}

namespace {

enum class Claim { kNegative, kPositive, kNonNegative, kZero };

const char* claim_text(Claim c) {
  switch (c) {
    case Claim::kNegative: return "<0";
    case Claim::kPositive: return ">0";
    case Claim::kNonNegative: return ">=0";
    case Claim::kZero: return "=0";
  }
  return "?";
}

bool holds(Claim claim, double d, double tol) {
  switch (claim) {
    case Claim::kNegative: return d < 0.0;
    case Claim::kPositive: return d > 0.0;
    case Claim::kNonNegative: return d >= -tol;
    case Claim::kZero: return std::abs(d) <= tol;
  }
  return false;
}

template <typename F>
double central(F&& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

// Outcome of one derivative check at one grid point.
struct Check {
  std::size_t suite = 0;
  bool excluded = false;
  bool violated = false;
  SignViolation detail;
};

// Accumulates per-point checks (already in grid order) into a report.
void merge(const std::vector<std::vector<Check>>& per_point,
           std::vector<SuiteCount>& suites,
           std::vector<SignViolation>& violations) {
  for (const auto& checks : per_point) {
    for (const Check& ck : checks) {
      SuiteCount& s = suites[ck.suite];
      if (ck.excluded) {
        ++s.excluded;
        continue;
      }
      ++s.checked;
      if (ck.violated) {
        ++s.violations;
        violations.push_back(ck.detail);
      }
    }
  }
}

Check make_check(std::size_t suite, const std::string& name, Claim claim,
                 double d, double tol, double h_L, double h_S, double h_F) {
  Check ck;
  ck.suite = suite;
  ck.violated = !holds(claim, d, tol);
  ck.detail = {name, h_L, h_S, h_F, claim_text(claim), d};
  return ck;
}

Check excluded_check(std::size_t suite) {
  Check ck;
  ck.suite = suite;
  ck.excluded = true;
  return ck;
}

}  // namespace

SignReport verify_theorem_signs(const VerifyOptions& options) {
  require(options.C >= 2, ErrorCode::kInvalidArgument, "need C >= 2");
  require(options.rho > 0.0, ErrorCode::kInvalidArgument, "rho must be > 0");
  require(options.approx_grid_step > 0.0 && options.exact_grid_step > 0.0 &&
              options.fd_step > 0.0 && options.exclusion >= 0.0,
          ErrorCode::kInvalidArgument, "steps must be > 0");

  const std::size_t C = options.C;
  const double rho = options.rho;
  const double h = options.fd_step;
  const double tol = options.nonneg_tol;
  const double sgn = options.negate_derivative ? -1.0 : 1.0;
  const double inv_c = 1.0 / static_cast<double>(C);

  SignReport report;
  report.options = options;

  // (a) Large-rho approximation over (h_L, h_S).
  {
    const auto axis = grid_axis(0.0, 1.0, options.approx_grid_step);
    const std::size_t k = axis.size();
    report.approx_suites = {{"aware_approx:d/dh_L"}, {"aware_approx:d/dh_S"}};
    std::vector<std::vector<Check>> per_point(k * k);
    const auto total = static_cast<std::int64_t>(k * k);
#pragma omp parallel for schedule(static)
    for (std::int64_t idx = 0; idx < total; ++idx) {
      const double hl = axis[static_cast<std::size_t>(idx) / k];
      const double hs = axis[static_cast<std::size_t>(idx) % k];
      auto& out = per_point[static_cast<std::size_t>(idx)];
      const double d_l =
          sgn * central([&](double x) { return j_h_aware_approx(x, hs, C); }, hl, h);
      const double d_s =
          sgn * central([&](double x) { return j_h_aware_approx(hl, x, C); }, hs, h);
      Claim c21 = Claim::kNonNegative;
      if (std::abs(hl - inv_c) < 1e-12) {
        c21 = Claim::kZero;
      } else if (hl < inv_c) {
        c21 = Claim::kNegative;
      }
      out.push_back(make_check(0, "aware_approx:d/dh_L", c21, d_l,
                               c21 == Claim::kZero ? 1e-6 : tol, hl, hs, 0.0));
      out.push_back(make_check(1, "aware_approx:d/dh_S", Claim::kNonNegative, d_s, tol, hl, hs, 0.0));
    }
    report.approx_points = k * k;
    merge(per_point, report.approx_suites, report.approx_violations);
  }

  // Critical-value cross-checks over the h_S axis.
  const auto hs_axis = grid_axis(0.0, 1.0, options.exact_grid_step);
  std::vector<CriticalBounds> bounds(hs_axis.size());
  for (std::size_t i = 0; i < hs_axis.size(); ++i) {
    bounds[i] = critical_label_bounds(hs_axis[i], C, rho);
    CriticalCheck cc;
    cc.h_S = hs_axis[i];
    cc.h_L_minus = bounds[i].minus;
    cc.h_L_plus = bounds[i].plus;
    if (cc.h_L_minus) {
      cc.error_minus =
          std::abs(critical_feature_homophily(*cc.h_L_minus, cc.h_S, C, rho) + 1.0);
      report.max_critical_error = std::max(report.max_critical_error, cc.error_minus);
    }
    if (cc.h_L_plus) {
      cc.error_plus =
          std::abs(critical_feature_homophily(*cc.h_L_plus, cc.h_S, C, rho) - 1.0);
      report.max_critical_error = std::max(report.max_critical_error, cc.error_plus);
    }
    cc.ordered = cc.h_L_minus && cc.h_L_plus && *cc.h_L_minus > 0.0 &&
                 *cc.h_L_minus < *cc.h_L_plus && *cc.h_L_plus < 1.0;
    report.critical_checks.push_back(cc);
  }

  // (b) Exact forms over (h_L, h_S, h_F), h_F on the open interval.
  {
    const double step = options.exact_grid_step;
    const auto hl_axis = grid_axis(0.0, 1.0, step);
    const auto hf_axis = grid_axis(-1.0 + step, 1.0 - step, step);
    const std::size_t nl = hl_axis.size();
    const std::size_t ns = hs_axis.size();
    const std::size_t nf = hf_axis.size();
    const double ex = options.exclusion;
    report.exact_suites = {{"aware:d/dh_S"}, {"aware:d/dh_F"}, {"agnostic:d/dh_L"},
                           {"agnostic:d/dh_S"}, {"agnostic:d/dh_F"}};
    std::vector<std::vector<Check>> per_point(nl * ns * nf);
    const auto total = static_cast<std::int64_t>(nl * ns * nf);
#pragma omp parallel for schedule(static)
    for (std::int64_t idx = 0; idx < total; ++idx) {
      const auto i = static_cast<std::size_t>(idx);
      const double hl = hl_axis[i / (ns * nf)];
      const std::size_t is = (i / nf) % ns;
      const double hs = hs_axis[is];
      const double hf = hf_axis[i % nf];
      auto& out = per_point[i];
      const TriHomPoint p{hl, hs, hf, C, rho};
      auto with = [&](auto mutate, auto fn) {
        return [=](double x) {
          TriHomPoint q = p;
          mutate(q, x);
          return fn(q);
        };
      };
      auto set_l = [](TriHomPoint& q, double x) { q.h_L = x; };
      auto set_s = [](TriHomPoint& q, double x) { q.h_S = x; };
      auto set_f = [](TriHomPoint& q, double x) { q.h_F = x; };
      auto aware = [](const TriHomPoint& q) { return j_h_aware(q); };
      auto agnostic = [](const TriHomPoint& q) { return j_h_agnostic(q); };

      const double dg_s = sgn * central(with(set_s, aware), hs, h);
      const double dg_f = sgn * central(with(set_f, aware), hf, h);
      const double dn_l = sgn * central(with(set_l, agnostic), hl, h);
      const double dn_s = sgn * central(with(set_s, agnostic), hs, h);
      const double dn_f = sgn * central(with(set_f, agnostic), hf, h);

      out.push_back(make_check(0, "aware:d/dh_S", Claim::kNonNegative, dg_s, tol, hl, hs, hf));
      out.push_back(make_check(3, "agnostic:d/dh_S", Claim::kNonNegative, dn_s, tol, hl, hs, hf));

      if (std::abs(hf) < ex) {
        out.push_back(excluded_check(2));
      } else {
        out.push_back(make_check(2, "agnostic:d/dh_L", hf < 0.0 ? Claim::kNegative
                                                    : Claim::kNonNegative,
                                 dn_l, tol, hl, hs, hf));
      }

      // Feature-direction claims split h_L at h_L^- and h_L^+, and the middle
      // band at hat h_F.
      const CriticalBounds& b = bounds[is];
      const double hat = critical_feature_homophily(hl, hs, C, rho);
      bool skip = !b.minus || !b.plus || std::abs(hl - *b.minus) < ex ||
                  std::abs(hl - *b.plus) < ex;
      Claim claim = Claim::kPositive;
      if (!skip) {
        if (hl < *b.minus) {
          claim = Claim::kNegative;
        } else if (hl > *b.plus) {
          claim = Claim::kPositive;
        } else if (std::abs(hf - hat) < ex) {
          skip = true;
        } else {
          claim = hf > hat ? Claim::kNegative : Claim::kPositive;
        }
      }
      if (skip || std::abs(hl - inv_c) < ex) {
        out.push_back(excluded_check(1));
      } else {
        out.push_back(make_check(1, "aware:d/dh_F", claim, dg_f, tol, hl, hs, hf));
      }
      if (skip) {
        out.push_back(excluded_check(4));
      } else {
        out.push_back(make_check(4, "agnostic:d/dh_F", claim, dn_f, tol, hl, hs, hf));
      }
    }
    report.exact_points = nl * ns * nf;
    merge(per_point, report.exact_suites, report.exact_violations);
  }
  return report;
}

}  // namespace trihom
