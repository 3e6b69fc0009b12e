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

// Brute-force O(N^2)-and-up reference implementations. They work on a dense
// copy of the dataset and follow each definition literally (explicit pair
// loops, explicit neighbor scans), sharing no code with the library.
// std::nullopt marks an undefined value.

#ifndef TRIHOM_TESTS_ORACLE_HPP_
#define TRIHOM_TESTS_ORACLE_HPP_

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <vector>

#include "trihom/graph.hpp"

namespace trihom::oracle {

using Opt = std::optional<double>;
using Vec = std::vector<double>;

struct Dense {
  std::size_t n = 0;
  std::size_t C = 0;
  std::size_t M = 0;
  std::vector<std::vector<char>> adj;
  std::vector<int> y;
  std::vector<Vec> x;

  explicit Dense(const Dataset& ds)
      : n(ds.num_nodes()), C(ds.num_classes()), M(ds.feature_dim()) {
    adj.assign(n, std::vector<char>(n, 0));
    for (std::size_t u = 0; u < n; ++u) {
      for (NodeId v : ds.graph().neighbors(static_cast<NodeId>(u))) adj[u][v] = 1;
      y.push_back(static_cast<int>(ds.label(static_cast<NodeId>(u))));
      x.emplace_back(ds.features().row(u).begin(), ds.features().row(u).end());
    }
  }

  int deg(std::size_t u) const {
    int d = 0;
    for (std::size_t v = 0; v < n; ++v) d += adj[u][v];
    return d;
  }

  // Class histogram of neighbors divided by degree; all-zero when isolated.
  Vec dist(std::size_t u) const {
    Vec r(C, 0.0);
    const int d = deg(u);
    if (d == 0) return r;
    for (std::size_t v = 0; v < n; ++v) {
      if (adj[u][v]) r[y[v]] += 1.0 / d;
    }
    return r;
  }
};

inline double dotv(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}
inline double normv(const Vec& a) { return std::sqrt(dotv(a, a)); }
inline double distv(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}
inline double cosv(const Vec& a, const Vec& b) {
  const double na = normv(a), nb = normv(b);
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dotv(a, b) / (na * nb);
}

inline Opt edge_homophily(const Dense& g) {
  double same = 0, all = 0;
  for (std::size_t u = 0; u < g.n; ++u)
    for (std::size_t v = u + 1; v < g.n; ++v)
      if (g.adj[u][v]) {
        all += 1;
        same += g.y[u] == g.y[v];
      }
  if (all == 0) return std::nullopt;
  return same / all;
}

inline Opt node_homophily(const Dense& g) {
  double total = 0;
  int cnt = 0;
  for (std::size_t u = 0; u < g.n; ++u) {
    int d = 0, s = 0;
    for (std::size_t v = 0; v < g.n; ++v)
      if (g.adj[u][v]) {
        ++d;
        s += g.y[u] == g.y[v];
      }
    if (d == 0) continue;
    total += static_cast<double>(s) / d;
    ++cnt;
  }
  if (cnt == 0) return std::nullopt;
  return total / cnt;
}

inline Opt class_homophily(const Dense& g) {
  double sum = 0;
  for (std::size_t c = 0; c < g.C; ++c) {
    double intra = 0, deg = 0, members = 0;
    for (std::size_t u = 0; u < g.n; ++u) {
      if (g.y[u] != static_cast<int>(c)) continue;
      members += 1;
      for (std::size_t v = 0; v < g.n; ++v)
        if (g.adj[u][v]) {
          deg += 1;
          intra += g.y[v] == static_cast<int>(c);
        }
    }
    if (deg == 0) continue;
    sum += std::max(0.0, intra / deg - members / g.n);
  }
  return sum / (g.C - 1.0);
}

inline Opt adjusted_homophily(const Dense& g) {
  const Opt he = edge_homophily(g);
  if (!he) return std::nullopt;
  double two_m = 0;
  Vec d(g.C, 0.0);
  for (std::size_t u = 0; u < g.n; ++u) {
    d[g.y[u]] += g.deg(u);
    two_m += g.deg(u);
  }
  double chance = 0;
  for (double dc : d) chance += dc * dc / (two_m * two_m);
  if (1.0 - chance <= 1e-15) return std::nullopt;
  return (*he - chance) / (1.0 - chance);
}

inline Opt density_aware(const Dense& g) {
  std::vector<double> size(g.C, 0.0);
  for (int c : g.y) size[c] += 1;
  for (double s : size)
    if (s < 2) return std::nullopt;
  std::vector<Vec> e(g.C, Vec(g.C, 0.0));
  for (std::size_t u = 0; u < g.n; ++u)
    for (std::size_t v = u + 1; v < g.n; ++v)
      if (g.adj[u][v]) {
        e[g.y[u]][g.y[v]] += 1;
        if (g.y[u] != g.y[v]) e[g.y[v]][g.y[u]] += 1;
      }
  double best = 1e300;
  for (std::size_t c = 0; c < g.C; ++c) {
    const double intra = e[c][c] / (size[c] * (size[c] - 1) / 2);
    double inter = 0;
    for (std::size_t k = 0; k < g.C; ++k)
      if (k != c) inter = std::max(inter, e[c][k] / (size[c] * size[k]));
    best = std::min(best, intra - inter);
  }
  return (1 + best) / 2;
}

inline Opt two_hop(const Dense& g, bool degree_denominator) {
  double total = 0;
  int cnt = 0;
  for (std::size_t u = 0; u < g.n; ++u) {
    int size = 0, same = 0;
    for (std::size_t w = 0; w < g.n; ++w) {
      if (w == u) continue;
      bool in = false;
      for (std::size_t v = 0; v < g.n && !in; ++v) in = g.adj[u][v] && g.adj[v][w];
      if (!in) continue;
      ++size;
      same += g.y[w] == g.y[u];
    }
    if (size == 0) continue;
    total += static_cast<double>(same) / (degree_denominator ? g.deg(u) : size);
    ++cnt;
  }
  if (cnt == 0) return std::nullopt;
  return total / cnt;
}

inline Opt neighbor_homophily(const Dense& g, int k) {
  double total = 0;
  int cnt = 0;
  for (std::size_t u = 0; u < g.n; ++u) {
    // Bellman-style relaxation of hop distances over the dense matrix.
    std::vector<int> dist(g.n, 1 << 20);
    dist[u] = 0;
    for (int hop = 0; hop < k; ++hop)
      for (std::size_t a = 0; a < g.n; ++a)
        if (dist[a] == hop)
          for (std::size_t b = 0; b < g.n; ++b)
            if (g.adj[a][b] && dist[b] > hop + 1) dist[b] = hop + 1;
    Vec hist(g.C, 0.0);
    double size = 0;
    for (std::size_t w = 0; w < g.n; ++w)
      if (w != u && dist[w] <= k) {
        hist[g.y[w]] += 1;
        size += 1;
      }
    if (size == 0) continue;
    total += *std::max_element(hist.begin(), hist.end()) / size;
    ++cnt;
  }
  if (cnt == 0) return std::nullopt;
  return total / cnt;
}

inline Opt structural(const Dense& g) {
  double total = 0;
  int included = 0;
  const double sigma_max = 1.0 / std::sqrt(g.C - 1.0);
  for (std::size_t c = 0; c < g.C; ++c) {
    std::vector<Vec> rows;
    for (std::size_t u = 0; u < g.n; ++u)
      if (g.y[u] == static_cast<int>(c) && g.deg(u) > 0) rows.push_back(g.dist(u));
    if (rows.size() < 2) continue;
    const double m = static_cast<double>(rows.size());
    double var_sum = 0;
    for (std::size_t k = 0; k < g.C; ++k) {
      // Population variance as half the mean squared pairwise difference.
      double s = 0;
      for (const Vec& a : rows)
        for (const Vec& b : rows) s += (a[k] - b[k]) * (a[k] - b[k]);
      var_sum += s / (2 * m * m);
    }
    const double sigma = std::sqrt(var_sum / g.C);
    total += std::clamp(1 - sigma / sigma_max, 0.0, 1.0);
    ++included;
  }
  if (included == 0) return std::nullopt;
  return total / included;
}

inline Opt label_informativeness(const Dense& g, bool literal) {
  std::vector<Vec> p(g.C, Vec(g.C, 0.0));
  Vec pbar(g.C, 0.0);
  double arcs = 0;
  for (std::size_t u = 0; u < g.n; ++u)
    for (std::size_t v = 0; v < g.n; ++v)
      if (g.adj[u][v]) {
        p[g.y[u]][g.y[v]] += 1;
        pbar[g.y[u]] += 1;
        arcs += 1;
      }
  if (arcs == 0) return std::nullopt;
  double den = 0;
  for (double c : pbar)
    if (c > 0) den += c / arcs * std::log(c / arcs);
  if (den == 0) return std::nullopt;
  double num = 0;
  for (const Vec& row : p)
    for (double c : row)
      if (c > 0) num += literal ? std::log(c / arcs) : c / arcs * std::log(c / arcs);
  return 2 - num / den;
}

inline Opt neighborhood_similarity(const Dense& g) {
  double intra = 0, inter = 0;
  double ni = 0, ne = 0;
  std::vector<Vec> d;
  for (std::size_t u = 0; u < g.n; ++u) d.push_back(g.dist(u));
  for (std::size_t u = 0; u < g.n; ++u) {
    if (normv(d[u]) == 0) continue;
    for (std::size_t v = 0; v < g.n; ++v) {
      if (v == u || normv(d[v]) == 0) continue;
      const double c = cosv(d[u], d[v]);
      if (g.y[u] == g.y[v]) {
        intra += c;
        ni += 1;
      } else {
        inter += c;
        ne += 1;
      }
    }
  }
  if (ni == 0 || ne == 0) return std::nullopt;
  if (std::abs(inter / ne) < 1e-12) return std::nullopt;
  return (intra / ni) / (inter / ne);
}

inline double aggregation(const Dense& g) {
  std::vector<Vec> d;
  for (std::size_t u = 0; u < g.n; ++u) d.push_back(g.dist(u));
  double ok = 0;
  for (std::size_t u = 0; u < g.n; ++u) {
    double s_in = 0, s_out = 0, n_in = 0, n_out = 0;
    for (std::size_t v = 0; v < g.n; ++v) {
      const double p = dotv(d[u], d[v]);
      if (g.y[u] == g.y[v]) {
        s_in += p;
        n_in += 1;
      } else {
        s_out += p;
        n_out += 1;
      }
    }
    if (n_out == 0) {
      ok += 1;
      continue;
    }
    const double a = s_in / n_in, b = s_out / n_out;
    ok += a >= b - 1e-12 * std::max(1.0, std::abs(b));
  }
  return ok / g.n;
}

// A x as dense rows.
inline std::vector<Vec> adj_times(const Dense& g, const std::vector<Vec>& x) {
  std::vector<Vec> out(g.n, Vec(x.empty() ? 0 : x[0].size(), 0.0));
  for (std::size_t u = 0; u < g.n; ++u)
    for (std::size_t v = 0; v < g.n; ++v)
      if (g.adj[u][v])
        for (std::size_t j = 0; j < out[u].size(); ++j) out[u][j] += x[v][j];
  return out;
}

/// Per-feature clipped estimate (nullopt when degenerate) and the mean.
struct FeatureOracle {
  std::vector<Opt> per_feature;
  Opt mean;
};

inline FeatureOracle feature_homophily(const Dense& g, double rho) {
  const auto a = adj_times(g, g.x);
  FeatureOracle out;
  double sum = 0;
  int valid = 0;
  for (std::size_t j = 0; j < g.M; ++j) {
    double b = 0, e = 0;
    for (std::size_t u = 0; u < g.n; ++u)
      for (std::size_t v = u + 1; v < g.n; ++v)
        if (g.y[u] == g.y[v]) {
          const double dx = g.x[u][j] - g.x[v][j];
          const double da = a[u][j] - a[v][j];
          b += dx * da;
          e += da * da;
        }
    if (e < 1e-12) {
      out.per_feature.push_back(std::nullopt);
      continue;
    }
    const double h = std::clamp(rho * b / e, -1.0, 1.0);
    out.per_feature.push_back(h);
    sum += h;
    ++valid;
  }
  if (valid > 0) out.mean = sum / valid;
  return out;
}

inline Opt generalized_edge(const Dense& g) {
  double s = 0, cnt = 0;
  for (std::size_t u = 0; u < g.n; ++u)
    for (std::size_t v = u + 1; v < g.n; ++v)
      if (g.adj[u][v]) {
        s += cosv(g.x[u], g.x[v]);
        cnt += 1;
      }
  if (cnt == 0) return std::nullopt;
  return s / cnt;
}

inline Opt local_similarity(const Dense& g, bool cosine) {
  double total = 0;
  int cnt = 0;
  for (std::size_t u = 0; u < g.n; ++u) {
    double s = 0;
    int d = 0;
    for (std::size_t v = 0; v < g.n; ++v)
      if (g.adj[u][v]) {
        s += cosine ? cosv(g.x[u], g.x[v]) : -distv(g.x[u], g.x[v]);
        ++d;
      }
    if (d == 0) continue;
    total += s / d;
    ++cnt;
  }
  if (cnt == 0) return std::nullopt;
  return total / cnt;
}

inline Opt attribute(const Dense& g) {
  double total = 0;
  int valid = 0;
  for (std::size_t j = 0; j < g.M; ++j) {
    Vec col(g.n);
    double lo = 0;
    for (std::size_t u = 0; u < g.n; ++u) {
      col[u] = g.x[u][j];
      lo = std::min(lo, col[u]);
    }
    for (double& v : col) v -= lo;
    double sum = 0;
    for (double v : col) sum += v;
    if (sum == 0) continue;
    double num = 0;
    for (std::size_t u = 0; u < g.n; ++u) {
      double s = 0;
      int d = 0;
      for (std::size_t v = 0; v < g.n; ++v)
        if (g.adj[u][v]) {
          s += col[v];
          ++d;
        }
      if (d > 0) num += col[u] * s / d;
    }
    total += num / sum;
    ++valid;
  }
  if (valid == 0) return std::nullopt;
  return total / valid;
}

inline Opt class_controlled(const Dense& g) {
  std::vector<Vec> mean(g.C, Vec(g.M, 0.0));
  Vec cnt(g.C, 0.0);
  for (std::size_t u = 0; u < g.n; ++u) {
    cnt[g.y[u]] += 1;
    for (std::size_t j = 0; j < g.M; ++j) mean[g.y[u]][j] += g.x[u][j];
  }
  std::vector<Vec> z = g.x;
  for (std::size_t u = 0; u < g.n; ++u)
    for (std::size_t j = 0; j < g.M; ++j) z[u][j] -= mean[g.y[u]][j] / cnt[g.y[u]];
  double total = 0;
  int nodes = 0;
  for (std::size_t u = 0; u < g.n; ++u) {
    double s = 0;
    int d = 0;
    for (std::size_t v = 0; v < g.n; ++v) {
      if (!g.adj[u][v]) continue;
      double far = 0;
      for (std::size_t w = 0; w < g.n; ++w)
        if (w != u) far += distv(z[v], z[w]);
      s += far / (g.n - 1.0) - distv(z[v], z[u]);
      ++d;
    }
    if (d == 0) continue;
    total += s / d;
    ++nodes;
  }
  if (nodes == 0) return std::nullopt;
  return total / nodes;
}

inline std::vector<Vec> aggregate(const Dense& g) {
  std::vector<Vec> h = adj_times(g, g.x);
  for (std::size_t u = 0; u < g.n; ++u) {
    const int d = g.deg(u);
    if (d == 0) {
      h[u] = g.x[u];
    } else {
      for (double& v : h[u]) v /= d;
    }
  }
  return h;
}

inline Opt empirical_j(const Dense& g, const std::vector<Vec>& r) {
  double si = 0, se = 0, ni = 0, ne = 0;
  for (std::size_t u = 0; u < g.n; ++u)
    for (std::size_t v = u + 1; v < g.n; ++v) {
      const double d = distv(r[u], r[v]);
      if (g.y[u] == g.y[v]) {
        si += d * d;
        ni += 1;
      } else {
        se += d * d;
        ne += 1;
      }
    }
  if (ni == 0 || ne == 0 || se == 0) return std::nullopt;
  return (si / ni) / (se / ne);
}

}  // namespace trihom::oracle

#endif  // TRIHOM_TESTS_ORACLE_HPP_
