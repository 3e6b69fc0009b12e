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

#include "trihom/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "trihom/error.hpp"

namespace trihom {

namespace {

void require_pair(std::span<const double> x, std::span<const double> y) {
  require(x.size() == y.size(), ErrorCode::kInvalidArgument,
          "columns must have equal length");
  require(x.size() >= 2, ErrorCode::kInvalidArgument, "need at least 2 values");
}

// Number of tied pairs within runs of equal keys, for a sequence that is
// sorted so that equal keys are adjacent.
template <typename Eq>
std::int64_t tied_pairs(std::size_t n, Eq&& equal) {
  std::int64_t ties = 0;
  std::int64_t run = 1;
  for (std::size_t i = 1; i < n; ++i) {
    if (equal(i - 1, i)) {
      ++run;
    } else {
      ties += run * (run - 1) / 2;
      run = 1;
    }
  }
  return ties + run * (run - 1) / 2;
}

// Bottom-up merge sort counting inversions (strictly greater elements
// moved ahead of smaller ones).
std::int64_t count_swaps(std::vector<double>& v) {
  const std::size_t n = v.size();
  std::vector<double> buf(n);
  std::int64_t swaps = 0;
  for (std::size_t width = 1; width < n; width *= 2) {
    for (std::size_t lo = 0; lo < n; lo += 2 * width) {
      const std::size_t mid = std::min(lo + width, n);
      const std::size_t hi = std::min(lo + 2 * width, n);
      std::size_t i = lo, j = mid, k = lo;
      while (i < mid && j < hi) {
        if (v[j] < v[i]) {
          swaps += static_cast<std::int64_t>(mid - i);
          buf[k++] = v[j++];
        } else {
          buf[k++] = v[i++];
        }
      }
      while (i < mid) buf[k++] = v[i++];
      while (j < hi) buf[k++] = v[j++];
    }
    std::swap(v, buf);
  }
  return swaps;
}

}  // namespace

double pearson(std::span<const double> x, std::span<const double> y) {
  require_pair(x, y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  require(sxx > 0.0 && syy > 0.0, ErrorCode::kConstantInput,
          "pearson needs non-constant columns");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double kendall_tau_a(std::span<const double> x, std::span<const double> y) {
  require_pair(x, y);
  const std::size_t n = x.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return x[a] < x[b] || (x[a] == x[b] && y[a] < y[b]);
  });
  const std::int64_t tx = tied_pairs(
      n, [&](std::size_t i, std::size_t j) { return x[order[i]] == x[order[j]]; });
  const std::int64_t txy = tied_pairs(n, [&](std::size_t i, std::size_t j) {
    return x[order[i]] == x[order[j]] && y[order[i]] == y[order[j]];
  });
  std::vector<double> ys(n);
  for (std::size_t i = 0; i < n; ++i) ys[i] = y[order[i]];
  const std::int64_t swaps = count_swaps(ys);
  const std::int64_t ty =
      tied_pairs(n, [&](std::size_t i, std::size_t j) { return ys[i] == ys[j]; });
  const auto n0 = static_cast<std::int64_t>(n) * static_cast<std::int64_t>(n - 1) / 2;
  const std::int64_t diff = n0 - tx - ty + txy - 2 * swaps;
  return static_cast<double>(diff) / static_cast<double>(n0);
}

std::vector<double> mid_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

namespace {

// Ranks cells of one model by descending |value|; empty values stay unranked.
void rank_model(std::vector<CorrelationCell*>& cells, bool use_kendall) {
  std::vector<double> keys;
  std::vector<CorrelationCell*> ranked;
  for (CorrelationCell* c : cells) {
    const auto& v = use_kendall ? c->kendall : c->pearson;
    if (!v) continue;
    keys.push_back(-std::abs(*v));
    ranked.push_back(c);
  }
  const std::vector<double> r = mid_ranks(keys);
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    (use_kendall ? ranked[i]->kendall_rank : ranked[i]->rank) = r[i];
  }
}

}  // namespace

CorrelationTable correlate_table(std::span<const NamedColumn> metrics,
                                 std::span<const NamedColumn> performances) {
  std::size_t rows = 0;
  bool first = true;
  for (const auto* group : {&metrics, &performances}) {
    for (const NamedColumn& col : *group) {
      if (first) rows = col.values.size();
      first = false;
      if (col.values.size() != rows) {
        fail(ErrorCode::kInconsistentSizes,
             "column '" + col.name + "' has " + std::to_string(col.values.size()) +
                 " rows, expected " + std::to_string(rows));
      }
    }
  }

  CorrelationTable table;
  for (const NamedColumn& m : metrics) {
    for (const NamedColumn& p : performances) {
      CorrelationCell cell;
      cell.metric = m.name;
      cell.model = p.name;
      std::vector<double> x, y;
      for (std::size_t i = 0; i < rows; ++i) {
        if (std::isnan(m.values[i]) || std::isnan(p.values[i])) continue;
        x.push_back(m.values[i]);
        y.push_back(p.values[i]);
      }
      cell.n = x.size();
      try {
        cell.pearson = pearson(x, y);
      } catch (const Error& e) {
        cell.pearson_error = error_code_name(e.code());
      }
      try {
        cell.kendall = kendall_tau_a(x, y);
      } catch (const Error& e) {
        cell.kendall_error = error_code_name(e.code());
      }
      table.cells.push_back(std::move(cell));
    }
  }

  const std::size_t np = performances.size();
  for (std::size_t j = 0; j < np; ++j) {
    std::vector<CorrelationCell*> column;
    for (std::size_t i = 0; i < metrics.size(); ++i) {
      column.push_back(&table.cells[i * np + j]);
    }
    rank_model(column, false);
    rank_model(column, true);
  }
  for (std::size_t i = 0; i < metrics.size(); ++i) {
    MetricSummary s;
    s.metric = metrics[i].name;
    double sum = 0.0, ksum = 0.0;
    std::size_t cnt = 0, kcnt = 0;
    for (std::size_t j = 0; j < np; ++j) {
      const CorrelationCell& c = table.cells[i * np + j];
      if (c.rank) {
        sum += *c.rank;
        ++cnt;
      }
      if (c.kendall_rank) {
        ksum += *c.kendall_rank;
        ++kcnt;
      }
    }
    if (cnt > 0) s.average_rank = sum / static_cast<double>(cnt);
    if (kcnt > 0) s.average_kendall_rank = ksum / static_cast<double>(kcnt);
    table.metrics.push_back(std::move(s));
  }
  return table;
}

}  // namespace trihom
