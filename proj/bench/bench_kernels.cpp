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

// Serial reference kernels against their OpenMP counterparts on generated
// graphs. Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include <map>
#include <numeric>

#include "trihom/csbm3h.hpp"
#include "trihom/kernels.hpp"

namespace {

using namespace trihom;

struct Fixture {
  Topology topo;
  Matrix features;
  std::vector<NodeId> reference;
};

const Fixture& fixture(std::size_t n) {
  static std::map<std::size_t, Fixture> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  Csbm3hParams p;
  p.num_nodes = n;
  p.degree_min = 5;
  p.degree_max = 25;
  set_one_hot_means(p, 8, 1.0, 1.0);
  Rng rng = make_rng(1, 1);
  Fixture f;
  f.topo = generate_topology(p, rng);
  Rng feat = make_rng(1, 2);
  f.features = sample_structural_agnostic_features(f.topo.labels, p.class_means,
                                                   p.class_vars, feat);
  f.reference.resize(std::min<std::size_t>(n, 500));
  std::iota(f.reference.begin(), f.reference.end(), NodeId{0});
  return cache.emplace(n, std::move(f)).first->second;
}

kernels::EdgeSamplingInput sampling_input(const Fixture& f) {
  kernels::EdgeSamplingInput in;
  in.target_degrees = f.topo.target_degrees;
  in.labels = f.topo.labels;
  in.row_probs = &f.topo.target_neighbor_dist;
  in.seed = 7;
  return in;
}

template <bool Parallel>
void BM_AdjacencyMultiply(benchmark::State& state) {
  const Fixture& f = fixture(static_cast<std::size_t>(state.range(0)));
  Matrix out;
  for (auto _ : state) {
    if constexpr (Parallel) {
      kernels::parallel::adjacency_multiply(f.topo.graph, f.features, out);
    } else {
      kernels::serial::adjacency_multiply(f.topo.graph, f.features, out);
    }
    benchmark::DoNotOptimize(out.values().data());
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(2 * f.topo.graph.num_edges()));
}

template <bool Parallel>
void BM_NeighborLabelCounts(benchmark::State& state) {
  const Fixture& f = fixture(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    Matrix m = Parallel ? kernels::parallel::neighbor_label_counts(f.topo.graph, f.topo.labels, 3)
                        : kernels::serial::neighbor_label_counts(f.topo.graph, f.topo.labels, 3);
    benchmark::DoNotOptimize(m.values().data());
  }
}

template <bool Parallel>
void BM_SampleBlockEdges(benchmark::State& state) {
  const Fixture& f = fixture(static_cast<std::size_t>(state.range(0)));
  const kernels::EdgeSamplingInput in = sampling_input(f);
  for (auto _ : state) {
    auto edges = Parallel ? kernels::parallel::sample_block_edges(in)
                          : kernels::serial::sample_block_edges(in);
    benchmark::DoNotOptimize(edges.data());
  }
}

template <bool Parallel>
void BM_DistanceSums(benchmark::State& state) {
  const Fixture& f = fixture(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto d = Parallel ? kernels::parallel::distance_sums(f.features, f.reference)
                      : kernels::serial::distance_sums(f.features, f.reference);
    benchmark::DoNotOptimize(d.data());
  }
}

BENCHMARK(BM_AdjacencyMultiply<false>)->Name("adjacency_multiply/serial")->Arg(2000)->Arg(20000);
BENCHMARK(BM_AdjacencyMultiply<true>)->Name("adjacency_multiply/parallel")->Arg(2000)->Arg(20000);
BENCHMARK(BM_NeighborLabelCounts<false>)->Name("neighbor_label_counts/serial")->Arg(2000)->Arg(20000);
BENCHMARK(BM_NeighborLabelCounts<true>)->Name("neighbor_label_counts/parallel")->Arg(2000)->Arg(20000);
BENCHMARK(BM_SampleBlockEdges<false>)->Name("sample_block_edges/serial")->Arg(2000)->Arg(20000)
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampleBlockEdges<true>)->Name("sample_block_edges/parallel")->Arg(2000)->Arg(20000)
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DistanceSums<false>)->Name("distance_sums/serial")->Arg(2000)->Arg(20000)
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DistanceSums<true>)->Name("distance_sums/parallel")->Arg(2000)->Arg(20000)
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
