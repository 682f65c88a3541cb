#include <benchmark/benchmark.h>

#include "regkit/construction.hpp"
#include "regkit/counting.hpp"
#include "regkit/potential.hpp"
#include "regkit/regularity.hpp"
#include "regkit/weak_regularizer.hpp"

using namespace regkit;

namespace {

SearchConfig config(Mode mode, int samples = 20000) {
  SearchConfig c;
  c.mode = mode;
  c.samples = samples;
  c.seed = 1;
  return c;
}

void BM_PairExact(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  DenseGraph g = random_bipartite(side, side, 0.5, 3);
  for (auto _ : state)
    benchmark::DoNotOptimize(check_pair_regular(g, g.left_side(), g.right_side(), Rational(1, 4), config(Mode::Exact)));
}
BENCHMARK(BM_PairExact)->DenseRange(8, 14, 2)->Unit(benchmark::kMillisecond);

void BM_PairSampled(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  DenseGraph g = random_bipartite(side, side, 0.5, 3);
  for (auto _ : state)
    benchmark::DoNotOptimize(check_pair_regular(g, g.left_side(), g.right_side(), Rational(1, 4), config(Mode::Sampled)));
}
BENCHMARK(BM_PairSampled)->RangeMultiplier(4)->Range(64, 1024)->Unit(benchmark::kMillisecond);

void BM_WeakExact(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  DenseGraph g = random_graph(n, 0.5, 5);
  for (auto _ : state)
    benchmark::DoNotOptimize(check_weak_regular(g, Partition::equipartition(n, 2), Rational(3, 10), config(Mode::Exact)));
}
BENCHMARK(BM_WeakExact)->DenseRange(10, 16, 2)->Unit(benchmark::kMillisecond);

void BM_WeakRegularize(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  DenseGraph g = random_graph(n, 0.3, 7);
  for (auto _ : state)
    benchmark::DoNotOptimize(weak_regularize(g, Partition::equipartition(n, 2), Rational(3, 10), config(Mode::Sampled, 2000)));
}
BENCHMARK(BM_WeakRegularize)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_EntropyPotential(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  DenseGraph g = random_graph(n, 0.1, 9);
  Partition p = Partition::equipartition(n, n / 8);
  for (auto _ : state) benchmark::DoNotOptimize(entropy_potential(g, p));
}
BENCHMARK(BM_EntropyPotential)->Arg(256)->Arg(1024);

void BM_TriangleCount(benchmark::State& state) {
  const int part = static_cast<int>(state.range(0));
  DenseGraph g = random_graph(3 * part, 0.5, 11);
  std::vector<VertexSet> clusters;
  for (int i = 0; i < 3; ++i) clusters.push_back(VertexSet::range(3 * part, i * part, (i + 1) * part));
  for (auto _ : state) benchmark::DoNotOptimize(count_copies(triangle_pattern(), g, clusters, CountMode::Induced));
}
BENCHMARK(BM_TriangleCount)->RangeMultiplier(2)->Range(16, 128)->Unit(benchmark::kMicrosecond);

void BM_BipartitionSequence(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(make_bipartition_sequence(n, 4 * n, Rational(1, 4), Rational(1, 4), ++seed));
}
BENCHMARK(BM_BipartitionSequence)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_Construction(benchmark::State& state) {
  ConstructionParams p;
  p.s = static_cast<int>(state.range(0));
  p.sizes.assign(static_cast<std::size_t>(p.s) + 1, 4);
  p.seed = 7;
  for (auto _ : state) benchmark::DoNotOptimize(build_construction_unchecked(p));
}
BENCHMARK(BM_Construction)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
