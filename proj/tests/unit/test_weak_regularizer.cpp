#include <gtest/gtest.h>

#include <cmath>

#include "regkit/error.hpp"
#include "regkit/potential.hpp"
#include "regkit/weak_regularizer.hpp"
#include "support.hpp"

using namespace regkit;
using namespace testing_support;

namespace {

SearchConfig exact_cfg() {
  SearchConfig c;
  c.mode = Mode::Exact;
  return c;
}

SearchConfig sampled_cfg(std::uint64_t seed, int workers = 1) {
  SearchConfig c;
  c.mode = Mode::Sampled;
  c.samples = 3000;
  c.seed = seed;
  c.workers = workers;
  return c;
}

Rational pow4(const Rational& e) { return e * e * e * e; }

}  // namespace

TEST(WeakRegParams, BlockCountAndCap) {
  EXPECT_EQ(weak_block_count(Rational(1)), 8);
  EXPECT_EQ(weak_block_count(Rational(1, 2)), 128);
  EXPECT_EQ(weak_iteration_cap(Rational(1)), 2);
  // 2 / 0.4^4 = 78.125
  EXPECT_EQ(weak_iteration_cap(Rational(2, 5)), 79);
}

TEST(WeakWitness, NoneOnRegularInputs) {
  EXPECT_FALSE(find_weak_witness(complete_bipartite(5, 5), Partition::equipartition(10, 2), Rational(1, 10),
                                 exact_cfg()));
  auto r = rng_for(41);
  DenseGraph g = gnp(r, 12, 0.5);
  EXPECT_FALSE(find_weak_witness(g, Partition::singletons(12), Rational(1, 10), exact_cfg()));
}

TEST(WeakWitness, HalfGraphYieldsValidatedWitness) {
  DenseGraph h = half_graph(8);
  const Rational eps(1, 5);
  for (const SearchConfig& cfg : {exact_cfg(), sampled_cfg(3)}) {
    auto w = find_weak_witness(h, Partition::trivial(16), eps, cfg);
    ASSERT_TRUE(w.has_value());
    VertexSet s = VertexSet::of(16, w->first), t = VertexSet::of(16, w->second);
    EXPECT_FALSE(s.intersects(t));
    EXPECT_GE(Rational(s.count()), eps * Rational(16));
    EXPECT_GE(Rational(t.count()), eps * Rational(16));
    EXPECT_GT(weak_deviation(h, Partition::trivial(16), s, t), eps.to_double());
  }
}

TEST(RefineStep, GainOrderAndEquitability) {
  auto r = rng_for(42);
  int steps = 0;
  for (int t = 0; t < 40; ++t) {
    int n = pick(r, 8, 16);
    DenseGraph g = gnp(r, n, 0.5);
    Partition p = Partition::equipartition(n, pick(r, 1, 3));
    const Rational eps(pick(r, 2, 4), 10);
    auto w = find_weak_witness(g, p, eps, exact_cfg());
    if (!w) continue;
    ++steps;
    Partition next = refine_step(g, p, *w, eps, /*audit=*/true);
    EXPECT_TRUE(is_refinement(next, p));
    EXPECT_TRUE(next.is_equitable());
    EXPECT_TRUE(mean_square_gain_at_least(g, p, next, pow4(eps) / Rational(2)));
    EXPECT_LE(next.order(), weak_block_count(eps) * p.order());
  }
  EXPECT_GT(steps, 10);
}

TEST(WeakRegularize, AlreadyRegularInputNeedsNoSteps) {
  WeakRegRun run = weak_regularize(complete_bipartite(6, 6), Partition::equipartition(12, 2), Rational(1, 5),
                                   exact_cfg());
  EXPECT_EQ(run.refinements(), 0);
  EXPECT_EQ(run.final_partition, Partition::equipartition(12, 2));
  EXPECT_EQ(run.terminated_by, Termination::WitnessExhausted);
}

TEST(WeakRegularize, RandomSixteenExact) {
  auto r = rng_for(43);
  const Rational eps(2, 5);
  for (int t = 0; t < 5; ++t) {
    DenseGraph g = gnp(r, 16, 0.5);
    Partition p0 = Partition::equipartition(16, pick(r, 1, 2));
    WeakRegRun run = weak_regularize(g, p0, eps, exact_cfg(), {.audit = true});
    EXPECT_EQ(run.terminated_by, Termination::WitnessExhausted);
    EXPECT_LE(run.refinements(), weak_iteration_cap(eps));
    EXPECT_TRUE(is_refinement(run.final_partition, p0));
    EXPECT_TRUE(run.final_partition.is_equitable());
    EXPECT_TRUE(check_weak_regular(g, run.final_partition, eps, exact_cfg()).regular);
    for (std::size_t k = 1; k < run.partitions.size(); ++k)
      EXPECT_TRUE(mean_square_gain_at_least(g, run.partitions[k - 1], run.partitions[k], pow4(eps) / Rational(2)));
    // order <= |P0| (16/eps^4)^iterations, and that is <= |P0| 2^(16/eps^5)
    double bound = p0.order() * std::pow(16.0 / std::pow(eps.to_double(), 4), run.refinements());
    EXPECT_LE(run.final_partition.order(), bound);
    EXPECT_LE(std::log2(bound / p0.order()), 16.0 / std::pow(eps.to_double(), 5));
  }
}

TEST(WeakRegularize, SampledTraceIsWorkerIndependent) {
  auto r = rng_for(44);
  DenseGraph g = gnp(r, 48, 0.3);
  Partition p0 = Partition::equipartition(48, 2);
  WeakRegRun a = weak_regularize(g, p0, Rational(3, 10), sampled_cfg(9, 1));
  WeakRegRun b = weak_regularize(g, p0, Rational(3, 10), sampled_cfg(9, 4));
  EXPECT_EQ(a.final_partition, b.final_partition);
  ASSERT_EQ(a.iterations.size(), b.iterations.size());
  for (std::size_t k = 0; k < a.iterations.size(); ++k) EXPECT_EQ(a.iterations[k].q_exact, b.iterations[k].q_exact);
}

TEST(WeakRegularize, RejectsBadInputs) {
  EXPECT_THROW(weak_regularize(complete_graph(6), Partition::from_classes(6, {{0}, {1, 2, 3, 4, 5}}),
                               Rational(1, 2), exact_cfg()),
               DomainError);
}
