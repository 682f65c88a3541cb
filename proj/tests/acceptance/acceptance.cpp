// Acceptance suite: criteria 1-12, one PASS/FAIL line each.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <gmpxx.h>

#include "regkit/construction.hpp"
#include "regkit/counting.hpp"
#include "regkit/perturb.hpp"
#include "regkit/potential.hpp"
#include "regkit/regularity.hpp"
#include "regkit/report.hpp"
#include "regkit/rng.hpp"
#include "regkit/sral.hpp"
#include "regkit/weak_regularizer.hpp"
#include "support.hpp"

using namespace regkit;
using namespace testing_support;

namespace {

struct Outcome {
  bool pass = true;
  std::string summary;
  Json report = Json::object();
};

struct Criterion {
  int id;
  std::string name;
  double budget_s;
  std::function<Outcome(int workers)> run;
};

// Failure messages are capped so one broken invariant cannot flood the log.
struct Failures {
  std::int64_t count = 0;
  std::vector<std::string> first;
  void add(const std::string& what) {
    if (count++ < 5) first.push_back(what);
  }
  Json json() const { return Json{{"count", count}, {"first", first}}; }
};

std::string rat(const Rational& r) { return r.str(); }

mpq_class mpq_of(const Rational& r) {
  mpq_class q(mpz_class(std::to_string(r.num())), mpz_class(std::to_string(r.den())));
  q.canonicalize();
  return q;
}

// q(P) = sum over ordered class pairs of e(V_i, V_j)^2 / (|V_i||V_j| n^2),
// edges counted from adjacency queries.
mpq_class slow_mean_square(const DenseGraph& g, const Partition& p) {
  mpq_class total = 0;
  const mpz_class n2 = mpz_class(g.n()) * g.n();
  for (const auto& a : p.classes())
    for (const auto& b : p.classes()) {
      const std::int64_t e = slow_edges(g, a, b);
      mpq_class term(mpz_class(e) * e, mpz_class(static_cast<long>(a.size() * b.size())) * n2);
      term.canonicalize();
      total += term;
    }
  return total;
}

std::int64_t ceil_q(const mpq_class& x) {
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return c.get_si();
}

SearchConfig exact_search(int workers, std::uint64_t seed) {
  SearchConfig c;
  c.mode = Mode::Exact;
  c.workers = workers;
  c.seed = seed;
  return c;
}

SearchConfig sampled_search(int workers, std::uint64_t seed, int samples) {
  SearchConfig c;
  c.mode = Mode::Sampled;
  c.workers = workers;
  c.seed = seed;
  c.samples = samples;
  return c;
}

// ---------------------------------------------------------------------------
// 1 and 2: weak regularizer contract and exact certification

struct WeakRunRecord {
  int n;
  Rational eps;
  DenseGraph g;
  Partition final_partition;
};

std::vector<WeakRunRecord> g_small_runs;  // n <= 16 runs of criterion 1, consumed by criterion 2

Outcome weak_regularizer_contract(int workers) {
  static const int kSizes[] = {8, 10, 12, 16, 24, 32, 48, 64};
  static const double kDensities[] = {0.25, 0.5, 0.75};
  const Rational epsilons[] = {Rational(3, 10), Rational(2, 5)};
  Outcome out;
  Failures f;
  Json runs = Json::array();
  g_small_runs.clear();
  int total_steps = 0;
  for (int t = 0; t < 200; ++t) {
    auto r = rng_for(1000 + static_cast<std::uint64_t>(t));
    const int n = kSizes[t % 8];
    DenseGraph g = gnp(r, n, kDensities[t % 3]);
    const int k0 = 1 + (t / 8) % 3;
    const Partition p0 = Partition::equipartition(n, k0);
    for (const Rational& eps : epsilons) {
      const mpq_class e = mpq_of(eps), e4 = e * e * e * e;
      const std::int64_t cap = ceil_q(mpq_class(2) / e4);
      SearchConfig cfg = n <= 16 ? exact_search(workers, 77 + static_cast<std::uint64_t>(t))
                                 : sampled_search(workers, 77 + static_cast<std::uint64_t>(t), 2000);
      WeakRegRun run = weak_regularize(g, p0, eps, cfg);
      const std::string tag = "graph " + std::to_string(t) + " eps " + rat(eps);
      const int iters = run.refinements();
      total_steps += iters;
      if (iters > cap) f.add(tag + ": " + std::to_string(iters) + " iterations > " + std::to_string(cap));
      if (run.terminated_by != Termination::WitnessExhausted) f.add(tag + ": terminated by cap");
      mpq_class prev = slow_mean_square(g, run.partitions.front());
      for (int k = 1; k <= iters; ++k) {
        const Partition& before = run.partitions[static_cast<std::size_t>(k - 1)];
        const Partition& after = run.partitions[static_cast<std::size_t>(k)];
        mpq_class next = slow_mean_square(g, after);
        if (next - prev < e4 / 2) f.add(tag + ": step " + std::to_string(k) + " gained less than eps^4/2");
        if (!is_refinement(after, before)) f.add(tag + ": step " + std::to_string(k) + " is not a refinement");
        prev = next;
      }
      // order <= |P0| (16/eps^4)^iters  <=>  order num^{4 it} <= |P0| 16^it den^{4 it}
      mpz_class lhs = run.final_partition.order(), rhs = k0;
      for (int k = 0; k < iters; ++k) {
        lhs *= e4.get_num();
        rhs *= 16 * e4.get_den();
      }
      if (lhs > rhs) f.add(tag + ": final order " + std::to_string(run.final_partition.order()) + " over bound");
      runs.push_back(Json{{"graph", t},
                          {"n", n},
                          {"epsilon", rat(eps)},
                          {"p0_order", k0},
                          {"iterations", iters},
                          {"final_order", run.final_partition.order()},
                          {"q_final", prev.get_str()}});
      if (n <= 16) g_small_runs.push_back({n, eps, g, run.final_partition});
    }
  }
  out.pass = f.count == 0;
  out.summary = std::to_string(runs.size()) + " runs, " + std::to_string(total_steps) + " refinement steps, " +
                std::to_string(f.count) + " failures";
  out.report = Json{{"runs", runs}, {"failures", f.json()}};
  return out;
}

Outcome weak_certification(int workers) {
  Outcome out;
  Failures f;
  if (g_small_runs.empty()) weak_regularizer_contract(workers);
  Json rows = Json::array();
  std::map<int, int> final_orders;
  for (std::size_t k = 0; k < g_small_runs.size(); ++k) {
    const auto& rec = g_small_runs[k];
    WeakVerdict v = check_weak_regular(rec.g, rec.final_partition, rec.eps, exact_search(workers, 5));
    if (v.mode != Mode::Exact) f.add("run " + std::to_string(k) + ": check was not exhaustive");
    if (!v.regular) f.add("run " + std::to_string(k) + ": final partition not weakly regular");
    ++final_orders[rec.final_partition.order()];
    rows.push_back(Json{{"n", rec.n}, {"epsilon", rat(rec.eps)}, {"regular", v.regular}, {"deviation", v.deviation}});
  }
  out.pass = f.count == 0 && !g_small_runs.empty();
  std::string orders;
  for (auto [o, c] : final_orders) orders += (orders.empty() ? "" : ",") + std::to_string(o) + "x" + std::to_string(c);
  out.summary = std::to_string(g_small_runs.size()) + " exhaustive checks, " + std::to_string(f.count) +
                " failures; final orders " + orders;
  out.report = Json{{"checks", rows}, {"failures", f.json()}};
  return out;
}

// ---------------------------------------------------------------------------
// 3: perturbation of weakly regular bipartite instances

// Sides of 256, each cut into k contiguous classes; block densities in {1/8, ..., 7/8}.
Outcome perturbation(int workers) {
  const int side = 256;
  const Rational eps(9, 20);
  Outcome out;
  Failures f;
  Json rows = Json::array();
  int rejected = 0, max_retries_seen = 0;
  std::uint64_t seed = 3000;
  for (int made = 0; made < 50; ++seed) {
    auto r = rng_for(seed);
    const int ka = pick(r, 2, 4), kb = pick(r, 2, 4);
    std::vector<std::vector<int>> classes;
    std::vector<int> owner(2 * side);
    for (int i = 0; i < ka; ++i) classes.emplace_back();
    for (int j = 0; j < kb; ++j) classes.emplace_back();
    for (int v = 0; v < side; ++v) classes[static_cast<std::size_t>(v * ka / side)].push_back(v);
    for (int v = 0; v < side; ++v) classes[static_cast<std::size_t>(ka + v * kb / side)].push_back(side + v);
    for (std::size_t c = 0; c < classes.size(); ++c)
      for (int v : classes[c]) owner[static_cast<std::size_t>(v)] = static_cast<int>(c);
    std::vector<double> dens(static_cast<std::size_t>(ka * kb));
    for (auto& d : dens) d = pick(r, 1, 7) / 8.0;
    GraphBuilder b(2 * side, side);
    for (int u = 0; u < side; ++u)
      for (int v = side; v < 2 * side; ++v)
        if (coin(r, dens[static_cast<std::size_t>(owner[static_cast<std::size_t>(u)] * kb +
                                                  owner[static_cast<std::size_t>(v)] - ka)]))
          b.add_edge(u, v);
    DenseGraph g = std::move(b).build();
    Partition parts = Partition::from_classes(2 * side, classes);
    WeakVerdict wv = check_weak_regular_bipartite(g, parts, eps, sampled_search(workers, seed, 20000));
    if (!wv.regular) {
      ++rejected;
      continue;
    }
    ++made;
    const std::string tag = "instance " + std::to_string(seed);
    // Delta from the definition.
    const Rational d = bipartite_density(g);
    Rational delta(0);
    for (int i = 0; i < ka; ++i)
      for (int j = ka; j < ka + kb; ++j) {
        const auto& x = classes[static_cast<std::size_t>(i)];
        const auto& y = classes[static_cast<std::size_t>(j)];
        delta = delta + abs(Rational(slow_edges(g, x, y)) - d * Rational(static_cast<std::int64_t>(x.size() * y.size())));
      }
    PerturbOutcome o = perturb_pair(g, parts, eps, sampled_search(workers, seed, 20000), 16);
    max_retries_seen = std::max(max_retries_seen, o.retries);
    if (o.delta_budget != delta) f.add(tag + ": budget " + rat(o.delta_budget) + " != " + rat(delta));
    if (!o.success) f.add(tag + ": no success within 16 retries");
    if (o.retries > 16) f.add(tag + ": " + std::to_string(o.retries) + " retries");
    if (Rational(static_cast<std::int64_t>(o.edits.size())) > delta) f.add(tag + ": edits exceed the budget");
    if (edit_distance(g, o.edited_graph) != static_cast<std::int64_t>(o.edits.size()))
      f.add(tag + ": edit list does not match the edited graph");
    PairVerdict check = check_pair_regular(o.edited_graph, o.edited_graph.left_side(), o.edited_graph.right_side(),
                                           Rational(2) * eps, sampled_search(workers, seed ^ 0x5a5a, 20000));
    if (!check.regular) f.add(tag + ": independent sampled check found a violating pair");
    if (check.samples_used < 20000) f.add(tag + ": fewer than 20000 samples");
    rows.push_back(Json{{"seed", seed},
                        {"classes", Json::array({ka, kb})},
                        {"delta_budget", rat(delta)},
                        {"edits", o.edits.size()},
                        {"retries", o.retries},
                        {"deviation", rat(check.deviation)}});
  }
  out.pass = f.count == 0;
  out.summary = "50 instances (" + std::to_string(rejected) + " generated instances not weakly regular), max retries " +
                std::to_string(max_retries_seen) + ", " + std::to_string(f.count) + " failures";
  out.report = Json{{"instances", rows}, {"rejected", rejected}, {"failures", f.json()}};
  return out;
}

// ---------------------------------------------------------------------------
// 4: entropy machinery

Outcome entropy_machinery(int) {
  Outcome out;
  Failures f;
  auto r = rng_for(4000);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int defect = 0, pinsker = 0;
  double worst_defect = 0, worst_pinsker = 0;
  while (defect < 100000) {
    const int k = pick(r, 1, 20);
    std::vector<double> p(static_cast<std::size_t>(k)), d(static_cast<std::size_t>(k));
    double s = 0, mean = 0;
    for (int i = 0; i < k; ++i) {
      p[static_cast<std::size_t>(i)] = u(r);
      s += p[static_cast<std::size_t>(i)];
      const int kind = pick(r, 0, 5);
      d[static_cast<std::size_t>(i)] = kind == 0 ? 0.0 : kind == 1 ? 1.0 : u(r);
    }
    for (int i = 0; i < k; ++i) {
      p[static_cast<std::size_t>(i)] /= s;
      mean += p[static_cast<std::size_t>(i)] * d[static_cast<std::size_t>(i)];
    }
    if (mean == 0.0) continue;
    ++defect;
    // Independent evaluation of both sides.
    double lhs = -xlogx(mean), dev = 0;
    for (int i = 0; i < k; ++i) {
      const double di = d[static_cast<std::size_t>(i)];
      lhs += p[static_cast<std::size_t>(i)] * (di == 0.0 ? 0.0 : di * std::log(di));
      dev += p[static_cast<std::size_t>(i)] * std::abs(di / mean - 1.0);
    }
    const double rhs = mean / 2 * dev * dev;
    worst_defect = std::min(worst_defect, lhs - rhs);
    if (lhs < rhs - kInequalityTolerance) f.add("defect vector " + std::to_string(defect));
    if (!defect_lower_bound(p, d).holds) f.add("library defect verdict false on vector " + std::to_string(defect));
  }
  while (pinsker < 100000) {
    const int k = pick(r, 1, 50);
    std::vector<double> p(static_cast<std::size_t>(k)), q(static_cast<std::size_t>(k));
    double sp = 0, sq = 0;
    for (int i = 0; i < k; ++i) {
      p[static_cast<std::size_t>(i)] = 0.01 + u(r);
      q[static_cast<std::size_t>(i)] = coin(r, 0.2) ? 0.0 : u(r);
      sp += p[static_cast<std::size_t>(i)];
      sq += q[static_cast<std::size_t>(i)];
    }
    if (sq == 0.0) continue;
    ++pinsker;
    double kl = 0, l1 = 0;
    for (int i = 0; i < k; ++i) {
      p[static_cast<std::size_t>(i)] /= sp;
      q[static_cast<std::size_t>(i)] /= sq;
      const double qi = q[static_cast<std::size_t>(i)], pi = p[static_cast<std::size_t>(i)];
      if (qi > 0) kl += qi * std::log(qi / pi);
      l1 += std::abs(qi - pi);
    }
    worst_pinsker = std::min(worst_pinsker, kl - l1 * l1 / 2);
    if (kl < l1 * l1 / 2 - kInequalityTolerance) f.add("pinsker vector " + std::to_string(pinsker));
    if (!pinsker_check(p, q).holds) f.add("library pinsker verdict false on vector " + std::to_string(pinsker));
  }
  int triples = 0, l1_triples = 0;
  while (triples < 1000) {
    const int n = pick(r, 2, 32);
    DenseGraph g = gnp(r, n, 0.05 * pick(r, 1, 19));
    Partition p = random_partition(r, n, pick(r, 1, std::min(n, 6)));
    Partition q = random_refinement(r, p, pick(r, 1, 4));
    ++triples;
    const double hp = entropy_potential(g, p), hq = entropy_potential(g, q);
    const double floor_h = xlogx(global_density(g));
    for (double h : {hp, hq})
      if (h > kInequalityTolerance || h < floor_h - kInequalityTolerance)
        f.add("entropy outside [d ln d, 0] on triple " + std::to_string(triples));
    if (hq < hp - kInequalityTolerance) f.add("entropy decreased under refinement on triple " + std::to_string(triples));
    if (g.edge_count() == 0) continue;
    ++l1_triples;
    PotentialVsL1 c = potential_vs_l1_check(g, q, p);
    const double x = c.x, dens = global_density(g).to_double();
    if (hq - hp < 2 * x * x * dens - kInequalityTolerance || !c.holds)
      f.add("entropy gain below 2x^2p on triple " + std::to_string(triples));
  }
  while (l1_triples < 1000) {
    const int n = pick(r, 2, 32);
    DenseGraph g = gnp(r, n, 0.05 * pick(r, 1, 19));
    if (g.edge_count() == 0) continue;
    Partition p = random_partition(r, n, pick(r, 1, std::min(n, 6)));
    Partition q = random_refinement(r, p, pick(r, 1, 4));
    ++l1_triples;
    PotentialVsL1 c = potential_vs_l1_check(g, q, p);
    const double gain = entropy_potential(g, q) - entropy_potential(g, p);
    if (gain < 2 * c.x * c.x * global_density(g).to_double() - kInequalityTolerance || !c.holds)
      f.add("entropy gain below 2x^2p on extra triple " + std::to_string(l1_triples));
  }
  out.pass = f.count == 0;
  out.summary = "1e5 defect + 1e5 Pinsker vectors, " + std::to_string(triples) + " refinement triples, " +
                std::to_string(l1_triples) + " distance triples, " + std::to_string(f.count) + " failures";
  out.report = Json{{"defect_vectors", defect},
                    {"pinsker_vectors", pinsker},
                    {"worst_defect_slack", worst_defect},
                    {"worst_pinsker_slack", worst_pinsker},
                    {"refinement_triples", triples},
                    {"distance_triples", l1_triples},
                    {"failures", f.json()}};
  return out;
}

// ---------------------------------------------------------------------------
// 5: SRAL end to end

Outcome sral_end_to_end(int workers) {
  Outcome out;
  Failures f;
  Json rows = Json::array();
  const Rational delta(1, 5);
  const FSpec fspec = FSpec::parse("const:0.3");
  std::int64_t total_edits = 0;
  std::map<int, int> orders;
  for (int t = 0; t < 20; ++t) {
    const double p = t % 2 == 0 ? 1.0 / 8 : 1.0 / 16;
    DenseGraph g = random_graph(512, p, derive_seed(5000, "sral-acceptance", t));
    const std::string tag = "graph " + std::to_string(t);
    // Starting orders 1, 4, 8, 16 so that the output has class pairs to check.
    const int k0 = t % 4 == 0 ? 1 : 2 << (t % 4);
    SralResult res = sral(g, Partition::equipartition(512, k0), delta, fspec, sampled_search(workers, 50 + t, 20000));
    const std::int64_t edits = edit_distance(g, res.edited_graph);
    total_edits += edits;
    if (edits != static_cast<std::int64_t>(res.edits.size())) f.add(tag + ": edit list does not match the graph");
    if (5 * edits > g.edge_count()) f.add(tag + ": edit fraction above 1/5");
    if (res.edit_fraction != Rational(edits, g.edge_count())) f.add(tag + ": reported edit fraction is wrong");
    const double dens = 2.0 * static_cast<double>(g.edge_count()) / (512.0 * 512.0);
    const auto bound = static_cast<std::int64_t>(std::floor(2 * std::log(1 / dens) / 0.04)) + 1;
    const auto rounds = static_cast<std::int64_t>(res.iteration.rounds.size());
    if (rounds > bound) f.add(tag + ": " + std::to_string(rounds) + " rounds > " + std::to_string(bound));
    // Every class pair of P on the edited graph, independently.
    const Partition& fin = res.final_partition;
    ++orders[fin.order()];
    const Rational target = res.target_epsilon;
    if (target != grid_rational(fspec(fin.order()))) f.add(tag + ": target epsilon is not f(|P|)");
    std::int64_t pairs = 0, bad = 0;
    for (int i = 0; i < fin.order(); ++i)
      for (int j = i + 1; j < fin.order(); ++j) {
        ++pairs;
        PairVerdict v = check_pair_regular(res.edited_graph, fin.class_set(i), fin.class_set(j), target,
                                           sampled_search(workers, derive_seed(60 + t, "pair", i, j), 20000));
        bad += !v.regular;
      }
    if (bad > 0) f.add(tag + ": " + std::to_string(bad) + " irregular class pairs");
    rows.push_back(Json{{"graph", t},
                        {"p", p},
                        {"p0_order", k0},
                        {"edges", g.edge_count()},
                        {"edits", edits},
                        {"edit_fraction", rat(res.edit_fraction)},
                        {"rounds", rounds},
                        {"round_bound", bound},
                        {"final_order", fin.order()},
                        {"pairs_checked", pairs}});
  }
  std::string shape;
  for (auto [o, c] : orders) shape += (shape.empty() ? "" : ",") + std::to_string(o) + "x" + std::to_string(c);
  out.pass = f.count == 0;
  out.summary = "20 graphs, total edits " + std::to_string(total_edits) + ", final orders " + shape + ", " +
                std::to_string(f.count) + " failures";
  out.report = Json{{"graphs", rows}, {"failures", f.json()}};
  return out;
}

// ---------------------------------------------------------------------------
// 6 and 7: construction exactness

ConstructionParams desk_preset(int s, int n0, std::uint64_t seed, int workers) {
  ConstructionParams p;
  p.s = s;
  p.sizes.assign(static_cast<std::size_t>(s) + 1, 4);
  p.sizes[0] = n0;
  p.seed = seed;
  p.search.seed = seed;
  p.search.workers = workers;
  return p;
}

Json construction_suite(const ConstructionArtifact& a, Failures& f, const std::string& tag) {
  const int s = a.params.s;
  const DenseGraph& g = a.graph;
  // Density, counted pair by pair.
  std::int64_t e = 0;
  for (int u = 0; u < g.left_size(); ++u)
    for (int v = g.left_size(); v < g.n(); ++v) e += g.adjacent(u, v);
  const std::int64_t cells = static_cast<std::int64_t>(g.left_size()) * g.right_size();
  if (e * (std::int64_t{1} << s) != cells) f.add(tag + ": density " + std::to_string(e) + "/" + std::to_string(cells));
  // Per-vertex degree dichotomy below every edge of G_r.
  std::int64_t dichotomy = 0;
  for (int r = 0; r < s; ++r) {
    const std::int64_t num = std::int64_t{1} << (r + 1), den = std::int64_t{1} << s;
    const DenseGraph& gr = a.levels[static_cast<std::size_t>(r)].graph;
    const auto edges = gr.edges();
    const auto& choices = a.levels[static_cast<std::size_t>(r) + 1].choices;
    for (std::size_t k = 0; k < edges.size(); ++k)
      for (auto [p, q] : {edges[k], std::pair{edges[k].second, edges[k].first}})
        for (int l = 0; l < 2; ++l) {
          // Parallel joins side l to side l, Crossed joins side l to side 1 - l.
          const int m = choices[k] == EdgeChoice::Crossed ? 1 - l : l;
          const auto same = a.half(r, q, p, m).members(), other = a.half(r, q, p, 1 - m).members();
          for (int v : a.half(r, p, q, l).members()) {
            ++dichotomy;
            const std::int64_t d1 = slow_edges(g, {v}, same), d0 = slow_edges(g, {v}, other);
            if (d1 * den != num * static_cast<std::int64_t>(same.size()) || d0 != 0)
              f.add(tag + ": vertex " + std::to_string(v) + " breaks the degree dichotomy at level " + std::to_string(r));
          }
        }
  }
  // Cluster degree: partners of nonzero density in X_r.
  for (int r = 0; r <= s; ++r) {
    const Partition& xr = a.partitions[static_cast<std::size_t>(r)];
    const std::int64_t expect = xr.order() / (std::int64_t{1} << (r + 1));
    for (int i = 0; i < xr.order(); ++i) {
      VertexSet nb(g.n());
      for (int v : xr.members(i))
        for (int w = 0; w < g.n(); ++w)
          if (g.adjacent(v, w)) nb.set(w);
      std::int64_t partners = 0;
      for (int j = 0; j < xr.order(); ++j) partners += nb.intersects(xr.class_set(j));
      if (partners != expect)
        f.add(tag + ": class " + std::to_string(i) + " of level " + std::to_string(r) + " has " +
              std::to_string(partners) + " partners, expected " + std::to_string(expect));
    }
  }
  // Orthogonal-degree bound with the achieved alpha, and the remaining claim checks.
  ClaimsReport claims = verify_construction_claims(a);
  const ClaimCheck* orth = claims.find("orthogonal-degree");
  if (s > 0 && (orth == nullptr || !orth->passed || orth->skipped)) f.add(tag + ": orthogonal-degree bound not verified");
  for (const auto& c : claims.checks)
    if (!c.passed && !c.skipped) f.add(tag + ": claim " + c.id + " failed: " + c.detail);
  Json alphas = Json::array();
  for (std::size_t r = 1; r < a.levels.size(); ++r) alphas.push_back(rat(a.levels[r].achieved_alpha));
  return Json{{"s", s},
              {"sizes", a.params.sizes},
              {"vertices", g.n()},
              {"edges", e},
              {"dichotomy_vertices", dichotomy},
              {"achieved_alpha", alphas},
              {"claims", to_json(claims)}};
}

Outcome construction_exactness(int workers) {
  Outcome out;
  Failures f;
  Json rows = Json::array();
  for (int s = 1; s <= 3; ++s)
    for (int n0 : {4, 8}) {
      ConstructionArtifact a = build_construction_unchecked(desk_preset(s, n0, 600 + 10 * s + n0, workers));
      rows.push_back(construction_suite(a, f, "s=" + std::to_string(s) + " n0=" + std::to_string(n0)));
    }
  out.pass = f.count == 0;
  out.summary = "6 presets, " + std::to_string(f.count) + " failures";
  out.report = Json{{"presets", rows}, {"failures", f.json()}};
  return out;
}

Outcome multicolor(int workers) {
  Outcome out;
  Failures f;
  Json rows = Json::array();
  for (int s = 1; s <= 2; ++s) {
    MulticolorArtifact m = build_multicolored(desk_preset(s, 4, 700 + s, workers));
    const std::string tag = "s=" + std::to_string(s);
    const DenseGraph& k = m.complete;
    if (k.edge_count() != static_cast<std::int64_t>(k.left_size()) * k.right_size()) f.add(tag + ": base is not complete");
    std::int64_t multiple = 0, uncovered = 0;
    for (int u = 0; u < k.left_size(); ++u)
      for (int v = k.left_size(); v < k.n(); ++v) {
        int owners = 0;
        for (const auto& c : m.colors) owners += c.graph.adjacent(u, v);
        multiple += owners > 1;
        uncovered += owners == 0;
      }
    if (multiple > 0) f.add(tag + ": " + std::to_string(multiple) + " edges in two colours");
    if (uncovered > 0) f.add(tag + ": " + std::to_string(uncovered) + " edges uncovered");
    if (static_cast<int>(m.colors.size()) != (1 << s)) f.add(tag + ": wrong number of colours");
    Json colors = Json::array();
    for (std::size_t c = 0; c < m.colors.size(); ++c)
      colors.push_back(construction_suite(m.colors[c], f, tag + " colour " + std::to_string(c)));
    rows.push_back(Json{{"s", s}, {"colors", colors}, {"multiply_covered", multiple}, {"uncovered", uncovered}});
  }
  out.pass = f.count == 0;
  out.summary = "s = 1, 2; " + std::to_string(f.count) + " failures";
  out.report = Json{{"builds", rows}, {"failures", f.json()}};
  return out;
}

// ---------------------------------------------------------------------------
// 8: balanced sequences and weighted bipartitions

Outcome balanced_sequences(int) {
  const int n = 16, d = 64;
  Outcome out;
  Failures f;
  Json rows = Json::array();
  int min_qualifying = d;
  for (int t = 0; t < 20; ++t) {
    SequenceSearch s = make_bipartition_sequence(n, d, Rational(1, 2), Rational(1, 16), 800 + t, 4000);
    const std::string tag = "sequence " + std::to_string(t);
    if (!s.success) {
      f.add(tag + ": generator failed");
      continue;
    }
    // Balance from the definition.
    int worst_same = 0;
    for (int x = 0; x < n; ++x)
      for (int y = x + 1; y < n; ++y) {
        int c = 0;
        for (const auto& b : s.sequence.sides) c += b[static_cast<std::size_t>(x)] == b[static_cast<std::size_t>(y)];
        worst_same = std::max(worst_same, c);
      }
    if (16 * worst_same > 9 * d) f.add(tag + ": not 1/16-balanced");
    for (const auto& b : s.sequence.sides)
      if (std::count(b.begin(), b.end(), 0) != n / 2) f.add(tag + ": bipartition not equitable");
    auto r = rng_for(8000 + static_cast<std::uint64_t>(t));
    int seq_min = d;
    for (int k = 0; k < 100; ++k) {
      std::vector<std::int64_t> w(static_cast<std::size_t>(n));
      for (auto& x : w) x = coin(r, 0.3) ? 0 : pick(r, 0, 1000);
      if (std::all_of(w.begin(), w.end(), [](auto x) { return x == 0; })) w[static_cast<std::size_t>(pick(r, 0, n - 1))] = 1;
      std::int64_t total = 0, top = 0;
      for (auto x : w) {
        total += x;
        top = std::max(top, x);
      }
      // min side / total >= (1 - top / total) / 8  <=>  8 min side >= total - top
      int qualifying = 0;
      for (const auto& b : s.sequence.sides) {
        std::int64_t side[2] = {0, 0};
        for (int x = 0; x < n; ++x) side[b[static_cast<std::size_t>(x)]] += w[static_cast<std::size_t>(x)];
        qualifying += 8 * std::min(side[0], side[1]) >= total - top;
      }
      seq_min = std::min(seq_min, qualifying);
      if (6 * qualifying < d) f.add(tag + " weights " + std::to_string(k) + ": only " + std::to_string(qualifying));
      BalancedWeightsVerdict v = verify_balanced_weights(s.sequence, w);
      if (v.qualifying != qualifying) f.add(tag + " weights " + std::to_string(k) + ": library count differs");
    }
    min_qualifying = std::min(min_qualifying, seq_min);
    rows.push_back(Json{{"sequence", t},
                        {"achieved_alpha", rat(s.sequence.achieved_alpha)},
                        {"achieved_beta", rat(s.sequence.achieved_beta)},
                        {"min_qualifying", seq_min}});
  }
  out.pass = f.count == 0;
  out.summary = "20 sequences x 100 weightings, min qualifying " + std::to_string(min_qualifying) + " of " +
                std::to_string(d) + " (needs >= " + std::to_string((d + 5) / 6) + "), " + std::to_string(f.count) +
                " failures";
  out.report = Json{{"sequences", rows}, {"failures", f.json()}};
  return out;
}

// ---------------------------------------------------------------------------
// 9-11: exact certification at 12 per part

const Rational kEpsGrid[] = {Rational(1, 6), Rational(1, 4), Rational(1, 3), Rational(5, 12), Rational(1, 2)};

// Smallest grid epsilon at which every listed pair passes the exact check.
std::optional<Rational> certify(const DenseGraph& g, const std::vector<VertexSet>& parts, int workers) {
  for (const Rational& eps : kEpsGrid) {
    bool ok = true;
    for (std::size_t i = 0; i < parts.size() && ok; ++i)
      for (std::size_t j = i + 1; j < parts.size() && ok; ++j)
        ok = check_pair_regular(g, parts[i], parts[j], eps, exact_search(workers, 0)).regular;
    if (ok) return eps;
  }
  return std::nullopt;
}

DenseGraph multipartite_random(std::mt19937_64& r, int parts, int size, double p) {
  GraphBuilder b(parts * size);
  for (int u = 0; u < parts * size; ++u)
    for (int v = u + 1; v < parts * size; ++v)
      if (u / size != v / size && coin(r, p)) b.add_edge(u, v);
  return std::move(b).build();
}

std::vector<VertexSet> blocks(int parts, int size) {
  std::vector<VertexSet> out;
  for (int i = 0; i < parts; ++i) out.push_back(VertexSet::range(parts * size, i * size, (i + 1) * size));
  return out;
}

Outcome counting_band(int workers) {
  Outcome out;
  Failures f;
  Json rows = Json::array();
  int rejected = 0;
  std::map<std::string, int> eps_used;
  const auto parts = blocks(3, 12);
  std::uint64_t seed = 9000;
  for (int made = 0; made < 100; ++seed) {
    auto r = rng_for(seed);
    DenseGraph g = multipartite_random(r, 3, 12, 0.1 * pick(r, 2, 8));
    auto eps = certify(g, parts, workers);
    if (!eps) {
      ++rejected;
      continue;
    }
    ++made;
    ++eps_used[rat(*eps)];
    CountingBandVerdict v = counting_lemma_check(triangle_pattern(), g, parts, *eps, exact_search(workers, 0));
    std::int64_t triangles = 0;
    for (int a = 0; a < 12; ++a)
      for (int b = 12; b < 24; ++b)
        for (int c = 24; c < 36; ++c) triangles += g.adjacent(a, b) && g.adjacent(b, c) && g.adjacent(a, c);
    long double centre = 1;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) centre *= density(g, parts[static_cast<std::size_t>(i)], parts[static_cast<std::size_t>(j)]).to_double();
    const long double band = std::sqrt(27.0L * static_cast<long double>(eps->to_double()));
    const long double ratio = static_cast<long double>(triangles) / 1728.0L;
    const std::string tag = "instance " + std::to_string(seed);
    if (v.count != triangles) f.add(tag + ": count " + std::to_string(v.count) + " != " + std::to_string(triangles));
    if (std::abs(ratio - centre) > band + 1e-12L) f.add(tag + ": triangle density outside the band");
    if (!v.inside) f.add(tag + ": library verdict outside");
    rows.push_back(Json{{"seed", seed}, {"epsilon", rat(*eps)}, {"triangles", triangles}, {"centre", v.centre},
                        {"band", v.band}});
  }
  std::string used;
  for (auto [e, c] : eps_used) used += (used.empty() ? "" : ",") + e + "x" + std::to_string(c);
  out.pass = f.count == 0;
  out.summary = "100 certified instances (" + std::to_string(rejected) + " rejected), eps " + used + ", " +
                std::to_string(f.count) + " failures";
  out.report = Json{{"instances", rows}, {"rejected", rejected}, {"failures", f.json()}};
  return out;
}

Outcome pair_facts(int workers) {
  Outcome out;
  Failures f;
  Json rows = Json::array();
  int rejected = 0, codegree_checked = 0;
  const auto parts = blocks(3, 12);
  std::uint64_t seed = 10000;
  for (int made = 0; made < 100; ++seed) {
    auto r = rng_for(seed);
    DenseGraph g = multipartite_random(r, 3, 12, 0.1 * pick(r, 2, 8));
    auto eps = certify(g, parts, workers);
    if (!eps) {
      ++rejected;
      continue;
    }
    ++made;
    const VertexSet& a = parts[0];
    const VertexSet& b = parts[1];
    const VertexSet& c = parts[2];
    PairFactsReport rep = regular_pair_facts(g, a, b, c, *eps, 20, seed, exact_search(workers, seed));
    const std::string tag = "instance " + std::to_string(seed);
    // Degree exceptions from the definition.
    const Rational d = density(g, a, b);
    std::int64_t exceptions = 0;
    for (int v : b.members())
      exceptions += abs(Rational(slow_edges(g, {v}, a.members())) - d * Rational(12)) > *eps * Rational(12);
    if (exceptions != rep.degree_exceptions) f.add(tag + ": degree exception count differs");
    if (Rational(exceptions) > Rational(2) * *eps * Rational(12)) f.add(tag + ": degree fact fails");
    if (!rep.slice_fact) f.add(tag + ": " + std::to_string(rep.slice_failures) + " slice failures");
    if (!rep.codegree_skipped) {
      ++codegree_checked;
      const Rational dac = density(g, a, c), dbc = density(g, b, c), eps2 = Rational(6) * *eps / dac;
      std::int64_t cod = 0;
      for (int x : a.members())
        for (int y : b.members()) {
          std::int64_t k = 0;
          for (int z : c.members()) k += g.adjacent(x, z) && g.adjacent(y, z);
          cod += abs(Rational(k) - dac * dbc * Rational(12)) > eps2 * Rational(12);
        }
      if (cod != rep.codegree_exceptions) f.add(tag + ": codegree exception count differs");
    }
    if (!rep.all_hold()) f.add(tag + ": facts do not all hold");
    rows.push_back(to_json(rep));
  }
  out.pass = f.count == 0;
  out.summary = "100 certified pairs (" + std::to_string(rejected) + " rejected), codegree checked on " +
                std::to_string(codegree_checked) + ", " + std::to_string(f.count) + " failures";
  out.report = Json{{"pairs", rows}, {"rejected", rejected}, {"failures", f.json()}};
  return out;
}

// Z: equitable classes on 16 vertices with complete or empty pairs between
// classes, random edges inside classes and a few flipped cross edges.
Outcome common_refinement_check(int workers) {
  const int n = 16;
  Outcome out;
  Failures f;
  Json rows = Json::array();
  int rejected = 0;
  std::uint64_t seed = 11000;
  for (int made = 0; made < 50; ++seed) {
    auto r = rng_for(seed);
    const int kz = coin(r, 0.5) ? 4 : 8;
    const Rational eps = coin(r, 0.5) ? Rational(1, 32) : Rational(1, 16);
    std::vector<int> perm(n);
    for (int v = 0; v < n; ++v) perm[static_cast<std::size_t>(v)] = v;
    std::shuffle(perm.begin(), perm.end(), r);
    std::vector<int> zl(n);
    for (int i = 0; i < n; ++i) zl[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = i % kz;
    Partition z(zl);
    std::vector<std::uint8_t> type(static_cast<std::size_t>(kz * kz));
    for (int i = 0; i < kz; ++i)
      for (int j = i + 1; j < kz; ++j)
        type[static_cast<std::size_t>(i * kz + j)] = type[static_cast<std::size_t>(j * kz + i)] = coin(r, 0.5);
    GraphBuilder b(n);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) {
        const int cu = zl[static_cast<std::size_t>(u)], cv = zl[static_cast<std::size_t>(v)];
        if (cu == cv ? coin(r, 0.5) : type[static_cast<std::size_t>(cu * kz + cv)] != 0) b.add_edge(u, v);
      }
    const int flips = pick(r, 0, 2);
    for (int t = 0; t < flips; ++t) {
      int u = pick(r, 0, n - 1), v = pick(r, 0, n - 1);
      if (zl[static_cast<std::size_t>(u)] == zl[static_cast<std::size_t>(v)]) continue;
      if (b.has_edge(u, v)) b.remove_edge(u, v);
      else b.add_edge(u, v);
    }
    DenseGraph g = std::move(b).build();
    PartitionVerdict zv = check_partition_regular(g, z, eps, exact_search(workers, 0));
    if (zv.mode != Mode::Exact || !zv.weighted_criterion) {
      ++rejected;
      continue;
    }
    ++made;
    const int k = pick(r, 2, 3);
    Partition x = random_partition(r, n, k);
    Partition zx = common_refinement(z, x);
    const std::string tag = "instance " + std::to_string(seed);
    // Classes of Z ∩ X are exactly the nonempty Z_i ∩ X_j.
    std::set<std::pair<int, int>> cells;
    for (int v = 0; v < n; ++v) cells.insert({z.class_of(v), x.class_of(v)});
    if (static_cast<int>(cells.size()) != zx.order()) f.add(tag + ": wrong number of common refinement classes");
    for (int v = 0; v < n; ++v)
      for (int w = 0; w < n; ++w) {
        const bool same = z.class_of(v) == z.class_of(w) && x.class_of(v) == x.class_of(w);
        if (same != (zx.class_of(v) == zx.class_of(w))) f.add(tag + ": vertices " + std::to_string(v) + "," + std::to_string(w));
      }
    // sqrt(8 k eps), rounded down to a multiple of 1/1000.
    const std::int64_t milli = static_cast<std::int64_t>(std::floor(1000.0 * std::sqrt(8.0 * k * eps.to_double())));
    const Rational eps2 = std::min(Rational(1), Rational(milli, 1000));
    PartitionVerdict v = check_partition_regular(g, zx, eps2, exact_search(workers, 0));
    if (v.mode != Mode::Exact) f.add(tag + ": refinement check was not exhaustive");
    if (!v.weighted_criterion) f.add(tag + ": common refinement fails the weighted criterion");
    rows.push_back(Json{{"seed", seed},
                        {"z_order", kz},
                        {"epsilon", rat(eps)},
                        {"z_irregular_mass", zv.irregular_mass},
                        {"k", k},
                        {"refined_order", zx.order()},
                        {"refined_epsilon", rat(eps2)},
                        {"refined_irregular_mass", v.irregular_mass}});
  }
  out.pass = f.count == 0;
  out.summary = "50 certified instances (" + std::to_string(rejected) + " rejected), " + std::to_string(f.count) +
                " failures";
  out.report = Json{{"instances", rows}, {"rejected", rejected}, {"failures", f.json()}};
  return out;
}

std::vector<Criterion> criteria() {
  return {
      {1, "weak-regularizer-contract", 300, weak_regularizer_contract},
      {2, "weak-regularity-certification", 600, weak_certification},
      {3, "perturbation", 600, perturbation},
      {4, "entropy-machinery", 120, entropy_machinery},
      {5, "sral-end-to-end", 1800, sral_end_to_end},
      {6, "construction-exactness", 300, construction_exactness},
      {7, "multicolor-decomposition", 300, multicolor},
      {8, "balanced-bipartitions", 60, balanced_sequences},
      {9, "counting-band", 900, counting_band},
      {10, "regular-pair-facts", 600, pair_facts},
      {11, "common-refinement", 900, common_refinement_check},
  };
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"regkit acceptance suite"};
  std::vector<int> only;
  int workers = 1, alt_workers = 4;
  std::string report_dir;
  app.add_option("--only", only, "Run only these criteria (12 reruns the others that were selected)")->delimiter(',');
  app.add_option("--workers", workers, "Worker count for the main pass")->capture_default_str();
  app.add_option("--alt-workers", alt_workers, "Worker count for the determinism rerun")->capture_default_str();
  app.add_option("--report-dir", report_dir, "Write one JSON report per criterion here");
  CLI11_PARSE(app, argc, argv);
  auto selected = [&](int id) { return only.empty() || std::find(only.begin(), only.end(), id) != only.end(); };
  if (!report_dir.empty()) std::filesystem::create_directories(report_dir);

  bool all = true;
  std::map<int, std::string> rendered;
  for (const Criterion& c : criteria()) {
    if (!selected(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run(workers);
    } catch (const std::exception& e) {
      o.pass = false;
      o.summary = std::string("exception: ") + e.what();
    }
    const double secs = seconds_since(t0);
    const bool in_time = secs < c.budget_s;
    const bool pass = o.pass && in_time;
    all = all && pass;
    rendered[c.id] = render(o.report);
    if (!report_dir.empty())
      write_json(report_dir + "/criterion_" + std::to_string(c.id) + ".json",
                 Json{{"schema", kReportSchema}, {"criterion", c.name}, {"pass", pass}, {"result", o.report}});
    std::printf("criterion %2d %-30s %s  %s; %.1f s of %.0f s%s\n", c.id, c.name.c_str(), pass ? "PASS" : "FAIL",
                o.summary.c_str(), secs, c.budget_s, in_time ? "" : " (over budget)");
    std::fflush(stdout);
  }

  if (selected(12)) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<std::string> differing;
    int compared = 0;
    for (const Criterion& c : criteria()) {
      if (!rendered.count(c.id)) continue;
      ++compared;
      if (c.id == 2 && !rendered.count(1)) g_small_runs.clear();  // criterion 2 then reruns criterion 1 itself
      std::string again;
      try {
        again = render(c.run(alt_workers).report);
      } catch (const std::exception& e) {
        again = e.what();
      }
      if (again != rendered[c.id]) differing.push_back(std::to_string(c.id));
    }
    const bool pass = compared > 0 && differing.empty();
    all = all && pass;
    std::string diff;
    for (const auto& d : differing) diff += " " + d;
    std::printf("criterion 12 %-30s %s  %d reports rerun with %d workers vs %d, %s; %.1f s\n", "determinism",
                pass ? "PASS" : "FAIL", compared, alt_workers, workers,
                differing.empty() ? "all byte-identical" : ("differing:" + diff).c_str(), seconds_since(t0));
  }
  return all ? 0 : 1;
}
