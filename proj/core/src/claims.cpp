#include <cmath>

#include "regkit/construction.hpp"
#include "regkit/parallel.hpp"
#include "regkit/regularity.hpp"
#include "regkit/rng.hpp"
#include "regkit/sral.hpp"

namespace regkit {

bool ClaimsReport::all_passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

const ClaimCheck* ClaimsReport::find(const std::string& id) const {
  for (const auto& c : checks)
    if (c.id == id) return &c;
  return nullptr;
}

namespace {

ClaimCheck named(const char* id) {
  ClaimCheck c;
  c.id = id;
  return c;
}

Rational pow2(int k) { return k >= 0 ? Rational(std::int64_t{1} << k) : Rational(1, std::int64_t{1} << -k); }

void fail(ClaimCheck& c, const std::string& what) {
  if (c.failures == 0) c.detail = what;
  ++c.failures;
  c.passed = false;
}

ClaimCheck check_refinement(const ConstructionArtifact& a) {
  ClaimCheck c = named("refinement");
  std::int64_t expected = 2;
  for (int r = 0; r <= a.params.s; ++r) {
    const Partition& x = a.partitions[static_cast<std::size_t>(r)];
    expected *= a.params.sizes[static_cast<std::size_t>(r)];
    ++c.checked;
    if (x.order() != expected) fail(c, "level " + std::to_string(r) + " has the wrong order");
    if (!x.is_equitable()) fail(c, "level " + std::to_string(r) + " is not equitable");
    if (r > 0 && !is_refinement(x, a.partitions[static_cast<std::size_t>(r) - 1]))
      fail(c, "level " + std::to_string(r) + " does not refine its parent");
  }
  return c;
}

ClaimCheck check_level_density(const ConstructionArtifact& a) {
  ClaimCheck c = named("level-density");
  for (int r = 0; r <= a.params.s; ++r) {
    const auto& lvl = a.levels[static_cast<std::size_t>(r)];
    ++c.checked;
    if (bipartite_density(lvl.graph) != pow2(-r)) fail(c, "G_" + std::to_string(r) + " has the wrong density");
    for (int v = 0; v < lvl.graph.n(); ++v)
      if (lvl.graph.degree(v) != lvl.degree) {
        fail(c, "G_" + std::to_string(r) + " is not regular");
        break;
      }
  }
  ++c.checked;
  if (bipartite_density(a.graph) != pow2(-a.params.s)) fail(c, "final graph has the wrong density");
  return c;
}

// Degrees into Y_{X,l'} for every edge (X, Y) of G_{r-1}, both orientations.
ClaimCheck check_degree_table(const ConstructionArtifact& a) {
  ClaimCheck c = named("degree-table");
  const DenseGraph& g = a.graph;
  const auto& workers = a.params.search.workers;
  for (int r = 1; r <= a.params.s; ++r) {
    const auto& prev = a.levels[static_cast<std::size_t>(r) - 1];
    const auto& lvl = a.levels[static_cast<std::size_t>(r)];
    const auto clusters = a.clusters(r - 1);
    const Rational dens = pow2(r - a.params.s);  // 2^r p
    const Rational off_factor = Rational(2) * (Rational(1, 4) + lvl.achieved_alpha);
    const auto edges = prev.graph.edges();
    std::vector<std::pair<int, int>> oriented;
    std::vector<EdgeChoice> choice;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      oriented.emplace_back(edges[e].first, edges[e].second);
      oriented.emplace_back(edges[e].second, edges[e].first);
      choice.push_back(lvl.choices[e]);
      choice.push_back(lvl.choices[e]);
    }
    std::vector<ClaimCheck> part(oriented.size());
    parallel_for(oriented.size(), workers, [&](std::size_t k) {
      auto [x, y] = oriented[k];
      ClaimCheck& pc = part[k];
      const VertexSet& xs = clusters[static_cast<std::size_t>(x)];
      for (int l = 0; l < 2; ++l) {
        const int lp = choice[k] == EdgeChoice::Crossed ? 1 - l : l;
        const VertexSet xl = a.half(r - 1, x, y, l);
        const VertexSet yl = a.half(r - 1, y, x, lp);
        const VertexSet yo = a.half(r - 1, y, x, 1 - lp);
        const Rational exact = dens * Rational(yl.count());
        const Rational off_bound = off_factor * exact;
        for (int v = 0; v < g.n(); ++v) {
          ++pc.checked;
          const Rational deg(g.degree_into(v, yl));
          if (xl.test(v)) {
            if (deg != exact || g.degree_into(v, yo) != 0) fail(pc, "vertex on the joined half has the wrong degree");
          } else if (xs.test(v)) {
            if (deg.num() != 0) fail(pc, "vertex on the other half has a neighbour");
          } else if (deg > off_bound) {
            fail(pc, "vertex outside X exceeds the orthogonality bound");
          }
        }
      }
    });
    for (auto& pc : part) {
      c.checked += pc.checked;
      if (pc.failures > 0) {
        if (c.failures == 0) c.detail = "level " + std::to_string(r) + ": " + pc.detail;
        c.failures += pc.failures;
        c.passed = false;
      }
    }
  }
  return c;
}

ClaimCheck check_cluster_degree(const ConstructionArtifact& a) {
  ClaimCheck c = named("cluster-degree");
  for (int r = 0; r <= a.params.s; ++r) {
    const Partition& x = a.partitions[static_cast<std::size_t>(r)];
    auto m = class_edge_matrix(a.graph, x);
    const std::int64_t expected = x.order() / (std::int64_t{2} << r);
    for (int i = 0; i < x.order(); ++i) {
      std::int64_t partners = 0;
      for (int j = 0; j < x.order(); ++j) partners += m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != 0;
      ++c.checked;
      if (partners != expected) fail(c, "level " + std::to_string(r) + " cluster has the wrong number of partners");
    }
  }
  return c;
}

// e(x', W_{Y,l}) <= (1/4 + alpha_W) n_r inside G_r, for x != y in N(w), x' a child of x.
ClaimCheck check_orthogonal_degree(const ConstructionArtifact& a) {
  ClaimCheck c = named("orthogonal-degree");
  for (int r = 1; r <= a.params.s; ++r) {
    const DenseGraph& g = a.levels[static_cast<std::size_t>(r) - 1].graph;
    const auto& lvl = a.levels[static_cast<std::size_t>(r)];
    const DenseGraph& h = lvl.graph;
    const int n = a.params.sizes[static_cast<std::size_t>(r)];
    for (int w = 0; w < g.n(); ++w) {
      const auto& seq = lvl.sequences[static_cast<std::size_t>(w)];
      const Rational bound = (Rational(1, 4) + seq.achieved_alpha) * Rational(n);
      const auto nbrs = g.neighbors(w).members();
      for (std::size_t iy = 0; iy < nbrs.size(); ++iy)
        for (int l = 0; l < 2; ++l) {
          VertexSet wy(h.n());
          const auto& sides = seq.sides[iy];
          for (int t = 0; t < n; ++t)
            if (sides[static_cast<std::size_t>(t)] == l) wy.set(w * n + t);
          for (std::size_t ix = 0; ix < nbrs.size(); ++ix) {
            if (ix == iy) continue;
            const int x = nbrs[ix];
            for (int t = 0; t < n; ++t) {
              ++c.checked;
              if (Rational(h.degree_into(x * n + t, wy)) > bound)
                fail(c, "level " + std::to_string(r) + " exceeds (1/4 + alpha) n");
            }
          }
        }
    }
  }
  return c;
}

ClaimCheck check_quasirandom_step(const ConstructionArtifact& a) {
  ClaimCheck c = named("quasirandom-step");
  for (int r = 0; r < a.params.s; ++r) {
    const DenseGraph& g = a.levels[static_cast<std::size_t>(r)].graph;
    const DenseGraph& next = r + 1 == a.params.s ? a.graph : a.levels[static_cast<std::size_t>(r) + 1].graph;
    const Rational delta = min_quasirandom_delta(g, pow2(-r));
    const Rational alpha = a.levels[static_cast<std::size_t>(r) + 1].achieved_alpha;
    const Rational slack = std::max(Rational(8) * alpha, Rational(2, g.n()));
    ++c.checked;
    if (!check_quasirandom(next, pow2(-r - 1), delta + slack).holds)
      fail(c, "level " + std::to_string(r + 1) + " is not quasirandom with the inherited parameter");
  }
  return c;
}

// Random Z concentrated on one cluster X of X_{r-1}.
ClaimCheck check_split_clusters(const ConstructionArtifact& a) {
  ClaimCheck c = named("split-clusters");
  if (a.params.s == 0) return c;
  const int samples = a.params.claim_samples;
  const int total = a.graph.n();
  bool any_level = false;
  for (int r = 1; r <= a.params.s; ++r) {
    const auto& lvl = a.levels[static_cast<std::size_t>(r)];
    if (lvl.achieved_beta > Rational(1, 16)) continue;
    any_level = true;
    const DenseGraph& g = a.levels[static_cast<std::size_t>(r) - 1].graph;
    const auto parents = a.clusters(r - 1);
    const auto children = a.clusters(r);
    const int n = a.params.sizes[static_cast<std::size_t>(r)];
    Rng rng(derive_seed(a.params.seed, "claims-split", r));
    for (int t = 0; t < samples; ++t) {
      const int x = static_cast<int>(uniform_int(rng, 0, g.n() - 1));
      VertexSet z(total);
      std::vector<double> keep(static_cast<std::size_t>(n));
      for (auto& q : keep) q = uniform_unit(rng);
      const double outside = 0.2 * uniform_unit(rng);
      for (int v = 0; v < total; ++v) {
        const int owner = v / (total / g.n());
        if (owner == x) {
          const int child = v / (total / (g.n() * n)) - x * n;
          if (bernoulli(rng, keep[static_cast<std::size_t>(child)])) z.set(v);
        } else if (bernoulli(rng, outside)) {
          z.set(v);
        }
      }
      if ((z & parents[static_cast<std::size_t>(x)]).empty()) continue;
      const std::int64_t zs = z.count();
      const std::int64_t out_x = zs - z.intersection_count(parents[static_cast<std::size_t>(x)]);
      std::int64_t min_out = zs;
      for (const auto& ch : children) min_out = std::min<std::int64_t>(min_out, zs - z.intersection_count(ch));
      // 8 min{|Z ∩ X_{Y,0}|, |Z ∩ X_{Y,1}|} >= (zeta' - zeta)|Z| = min_out - out_x
      std::int64_t good = 0;
      for (int y : g.neighbors(x).members()) {
        std::int64_t h0 = z.intersection_count(a.half(r - 1, x, y, 0));
        std::int64_t h1 = z.intersection_count(a.half(r - 1, x, y, 1));
        if (8 * std::min(h0, h1) >= min_out - out_x) ++good;
      }
      ++c.checked;
      if (6 * good < g.degree(x)) fail(c, "level " + std::to_string(r) + ": too few clusters split Z");

      // The same sequence through the weight form.
      std::vector<std::int64_t> weights(static_cast<std::size_t>(n));
      for (int ch = 0; ch < n; ++ch)
        weights[static_cast<std::size_t>(ch)] = z.intersection_count(children[static_cast<std::size_t>(x * n + ch)]);
      ++c.checked;
      if (!verify_balanced_weights(lvl.sequences[static_cast<std::size_t>(x)], weights).holds)
        fail(c, "level " + std::to_string(r) + ": balanced-sequence count below d/6");
    }
  }
  if (!any_level) {
    c.skipped = true;
    c.detail = "no level is 1/16-balanced";
  }
  return c;
}

ClaimCheck check_super_regularity(const ConstructionArtifact& a, const Rational& eps) {
  ClaimCheck c = named("super-regularity");
  if (eps >= Rational(1)) {
    c.skipped = true;
    c.detail = "measured parameter " + eps.str() + " is vacuous";
    return c;
  }
  SearchConfig cfg = a.params.search;
  cfg.mode = Mode::Sampled;
  cfg.seed = derive_seed(a.params.seed, "claims-super");
  ++c.checked;
  PairVerdict v = check_super_regular(a.graph, eps, cfg);
  if (!v.regular) fail(c, "sampled witness with deviation " + v.deviation.str());
  return c;
}

// (eps)-regularity gives e(A,B) <= (1 + eps) p|A||B| when |B| >= eps|V| and
// e(A,B) <= p|A|(|B| + eps|V|) otherwise, for |A| >= eps|U|.
ClaimCheck check_edge_bound(const ConstructionArtifact& a, const Rational& eps) {
  ClaimCheck c = named("edge-bound");
  if (eps >= Rational(1)) {
    c.skipped = true;
    c.detail = "measured parameter " + eps.str() + " is vacuous";
    return c;
  }
  const DenseGraph& g = a.graph;
  const int nu = g.left_size(), nv = g.right_size();
  const Rational p = pow2(-a.params.s);
  const int amin = min_subset_size(eps, nu);
  Rng rng(derive_seed(a.params.seed, "claims-edge-bound"));
  auto test = [&](const VertexSet& as, const VertexSet& bs) {
    if (as.count() < amin || bs.empty()) return;
    const std::int64_t e = edge_count(g, as, bs);
    const Rational na(as.count()), nb(bs.count());
    const Rational bound = Rational(bs.count()) >= eps * Rational(nv) ? (Rational(1) + eps) * p * na * nb
                                                                     : p * na * (nb + eps * Rational(nv));
    ++c.checked;
    if (Rational(e) > bound) fail(c, "e(A,B) above the regularity bound");
  };
  // Structured pairs: halves of associated bipartitions on the two sides.
  if (a.params.s > 0) {
    const DenseGraph& g0 = a.levels[static_cast<std::size_t>(a.params.s) - 1].graph;
    for (auto [x, y] : g0.edges())
      for (int l = 0; l < 2; ++l) test(a.half(a.params.s - 1, x, y, l), a.half(a.params.s - 1, y, x, l));
  }
  for (int t = 0; t < a.params.claim_samples * 8; ++t) {
    const int sa = static_cast<int>(uniform_int(rng, amin, nu));
    const int sb = static_cast<int>(uniform_int(rng, 1, nv));
    VertexSet as(g.n()), bs(g.n());
    for (int i : sample_subset(rng, nu, sa)) as.set(i);
    for (int i : sample_subset(rng, nv, sb)) bs.set(nu + i);
    test(as, bs);
  }
  return c;
}

}  // namespace

ClaimsReport verify_construction_claims(const ConstructionArtifact& a) {
  if (a.levels.size() != static_cast<std::size_t>(a.params.s) + 1 ||
      a.partitions.size() != static_cast<std::size_t>(a.params.s) + 1)
    throw DomainError("incomplete construction artifact");
  ClaimsReport rep;
  rep.checks.push_back(check_refinement(a));
  rep.checks.push_back(check_level_density(a));
  rep.checks.push_back(check_degree_table(a));
  rep.checks.push_back(check_cluster_degree(a));
  rep.checks.push_back(check_orthogonal_degree(a));
  rep.checks.push_back(check_quasirandom_step(a));
  rep.checks.push_back(check_split_clusters(a));

  const Rational p = pow2(-a.params.s);
  rep.quasirandom_delta = min_quasirandom_delta(a.graph, p);
  // (p, eps p)-quasirandom gives (2 eps^{1/7})-regular.
  const double eps_qr = (rep.quasirandom_delta / p).to_double();
  rep.regularity_epsilon = 2.0 * std::pow(eps_qr, 1.0 / 7.0);
  // Round up so the checked parameter is never below the derived one.
  Rational eps(1);
  if (rep.regularity_epsilon <= 0.0)
    eps = Rational(1, 1000000);
  else if (rep.regularity_epsilon < 1.0)
    eps = std::min(Rational(1), grid_rational(rep.regularity_epsilon) + Rational(1, 1000000));
  rep.checks.push_back(check_super_regularity(a, eps));
  rep.checks.push_back(check_edge_bound(a, eps));
  return rep;
}

}  // namespace regkit
