#include "regkit/counting.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <gmpxx.h>

#include "regkit/error.hpp"
#include "regkit/parallel.hpp"
#include "regkit/regularity.hpp"

namespace regkit {

bool PatternGraph::adjacent(int i, int j) const {
  if (i > j) std::swap(i, j);
  return std::binary_search(edges.begin(), edges.end(), std::make_pair(i, j));
}

PatternGraph make_pattern(int h, std::vector<std::pair<int, int>> edges, std::vector<int> map) {
  if (h < 1) throw DomainError("pattern needs at least one vertex");
  for (auto& [i, j] : edges) {
    if (i < 0 || j < 0 || i >= h || j >= h) throw DomainError("pattern edge out of range");
    if (i == j) throw DomainError("pattern has a loop");
    if (i > j) std::swap(i, j);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) throw DomainError("pattern has a repeated edge");
  if (!map.empty()) {
    if (static_cast<int>(map.size()) != h) throw DomainError("embedding map must cover every pattern vertex");
    for (int c : map)
      if (c < 0) throw DomainError("negative cluster in embedding map");
  }
  PatternGraph p;
  p.h = h;
  p.edges = std::move(edges);
  p.map = std::move(map);
  return p;
}

PatternGraph triangle_pattern() { return make_pattern(3, {{0, 1}, {0, 2}, {1, 2}}); }

void write_pattern(std::ostream& out, const PatternGraph& p) {
  out << "pattern " << p.h << ' ' << p.m() << '\n';
  for (auto [i, j] : p.edges) out << "e " << i << ' ' << j << '\n';
  for (std::size_t i = 0; i < p.map.size(); ++i) out << "map " << i << ' ' << p.map[i] << '\n';
}

PatternGraph read_pattern(std::istream& in) {
  std::string tag;
  long long h = -1, m = -1;
  if (!(in >> tag >> h >> m) || tag != "pattern" || h < 1 || m < 0) throw DomainError("pattern file: bad header");
  std::vector<std::pair<int, int>> edges;
  std::vector<int> map;
  std::vector<char> mapped;
  while (in >> tag) {
    long long a = -1, b = -1;
    if (!(in >> a >> b)) throw DomainError("pattern file: truncated line");
    if (tag == "e") {
      edges.emplace_back(static_cast<int>(a), static_cast<int>(b));
    } else if (tag == "map") {
      if (a < 0 || a >= h) throw DomainError("pattern file: map entry out of range");
      if (map.empty()) {
        map.assign(static_cast<std::size_t>(h), -1);
        mapped.assign(static_cast<std::size_t>(h), 0);
      }
      map[static_cast<std::size_t>(a)] = static_cast<int>(b);
      mapped[static_cast<std::size_t>(a)] = 1;
    } else {
      throw DomainError("pattern file: unknown line tag " + tag);
    }
  }
  if (static_cast<long long>(edges.size()) != m) throw DomainError("pattern file: edge count mismatch");
  if (!map.empty() && std::find(mapped.begin(), mapped.end(), 0) != mapped.end())
    throw DomainError("pattern file: map is not total");
  return make_pattern(static_cast<int>(h), std::move(edges), std::move(map));
}

PatternGraph load_pattern(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open pattern file: " + path);
  return read_pattern(in);
}

std::string to_string(CountMode m) {
  switch (m) {
    case CountMode::Induced:
      return "induced";
    case CountMode::NonInduced:
      return "non-induced";
    case CountMode::FCopy:
      return "f-copy";
  }
  return "induced";
}

CountMode parse_count_mode(const std::string& s) {
  if (s == "induced") return CountMode::Induced;
  if (s == "non-induced") return CountMode::NonInduced;
  if (s == "f-copy") return CountMode::FCopy;
  throw DomainError("unknown count mode: " + s);
}

std::vector<VertexSet> clusters_of(const Partition& p) {
  std::vector<VertexSet> out;
  for (int c = 0; c < p.order(); ++c) out.push_back(p.class_set(c));
  return out;
}

namespace {

struct Counter {
  const PatternGraph& h;
  const DenseGraph& g;
  const std::vector<const VertexSet*> hosts;
  bool induced;
  std::vector<int> chosen;

  std::int64_t run(int i) {
    VertexSet cand = *hosts[static_cast<std::size_t>(i)];
    const int w = g.row_words();
    Word* c = cand.data();
    for (int j = 0; j < i; ++j) {
      const Word* row = g.row(chosen[static_cast<std::size_t>(j)]);
      if (h.adjacent(i, j)) {
        for (int k = 0; k < w; ++k) c[k] &= row[k];
      } else if (induced) {
        for (int k = 0; k < w; ++k) c[k] &= ~row[k];
        cand.reset(chosen[static_cast<std::size_t>(j)]);
      }
    }
    if (i + 1 == h.h) return cand.count();
    std::int64_t total = 0;
    cand.for_each([&](int v) {
      chosen[static_cast<std::size_t>(i)] = v;
      total += run(i + 1);
    });
    return total;
  }
};

}  // namespace

std::int64_t count_copies(const PatternGraph& h, const DenseGraph& g, const std::vector<VertexSet>& clusters,
                          CountMode mode, int workers, std::int64_t budget) {
  if (h.h > 6) throw CapabilityError("copy counting is limited to patterns on at most 6 vertices");
  std::vector<const VertexSet*> hosts;
  for (int i = 0; i < h.h; ++i) {
    int c = mode == CountMode::FCopy ? h.host(i) : i;
    if (c >= static_cast<int>(clusters.size())) throw DomainError("pattern vertex placed in a missing cluster");
    const VertexSet& s = clusters[static_cast<std::size_t>(c)];
    if (s.universe() != g.n()) throw DomainError("cluster over a different vertex set");
    hosts.push_back(&s);
  }
  if (mode != CountMode::FCopy)
    for (int i = 0; i < h.h; ++i)
      for (int j = i + 1; j < h.h; ++j)
        if (hosts[static_cast<std::size_t>(i)]->intersects(*hosts[static_cast<std::size_t>(j)]))
          throw DomainError("placed counting needs disjoint clusters");
  long double product = 1;
  for (auto* s : hosts) product *= s->count();
  if (product > static_cast<long double>(budget)) throw CapabilityError("enumeration budget exceeded");

  const auto first = hosts[0]->members();
  std::vector<std::int64_t> part(first.size(), 0);
  parallel_for(first.size(), workers, [&](std::size_t k) {
    Counter c{h, g, hosts, mode == CountMode::Induced, std::vector<int>(static_cast<std::size_t>(h.h), -1)};
    c.chosen[0] = first[k];
    part[k] = h.h == 1 ? 1 : c.run(1);
  });
  std::int64_t total = 0;
  for (auto x : part) total += x;
  return total;
}

namespace {

mpq_class to_mpq(const Rational& r) {
  return mpq_class(mpz_class(static_cast<long>(r.num())), mpz_class(static_cast<long>(r.den())));
}

}  // namespace

CountingBandVerdict counting_lemma_check(const PatternGraph& h, const DenseGraph& g,
                                         const std::vector<VertexSet>& clusters, const Rational& eps,
                                         const SearchConfig& cfg) {
  if (h.h > 4) throw DomainError("counting lemma check supports patterns on at most 4 vertices");
  if (static_cast<int>(clusters.size()) < h.h) throw DomainError("one cluster per pattern vertex expected");
  SearchConfig exact = cfg;
  exact.mode = Mode::Exact;
  mpq_class centre = 1;
  for (int i = 0; i < h.h; ++i)
    for (int j = i + 1; j < h.h; ++j) {
      const auto& a = clusters[static_cast<std::size_t>(i)];
      const auto& b = clusters[static_cast<std::size_t>(j)];
      if (!check_pair_regular(g, a, b, eps, exact).regular)
        throw PreconditionError("cluster pair (" + std::to_string(i) + ", " + std::to_string(j) +
                                ") is not exactly eps-regular");
      mpq_class d = to_mpq(density(g, a, b));
      centre *= h.adjacent(i, j) ? d : mpq_class(1) - d;
    }
  CountingBandVerdict v;
  v.count = count_copies(h, g, clusters, CountMode::Induced, cfg.workers);
  mpz_class product = 1;
  for (int i = 0; i < h.h; ++i) product *= clusters[static_cast<std::size_t>(i)].count();
  v.product = product.get_si();
  v.centre = centre.get_d();
  const double h3 = std::pow(static_cast<double>(h.h), 3.0);
  v.band = std::sqrt(h3 * eps.to_double());
  v.lower = static_cast<double>(v.product) * (v.centre - v.band);
  v.upper = static_cast<double>(v.product) * (v.centre + v.band);
  // |count - P c| <= P sqrt(h^3 eps)  <=>  (count - P c)^2 <= P^2 h^3 eps
  mpq_class diff = mpq_class(mpz_class(static_cast<long>(v.count))) - mpq_class(product) * centre;
  mpq_class rhs = mpq_class(product * product) * (h.h * h.h * h.h) * to_mpq(eps);
  v.inside = diff * diff <= rhs;
  return v;
}

bool pair_far(const DenseGraph& g1, const DenseGraph& g2, const VertexSet& v, const VertexSet& w,
              const Rational& delta) {
  if (g1.n() != g2.n()) throw DomainError("graphs on different vertex sets");
  if (delta.num() < 0) throw DomainError("negative delta");
  std::int64_t sym = 0, e2 = 0;
  const int words = g1.row_words();
  v.for_each([&](int a) {
    const Word* r1 = g1.row(a);
    const Word* r2 = g2.row(a);
    for (int k = 0; k < words; ++k) {
      sym += std::popcount((r1[k] ^ r2[k]) & w.data()[k]);
      e2 += std::popcount(r2[k] & w.data()[k]);
    }
  });
  // sym > sqrt(delta) e2  <=>  sym^2 > delta e2^2
  mpq_class lhs = mpq_class(mpz_class(static_cast<long>(sym)) * sym);
  mpq_class rhs = to_mpq(delta) * mpz_class(static_cast<long>(e2)) * e2;
  return lhs > rhs;
}

ApproxCountingVerdict approx_counting_check(const PatternGraph& h, const DenseGraph& g_sparse, const DenseGraph& g,
                                            const std::vector<VertexSet>& clusters, const Rational& eps,
                                            const Rational& p, const Rational& delta, const SearchConfig& cfg) {
  if (g_sparse.n() != g.n()) throw DomainError("graphs on different vertex sets");
  if (p.num() <= 0 || p > Rational(1)) throw DomainError("p must lie in (0, 1]");
  if (delta.num() < 0) throw DomainError("negative delta");
  if (clusters.empty()) throw DomainError("no clusters");
  SearchConfig exact = cfg;
  exact.mode = Mode::Exact;
  const int k = static_cast<int>(clusters.size());
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) {
      const auto& ua = clusters[static_cast<std::size_t>(a)];
      const auto& ub = clusters[static_cast<std::size_t>(b)];
      const std::int64_t e = edge_count(g_sparse, ua, ub);
      if (e != 0) {
        if (density(g_sparse, ua, ub) < p)
          throw PreconditionError("a nonempty pair of the sparse graph has density below p");
        if (!check_pair_regular(g_sparse, ua, ub, eps, exact).regular)
          throw PreconditionError("a nonempty pair of the sparse graph is not exactly eps-regular");
      }
      std::int64_t sym = 0;
      ua.for_each([&](int u) {
        for (int kk = 0; kk < g.row_words(); ++kk)
          sym += std::popcount((g.row(u)[kk] ^ g_sparse.row(u)[kk]) & ub.data()[kk]);
      });
      if (Rational(sym) > delta * Rational(e)) throw PreconditionError("the graphs are not delta-close on a pair");
    }
  if (count_copies(h, g_sparse, clusters, CountMode::FCopy, cfg.workers) == 0)
    throw PreconditionError("the sparse graph contains no copy of the pattern");

  ApproxCountingVerdict v;
  v.count = count_copies(h, g, clusters, CountMode::FCopy, cfg.workers);
  int n = clusters.front().count();
  for (const auto& c : clusters) n = std::min(n, c.count());
  const int m = h.m();
  const mpq_class pq = to_mpq(p), dq = to_mpq(delta), eq = to_mpq(eps);
  mpq_class pm = 1;
  for (int i = 0; i < m; ++i) pm *= pq;
  mpz_class nh = 1;
  for (int i = 0; i < h.h; ++i) nh *= n;
  const mpq_class bound = (mpq_class(1) - dq * m) / 2 * pm * mpq_class(nh);
  v.bound = bound.get_d();
  v.bound_exact = bound.get_str();
  mpz_class h4 = mpz_class(h.h) * h.h * h.h * h.h;
  mpq_class inner = pm * pq / (mpq_class(h4) * 32);
  mpz_class hpow = 1;
  for (int i = 0; i < h.h + 3; ++i) hpow *= h.h;
  const bool delta_ok = m == 0 || dq <= mpq_class(1, 2 * m);
  const bool eps_ok = eq <= inner * inner;
  const bool n_ok = mpq_class(n) >= mpq_class(hpow * 4) / pm;
  v.hypotheses_hold = delta_ok && eps_ok && n_ok;
  v.asserted = v.hypotheses_hold;
  v.holds = mpq_class(mpz_class(static_cast<long>(v.count))) >= bound;
  return v;
}

}  // namespace regkit
