#include <algorithm>
#include <map>

#include "regkit/error.hpp"
#include "regkit/regularity.hpp"
#include "regkit/rng.hpp"

namespace regkit {

bool is_biregular(const DenseGraph& g) {
  if (!g.is_bipartite()) return false;
  int left = -1, right = -1;
  for (int v = 0; v < g.n(); ++v) {
    int d = g.degree(v);
    int& ref = g.on_left(v) ? left : right;
    if (ref < 0) ref = d;
    if (ref != d) return false;
  }
  return true;
}

namespace {

void require_quasi_input(const DenseGraph& g) {
  if (!g.is_bipartite()) throw DomainError("quasirandomness needs a bipartite graph");
  if (!is_biregular(g)) throw PreconditionError("quasirandomness is defined for regular bipartite graphs");
}

// Codegree of u, u' in U towards V; the diagonal gives the degree.
template <class F>
void for_each_codegree(const DenseGraph& g, F&& f) {
  const int a = g.left_size();
  for (int u = 0; u < a; ++u)
    for (int w = 0; w < a; ++w) f(and_count(g.row(u), g.row(w), g.row_words()));
}

}  // namespace

QuasiVerdict check_quasirandom(const DenseGraph& g, const Rational& p, const Rational& delta) {
  require_quasi_input(g);
  if (delta.num() < 0) throw DomainError("negative delta");
  const Rational bound = (Rational(1) + delta) * p * p * Rational(g.right_size());
  QuasiVerdict v;
  for_each_codegree(g, [&](int c) {
    if (Rational(c) > bound) ++v.violating_pairs;
  });
  const std::int64_t u = g.left_size();
  v.allowed = delta * Rational(u * u);
  v.holds = Rational(v.violating_pairs) <= v.allowed;
  return v;
}

Rational min_quasirandom_delta(const DenseGraph& g, const Rational& p) {
  require_quasi_input(g);
  if (p.num() <= 0) throw DomainError("quasirandomness with density 0");
  // A pair with codegree c violates exactly when delta < c / (p^2 |V|) - 1.
  std::map<int, std::int64_t> hist;
  for_each_codegree(g, [&](int c) { ++hist[c]; });
  const Rational scale = p * p * Rational(g.right_size());
  std::vector<std::pair<Rational, std::int64_t>> breaks;  // ascending positive breakpoints
  for (auto [c, cnt] : hist) {
    Rational b = Rational(c) / scale - Rational(1);
    if (b.num() > 0) breaks.emplace_back(b, cnt);
  }
  std::int64_t above = 0;
  for (auto& b : breaks) above += b.second;
  const std::int64_t u2 = static_cast<std::int64_t>(g.left_size()) * g.left_size();
  Rational lower(0);
  for (std::size_t i = 0; i <= breaks.size(); ++i) {
    // On [lower, next) exactly `above` pairs violate.
    Rational cand = std::max(lower, Rational(above, u2));
    if (i == breaks.size() || cand < breaks[i].first) return cand;
    lower = breaks[i].first;
    above -= breaks[i].second;
  }
  return lower;
}

PairFactsReport regular_pair_facts(const DenseGraph& g, const VertexSet& a, const VertexSet& b,
                                   const std::optional<VertexSet>& c, const Rational& eps, int slices,
                                   std::uint64_t seed, const SearchConfig& cfg) {
  SearchConfig exact = cfg;
  exact.mode = Mode::Exact;
  auto certify = [&](const VertexSet& x, const VertexSet& y) {
    if (!check_pair_regular(g, x, y, eps, exact).regular)
      throw PreconditionError("pair facts need exactly certified regular pairs");
  };
  certify(a, b);
  if (c) {
    certify(a, *c);
    certify(b, *c);
  }
  PairFactsReport r;
  r.epsilon = eps;
  r.density = density(g, a, b);
  const Rational d = r.density;
  const std::int64_t na = a.count(), nb = b.count();

  // Degrees of B into A.
  b.for_each([&](int v) {
    Rational dev = abs(Rational(g.degree_into(v, a)) - d * Rational(na));
    if (dev > eps * Rational(na)) ++r.degree_exceptions;
  });
  r.degree_fact = Rational(r.degree_exceptions) <= Rational(2) * eps * Rational(nb);

  // Random slices.
  Rng rng(derive_seed(seed, "pair-facts-slices"));
  const auto am = a.members(), bm = b.members();
  for (int t = 0; t < slices; ++t) {
    Rational alpha = std::min(Rational(1), eps * Rational(1 + t % 3));
    int amin = static_cast<int>(std::max<std::int64_t>(1, alpha.ceil_times(na)));
    int bmin = static_cast<int>(std::max<std::int64_t>(1, alpha.ceil_times(nb)));
    int sa = static_cast<int>(uniform_int(rng, amin, na));
    int sb = static_cast<int>(uniform_int(rng, bmin, nb));
    VertexSet a2(g.n()), b2(g.n());
    for (int i : sample_subset(rng, static_cast<int>(na), sa)) a2.set(am[static_cast<std::size_t>(i)]);
    for (int i : sample_subset(rng, static_cast<int>(nb), sb)) b2.set(bm[static_cast<std::size_t>(i)]);
    ++r.slices_tested;
    Rational slice_eps = Rational(2) * eps / alpha;
    bool ok = abs(density(g, a2, b2) - d) <= eps;
    if (ok && slice_eps < Rational(1)) ok = check_pair_regular(g, a2, b2, slice_eps, exact).regular;
    if (!ok) ++r.slice_failures;
  }
  r.slice_fact = r.slice_failures == 0;

  // Codegrees into C.
  if (c) {
    Rational dac = density(g, a, *c);
    Rational dbc = density(g, b, *c);
    if (!dac.is_zero()) {
      r.codegree_skipped = false;
      r.codegree_eps = Rational(6) * eps / dac;
      const std::int64_t nc = c->count();
      const Rational centre = dac * dbc * Rational(nc);
      const Rational band = r.codegree_eps * Rational(nc);
      a.for_each([&](int x) {
        b.for_each([&](int y) {
          if (abs(Rational(codegree(g, x, y, *c)) - centre) > band) ++r.codegree_exceptions;
        });
      });
      r.codegree_fact = Rational(r.codegree_exceptions) <= r.codegree_eps * Rational(na * nb);
    }
  }
  return r;
}

}  // namespace regkit
