#include <algorithm>
#include <bit>
#include <numeric>

#include "regkit/error.hpp"
#include "regkit/parallel.hpp"
#include "regkit/regularity.hpp"
#include "regkit/rng.hpp"

namespace regkit {

std::string to_string(Mode m) { return m == Mode::Exact ? "exact" : "sampled"; }

Mode parse_mode(const std::string& s) {
  if (s == "exact") return Mode::Exact;
  if (s == "sampled") return Mode::Sampled;
  throw DomainError("unknown mode: " + s);
}

int min_subset_size(const Rational& eps, int size) {
  return static_cast<int>(std::max<std::int64_t>(1, eps.ceil_times(size)));
}

namespace {

using i128 = __int128;

// Nonnegative fraction with 128-bit parts; magnitudes stay below 2^62 each.
struct Frac {
  i128 num = -1;  // -1 marks "nothing evaluated"
  i128 den = 1;
};

bool frac_greater(const Frac& a, const Frac& b) { return a.num * b.den > b.num * a.den; }
bool frac_exceeds(const Frac& a, const Rational& r) { return a.num * r.den() > static_cast<i128>(r.num()) * a.den; }

// |sum/(x*y) - ref|
Frac deviation_of(std::int64_t sum, std::int64_t x, std::int64_t y, const Rational& ref) {
  i128 xy = static_cast<i128>(x) * y;
  i128 diff = static_cast<i128>(sum) * ref.den() - static_cast<i128>(ref.num()) * xy;
  if (diff < 0) diff = -diff;
  return Frac{diff, xy * ref.den()};
}

// Best second set for a fixed first set of size x, from the degrees of the
// candidate vertices into the first set. For each size b the extreme
// densities come from the b largest or the b smallest degrees.
struct Scan {
  Frac dev;
  int size = 0;
  bool top = true;
};

Scan scan_degrees(const std::vector<int>& deg, int x, int min_y, const Rational& ref, std::vector<int>& buckets) {
  buckets.assign(static_cast<std::size_t>(x) + 1, 0);
  for (int d : deg) ++buckets[static_cast<std::size_t>(d)];
  Scan best;
  const int ny = static_cast<int>(deg.size());
  for (int pass = 0; pass < 2; ++pass) {
    bool top = pass == 0;
    std::int64_t sum = 0;
    int b = 0;
    for (int step = 0; step <= x; ++step) {
      int d = top ? x - step : step;
      for (int c = buckets[static_cast<std::size_t>(d)]; c > 0; --c) {
        sum += d;
        ++b;
        if (b >= min_y) {
          Frac f = deviation_of(sum, x, b, ref);
          if (best.dev.num < 0 || frac_greater(f, best.dev)) best = Scan{f, b, top};
        }
      }
    }
    (void)ny;
  }
  return best;
}

// Indices of the chosen vertices for a Scan result.
std::vector<int> pick(const std::vector<int>& deg, const Scan& s) {
  std::vector<int> idx(deg.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    return s.top ? deg[static_cast<std::size_t>(a)] > deg[static_cast<std::size_t>(b)]
                 : deg[static_cast<std::size_t>(a)] < deg[static_cast<std::size_t>(b)];
  });
  idx.resize(static_cast<std::size_t>(s.size));
  std::sort(idx.begin(), idx.end());
  return idx;
}

struct PairProblem {
  const DenseGraph& g;
  std::vector<int> xs, ys;
  int min_x = 1, min_y = 1;
  Rational ref, tol;
};

struct Found {
  Frac dev;
  std::vector<int> x_local, y_local;  // indices into xs / ys
};

// Exhaustive search over subsets of xs (|xs| <= 24).
Found exact_search(const PairProblem& pr, std::int64_t* enumerated) {
  const int nx = static_cast<int>(pr.xs.size());
  const int ny = static_cast<int>(pr.ys.size());
  std::vector<std::uint32_t> ymask(static_cast<std::size_t>(ny), 0);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i)
      if (pr.g.adjacent(pr.ys[static_cast<std::size_t>(j)], pr.xs[static_cast<std::size_t>(i)]))
        ymask[static_cast<std::size_t>(j)] |= 1U << i;
  std::vector<int> deg(static_cast<std::size_t>(ny)), buckets;
  Scan best;
  std::uint32_t best_mask = 0;
  std::int64_t count = 0;
  const std::uint32_t limit = nx == 32 ? 0xffffffffU : ((1U << nx) - 1);
  for (std::uint32_t mask = 1; mask != 0 && mask <= limit; ++mask) {
    int x = std::popcount(mask);
    if (x < pr.min_x) continue;
    ++count;
    for (int j = 0; j < ny; ++j) deg[static_cast<std::size_t>(j)] = std::popcount(ymask[static_cast<std::size_t>(j)] & mask);
    Scan s = scan_degrees(deg, x, pr.min_y, pr.ref, buckets);
    if (s.dev.num >= 0 && (best.dev.num < 0 || frac_greater(s.dev, best.dev))) {
      best = s;
      best_mask = mask;
    }
    if (mask == limit) break;
  }
  *enumerated = count;
  Found f;
  f.dev = best.dev;
  if (best.dev.num < 0) return f;
  for (int i = 0; i < nx; ++i)
    if ((best_mask >> i) & 1U) f.x_local.push_back(i);
  for (int j = 0; j < ny; ++j)
    deg[static_cast<std::size_t>(j)] = std::popcount(ymask[static_cast<std::size_t>(j)] & best_mask);
  f.y_local = pick(deg, best);
  return f;
}

// Degrees of each vertex of `targets` into `fixed`.
std::vector<int> degrees_into(const DenseGraph& g, const std::vector<int>& targets, const VertexSet& fixed) {
  std::vector<int> d(targets.size());
  for (std::size_t i = 0; i < targets.size(); ++i) d[i] = g.degree_into(targets[i], fixed);
  return d;
}

VertexSet to_set(const DenseGraph& g, const std::vector<int>& ids, const std::vector<int>& local) {
  VertexSet s(g.n());
  for (int i : local) s.set(ids[static_cast<std::size_t>(i)]);
  return s;
}

// Alternating best responses from a starting subset on one side.
// Returns the best pair visited.
Found alternate(const PairProblem& pr, std::vector<int> start_local, bool start_on_x, int rounds) {
  Found best;
  std::vector<int> buckets;
  bool on_x = start_on_x;
  std::vector<int> cur = std::move(start_local);
  for (int r = 0; r < rounds; ++r) {
    const auto& fixed_ids = on_x ? pr.xs : pr.ys;
    const auto& other_ids = on_x ? pr.ys : pr.xs;
    int other_min = on_x ? pr.min_y : pr.min_x;
    VertexSet fixed = to_set(pr.g, fixed_ids, cur);
    auto deg = degrees_into(pr.g, other_ids, fixed);
    Scan s = scan_degrees(deg, static_cast<int>(cur.size()), other_min, pr.ref, buckets);
    if (s.dev.num < 0) break;
    auto chosen = pick(deg, s);
    if (best.dev.num < 0 || frac_greater(s.dev, best.dev)) {
      best.dev = s.dev;
      best.x_local = on_x ? cur : chosen;
      best.y_local = on_x ? chosen : cur;
    }
    cur = std::move(chosen);
    on_x = !on_x;
  }
  return best;
}

struct Start {
  std::vector<int> local;
  bool on_x = true;
};

std::vector<int> sorted_prefix(const std::vector<int>& deg, int size, bool top) {
  Scan s;
  s.size = size;
  s.top = top;
  return pick(deg, s);
}

std::vector<Start> heuristic_starts(const PairProblem& pr) {
  std::vector<Start> out;
  VertexSet xset = to_set(pr.g, pr.xs, [&] {
    std::vector<int> v(pr.xs.size());
    std::iota(v.begin(), v.end(), 0);
    return v;
  }());
  VertexSet yset = to_set(pr.g, pr.ys, [&] {
    std::vector<int> v(pr.ys.size());
    std::iota(v.begin(), v.end(), 0);
    return v;
  }());
  for (int side = 0; side < 2; ++side) {
    bool on_x = side == 0;
    const auto& ids = on_x ? pr.xs : pr.ys;
    const VertexSet& opposite = on_x ? yset : xset;
    const auto& opp_ids = on_x ? pr.ys : pr.xs;
    const VertexSet& own = on_x ? xset : yset;
    int n = static_cast<int>(ids.size());
    int m = on_x ? pr.min_x : pr.min_y;
    auto deg = degrees_into(pr.g, ids, opposite);
    for (int size : {m, (m + n + 1) / 2, n}) {
      out.push_back({sorted_prefix(deg, size, true), on_x});
      out.push_back({sorted_prefix(deg, size, false), on_x});
    }
    // Neighbourhoods of extreme-degree vertices on the opposite side.
    auto odeg = degrees_into(pr.g, opp_ids, own);
    if (!odeg.empty()) {
      auto hi = static_cast<std::size_t>(std::max_element(odeg.begin(), odeg.end()) - odeg.begin());
      auto lo = static_cast<std::size_t>(std::min_element(odeg.begin(), odeg.end()) - odeg.begin());
      for (std::size_t pick_idx : {hi, lo}) {
        int v = opp_ids[pick_idx];
        std::vector<int> in, out_;
        for (int i = 0; i < n; ++i) (pr.g.adjacent(v, ids[static_cast<std::size_t>(i)]) ? in : out_).push_back(i);
        if (static_cast<int>(in.size()) >= m) out.push_back({in, on_x});
        if (static_cast<int>(out_.size()) >= m) out.push_back({out_, on_x});
      }
    }
  }
  return out;
}

constexpr int kRefineTop = 16;
constexpr int kRounds = 4;

Found sampled_search(const PairProblem& pr, const SearchConfig& cfg, std::int64_t* used) {
  auto starts = heuristic_starts(pr);
  const std::size_t h = starts.size();
  const std::size_t total = h + static_cast<std::size_t>(std::max(0, cfg.samples));
  std::vector<Frac> devs(total);
  const int nx = static_cast<int>(pr.xs.size());
  auto random_start = [&](std::size_t i) {
    Rng rng(derive_seed(cfg.seed, "pair-sample", i));
    int size = static_cast<int>(uniform_int(rng, pr.min_x, nx));
    return sample_subset(rng, nx, size);
  };
  parallel_for(total, cfg.workers, [&](std::size_t i) {
    if (i < h) {
      devs[i] = alternate(pr, starts[i].local, starts[i].on_x, kRounds).dev;
    } else {
      devs[i] = alternate(pr, random_start(i - h), true, 1).dev;
    }
  });
  // Second phase: extend the best random starts with more alternation rounds.
  std::vector<std::size_t> order(total - h);
  std::iota(order.begin(), order.end(), h);
  std::size_t keep = std::min<std::size_t>(kRefineTop, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep), order.end(),
                    [&](std::size_t a, std::size_t b) {
                      if (frac_greater(devs[a], devs[b])) return true;
                      if (frac_greater(devs[b], devs[a])) return false;
                      return a < b;
                    });
  order.resize(keep);
  std::vector<Frac> refined(keep);
  parallel_for(keep, cfg.workers, [&](std::size_t t) {
    refined[t] = alternate(pr, random_start(order[t] - h), true, kRounds).dev;
  });
  // Winner: largest deviation, lowest index on ties (phase-two entries after phase one).
  std::size_t best = total;
  Frac best_dev;
  bool best_refined = false;
  for (std::size_t i = 0; i < total; ++i)
    if (devs[i].num >= 0 && (best_dev.num < 0 || frac_greater(devs[i], best_dev))) {
      best_dev = devs[i];
      best = i;
    }
  for (std::size_t t = 0; t < keep; ++t)
    if (refined[t].num >= 0 && frac_greater(refined[t], best_dev)) {
      best_dev = refined[t];
      best = order[t];
      best_refined = true;
    }
  *used = static_cast<std::int64_t>(total);
  if (best == total) return Found{};
  if (best < h) return alternate(pr, starts[best].local, starts[best].on_x, kRounds);
  return alternate(pr, random_start(best - h), true, best_refined ? kRounds : 1);
}

PairVerdict run_pair_problem(const PairProblem& pr, const Rational& eps, const SearchConfig& cfg, bool swapped) {
  PairVerdict v;
  v.epsilon = eps;
  v.reference = pr.ref;
  v.tolerance = pr.tol;
  v.seed = cfg.seed;
  const int small = static_cast<int>(std::min(pr.xs.size(), pr.ys.size()));
  const int big = static_cast<int>(std::max(pr.xs.size(), pr.ys.size()));
  {
    // Empty or complete disjoint pairs: every sub-pair has the same density.
    VertexSet a = VertexSet::of(pr.g.n(), pr.xs), b = VertexSet::of(pr.g.n(), pr.ys);
    if (!a.intersects(b)) {
      const std::int64_t e = edge_count(pr.g, a, b);
      const std::int64_t full = static_cast<std::int64_t>(pr.xs.size()) * static_cast<std::int64_t>(pr.ys.size());
      if ((e == 0 || e == full) && pr.ref == Rational(e, full)) {
        v.mode = Mode::Exact;
        v.deviation = Rational(0);
        return v;
      }
    }
  }
  Found f;
  if (cfg.mode == Mode::Exact) {
    if (big > cfg.pair_exact_threshold)
      throw CapabilityError("exact pair check limited to sides of size " + std::to_string(cfg.pair_exact_threshold) +
                            "; use sampled mode");
  }
  bool exact = cfg.mode == Mode::Exact || small <= cfg.auto_exact_side;
  if (exact && small > 24) exact = false;
  if (exact) {
    v.mode = Mode::Exact;
    if (pr.xs.size() <= pr.ys.size()) {
      f = exact_search(pr, &v.samples_used);
    } else {
      PairProblem flipped{pr.g, pr.ys, pr.xs, pr.min_y, pr.min_x, pr.ref, pr.tol};
      f = exact_search(flipped, &v.samples_used);
      std::swap(f.x_local, f.y_local);
    }
  } else {
    v.mode = Mode::Sampled;
    f = sampled_search(pr, cfg, &v.samples_used);
  }
  if (f.dev.num >= 0) {
    // Reduce to a Rational for reporting.
    i128 num = f.dev.num, den = f.dev.den;
    i128 a = num, b = den;
    while (b != 0) {
      i128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      num /= a;
      den /= a;
    }
    v.deviation = Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
  }
  v.regular = !(f.dev.num >= 0 && frac_exceeds(f.dev, pr.tol));
  if (!v.regular) {
    SubsetPair w;
    for (int i : f.x_local) w.first.push_back(pr.xs[static_cast<std::size_t>(i)]);
    for (int j : f.y_local) w.second.push_back(pr.ys[static_cast<std::size_t>(j)]);
    VertexSet a = VertexSet::of(pr.g.n(), w.first), b = VertexSet::of(pr.g.n(), w.second);
    v.witness_density = density(pr.g, a, b);
    if (swapped) std::swap(w.first, w.second);
    v.witness = std::move(w);
  }
  return v;
}

void check_pair_sets(const DenseGraph& g, const VertexSet& a, const VertexSet& b) {
  if (a.universe() != g.n() || b.universe() != g.n()) throw DomainError("vertex set over a different universe");
  if (a.empty() || b.empty()) throw DomainError("pair check on an empty set");
  if (a.intersects(b) && !(a == b)) throw DomainError("pair sets must be disjoint or identical");
}

}  // namespace

PairVerdict check_pair_regular(const DenseGraph& g, const VertexSet& a, const VertexSet& b, const Rational& eps,
                               const SearchConfig& cfg) {
  check_pair_sets(g, a, b);
  if (eps.num() < 0) throw DomainError("negative epsilon");
  PairProblem pr{g, a.members(), b.members(), 1, 1, density(g, a, b), eps};
  pr.min_x = min_subset_size(eps, static_cast<int>(pr.xs.size()));
  pr.min_y = min_subset_size(eps, static_cast<int>(pr.ys.size()));
  return run_pair_problem(pr, eps, cfg, false);
}

bool validate_pair_witness(const DenseGraph& g, const VertexSet& a, const VertexSet& b, const Rational& eps,
                           const SubsetPair& w) {
  VertexSet sa = VertexSet::of(g.n(), w.first), sb = VertexSet::of(g.n(), w.second);
  if (!sa.subset_of(a) || !sb.subset_of(b)) return false;
  if (sa.count() < min_subset_size(eps, a.count()) || sb.count() < min_subset_size(eps, b.count())) return false;
  return abs(density(g, sa, sb) - density(g, a, b)) > eps;
}

PairVerdict check_super_regular(const DenseGraph& g, const Rational& eps, const SearchConfig& cfg) {
  if (!g.is_bipartite()) throw DomainError("super-regularity needs a bipartite graph");
  Rational p = bipartite_density(g);
  if (p.is_zero()) throw DomainError("super-regularity with density 0");
  VertexSet u = g.left_side(), v = g.right_side();
  PairProblem pr{g, u.members(), v.members(), 1, 1, p, eps * p};
  pr.min_x = min_subset_size(eps, g.left_size());
  pr.min_y = min_subset_size(eps, g.right_size());
  return run_pair_problem(pr, eps, cfg, false);
}

PartitionVerdict check_partition_regular(const DenseGraph& g, const Partition& z, const Rational& eps,
                                         const SearchConfig& cfg, bool include_diagonal) {
  if (z.universe() != g.n()) throw DomainError("partition over a different vertex set");
  const int k = z.order();
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < k; ++i)
    for (int j = include_diagonal ? i : i + 1; j < k; ++j) pairs.emplace_back(i, j);
  std::vector<char> irregular(pairs.size(), 0), exact(pairs.size(), 1);
  std::vector<VertexSet> sets;
  sets.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) sets.push_back(z.class_set(i));
  SearchConfig inner = cfg;
  inner.workers = 1;
  parallel_for(pairs.size(), cfg.workers, [&](std::size_t t) {
    auto [i, j] = pairs[t];
    SearchConfig c = inner;
    c.seed = derive_seed(cfg.seed, "partition-pair", i, j);
    PairVerdict v = check_pair_regular(g, sets[static_cast<std::size_t>(i)], sets[static_cast<std::size_t>(j)], eps, c);
    irregular[t] = v.regular ? 0 : 1;
    exact[t] = v.mode == Mode::Exact ? 1 : 0;
  });
  PartitionVerdict r;
  r.epsilon = eps;
  r.include_diagonal = include_diagonal;
  r.mode = std::all_of(exact.begin(), exact.end(), [](char c) { return c != 0; }) ? Mode::Exact : Mode::Sampled;
  for (std::size_t t = 0; t < pairs.size(); ++t) {
    if (irregular[t] == 0) continue;
    auto [i, j] = pairs[t];
    r.irregular.emplace_back(i, j);
    std::int64_t mass = static_cast<std::int64_t>(z.class_size(i)) * z.class_size(j);
    if (i == j) {
      r.irregular_mass += mass;
    } else {
      ++r.irregular_pairs;
      r.irregular_mass += 2 * mass;
    }
  }
  r.count_criterion = Rational(r.irregular_pairs) <= eps * Rational(static_cast<std::int64_t>(k) * k);
  r.weighted_criterion =
      Rational(r.irregular_mass) <= eps * Rational(static_cast<std::int64_t>(g.n()) * g.n());
  return r;
}

}  // namespace regkit
