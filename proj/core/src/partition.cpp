#include "regkit/partition.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "regkit/error.hpp"

namespace regkit {

Partition::Partition(std::vector<int> labels) {
  const int n = static_cast<int>(labels.size());
  std::map<int, int> remap;
  labels_.resize(labels.size());
  for (int v = 0; v < n; ++v) {
    auto [it, inserted] = remap.try_emplace(labels[static_cast<std::size_t>(v)], static_cast<int>(remap.size()));
    if (inserted) classes_.emplace_back();
    labels_[static_cast<std::size_t>(v)] = it->second;
    classes_[static_cast<std::size_t>(it->second)].push_back(v);
  }
}

Partition Partition::trivial(int n) { return Partition(std::vector<int>(static_cast<std::size_t>(n), 0)); }

Partition Partition::singletons(int n) {
  std::vector<int> l(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) l[static_cast<std::size_t>(v)] = v;
  return Partition(std::move(l));
}

Partition Partition::equipartition(int n, int k) {
  if (k < 1 || k > n) throw DomainError("equipartition order must be in [1, n]");
  std::vector<int> l(static_cast<std::size_t>(n));
  int base = n / k, extra = n % k, v = 0;
  for (int c = 0; c < k; ++c) {
    int size = base + (c < extra ? 1 : 0);
    for (int t = 0; t < size; ++t) l[static_cast<std::size_t>(v++)] = c;
  }
  return Partition(std::move(l));
}

Partition Partition::from_classes(int n, const std::vector<std::vector<int>>& classes) {
  std::vector<int> l(static_cast<std::size_t>(n), -1);
  for (std::size_t c = 0; c < classes.size(); ++c) {
    for (int v : classes[c]) {
      if (v < 0 || v >= n) throw DomainError("partition vertex out of range");
      if (l[static_cast<std::size_t>(v)] != -1) throw DomainError("partition classes overlap");
      l[static_cast<std::size_t>(v)] = static_cast<int>(c);
    }
  }
  if (std::find(l.begin(), l.end(), -1) != l.end()) throw DomainError("partition classes do not cover");
  return Partition(std::move(l));
}

VertexSet Partition::class_set(int i) const {
  VertexSet s(universe());
  for (int v : members(i)) s.set(v);
  return s;
}

int Partition::min_class_size() const {
  int m = universe();
  for (auto& c : classes_) m = std::min(m, static_cast<int>(c.size()));
  return m;
}

int Partition::max_class_size() const {
  int m = 0;
  for (auto& c : classes_) m = std::max(m, static_cast<int>(c.size()));
  return m;
}

bool Partition::is_equitable() const { return order() == 0 || max_class_size() - min_class_size() <= 1; }

namespace {

void require_same_universe(const Partition& a, const Partition& b) {
  if (a.universe() != b.universe()) throw DomainError("partitions over different vertex sets");
}

}  // namespace

bool is_refinement(const Partition& q, const Partition& p) {
  require_same_universe(q, p);
  for (const auto& cls : q.classes()) {
    int target = p.class_of(cls.front());
    for (int v : cls)
      if (p.class_of(v) != target) return false;
  }
  return true;
}

Partition common_refinement(const Partition& z, const Partition& x) {
  require_same_universe(z, x);
  const int n = z.universe();
  std::vector<int> l(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) l[static_cast<std::size_t>(v)] = z.class_of(v) * x.order() + x.class_of(v);
  return Partition(std::move(l));
}

bool gamma_contained(const VertexSet& s, const VertexSet& t, const Rational& gamma) {
  int size = s.count();
  if (size == 0) throw DomainError("gamma_contained: empty S");
  int outside = (s - t).count();
  return Rational(outside) <= gamma * Rational(size);
}

namespace {

// Largest overlap |Q ∩ P| over classes P, with the P attaining it (lowest id on ties).
std::pair<int, int> best_container(const std::vector<int>& members, const Partition& p) {
  std::map<int, int> hits;
  for (int v : members) ++hits[p.class_of(v)];
  int best = -1, best_count = -1;
  for (auto [cls, cnt] : hits)
    if (cnt > best_count) {
      best = cls;
      best_count = cnt;
    }
  return {best, best_count};
}

}  // namespace

GammaRefinement gamma_refines(const Partition& q, const Partition& p, const Rational& gamma) {
  require_same_universe(q, p);
  GammaRefinement r;
  for (const auto& cls : q.classes()) {
    // Q is gamma-contained in some P iff it is in the one with the largest overlap.
    auto [target, overlap] = best_container(cls, p);
    auto size = static_cast<std::int64_t>(cls.size());
    if (Rational(size - overlap) > gamma * Rational(size)) r.offending_mass += size;
  }
  r.holds = Rational(r.offending_mass) <= gamma * Rational(q.universe());
  return r;
}

Rational min_refinement_gamma(const Partition& q, const Partition& p) {
  require_same_universe(q, p);
  // Class Q offends exactly when gamma < |Q \ best P| / |Q|.
  std::map<Rational, std::int64_t> breaks;
  std::int64_t above = 0;
  for (const auto& cls : q.classes()) {
    auto [target, overlap] = best_container(cls, p);
    auto size = static_cast<std::int64_t>(cls.size());
    if (overlap == size) continue;
    breaks[Rational(size - overlap, size)] += size;
    above += size;
  }
  const std::int64_t n = q.universe();
  Rational lower(0);
  for (auto it = breaks.begin();; ++it) {
    Rational cand = std::max(lower, Rational(above, n));
    if (it == breaks.end() || cand < it->first) return cand;
    lower = it->first;
    above -= it->second;
  }
}

RefinementOrder refinement_order_check(const Partition& q, const Partition& p) {
  require_same_universe(q, p);
  if (!p.is_equitable()) throw PreconditionError("refinement_order_check: P is not equitable");
  const Rational quarter(1, 4);
  if (!gamma_refines(q, p, quarter).holds)
    throw PreconditionError("refinement_order_check: Q does not 1/4-refine P");
  RefinementOrder r;
  r.pi.assign(static_cast<std::size_t>(q.order()), -1);
  std::vector<char> hit(static_cast<std::size_t>(p.order()), 0);
  for (int i = 0; i < q.order(); ++i) {
    const auto& cls = q.members(i);
    auto [target, overlap] = best_container(cls, p);
    auto size = static_cast<std::int64_t>(cls.size());
    if (Rational(size - overlap) <= quarter * Rational(size)) {
      r.pi[static_cast<std::size_t>(i)] = target;
      hit[static_cast<std::size_t>(target)] = 1;
    }
  }
  r.image_size = static_cast<int>(std::count(hit.begin(), hit.end(), 1));
  r.holds = 2 * q.order() >= p.order();
  return r;
}

Partition equitize(const Partition& coarse, int block, const Partition* priority) {
  if (block < 1) throw DomainError("equitize: block size must be at least 1");
  if (priority != nullptr) require_same_universe(coarse, *priority);
  const int n = coarse.universe();
  std::vector<int> labels(static_cast<std::size_t>(n));
  int next = 0;
  for (int c = 0; c < coarse.order(); ++c) {
    std::vector<int> order = coarse.members(c);
    if (priority != nullptr) {
      std::stable_sort(order.begin(), order.end(),
                       [&](int a, int b) { return priority->class_of(a) < priority->class_of(b); });
    }
    const int size = static_cast<int>(order.size());
    int a = size / block, m = size % block;
    std::vector<int> sizes;
    if (a == 0) {
      sizes.push_back(size);
    } else if (m <= a) {
      for (int t = 0; t < a; ++t) sizes.push_back(block + (t < m ? 1 : 0));
    } else {
      int base = size / a, extra = size % a;
      for (int t = 0; t < a; ++t) sizes.push_back(base + (t < extra ? 1 : 0));
    }
    std::size_t pos = 0;
    for (int sz : sizes) {
      for (int t = 0; t < sz; ++t) labels[static_cast<std::size_t>(order[pos++])] = next;
      ++next;
    }
  }
  return Partition(std::move(labels));
}

std::vector<int> straddling_blocks(const Partition& coarse, const Partition& refined,
                                   const Partition& priority) {
  std::vector<int> out(static_cast<std::size_t>(coarse.order()), 0);
  for (const auto& cls : refined.classes()) {
    int first = priority.class_of(cls.front());
    bool mixed = std::any_of(cls.begin(), cls.end(), [&](int v) { return priority.class_of(v) != first; });
    if (mixed) ++out[static_cast<std::size_t>(coarse.class_of(cls.front()))];
  }
  return out;
}

void write_partition(std::ostream& out, const Partition& p) {
  out << "partition " << p.universe() << ' ' << p.order() << '\n';
  for (int v = 0; v < p.universe(); ++v) out << v << ' ' << p.class_of(v) << '\n';
}

Partition read_partition(std::istream& in) {
  std::string tag;
  long long n = -1, k = -1;
  if (!(in >> tag >> n >> k) || tag != "partition" || n < 0 || k < 0)
    throw DomainError("partition file: bad header");
  std::vector<int> labels(static_cast<std::size_t>(n), -1);
  for (long long i = 0; i < n; ++i) {
    long long v = -1, c = -1;
    if (!(in >> v >> c)) throw DomainError("partition file: truncated");
    if (v < 0 || v >= n || c < 0 || c >= k) throw DomainError("partition file: entry out of range");
    if (labels[static_cast<std::size_t>(v)] != -1) throw DomainError("partition file: duplicate vertex");
    labels[static_cast<std::size_t>(v)] = static_cast<int>(c);
  }
  std::vector<char> used(static_cast<std::size_t>(k), 0);
  for (int c : labels) used[static_cast<std::size_t>(c)] = 1;
  if (std::find(used.begin(), used.end(), 0) != used.end()) throw DomainError("partition file: empty class");
  return Partition(std::move(labels));
}

Partition load_partition(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open partition file: " + path);
  return read_partition(in);
}

void save_partition(const std::string& path, const Partition& p) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write partition file: " + path);
  write_partition(out, p);
}

}  // namespace regkit
