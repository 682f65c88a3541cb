#include "regkit/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "regkit/error.hpp"
#include "regkit/rng.hpp"

namespace regkit {

VertexSet DenseGraph::left_side() const {
  if (!is_bipartite()) throw DomainError("graph is not bipartite");
  return VertexSet::range(n_, 0, left_);
}

VertexSet DenseGraph::right_side() const {
  if (!is_bipartite()) throw DomainError("graph is not bipartite");
  return VertexSet::range(n_, left_, n_);
}

VertexSet DenseGraph::neighbors(int u) const {
  VertexSet s(n_);
  std::copy(row(u), row(u) + w_, s.data());
  return s;
}

int DenseGraph::degree(int u) const {
  int d = 0;
  const Word* r = row(u);
  for (int i = 0; i < w_; ++i) d += std::popcount(r[i]);
  return d;
}

std::vector<std::pair<int, int>> DenseGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(static_cast<std::size_t>(edges_));
  for (int u = 0; u < n_; ++u) {
    const Word* r = row(u);
    for (int wi = u >> 6; wi < w_; ++wi) {
      Word w = r[wi];
      if (wi == (u >> 6)) w &= ~((Word{2} << (u & 63)) - 1);
      while (w != 0) {
        out.emplace_back(u, wi * kWordBits + std::countr_zero(w));
        w &= w - 1;
      }
    }
  }
  return out;
}

GraphBuilder::GraphBuilder(int n, std::optional<int> left_size) {
  if (n < 0 || n > kMaxVertices)
    throw CapabilityError("vertex count " + std::to_string(n) + " outside [0, " + std::to_string(kMaxVertices) + "]");
  if (left_size && (*left_size < 0 || *left_size > n)) throw DomainError("bipartition side size out of range");
  g_.n_ = n;
  g_.w_ = words_for(n);
  g_.left_ = left_size ? *left_size : -1;
  g_.adj_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(g_.w_), 0);
}

GraphBuilder::GraphBuilder(DenseGraph g) : g_(std::move(g)) {}

void GraphBuilder::check_pair(int u, int v) const {
  if (u < 0 || v < 0 || u >= g_.n_ || v >= g_.n_) throw DomainError("edge endpoint out of range");
  if (u == v) throw DomainError("self-loop");
  if (g_.is_bipartite() && g_.on_left(u) == g_.on_left(v)) throw DomainError("intra-side edge in bipartite graph");
}

void GraphBuilder::flip(int u, int v) {
  auto w = static_cast<std::size_t>(g_.w_);
  g_.adj_[static_cast<std::size_t>(u) * w + static_cast<std::size_t>(v >> 6)] ^= Word{1} << (v & 63);
  g_.adj_[static_cast<std::size_t>(v) * w + static_cast<std::size_t>(u >> 6)] ^= Word{1} << (u & 63);
}

void GraphBuilder::add_edge(int u, int v) {
  if (!try_add_edge(u, v)) throw DomainError("duplicate edge " + std::to_string(u) + " " + std::to_string(v));
}

bool GraphBuilder::try_add_edge(int u, int v) {
  check_pair(u, v);
  if (g_.adjacent(u, v)) return false;
  flip(u, v);
  ++g_.edges_;
  return true;
}

void GraphBuilder::remove_edge(int u, int v) {
  check_pair(u, v);
  if (!g_.adjacent(u, v)) throw DomainError("removing a non-edge");
  flip(u, v);
  --g_.edges_;
}

DenseGraph GraphBuilder::build() && { return std::move(g_); }

namespace {

void require_universe(const DenseGraph& g, const VertexSet& s) {
  if (s.universe() != g.n()) throw DomainError("vertex set over a different universe");
}

}  // namespace

std::int64_t edge_count(const DenseGraph& g, const VertexSet& a, const VertexSet& b) {
  require_universe(g, a);
  require_universe(g, b);
  std::int64_t e = 0;
  a.for_each([&](int u) { e += g.degree_into(u, b); });
  return e;
}

Rational density(const DenseGraph& g, const VertexSet& a, const VertexSet& b) {
  std::int64_t sa = a.count(), sb = b.count();
  if (sa == 0 || sb == 0) throw DomainError("density of an empty set");
  return Rational(edge_count(g, a, b), sa * sb);
}

Rational global_density(const DenseGraph& g) {
  if (g.n() < 1) throw DomainError("global density of an empty graph");
  return Rational(2 * g.edge_count(), static_cast<std::int64_t>(g.n()) * g.n());
}

Rational bipartite_density(const DenseGraph& g) {
  if (!g.is_bipartite()) throw DomainError("bipartite_density on a non-bipartite graph");
  if (g.left_size() == 0 || g.right_size() == 0) throw DomainError("bipartite density with an empty side");
  return Rational(g.edge_count(), static_cast<std::int64_t>(g.left_size()) * g.right_size());
}

int codegree(const DenseGraph& g, int u, int v, const VertexSet& c) {
  require_universe(g, c);
  if (u == v) throw DomainError("codegree of a vertex with itself");
  return and3_count(g.row(u), g.row(v), c.data(), g.row_words());
}

std::vector<std::vector<std::int64_t>> class_edge_matrix(const DenseGraph& g, const Partition& p) {
  if (p.universe() != g.n()) throw DomainError("partition over a different vertex set");
  const int k = p.order();
  std::vector<std::vector<std::int64_t>> m(static_cast<std::size_t>(k), std::vector<std::int64_t>(static_cast<std::size_t>(k), 0));
  for (int u = 0; u < g.n(); ++u) {
    auto& rowm = m[static_cast<std::size_t>(p.class_of(u))];
    const Word* r = g.row(u);
    for (int wi = 0; wi < g.row_words(); ++wi) {
      Word w = r[wi];
      while (w != 0) {
        int v = wi * kWordBits + std::countr_zero(w);
        ++rowm[static_cast<std::size_t>(p.class_of(v))];
        w &= w - 1;
      }
    }
  }
  return m;
}

void EditSet::normalize() {
  for (auto* list : {&additions, &removals}) {
    for (auto& [u, v] : *list)
      if (u > v) std::swap(u, v);
    std::sort(list->begin(), list->end());
  }
}

EditSet inverse(const EditSet& e) {
  EditSet r;
  r.additions = e.removals;
  r.removals = e.additions;
  return r;
}

DenseGraph apply_edits(const DenseGraph& g, const EditSet& e) {
  EditSet norm = e;
  norm.normalize();
  for (auto* list : {&norm.additions, &norm.removals})
    if (std::adjacent_find(list->begin(), list->end()) != list->end()) throw DomainError("repeated edit");
  GraphBuilder b(g);
  for (auto [u, v] : norm.removals) b.remove_edge(u, v);
  for (auto [u, v] : norm.additions) {
    if (std::binary_search(norm.removals.begin(), norm.removals.end(), std::make_pair(u, v)))
      throw DomainError("pair both added and removed");
    b.add_edge(u, v);
  }
  return std::move(b).build();
}

EditSet diff(const DenseGraph& from, const DenseGraph& to) {
  if (from.n() != to.n()) throw DomainError("graphs on different vertex counts");
  EditSet e;
  for (int u = 0; u < from.n(); ++u) {
    for (int wi = u >> 6; wi < from.row_words(); ++wi) {
      Word x = from.row(u)[wi] ^ to.row(u)[wi];
      if (wi == (u >> 6)) x &= ~((Word{2} << (u & 63)) - 1);
      while (x != 0) {
        int v = wi * kWordBits + std::countr_zero(x);
        (from.adjacent(u, v) ? e.removals : e.additions).emplace_back(u, v);
        x &= x - 1;
      }
    }
  }
  return e;
}

std::int64_t edit_distance(const DenseGraph& a, const DenseGraph& b) {
  if (a.n() != b.n()) throw DomainError("graphs on different vertex counts");
  std::int64_t ordered = 0;
  for (int u = 0; u < a.n(); ++u)
    for (int wi = 0; wi < a.row_words(); ++wi) ordered += std::popcount(a.row(u)[wi] ^ b.row(u)[wi]);
  return ordered / 2;
}

bool is_delta_close(const DenseGraph& g, const DenseGraph& h, const Rational& delta) {
  return Rational(edit_distance(g, h)) <= delta * Rational(g.edge_count());
}

BlowUp blow_up(const DenseGraph& g, int k) {
  if (k < 1) throw DomainError("blow-up factor must be at least 1");
  const int n = g.n() * k;
  std::optional<int> left;
  if (g.is_bipartite()) left = g.left_size() * k;
  GraphBuilder b(n, left);
  for (auto [u, v] : g.edges())
    for (int a = 0; a < k; ++a)
      for (int c = 0; c < k; ++c) b.add_edge(u * k + a, v * k + c);
  std::vector<int> origin(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) origin[static_cast<std::size_t>(v)] = v / k;
  return BlowUp{std::move(b).build(), Partition(origin), origin};
}

DenseGraph induced_bipartite(const DenseGraph& g, const std::vector<int>& a, const std::vector<int>& b) {
  const int na = static_cast<int>(a.size());
  GraphBuilder out(na + static_cast<int>(b.size()), na);
  for (int i = 0; i < na; ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      if (g.adjacent(a[static_cast<std::size_t>(i)], b[j])) out.add_edge(i, na + static_cast<int>(j));
  return std::move(out).build();
}

DenseGraph complete_bipartite(int a, int b) {
  GraphBuilder out(a + b, a);
  for (int u = 0; u < a; ++u)
    for (int v = a; v < a + b; ++v) out.add_edge(u, v);
  return std::move(out).build();
}

DenseGraph complete_graph(int n) {
  GraphBuilder out(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) out.add_edge(u, v);
  return std::move(out).build();
}

DenseGraph edgeless(int n, std::optional<int> left_size) { return std::move(GraphBuilder(n, left_size)).build(); }

DenseGraph random_graph(int n, double p, std::uint64_t seed) {
  Rng rng(seed);
  GraphBuilder out(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (bernoulli(rng, p)) out.add_edge(u, v);
  return std::move(out).build();
}

DenseGraph random_bipartite(int a, int b, double p, std::uint64_t seed) {
  Rng rng(seed);
  GraphBuilder out(a + b, a);
  for (int u = 0; u < a; ++u)
    for (int v = a; v < a + b; ++v)
      if (bernoulli(rng, p)) out.add_edge(u, v);
  return std::move(out).build();
}

void write_graph(std::ostream& out, const DenseGraph& g) {
  out << "graph " << g.n() << ' ' << g.edge_count();
  if (g.is_bipartite()) out << " bipartite " << g.left_size();
  out << '\n';
  for (auto [u, v] : g.edges()) out << "e " << u << ' ' << v << '\n';
}

DenseGraph read_graph(std::istream& in) {
  std::string tag;
  long long n = -1, m = -1;
  if (!(in >> tag >> n >> m) || tag != "graph" || n < 0 || m < 0) throw DomainError("graph file: bad header");
  std::optional<int> left;
  std::string rest;
  std::getline(in, rest);
  {
    std::istringstream hs(rest);
    std::string kw;
    if (hs >> kw) {
      long long l = -1;
      if (kw != "bipartite" || !(hs >> l)) throw DomainError("graph file: bad header suffix");
      left = static_cast<int>(l);
    }
  }
  if (n > kMaxVertices) throw CapabilityError("graph file exceeds the vertex cap");
  GraphBuilder b(static_cast<int>(n), left);
  for (long long i = 0; i < m; ++i) {
    std::string e;
    long long u = -1, v = -1;
    if (!(in >> e >> u >> v) || e != "e") throw DomainError("graph file: truncated or malformed edge line");
    if (u >= v) throw DomainError("graph file: edge endpoints must satisfy u < v");
    if (v >= n) throw DomainError("graph file: edge endpoint out of range");
    b.add_edge(static_cast<int>(u), static_cast<int>(v));
  }
  return std::move(b).build();
}

DenseGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open graph file: " + path);
  return read_graph(in);
}

void save_graph(const std::string& path, const DenseGraph& g) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write graph file: " + path);
  write_graph(out, g);
}

}  // namespace regkit
