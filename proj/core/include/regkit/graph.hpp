#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "regkit/partition.hpp"
#include "regkit/rational.hpp"
#include "regkit/vertex_set.hpp"

namespace regkit {

inline constexpr int kMaxVertices = 4096;

class GraphBuilder;

// Simple undirected graph with a bit adjacency matrix. When bipartite, the
// first `left_size()` vertices form side U and the rest side V.
class DenseGraph {
 public:
  DenseGraph() = default;

  int n() const { return n_; }
  int row_words() const { return w_; }
  bool is_bipartite() const { return left_ >= 0; }
  int left_size() const { return left_; }
  int right_size() const { return n_ - left_; }
  VertexSet left_side() const;
  VertexSet right_side() const;
  bool on_left(int v) const { return v < left_; }

  const Word* row(int u) const { return adj_.data() + static_cast<std::size_t>(u) * static_cast<std::size_t>(w_); }
  bool adjacent(int u, int v) const { return (row(u)[v >> 6] >> (v & 63)) & 1U; }
  VertexSet neighbors(int u) const;
  int degree(int u) const;
  int degree_into(int u, const VertexSet& s) const { return and_count(row(u), s.data(), w_); }
  std::int64_t edge_count() const { return edges_; }
  // Edges as (u, v) with u < v, ascending.
  std::vector<std::pair<int, int>> edges() const;

  friend bool operator==(const DenseGraph& a, const DenseGraph& b) {
    return a.n_ == b.n_ && a.left_ == b.left_ && a.adj_ == b.adj_;
  }

 private:
  friend class GraphBuilder;
  int n_ = 0;
  int w_ = 0;
  int left_ = -1;
  std::int64_t edges_ = 0;
  std::vector<Word> adj_;
};

// The only way to create or change a DenseGraph.
class GraphBuilder {
 public:
  explicit GraphBuilder(int n, std::optional<int> left_size = std::nullopt);
  explicit GraphBuilder(DenseGraph g);

  int n() const { return g_.n_; }
  bool has_edge(int u, int v) const { return g_.adjacent(u, v); }
  // Throws DomainError on loops, out-of-range endpoints or intra-side edges.
  void add_edge(int u, int v);
  void remove_edge(int u, int v);
  // Returns false if the edge was already present.
  bool try_add_edge(int u, int v);
  DenseGraph build() &&;
  const DenseGraph& peek() const { return g_; }

 private:
  void check_pair(int u, int v) const;
  void flip(int u, int v);
  DenseGraph g_;
};

// e(A, B): ordered pairs (a, b) in A x B with a ~ b.
std::int64_t edge_count(const DenseGraph& g, const VertexSet& a, const VertexSet& b);
Rational density(const DenseGraph& g, const VertexSet& a, const VertexSet& b);
// 2|E| / n^2.
Rational global_density(const DenseGraph& g);
// e(U, V) / (|U||V|) for a bipartite graph.
Rational bipartite_density(const DenseGraph& g);
int codegree(const DenseGraph& g, int u, int v, const VertexSet& c);

// Edge-count matrix between the classes of a partition: m[i][j] = e(Z_i, Z_j).
std::vector<std::vector<std::int64_t>> class_edge_matrix(const DenseGraph& g, const Partition& p);

struct EditSet {
  std::vector<std::pair<int, int>> additions;  // (u, v), u < v, sorted
  std::vector<std::pair<int, int>> removals;
  std::size_t size() const { return additions.size() + removals.size(); }
  void normalize();  // canonical orientation and order
};
EditSet inverse(const EditSet& e);
DenseGraph apply_edits(const DenseGraph& g, const EditSet& e);
// Edits turning `from` into `to`.
EditSet diff(const DenseGraph& from, const DenseGraph& to);

std::int64_t edit_distance(const DenseGraph& a, const DenseGraph& b);
bool is_delta_close(const DenseGraph& g, const DenseGraph& h, const Rational& delta);

struct BlowUp {
  DenseGraph graph;
  Partition clusters;       // clones of one original vertex form a class
  std::vector<int> origin;  // clone -> original vertex
};
// Vertex v becomes clones v*k, ..., v*k + k - 1, so bipartite sides stay contiguous.
BlowUp blow_up(const DenseGraph& g, int k);

// Induced bipartite graph between disjoint vertex lists a and b; local ids
// 0..|a|-1 are a (in the given order), the rest b.
DenseGraph induced_bipartite(const DenseGraph& g, const std::vector<int>& a, const std::vector<int>& b);

// Standard families.
DenseGraph complete_bipartite(int a, int b);
DenseGraph complete_graph(int n);
DenseGraph edgeless(int n, std::optional<int> left_size = std::nullopt);
DenseGraph random_graph(int n, double p, std::uint64_t seed);
DenseGraph random_bipartite(int a, int b, double p, std::uint64_t seed);

void write_graph(std::ostream& out, const DenseGraph& g);
DenseGraph read_graph(std::istream& in);
DenseGraph load_graph(const std::string& path);
void save_graph(const std::string& path, const DenseGraph& g);

}  // namespace regkit
