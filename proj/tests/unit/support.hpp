#pragma once

// Seeded generators and slow reference implementations shared by the unit
// tests. Oracles deliberately avoid the library's bitset kernels.

#include <cstdint>
#include <random>
#include <vector>

#include "regkit/graph.hpp"
#include "regkit/partition.hpp"
#include "regkit/rational.hpp"

namespace testing_support {

using regkit::DenseGraph;
using regkit::Partition;
using regkit::Rational;

inline std::mt19937_64 rng_for(std::uint64_t seed) { return std::mt19937_64(seed * 0x9e3779b97f4a7c15ULL + 17); }

inline int pick(std::mt19937_64& r, int lo, int hi) {
  return lo + static_cast<int>(r() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline bool coin(std::mt19937_64& r, double p) { return static_cast<double>(r() >> 11) * 0x1.0p-53 < p; }

inline DenseGraph gnp(std::mt19937_64& r, int n, double p) {
  regkit::GraphBuilder b(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(r, p)) b.add_edge(u, v);
  return std::move(b).build();
}

inline DenseGraph bipartite_gnp(std::mt19937_64& r, int a, int bsize, double p) {
  regkit::GraphBuilder b(a + bsize, a);
  for (int u = 0; u < a; ++u)
    for (int v = a; v < a + bsize; ++v)
      if (coin(r, p)) b.add_edge(u, v);
  return std::move(b).build();
}

inline Partition random_partition(std::mt19937_64& r, int n, int k) {
  std::vector<int> labels(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) labels[static_cast<std::size_t>(v)] = v < k ? v : pick(r, 0, k - 1);
  for (int i = n - 1; i > 0; --i) std::swap(labels[static_cast<std::size_t>(i)], labels[static_cast<std::size_t>(pick(r, 0, i))]);
  return Partition(labels);
}

// Each class of q is split into at most `parts` random pieces.
inline Partition random_refinement(std::mt19937_64& r, const Partition& q, int parts) {
  std::vector<int> labels(static_cast<std::size_t>(q.universe()));
  int next = 0;
  for (int c = 0; c < q.order(); ++c) {
    const int base = next;
    int used = 0;
    for (int v : q.members(c)) {
      int piece = pick(r, 0, parts - 1);
      labels[static_cast<std::size_t>(v)] = base + piece;
      used = std::max(used, piece + 1);
    }
    next += used;
  }
  return Partition(labels);
}

inline std::vector<int> members_of_mask(const std::vector<int>& pool, std::uint64_t mask) {
  std::vector<int> out;
  for (std::size_t i = 0; i < pool.size(); ++i)
    if ((mask >> i) & 1U) out.push_back(pool[i]);
  return out;
}

inline std::int64_t slow_edges(const DenseGraph& g, const std::vector<int>& a, const std::vector<int>& b) {
  std::int64_t e = 0;
  for (int u : a)
    for (int v : b) e += g.adjacent(u, v) ? 1 : 0;
  return e;
}

inline Rational slow_density(const DenseGraph& g, const std::vector<int>& a, const std::vector<int>& b) {
  return Rational(slow_edges(g, a, b), static_cast<std::int64_t>(a.size() * b.size()));
}

inline int ceil_frac(const Rational& eps, int size) {
  int k = 0;
  while (Rational(k) < eps * Rational(size)) ++k;
  return std::max(1, k);
}

// Exhaustive pair regularity over subsets of the given vertex lists.
inline bool slow_pair_regular(const DenseGraph& g, const std::vector<int>& a, const std::vector<int>& b,
                              const Rational& eps) {
  const Rational d = slow_density(g, a, b);
  const int ma = ceil_frac(eps, static_cast<int>(a.size())), mb = ceil_frac(eps, static_cast<int>(b.size()));
  for (std::uint64_t sa = 1; sa < (1ULL << a.size()); ++sa) {
    auto a2 = members_of_mask(a, sa);
    if (static_cast<int>(a2.size()) < ma) continue;
    for (std::uint64_t sb = 1; sb < (1ULL << b.size()); ++sb) {
      auto b2 = members_of_mask(b, sb);
      if (static_cast<int>(b2.size()) < mb) continue;
      if (regkit::abs(slow_density(g, a2, b2) - d) > eps) return false;
    }
  }
  return true;
}

inline DenseGraph half_graph(int n) {
  regkit::GraphBuilder b(2 * n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) b.add_edge(i, n + j);
  return std::move(b).build();
}

inline DenseGraph cycle_bipartite(int half) {
  // a_i = i, b_i = half + i; a_i ~ b_i, b_i ~ a_{i+1}
  regkit::GraphBuilder b(2 * half, half);
  for (int i = 0; i < half; ++i) {
    b.add_edge(i, half + i);
    b.add_edge((i + 1) % half, half + i);
  }
  return std::move(b).build();
}

}  // namespace testing_support
