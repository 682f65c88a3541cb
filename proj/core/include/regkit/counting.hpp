#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "regkit/config.hpp"
#include "regkit/graph.hpp"
#include "regkit/partition.hpp"
#include "regkit/rational.hpp"

namespace regkit {

// Pattern H on [h]. map[i] is the cluster hosting vertex i for f-copies;
// empty means the identity.
struct PatternGraph {
  int h = 0;
  std::vector<std::pair<int, int>> edges;  // i < j, sorted
  std::vector<int> map;
  int m() const { return static_cast<int>(edges.size()); }
  bool adjacent(int i, int j) const;
  int host(int i) const { return map.empty() ? i : map[static_cast<std::size_t>(i)]; }
};

PatternGraph make_pattern(int h, std::vector<std::pair<int, int>> edges, std::vector<int> map = {});
PatternGraph triangle_pattern();

// "pattern <h> <m>", then m lines "e <i> <j>", then optional "map <i> <cluster>" lines.
void write_pattern(std::ostream& out, const PatternGraph& p);
PatternGraph read_pattern(std::istream& in);
PatternGraph load_pattern(const std::string& path);

enum class CountMode { Induced, NonInduced, FCopy };
std::string to_string(CountMode m);
CountMode parse_count_mode(const std::string& s);

inline constexpr std::int64_t kDefaultCountBudget = std::int64_t{1} << 36;

std::vector<VertexSet> clusters_of(const Partition& p);

// Induced and non-induced modes place vertex i in clusters[i] (clusters must
// be disjoint). FCopy counts homomorphisms with vertex i in clusters[host(i)].
// Throws CapabilityError when h > 6 or the product of the host cluster sizes
// exceeds the budget.
std::int64_t count_copies(const PatternGraph& h, const DenseGraph& g, const std::vector<VertexSet>& clusters,
                          CountMode mode, int workers = 1, std::int64_t budget = kDefaultCountBudget);

struct CountingBandVerdict {
  std::int64_t count = 0;
  std::int64_t product = 0;  // prod |V_i|
  double centre = 0.0;       // prod over pairs of d or 1 - d
  double band = 0.0;         // sqrt(h^3 eps)
  double lower = 0.0;
  double upper = 0.0;
  bool inside = false;       // decided exactly
};

// Pairs (V_i, V_j), i < j < h, must pass the exact pair check at eps
// (PreconditionError otherwise).
CountingBandVerdict counting_lemma_check(const PatternGraph& h, const DenseGraph& g,
                                         const std::vector<VertexSet>& clusters, const Rational& eps,
                                         const SearchConfig& cfg);

struct ApproxCountingVerdict {
  std::int64_t count = 0;   // f-copies of H in G
  double bound = 0.0;       // (1 - delta m)/2 p^m n^h
  std::string bound_exact;
  bool hypotheses_hold = false;  // delta <= 1/2m, eps <= (p^{m+1}/32h^4)^2, n >= 4h^{h+3}/p^m
  bool asserted = false;         // assert mode iff the hypotheses hold
  bool holds = false;            // count >= bound
};

// G' (the sparse regular graph) and G (its per-pair close perturbation) share
// the clusters U_1..U_k. Throws PreconditionError when a nonempty pair of G' is
// not exactly eps-regular with density >= p, when a pair of G differs from G'
// in more than delta e_{G'}(U_a, U_b) edges, or when G' has no f-copy of H.
ApproxCountingVerdict approx_counting_check(const PatternGraph& h, const DenseGraph& g_sparse, const DenseGraph& g,
                                            const std::vector<VertexSet>& clusters, const Rational& eps,
                                            const Rational& p, const Rational& delta, const SearchConfig& cfg);

// |E_{G1}(V, V') △ E_{G2}(V, V')| > sqrt(delta) |E_{G2}(V, V')|, exactly.
bool pair_far(const DenseGraph& g1, const DenseGraph& g2, const VertexSet& v, const VertexSet& w,
              const Rational& delta);

}  // namespace regkit
