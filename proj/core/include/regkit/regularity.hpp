#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "regkit/config.hpp"
#include "regkit/graph.hpp"
#include "regkit/partition.hpp"
#include "regkit/rational.hpp"

namespace regkit {

// Minimum admissible subset size: max(1, ceil(eps * size)).
int min_subset_size(const Rational& eps, int size);

struct SubsetPair {
  std::vector<int> first;
  std::vector<int> second;
};

struct PairVerdict {
  bool regular = true;
  Mode mode = Mode::Exact;
  Rational epsilon;
  Rational reference;  // d(A,B), or p for the multiplicative check
  Rational tolerance;  // allowed |d(A',B') - reference|
  Rational deviation;  // worst deviation found
  std::optional<SubsetPair> witness;  // set iff !regular
  Rational witness_density;
  std::int64_t samples_used = 0;
  std::uint64_t seed = 0;
};

// (A,B) is eps-regular if every A' ⊆ A, B' ⊆ B with |A'| >= eps|A|,
// |B'| >= eps|B| has |d(A',B') - d(A,B)| <= eps. A and B must be disjoint,
// or equal, in which case A', B' range over (possibly overlapping) subsets of A.
PairVerdict check_pair_regular(const DenseGraph& g, const VertexSet& a, const VertexSet& b,
                               const Rational& eps, const SearchConfig& cfg);

// Exact re-validation of an irregularity witness.
bool validate_pair_witness(const DenseGraph& g, const VertexSet& a, const VertexSet& b, const Rational& eps,
                           const SubsetPair& w);

struct PartitionVerdict {
  Rational epsilon;
  bool include_diagonal = false;
  Mode mode = Mode::Exact;  // exact iff every pair verdict was exact
  std::int64_t irregular_pairs = 0;  // unordered pairs i < j
  std::int64_t irregular_mass = 0;   // sum of |Z||Z'| over irregular ordered pairs
  bool count_criterion = false;      // irregular_pairs <= eps k^2
  bool weighted_criterion = false;   // irregular_mass <= eps n^2
  std::vector<std::pair<int, int>> irregular;  // (i, j), i <= j
};

// Evaluates both the count form and the weighted form. Distinct class pairs
// only by default; with include_diagonal the pairs (Z, Z) are checked as
// self-pairs and enter the weighted sum.
PartitionVerdict check_partition_regular(const DenseGraph& g, const Partition& z, const Rational& eps,
                                         const SearchConfig& cfg, bool include_diagonal = false);

struct WeakVerdict {
  bool regular = true;
  Mode mode = Mode::Exact;
  Rational epsilon;
  double deviation = 0.0;  // largest deviation sum found
  std::optional<SubsetPair> witness;  // (S, T); set iff !regular
  std::int64_t samples_used = 0;
  std::uint64_t seed = 0;
};

// Deviation sum of (S, T) against the class densities of P:
// sum over i, j of |S_i||T_j|/(|S||T|) * |d(S_i, T_j) - d(V_i, V_j)|.
double weak_deviation(const DenseGraph& g, const Partition& p, const VertexSet& s, const VertexSet& t);
// Exact test deviation(S, T) > eps.
bool weak_deviation_exceeds(const DenseGraph& g, const Partition& p, const VertexSet& s, const VertexSet& t,
                            const Rational& eps);

// Weak regularity over disjoint S, T ⊆ V with |S|, |T| >= eps|V|.
// With stop_at_first the search returns the first exactly validated witness.
WeakVerdict check_weak_regular(const DenseGraph& g, const Partition& p, const Rational& eps,
                               const SearchConfig& cfg, bool stop_at_first = false);

// Bipartite form: S ⊆ U, T ⊆ V with |S| >= eps|U|, |T| >= eps|V|. Every class
// of P must lie inside one side.
WeakVerdict check_weak_regular_bipartite(const DenseGraph& g, const Partition& p, const Rational& eps,
                                         const SearchConfig& cfg);

// |d(A,B) - p| <= eps p for all A ⊆ U, B ⊆ V with |A| >= eps|U|, |B| >= eps|V|,
// where p is the bipartite density.
PairVerdict check_super_regular(const DenseGraph& g, const Rational& eps, const SearchConfig& cfg);

struct QuasiVerdict {
  bool holds = false;
  std::int64_t violating_pairs = 0;  // ordered pairs (u, u') in U^2, diagonal included
  Rational allowed;                  // delta |U|^2
};

// Codegree sweep over U^2. The diagonal pair (u, u) uses codeg(u, u) = deg(u).
QuasiVerdict check_quasirandom(const DenseGraph& g, const Rational& p, const Rational& delta);
// Smallest delta for which check_quasirandom(g, p, delta) holds.
Rational min_quasirandom_delta(const DenseGraph& g, const Rational& p);
bool is_biregular(const DenseGraph& g);

struct PairFactsReport {
  Rational epsilon;
  Rational density;
  // Vertices of B with degree outside (d ± eps)|A|, against 2 eps |B|.
  std::int64_t degree_exceptions = 0;
  bool degree_fact = true;
  // Slices A' ⊆ A, B' ⊆ B with |A'| >= alpha|A|, |B'| >= alpha|B|.
  int slices_tested = 0;
  int slice_failures = 0;
  bool slice_fact = true;
  // Pairs (a, b) with codegree into C outside (d d' ± eps')|C|, eps' = 6 eps / d.
  bool codegree_skipped = true;
  Rational codegree_eps;
  std::int64_t codegree_exceptions = 0;
  bool codegree_fact = true;
  bool all_hold() const { return degree_fact && slice_fact && codegree_fact; }
};

// (A,B) must be exactly eps-regular. When c is given, (A,C) and (B,C) must be
// too, and the codegree fact is checked with d = d(A,C), d' = d(B,C).
PairFactsReport regular_pair_facts(const DenseGraph& g, const VertexSet& a, const VertexSet& b,
                                   const std::optional<VertexSet>& c, const Rational& eps,
                                   int slices, std::uint64_t seed, const SearchConfig& cfg);

}  // namespace regkit
