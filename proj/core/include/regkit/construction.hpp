#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "regkit/config.hpp"
#include "regkit/error.hpp"
#include "regkit/graph.hpp"
#include "regkit/partition.hpp"
#include "regkit/rational.hpp"

namespace regkit {

// ---------------------------------------------------------------------------
// Bipartition sequences

// d equitable bipartitions of {0, ..., n-1}; sides[i][x] is the side of x in
// the i-th bipartition.
struct BipartitionSequence {
  int n = 0;
  std::vector<std::vector<std::uint8_t>> sides;
  // max over i < j, l, l' of |X_{i,l} ∩ X_{j,l'}| / n - 1/4 (0 when d = 1)
  Rational achieved_alpha;
  // max over x != y of (bipartitions with x, y on one side) / d - 1/2
  Rational achieved_beta;
  int length() const { return static_cast<int>(sides.size()); }
};

// Validates equitability and measures alpha and beta.
BipartitionSequence make_sequence(int n, std::vector<std::vector<std::uint8_t>> sides);

struct SequenceSearch {
  BipartitionSequence sequence;  // the first hit, or the best attempt
  bool success = false;
  int tries = 0;
};

// Draws d uniform equitable bipartitions; a draw that misses the targets is
// repaired by side-swaps (each keeping its bipartition equitable) before being
// re-measured from scratch. Up to max_tries draws.
SequenceSearch make_bipartition_sequence(int n, int d, const Rational& alpha_target, const Rational& beta_target,
                                         std::uint64_t seed, int max_tries = 2000);

bool verify_sequence(const BipartitionSequence& seq, const Rational& alpha, const Rational& beta);

// Entries [begin, end) as a sequence of their own, re-measured.
BipartitionSequence subsequence(const BipartitionSequence& seq, int begin, int end);

struct BalancedWeightsVerdict {
  int qualifying = 0;  // bipartitions with min side weight >= (1 - max weight) / 8
  int length = 0;
  bool holds = false;  // 6 * qualifying >= length
};

// Weights are nonnegative integers normalised by their sum, so every
// comparison is exact. Throws PreconditionError unless the sequence is
// 1/16-balanced.
BalancedWeightsVerdict verify_balanced_weights(const BipartitionSequence& seq, std::span<const std::int64_t> weights);

// ---------------------------------------------------------------------------
// Modified blow-up and the iterated construction

enum class EdgeChoice : std::uint8_t { Parallel = 0, Crossed = 1 };

// Vertex x of a regular graph g becomes x*n, ..., x*n + n - 1. The k-th
// neighbour of x (ascending id) is associated with sequences[x].sides[k]. An
// edge (x, y) with bipartitions (X_0, X_1), (Y_0, Y_1) becomes complete
// bipartite graphs X_0-Y_0 and X_1-Y_1 (Parallel) or X_0-Y_1 and X_1-Y_0
// (Crossed). choices follow the order of g.edges().
DenseGraph modified_blowup(const DenseGraph& g, int n, const std::vector<BipartitionSequence>& sequences,
                           const std::vector<EdgeChoice>& choices);

// Index of the bipartition of x associated with its neighbour y.
int association_index(const DenseGraph& g, int x, int y);

struct ConstructionParams {
  int s = 0;
  std::vector<int> sizes;               // n_0, ..., n_s; n_r even for r >= 1
  std::vector<Rational> alpha_targets;  // alpha_1..alpha_s; empty means 1/4
  Rational beta_target{1, 16};
  std::uint64_t seed = 0;
  int final_blowup = 1;
  int max_tries = 2000;
  int claim_samples = 32;
  SearchConfig search;                  // for the sampled claim checks
};

struct ConstructionLevel {
  DenseGraph graph;  // G_r
  // Levels r >= 1: how G_r was built from G_{r-1}.
  std::vector<BipartitionSequence> sequences;  // per vertex of G_{r-1}
  std::vector<EdgeChoice> choices;             // per edge of G_{r-1}
  Rational alpha_target;
  Rational achieved_alpha;  // max over the level's sequences
  Rational achieved_beta;
  int degree = 0;           // G_r is degree-regular
};

struct ConstructionArtifact {
  ConstructionParams params;
  std::vector<ConstructionLevel> levels;  // G_0, ..., G_s
  DenseGraph graph;                       // blow-up of G_s
  std::vector<Partition> partitions;      // X_0, ..., X_s over V(graph)
  int color = -1;                         // colour index inside a multicoloured build
  // Final vertices per vertex of G_r.
  std::vector<VertexSet> clusters(int r) const;
  // Final vertices below the children of x in G_r (r < s) on side `side` of
  // the bipartition x associates with its neighbour y.
  VertexSet half(int r, int x, int y, int side) const;
};

// A claim verifier failed while building.
class ConstructionError : public Error {
 public:
  ConstructionError(std::string claim, const std::string& what) : Error(what), claim_(std::move(claim)) {}
  const std::string& claim() const { return claim_; }

 private:
  std::string claim_;
};

// Builds G_0 = K_{n_0,n_0}, ..., G_s with all-Parallel choices, blows up G_s
// and runs verify_construction_claims; throws ConstructionError naming the
// first failing claim.
ConstructionArtifact build_construction(const ConstructionParams& params);
// As build_construction but without running the claim suite.
ConstructionArtifact build_construction_unchecked(const ConstructionParams& params);

// The growth schedule n_0 = 4^{s+8}, n_r = 2^{floor(n_{r-1}/200)},
// alpha_r = 1/(8 n_0 ... n_{r-1}). Always exceeds the vertex cap, so this
// throws CapabilityError with the required vertex count.
ConstructionParams full_scale_params(int s);

struct MulticolorArtifact {
  DenseGraph complete;                      // K_{N,N}
  std::vector<ConstructionArtifact> colors; // 2^s colour classes on the same vertices
  std::vector<int> edge_color;              // colour of each edge of complete.edges()
  bool disjoint = false;
  bool covers = false;
};

// Colour c at level s descends from colour c >> 1 at level s - 1; even colours
// take the Parallel choice on that level, odd ones the Crossed choice.
MulticolorArtifact build_multicolored(const ConstructionParams& params);

// ---------------------------------------------------------------------------
// Claim verifiers

struct ClaimCheck {
  std::string id;
  bool passed = true;
  bool skipped = false;
  std::int64_t checked = 0;
  std::int64_t failures = 0;
  std::string detail;
};

struct ClaimsReport {
  std::vector<ClaimCheck> checks;
  Rational quasirandom_delta;        // smallest delta for the final graph at p = 2^-s
  double regularity_epsilon = 0.0;   // 2 (delta / p)^{1/7}
  bool all_passed() const;
  const ClaimCheck* find(const std::string& id) const;
};

// Check ids:
//   refinement        X_r refines X_{r-1}, |X_r| = 2 n_0 ... n_r, equitable
//   level-density     G_r regular with bipartite density 2^-r; final 2^-s
//   degree-table      degrees into Y_{X,l'}: 2^r p on X_{Y,l}, 0 on X_{Y,1-l},
//                     at most 2(1/4 + alpha_r) 2^r p off X
//   cluster-degree    every X in X_r has |X_r|/2^{r+1} partners of nonzero density
//   orthogonal-degree e(x', W_{Y,l}) <= (1/4 + alpha) n_r in G_r
//   quasirandom-step  G_{r+1} is (p/2, delta_r + max(8 alpha, 2/v(G_r)))-quasirandom
//   split-clusters    sampled Z: many Y split Z ∩ X evenly (needs 1/16-balance)
//   super-regularity  sampled (eps'')-regularity, eps'' from the measured delta
//   edge-bound        sampled e(A,B) bounds implied by (eps'')-regularity
ClaimsReport verify_construction_claims(const ConstructionArtifact& artifact);

// ---------------------------------------------------------------------------
// Exploratory refinement experiment

struct ExperimentConfig {
  std::string partitioner = "weakreg";  // or "sral"
  Rational epsilon{1, 4};               // weakreg
  Rational delta{1, 5};                 // sral
  std::string f_spec = "const:0.3";     // sral
  Rational edit_fraction{0};            // random edits before partitioning, fraction of |E|
  Rational gamma{1, 8};                 // "approximately refines" threshold
  SearchConfig search;
};

struct ExperimentReport {
  int partition_order = 0;
  std::vector<Rational> gamma_per_level;  // smallest gamma with (Z ∩ X_0) gamma-refining X_r
  int deepest_level = -1;                 // largest r with gamma_r <= gamma
  std::int64_t edits = 0;
  std::string partitioner;
};

ExperimentReport refinement_pressure_experiment(const ConstructionArtifact& artifact, const ExperimentConfig& cfg);

// Writes graph.txt, level_<r>.part, associations.json, params.json,
// claims_report.json and, for multicoloured builds, colors.json.
void write_artifact_dir(const std::string& dir, const ConstructionArtifact& artifact, const ClaimsReport& claims);
void write_multicolor_dir(const std::string& dir, const MulticolorArtifact& artifact,
                          const std::vector<ClaimsReport>& claims);

}  // namespace regkit
