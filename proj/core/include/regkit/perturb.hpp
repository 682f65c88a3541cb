#pragma once

#include <cstdint>

#include "regkit/config.hpp"
#include "regkit/graph.hpp"
#include "regkit/partition.hpp"
#include "regkit/rational.hpp"
#include "regkit/regularity.hpp"

namespace regkit {

struct PerturbOutcome {
  DenseGraph edited_graph;
  EditSet edits;
  Rational delta_budget;  // sum over blocks of |e_ij - d |A_i||B_j||, in edges
  int retries = 0;        // attempts after the first
  bool success = false;   // verdict.regular for the returned attempt
  PairVerdict verdict;    // (U, V) at 2 eps
};

// Delta for a bipartite graph whose partition classes each lie inside one side.
Rational perturbation_budget(const DenseGraph& g, const Partition& parts);

// Equalizes every block density to d = d(U, V) by random deletions or
// additions, undoes the surplus edits in (i, j, u, v) order so that
// |edits| <= Delta, then checks 2 eps-regularity of (U, V). Failed attempts are
// resampled from derived seeds; when all fail the attempt with the smallest
// deviation is returned with success = false.
PerturbOutcome perturb_pair(const DenseGraph& g, const Partition& parts, const Rational& eps,
                            const SearchConfig& cfg, int max_retries = 16);

// Expected density of (X, Y) inside a block of density d_block after the
// randomization towards d, where e = e(X, Y) before. Exact.
Rational expected_density_after(std::int64_t e, std::int64_t x_size, std::int64_t y_size,
                                const Rational& d_block, const Rational& d);

}  // namespace regkit
