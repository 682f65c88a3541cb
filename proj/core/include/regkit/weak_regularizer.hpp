#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "regkit/config.hpp"
#include "regkit/graph.hpp"
#include "regkit/partition.hpp"
#include "regkit/rational.hpp"
#include "regkit/regularity.hpp"

namespace regkit {

enum class Termination { WitnessExhausted, IterationCap };
std::string to_string(Termination t);

// b = ceil(8 / eps^4).
std::int64_t weak_block_count(const Rational& eps);
// ceil(2 / eps^4).
std::int64_t weak_iteration_cap(const Rational& eps);

struct WeakRegStep {
  int order = 0;
  double q = 0.0;
  std::string q_exact;
  std::optional<SubsetPair> witness;  // witness found for this partition, if any
  double wall_ms = 0.0;
};

struct WeakRegRun {
  Rational epsilon;
  Mode mode = Mode::Sampled;
  std::vector<WeakRegStep> iterations;  // one entry per partition P_0, P_1, ...
  std::vector<Partition> partitions;    // the partitions themselves
  Partition final_partition;
  Termination terminated_by = Termination::WitnessExhausted;
  std::int64_t iteration_cap = 0;
  int refinements() const { return static_cast<int>(partitions.size()) - 1; }
};

// A violating (S, T) for P, or nothing. Exact mode searches exhaustively and
// stops at the first witness; sampled mode returns the best validated one.
std::optional<SubsetPair> find_weak_witness(const DenseGraph& g, const Partition& p, const Rational& eps,
                                            const SearchConfig& cfg);

// Splits every class V_i into S_i, T_i, W_i and equitizes with block size
// max(1, floor(n / (b k))). Throws InternalError unless q gains eps^4 / 2.
// With audit, also builds the auxiliary partition (P' split along S, T, W)
// and checks q(P*) >= q(Q) >= q(P) + eps^4.
Partition refine_step(const DenseGraph& g, const Partition& p, const SubsetPair& witness, const Rational& eps,
                      bool audit = false);

struct WeakRegOptions {
  bool audit = false;
  bool record_time = false;  // wall time makes traces differ between runs
};

// Iterates witness search and refinement from an equitable P0.
WeakRegRun weak_regularize(const DenseGraph& g, const Partition& p0, const Rational& eps, const SearchConfig& cfg,
                           const WeakRegOptions& opts = {});

}  // namespace regkit
