#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "regkit/config.hpp"
#include "regkit/graph.hpp"
#include "regkit/partition.hpp"
#include "regkit/perturb.hpp"
#include "regkit/rational.hpp"
#include "regkit/weak_regularizer.hpp"

namespace regkit {

// Decreasing function of the partition order, written as
//   const:C     f(x) = C
//   pow:C:A     f(x) = C x^-A
//   log:C       f(x) = C / (1 + ln x)
class FSpec {
 public:
  static FSpec parse(const std::string& text);
  double operator()(double x) const;
  const std::string& text() const { return text_; }

 private:
  enum class Kind { Constant, Power, Log };
  Kind kind_ = Kind::Constant;
  double c_ = 0.0;
  double a_ = 0.0;
  std::string text_;
};

// Rounds a value in (0, 1] down to a multiple of 1e-6 (at least 1e-6).
Rational grid_rational(double x);

struct SralRound {
  int order = 0;         // |P_{i-1}|
  Rational epsilon;      // g(|P_{i-1}|) on the grid
  double entropy_before = 0.0;
  double entropy_after = 0.0;
  WeakRegRun run;
};

struct SralIteration {
  Partition p;
  Partition q;
  std::vector<SralRound> rounds;
  double alpha = 0.0;
  double threshold = 0.0;  // alpha p ln(1/p)
  std::int64_t round_bound = 0;  // floor(1/alpha) + 1
};

// Refines with weak_regularize at eps = g(|P_{i-1}|) until the entropy gain of
// a round drops below alpha p ln(1/p); returns (P_r, P_{r+1}). g(x) = f(x)/(2x).
SralIteration sral_iterate(const DenseGraph& g, const Partition& p0, double alpha, const FSpec& f,
                           const SearchConfig& cfg);

struct PairRepair {
  int i = 0;
  int j = 0;
  std::int64_t edits = 0;
  Rational budget;
  int retries = 0;
  bool perturb_success = true;
  bool regular = true;  // (V_i, V_j) of the edited graph at f(k)
  Mode mode = Mode::Sampled;
};

struct SralResult {
  DenseGraph edited_graph;
  EditSet edits;
  Partition final_partition;  // P
  Partition refined;          // Q
  Rational edit_fraction;     // |edits| / |E(G)|
  Rational delta;
  std::string f_spec;
  double density = 0.0;       // p = 2|E|/n^2
  double alpha = 0.0;
  double l1_distance = 0.0;   // D(Q, P)
  bool singleton_guard = false;
  Rational pair_epsilon;      // f(k)/2 used for the repairs
  Rational target_epsilon;    // f(k)
  SralIteration iteration;
  std::vector<PairRepair> pairs;
  bool all_pairs_regular() const;
};

// Edits at most delta |E(G)| edges so that the returned partition is
// f(|P|)-regular on the edited graph. Throws InternalError if the edit budget
// is exceeded.
SralResult sral(const DenseGraph& g, const Partition& p0, const Rational& delta, const FSpec& f,
                const SearchConfig& cfg);

}  // namespace regkit
