#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "regkit/graph.hpp"
#include "regkit/partition.hpp"
#include "regkit/rational.hpp"

namespace regkit {

inline constexpr double kInequalityTolerance = 1e-9;
inline constexpr double kIdentityTolerance = 1e-12;

// x ln x with 0 ln 0 = 0.
double xlogx(double x);
double xlogx(const Rational& x);

// Neumaier compensated sum.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct PotentialReport {
  double mean_square = 0.0;
  std::string mean_square_exact;  // "num/den"
  double entropy = 0.0;
  double l1_distance = 0.0;
};

// q(P): sum over ordered class pairs of |Z_i||Z_j|/n^2 * d(Z_i, Z_j)^2.
double mean_square_density(const DenseGraph& g, const Partition& p);
std::string mean_square_density_exact(const DenseGraph& g, const Partition& p);
// Exact test q(after) - q(before) >= gain.
bool mean_square_gain_at_least(const DenseGraph& g, const Partition& before, const Partition& after,
                               const Rational& gain);

// H(P): sum over ordered class pairs of |Z_i||Z_j|/n^2 * H(d(Z_i, Z_j)).
double entropy_potential(const DenseGraph& g, const Partition& p);
// Cross form between partitions of two vertex subsets A and A' (each given as
// its list of parts): sum of |V||V'|/(|A||A'|) * H(d(V, V')).
double entropy_cross(const DenseGraph& g, const std::vector<VertexSet>& parts_a,
                     const std::vector<VertexSet>& parts_b);

PotentialReport potential_report(const DenseGraph& g, const Partition& p);

struct InequalityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;  // lhs >= rhs - tolerance
};

// sum p_i H(d_i) - H(d) >= d/2 * (sum p_i |d_i/d - 1|)^2 with d = sum p_i d_i.
InequalityCheck defect_lower_bound(std::span<const double> p, std::span<const double> d);

struct PinskerCheck {
  double kl = 0.0;  // sum q_i ln(q_i / p_i)
  double tv = 0.0;  // (sum |q_i - p_i|)^2 / 2
  bool holds = false;
};
PinskerCheck pinsker_check(std::span<const double> p, std::span<const double> q);

struct L1Distance {
  double value = 0.0;
  std::string exact;  // "num/den"
};
// D(Q, P) = 1/2 sum over ordered class pairs (V_i, V_j) of P and parts U, U'
// of Q inside them of |U||U'| |d(U, U') - d(V_i, V_j)|, in edge units.
L1Distance l1_partition_distance(const DenseGraph& g, const Partition& q, const Partition& p);
// Exact comparison of D(Q, P) against a rational number of edges.
std::strong_ordering compare_l1_distance(const DenseGraph& g, const Partition& q, const Partition& p,
                                         const Rational& edges);

struct PotentialVsL1 {
  double x = 0.0;     // D(Q,P) / (p n^2)
  double gain = 0.0;  // H(Q) - H(P)
  double bound = 0.0; // 2 x^2 p
  bool holds = false;
};
PotentialVsL1 potential_vs_l1_check(const DenseGraph& g, const Partition& q, const Partition& p);

}  // namespace regkit
