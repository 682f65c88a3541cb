#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "regkit/rational.hpp"
#include "regkit/vertex_set.hpp"

namespace regkit {

// Partition of {0, ..., n-1} into nonempty classes. Classes are numbered in
// increasing order of their minimum vertex, so two partitions with the same
// blocks compare equal.
class Partition {
 public:
  Partition() = default;
  // Any labelling; labels need not be contiguous. Classes are renumbered.
  explicit Partition(std::vector<int> labels);

  static Partition trivial(int n);
  static Partition singletons(int n);
  // k contiguous blocks, sizes differing by at most one, larger blocks first.
  static Partition equipartition(int n, int k);
  static Partition from_classes(int n, const std::vector<std::vector<int>>& classes);

  int universe() const { return static_cast<int>(labels_.size()); }
  int order() const { return static_cast<int>(classes_.size()); }
  int class_of(int v) const { return labels_[static_cast<std::size_t>(v)]; }
  const std::vector<int>& labels() const { return labels_; }
  const std::vector<int>& members(int i) const { return classes_[static_cast<std::size_t>(i)]; }
  const std::vector<std::vector<int>>& classes() const { return classes_; }
  int class_size(int i) const { return static_cast<int>(members(i).size()); }
  VertexSet class_set(int i) const;

  bool is_equitable() const;
  bool is_discrete() const { return order() == universe(); }
  int min_class_size() const;
  int max_class_size() const;

  friend bool operator==(const Partition& a, const Partition& b) { return a.labels_ == b.labels_; }

 private:
  std::vector<int> labels_;
  std::vector<std::vector<int>> classes_;
};

bool is_refinement(const Partition& q, const Partition& p);
Partition common_refinement(const Partition& z, const Partition& x);

// |S \ T| <= gamma |S|.
bool gamma_contained(const VertexSet& s, const VertexSet& t, const Rational& gamma);

struct GammaRefinement {
  bool holds = false;
  std::int64_t offending_mass = 0;  // total size of classes of Q not gamma-contained in any class of P
};
GammaRefinement gamma_refines(const Partition& q, const Partition& p, const Rational& gamma);
// Smallest gamma for which gamma_refines(q, p, gamma) holds.
Rational min_refinement_gamma(const Partition& q, const Partition& p);

struct RefinementOrder {
  bool holds = false;   // |Q| >= |P| / 2
  std::vector<int> pi;  // class of Q -> the class of P that 1/4-contains it, or -1
  int image_size = 0;   // number of classes of P hit by pi
};
// Checker for: if Q 1/4-refines P and P is equitable then |Q| >= |P|/2.
RefinementOrder refinement_order_check(const Partition& q, const Partition& p);

// Equitable subdivision of every class of `coarse` into blocks of size
// `block` or `block + 1`. Inside a class, vertices are laid out by priority
// class (then id) and cut into consecutive blocks, so at most two blocks per
// class straddle a priority boundary. A class that cannot hold a whole
// number of such blocks is cut into as many near-equal blocks as fit, and a
// class smaller than `block` is kept whole.
Partition equitize(const Partition& coarse, int block, const Partition* priority = nullptr);

// Number of blocks of the output of equitize that are not inside a single
// priority class, per coarse class.
std::vector<int> straddling_blocks(const Partition& coarse, const Partition& refined,
                                   const Partition& priority);

void write_partition(std::ostream& out, const Partition& p);
Partition read_partition(std::istream& in);
Partition load_partition(const std::string& path);
void save_partition(const std::string& path, const Partition& p);

}  // namespace regkit
