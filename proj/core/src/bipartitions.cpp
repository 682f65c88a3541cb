#include <algorithm>
#include <numeric>

#include "regkit/construction.hpp"
#include "regkit/rng.hpp"

namespace regkit {

namespace {

void measure(BipartitionSequence& seq) {
  const int n = seq.n;
  const int d = seq.length();
  // alpha: |X_{i,0} ∩ X_{j,0}| = a forces the four intersections to be a, n/2 - a, n/2 - a, a.
  int worst = n / 4;
  bool any_pair = false;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      int a = 0;
      for (int x = 0; x < n; ++x) a += (seq.sides[static_cast<std::size_t>(i)][static_cast<std::size_t>(x)] == 0 &&
                                        seq.sides[static_cast<std::size_t>(j)][static_cast<std::size_t>(x)] == 0);
      int m = std::max(a, n / 2 - a);
      worst = any_pair ? std::max(worst, m) : m;
      any_pair = true;
    }
  seq.achieved_alpha = any_pair ? Rational(worst, n) - Rational(1, 4) : Rational(0);

  int same_max = 0;
  bool any_vertex_pair = false;
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) {
      int c = 0;
      for (const auto& s : seq.sides) c += s[static_cast<std::size_t>(x)] == s[static_cast<std::size_t>(y)];
      same_max = any_vertex_pair ? std::max(same_max, c) : c;
      any_vertex_pair = true;
    }
  seq.achieved_beta = any_vertex_pair ? Rational(same_max, d) - Rational(1, 2) : Rational(-1, 2);
}

std::vector<std::uint8_t> random_bipartition(Rng& rng, int n) {
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  shuffle(rng, order);
  std::vector<std::uint8_t> side(static_cast<std::size_t>(n), 0);
  for (int t = n / 2; t < n; ++t) side[static_cast<std::size_t>(order[static_cast<std::size_t>(t)])] = 1;
  return side;
}

}  // namespace

BipartitionSequence make_sequence(int n, std::vector<std::vector<std::uint8_t>> sides) {
  if (n < 2 || n % 2 != 0) throw DomainError("bipartition ground set must have even size >= 2");
  if (sides.empty()) throw DomainError("empty bipartition sequence");
  for (const auto& s : sides) {
    if (static_cast<int>(s.size()) != n) throw DomainError("bipartition over a different ground set");
    int ones = 0;
    for (auto b : s) {
      if (b > 1) throw DomainError("bipartition side must be 0 or 1");
      ones += b;
    }
    if (2 * ones != n) throw DomainError("bipartition is not equitable");
  }
  BipartitionSequence seq;
  seq.n = n;
  seq.sides = std::move(sides);
  measure(seq);
  return seq;
}

namespace {

// Local search over swaps (x moves across bipartition i, z comes back), which
// keep every bipartition equitable. Cost is the total excess over the caps;
// a move is kept when it does not raise the cost.
class SwapRepair {
 public:
  SwapRepair(std::vector<std::vector<std::uint8_t>>& sides, int n, std::int64_t hi, std::int64_t same_cap)
      : s_(sides), n_(n), d_(static_cast<int>(sides.size())), hi_(hi), cap_(same_cap),
        same_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0),
        zero_(static_cast<std::size_t>(d_) * static_cast<std::size_t>(d_), 0) {
    for (int x = 0; x < n_; ++x)
      for (int y = x + 1; y < n_; ++y) {
        int c = 0;
        for (const auto& b : s_) c += b[ux(x)] == b[ux(y)];
        same(x, y) = c;
        same(y, x) = c;
      }
    for (int i = 0; i < d_; ++i)
      for (int j = i + 1; j < d_; ++j) {
        int a = 0;
        for (int x = 0; x < n_; ++x) a += side(i, x) == 0 && side(j, x) == 0;
        zero(i, j) = a;
        zero(j, i) = a;
      }
    for (int x = 0; x < n_; ++x)
      for (int y = x + 1; y < n_; ++y) cost_ += pair_excess(same(x, y));
    for (int i = 0; i < d_; ++i)
      for (int j = i + 1; j < d_; ++j) cost_ += inter_excess(zero(i, j));
  }

  std::int64_t cost() const { return cost_; }

  // One proposal; returns false when there is nothing to repair.
  bool step(Rng& rng) {
    if (cost_ == 0) return false;
    int i = 0, u = 0;
    std::vector<std::pair<int, int>> bad;
    for (int x = 0; x < n_; ++x)
      for (int y = x + 1; y < n_; ++y)
        if (same(x, y) > cap_) bad.emplace_back(x, y);
    if (!bad.empty()) {
      auto [x, y] = bad[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(bad.size()) - 1))];
      std::vector<int> together;
      for (int k = 0; k < d_; ++k)
        if (side(k, x) == side(k, y)) together.push_back(k);
      i = together[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(together.size()) - 1))];
      u = uniform_int(rng, 0, 1) == 0 ? x : y;
    } else {
      std::vector<int> rows;
      for (int a = 0; a < d_; ++a)
        for (int b = a + 1; b < d_; ++b)
          if (inter_excess(zero(a, b)) > 0) rows.push_back(uniform_int(rng, 0, 1) == 0 ? a : b);
      i = rows[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(rows.size()) - 1))];
      u = static_cast<int>(uniform_int(rng, 0, n_ - 1));
    }
    std::vector<int> other;
    for (int w = 0; w < n_; ++w)
      if (side(i, w) != side(i, u)) other.push_back(w);
    const int z = other[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(other.size()) - 1))];

    // u and z trade sides in bipartition i.
    std::int64_t delta = 0;
    for (int w = 0; w < n_; ++w) {
      if (w == u || w == z) continue;
      const int du = side(i, w) == side(i, u) ? -1 : 1;
      delta += pair_excess(same(u, w) + du) - pair_excess(same(u, w));
      delta += pair_excess(same(z, w) - du) - pair_excess(same(z, w));
    }
    for (int j = 0; j < d_; ++j) {
      if (j == i) continue;
      delta += inter_excess(zero(i, j) + zero_shift(i, j, u, z)) - inter_excess(zero(i, j));
    }
    if (delta > 0) return true;
    for (int w = 0; w < n_; ++w) {
      if (w == u || w == z) continue;
      const int du = side(i, w) == side(i, u) ? -1 : 1;
      same(u, w) += du;
      same(w, u) += du;
      same(z, w) -= du;
      same(w, z) -= du;
    }
    for (int j = 0; j < d_; ++j) {
      if (j == i) continue;
      zero(i, j) += zero_shift(i, j, u, z);
      zero(j, i) = zero(i, j);
    }
    std::swap(s_[static_cast<std::size_t>(i)][ux(u)], s_[static_cast<std::size_t>(i)][ux(z)]);
    cost_ += delta;
    return true;
  }

 private:
  static std::size_t ux(int x) { return static_cast<std::size_t>(x); }
  int side(int i, int x) const { return s_[static_cast<std::size_t>(i)][ux(x)]; }
  int& same(int x, int y) { return same_[ux(x) * ux(n_) + ux(y)]; }
  int& zero(int i, int j) { return zero_[ux(i) * ux(d_) + ux(j)]; }
  std::int64_t pair_excess(int c) const { return std::max<std::int64_t>(0, c - cap_); }
  std::int64_t inter_excess(int a) const { return std::max<std::int64_t>(0, std::max(a, n_ / 2 - a) - hi_); }
  // Change of |X_{i,0} ∩ X_{j,0}| when u and z trade sides in bipartition i.
  int zero_shift(int i, int j, int u, int z) const {
    int shift = 0;
    for (int v : {u, z}) {
      if (side(j, v) != 0) continue;
      shift += side(i, v) == 0 ? -1 : 1;
    }
    return shift;
  }

  std::vector<std::vector<std::uint8_t>>& s_;
  int n_, d_;
  std::int64_t hi_, cap_;
  std::vector<int> same_, zero_;
  std::int64_t cost_ = 0;
};

}  // namespace

SequenceSearch make_bipartition_sequence(int n, int d, const Rational& alpha_target, const Rational& beta_target,
                                         std::uint64_t seed, int max_tries) {
  if (n < 2 || n % 2 != 0) throw DomainError("bipartition ground set must have even size >= 2");
  if (d < 1) throw DomainError("sequence length must be positive");
  if (max_tries < 1) throw DomainError("max_tries must be positive");
  // Integer caps implied by the targets.
  const Rational hi_r = (Rational(1, 4) + alpha_target) * Rational(n);
  const std::int64_t hi = hi_r.num() < 0 ? -1 : hi_r.floor_times(1);
  const Rational same_r = (Rational(1, 2) + beta_target) * Rational(d);
  const std::int64_t same_cap = same_r.num() < 0 ? -1 : same_r.floor_times(1);
  const std::int64_t repair_moves = std::int64_t{16} * n * d;

  SequenceSearch out;
  Rational best_gap;
  for (int t = 0; t < max_tries; ++t) {
    Rng rng(derive_seed(seed, "bipartition-try", t));
    std::vector<std::vector<std::uint8_t>> sides;
    sides.reserve(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) sides.push_back(random_bipartition(rng, n));
    // Uniform draws rarely meet tight targets (every one of the n(n-1)/2
    // pairs must be split often enough), so a missed draw is repaired.
    if (hi >= n / 2 - hi && same_cap >= 0) {
      SwapRepair repair(sides, n, hi, same_cap);
      for (std::int64_t m = 0; m < repair_moves && repair.step(rng); ++m) {
      }
    }
    BipartitionSequence seq = make_sequence(n, std::move(sides));
    out.tries = t + 1;
    if (seq.achieved_alpha <= alpha_target && seq.achieved_beta <= beta_target) {
      out.sequence = std::move(seq);
      out.success = true;
      return out;
    }
    Rational gap = std::max(seq.achieved_alpha - alpha_target, seq.achieved_beta - beta_target);
    if (t == 0 || gap < best_gap) {
      best_gap = gap;
      out.sequence = std::move(seq);
    }
  }
  return out;
}

bool verify_sequence(const BipartitionSequence& seq, const Rational& alpha, const Rational& beta) {
  BipartitionSequence again = make_sequence(seq.n, seq.sides);
  return again.achieved_alpha <= alpha && again.achieved_beta <= beta;
}

BipartitionSequence subsequence(const BipartitionSequence& seq, int begin, int end) {
  if (begin < 0 || end > seq.length() || begin >= end) throw DomainError("bad subsequence range");
  return make_sequence(seq.n, {seq.sides.begin() + begin, seq.sides.begin() + end});
}

BalancedWeightsVerdict verify_balanced_weights(const BipartitionSequence& seq, std::span<const std::int64_t> weights) {
  if (static_cast<int>(weights.size()) != seq.n) throw DomainError("one weight per ground element expected");
  if (seq.achieved_beta > Rational(1, 16)) throw PreconditionError("sequence is not 1/16-balanced");
  std::int64_t total = 0, top = 0;
  for (auto w : weights) {
    if (w < 0) throw DomainError("negative weight");
    total += w;
    top = std::max(top, w);
  }
  if (total == 0) throw DomainError("weights sum to zero");
  BalancedWeightsVerdict v;
  v.length = seq.length();
  for (const auto& s : seq.sides) {
    std::int64_t side[2] = {0, 0};
    for (int x = 0; x < seq.n; ++x) side[s[static_cast<std::size_t>(x)]] += weights[static_cast<std::size_t>(x)];
    // min side / total >= (1 - top / total) / 8
    if (8 * std::min(side[0], side[1]) >= total - top) ++v.qualifying;
  }
  v.holds = 6 * v.qualifying >= v.length;
  return v;
}

}  // namespace regkit
