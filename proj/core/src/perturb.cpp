#include "regkit/perturb.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <tuple>

#include "regkit/error.hpp"
#include "regkit/rng.hpp"

namespace regkit {

namespace {

struct Sides {
  std::vector<int> left;   // class ids inside U, ascending
  std::vector<int> right;  // class ids inside V
};

Sides split_classes(const DenseGraph& g, const Partition& parts) {
  if (!g.is_bipartite()) throw DomainError("perturbation needs a bipartite graph");
  if (parts.universe() != g.n()) throw DomainError("partition over a different vertex set");
  if (g.left_size() == 0 || g.right_size() == 0) throw DomainError("perturbation needs two nonempty sides");
  Sides s;
  for (int c = 0; c < parts.order(); ++c) {
    const auto& m = parts.members(c);
    bool left = g.on_left(m.front());
    for (int v : m)
      if (g.on_left(v) != left) throw DomainError("partition class crosses the bipartition");
    (left ? s.left : s.right).push_back(c);
  }
  return s;
}

using i128 = __int128;

}  // namespace

Rational perturbation_budget(const DenseGraph& g, const Partition& parts) {
  Sides s = split_classes(g, parts);
  auto m = class_edge_matrix(g, parts);
  const std::int64_t uv = static_cast<std::int64_t>(g.left_size()) * g.right_size();
  const std::int64_t e = g.edge_count();
  i128 num = 0;
  for (int i : s.left)
    for (int j : s.right) {
      i128 w = static_cast<i128>(parts.class_size(i)) * parts.class_size(j);
      i128 x = static_cast<i128>(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) * uv - w * e;
      num += x < 0 ? -x : x;
    }
  if (num > std::numeric_limits<std::int64_t>::max()) throw CapabilityError("perturbation budget overflows");
  return Rational(static_cast<std::int64_t>(num), uv);
}

Rational expected_density_after(std::int64_t e, std::int64_t x_size, std::int64_t y_size, const Rational& d_block,
                                const Rational& d) {
  if (x_size <= 0 || y_size <= 0) throw DomainError("empty set");
  const std::int64_t xy = x_size * y_size;
  if (e < 0 || e > xy) throw DomainError("edge count out of range");
  Rational expected(e);
  if (d_block > d) {
    expected = Rational(e) * d / d_block;
  } else if (d_block < d) {
    expected = Rational(e) + Rational(xy - e) * (d - d_block) / (Rational(1) - d_block);
  }
  return expected / Rational(xy);
}

PerturbOutcome perturb_pair(const DenseGraph& g, const Partition& parts, const Rational& eps,
                            const SearchConfig& cfg, int max_retries) {
  if (eps.num() <= 0) throw DomainError("epsilon must be positive");
  if (max_retries < 0) throw DomainError("negative retry budget");
  Sides s = split_classes(g, parts);
  const Rational budget = perturbation_budget(g, parts);
  const std::int64_t allowed = budget.floor_times(1);
  auto m = class_edge_matrix(g, parts);
  const std::int64_t uv = static_cast<std::int64_t>(g.left_size()) * g.right_size();
  const std::int64_t e = g.edge_count();
  const double d = static_cast<double>(e) / static_cast<double>(uv);
  const VertexSet left = g.left_side(), right = g.right_side();
  const Rational check_eps = std::min(Rational(2) * eps, Rational(1));

  std::optional<PerturbOutcome> best;
  for (int t = 0; t <= max_retries; ++t) {
    const std::uint64_t seed = derive_seed(cfg.seed, "perturb-attempt", t);
    // (addition?, u, v) in (i, j, u, v) order.
    std::vector<std::tuple<bool, int, int>> edits;
    for (int i : s.left)
      for (int j : s.right) {
        std::int64_t eij = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        std::int64_t w = static_cast<std::int64_t>(parts.class_size(i)) * parts.class_size(j);
        // Compare e_ij / w against e / uv.
        i128 lhs = static_cast<i128>(eij) * uv, rhs = static_cast<i128>(e) * w;
        if (lhs == rhs) continue;
        const bool remove = lhs > rhs;
        const double dij = static_cast<double>(eij) / static_cast<double>(w);
        const double prob = remove ? (dij - d) / dij : (d - dij) / (1.0 - dij);
        Rng rng(derive_seed(seed, "perturb-block", i, j));
        for (int u : parts.members(i))
          for (int v : parts.members(j)) {
            if (g.adjacent(u, v) != remove) continue;
            if (bernoulli(rng, prob)) edits.emplace_back(!remove, std::min(u, v), std::max(u, v));
          }
      }
    const std::size_t undo =
        static_cast<std::int64_t>(edits.size()) > allowed ? edits.size() - static_cast<std::size_t>(allowed) : 0;

    PerturbOutcome out;
    out.delta_budget = budget;
    out.retries = t;
    GraphBuilder b(g);
    for (std::size_t k = undo; k < edits.size(); ++k) {
      auto [add, u, v] = edits[k];
      if (add) {
        b.add_edge(u, v);
        out.edits.additions.emplace_back(u, v);
      } else {
        b.remove_edge(u, v);
        out.edits.removals.emplace_back(u, v);
      }
    }
    out.edits.normalize();
    out.edited_graph = std::move(b).build();
    SearchConfig vc = cfg;
    vc.seed = derive_seed(seed, "perturb-verify");
    out.verdict = check_pair_regular(out.edited_graph, left, right, check_eps, vc);
    out.success = out.verdict.regular;
    if (out.success) return out;
    if (!best || out.verdict.deviation < best->verdict.deviation) best = std::move(out);
  }
  best->retries = max_retries;
  return *best;
}

}  // namespace regkit
