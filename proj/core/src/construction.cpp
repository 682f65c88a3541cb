#include "regkit/construction.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "regkit/rng.hpp"
#include "regkit/sral.hpp"
#include "regkit/weak_regularizer.hpp"

namespace regkit {

int association_index(const DenseGraph& g, int x, int y) {
  if (!g.adjacent(x, y)) throw DomainError("association of a non-adjacent pair");
  VertexSet below = VertexSet::range(g.n(), 0, y);
  return g.degree_into(x, below);
}

DenseGraph modified_blowup(const DenseGraph& g, int n, const std::vector<BipartitionSequence>& sequences,
                           const std::vector<EdgeChoice>& choices) {
  if (n < 2 || n % 2 != 0) throw DomainError("modified blow-up needs an even factor >= 2");
  if (static_cast<int>(sequences.size()) != g.n()) throw DomainError("one bipartition sequence per vertex expected");
  const auto edges = g.edges();
  if (choices.size() != edges.size()) throw DomainError("one choice per edge expected");
  if (static_cast<std::int64_t>(g.n()) * n > kMaxVertices) throw CapabilityError("modified blow-up exceeds the vertex cap");
  for (int x = 0; x < g.n(); ++x) {
    const auto& seq = sequences[static_cast<std::size_t>(x)];
    if (seq.n != n) throw DomainError("bipartition sequence over the wrong ground set");
    if (seq.length() != g.degree(x)) throw DomainError("sequence length differs from the vertex degree");
  }
  std::optional<int> left;
  if (g.is_bipartite()) left = g.left_size() * n;
  GraphBuilder b(g.n() * n, left);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    auto [x, y] = edges[e];
    const auto& bx = sequences[static_cast<std::size_t>(x)].sides[static_cast<std::size_t>(association_index(g, x, y))];
    const auto& by = sequences[static_cast<std::size_t>(y)].sides[static_cast<std::size_t>(association_index(g, y, x))];
    const bool crossed = choices[e] == EdgeChoice::Crossed;
    for (int a = 0; a < n; ++a)
      for (int c = 0; c < n; ++c)
        if ((bx[static_cast<std::size_t>(a)] != by[static_cast<std::size_t>(c)]) == crossed) b.add_edge(x * n + a, y * n + c);
  }
  return std::move(b).build();
}

namespace {

using SequenceSource = std::function<BipartitionSequence(int r, int x, int d)>;
using ChoiceSource = std::function<EdgeChoice(int r)>;

void validate(const ConstructionParams& p) {
  if (p.s < 0) throw DomainError("s must be nonnegative");
  if (static_cast<int>(p.sizes.size()) != p.s + 1) throw DomainError("expected s + 1 sizes n_0, ..., n_s");
  if (p.sizes[0] < 1) throw DomainError("n_0 must be positive");
  for (int r = 1; r <= p.s; ++r)
    if (p.sizes[static_cast<std::size_t>(r)] < 2 || p.sizes[static_cast<std::size_t>(r)] % 2 != 0)
      throw DomainError("n_r must be even and at least 2 for r >= 1");
  if (!p.alpha_targets.empty() && static_cast<int>(p.alpha_targets.size()) != p.s)
    throw DomainError("expected one alpha target per level");
  if (p.final_blowup < 1) throw DomainError("final blow-up factor must be positive");
  std::int64_t total = 2LL * p.final_blowup;
  for (int v : p.sizes) {
    total *= v;
    if (total > kMaxVertices)
      throw CapabilityError("construction exceeds the vertex cap of " + std::to_string(kMaxVertices));
  }
}

Rational alpha_target(const ConstructionParams& p, int r) {
  return p.alpha_targets.empty() ? Rational(1, 4) : p.alpha_targets[static_cast<std::size_t>(r - 1)];
}

ConstructionArtifact build_levels(const ConstructionParams& p, const SequenceSource& seqs, const ChoiceSource& choice) {
  validate(p);
  ConstructionArtifact art;
  art.params = p;
  ConstructionLevel base;
  base.graph = complete_bipartite(p.sizes[0], p.sizes[0]);
  base.degree = p.sizes[0];
  art.levels.push_back(std::move(base));
  for (int r = 1; r <= p.s; ++r) {
    const ConstructionLevel& prev = art.levels.back();
    const int n = p.sizes[static_cast<std::size_t>(r)];
    ConstructionLevel lvl;
    lvl.alpha_target = alpha_target(p, r);
    lvl.sequences.reserve(static_cast<std::size_t>(prev.graph.n()));
    for (int x = 0; x < prev.graph.n(); ++x) {
      lvl.sequences.push_back(seqs(r, x, prev.degree));
      const auto& seq = lvl.sequences.back();
      lvl.achieved_alpha = x == 0 ? seq.achieved_alpha : std::max(lvl.achieved_alpha, seq.achieved_alpha);
      lvl.achieved_beta = x == 0 ? seq.achieved_beta : std::max(lvl.achieved_beta, seq.achieved_beta);
    }
    lvl.choices.assign(static_cast<std::size_t>(prev.graph.edge_count()), choice(r));
    lvl.graph = modified_blowup(prev.graph, n, lvl.sequences, lvl.choices);
    lvl.degree = prev.degree * n / 2;
    art.levels.push_back(std::move(lvl));
  }
  art.graph = blow_up(art.levels.back().graph, p.final_blowup).graph;

  const int total = art.graph.n();
  int block = total;
  std::vector<int> labels(static_cast<std::size_t>(total));
  for (int r = 0; r <= p.s; ++r) {
    block = total / art.levels[static_cast<std::size_t>(r)].graph.n();
    for (int v = 0; v < total; ++v) labels[static_cast<std::size_t>(v)] = v / block;
    art.partitions.emplace_back(labels);
  }
  return art;
}

// color < 0: plain construction. Otherwise the sequences of level r are shared
// by all colours with the same ancestor at level r - 1.
SequenceSource sampled_sequences(const ConstructionParams& p, const std::string& label, int color) {
  return [p, label, color](int r, int x, int d) {
    const std::uint64_t seed = color < 0 ? derive_seed(p.seed, label, r, x)
                                         : derive_seed(p.seed, label, r, x, color >> (p.s - r + 1));
    SequenceSearch found =
        make_bipartition_sequence(p.sizes[static_cast<std::size_t>(r)], d, alpha_target(p, r), p.beta_target, seed,
                                  p.max_tries);
    if (!found.success)
      throw ConstructionError("sequences", "no bipartition sequence met the targets at level " + std::to_string(r) +
                                               " (best alpha " + found.sequence.achieved_alpha.str() + ", beta " +
                                               found.sequence.achieved_beta.str() + ")");
    return found.sequence;
  };
}

}  // namespace

std::vector<VertexSet> ConstructionArtifact::clusters(int r) const {
  const Partition& x = partitions.at(static_cast<std::size_t>(r));
  std::vector<VertexSet> out;
  out.reserve(static_cast<std::size_t>(x.order()));
  for (int c = 0; c < x.order(); ++c) out.push_back(x.class_set(c));
  return out;
}

VertexSet ConstructionArtifact::half(int r, int x, int y, int side) const {
  if (r < 0 || r >= params.s) throw DomainError("associated bipartitions exist for levels 0..s-1");
  const DenseGraph& g = levels[static_cast<std::size_t>(r)].graph;
  const auto& seq = levels[static_cast<std::size_t>(r) + 1].sequences[static_cast<std::size_t>(x)];
  const auto& sides = seq.sides[static_cast<std::size_t>(association_index(g, x, y))];
  const int n = seq.n;
  const int block = graph.n() / levels[static_cast<std::size_t>(r) + 1].graph.n();
  VertexSet out(graph.n());
  for (int t = 0; t < n; ++t) {
    if (sides[static_cast<std::size_t>(t)] != side) continue;
    const int child = x * n + t;
    for (int v = child * block; v < (child + 1) * block; ++v) out.set(v);
  }
  return out;
}

ConstructionArtifact build_construction_unchecked(const ConstructionParams& params) {
  return build_levels(params, sampled_sequences(params, "sequence", -1), [](int) { return EdgeChoice::Parallel; });
}

ConstructionArtifact build_construction(const ConstructionParams& params) {
  ConstructionArtifact art = build_construction_unchecked(params);
  ClaimsReport report = verify_construction_claims(art);
  for (const auto& c : report.checks)
    if (!c.passed) throw ConstructionError(c.id, "claim check failed: " + c.id + " (" + c.detail + ")");
  return art;
}

ConstructionParams full_scale_params(int s) {
  if (s < 0) throw DomainError("s must be nonnegative");
  // n_0 = 4^{s+8} alone is 2^{2s+16}; the graph has at least 2 n_0 vertices.
  const double log2_vertices = 2.0 * s + 17.0;
  throw CapabilityError("the exact growth schedule needs at least 2^" + std::to_string(static_cast<int>(log2_vertices)) +
                        " vertices; the cap is " + std::to_string(kMaxVertices));
}

MulticolorArtifact build_multicolored(const ConstructionParams& params) {
  validate(params);
  MulticolorArtifact out;
  const int colors = 1 << params.s;
  for (int c = 0; c < colors; ++c) {
    auto choice = [&params, c](int r) {
      return ((c >> (params.s - r)) & 1) != 0 ? EdgeChoice::Crossed : EdgeChoice::Parallel;
    };
    ConstructionArtifact art = build_levels(params, sampled_sequences(params, "multicolor-sequence", c), choice);
    art.color = c;
    out.colors.push_back(std::move(art));
  }
  const DenseGraph& first = out.colors.front().graph;
  out.complete = complete_bipartite(first.left_size(), first.right_size());
  const auto edges = out.complete.edges();
  out.edge_color.assign(edges.size(), -1);
  out.disjoint = true;
  out.covers = true;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    auto [u, v] = edges[e];
    for (const auto& art : out.colors) {
      if (!art.graph.adjacent(u, v)) continue;
      if (out.edge_color[e] >= 0) out.disjoint = false;
      out.edge_color[e] = art.color;
    }
    if (out.edge_color[e] < 0) out.covers = false;
  }
  return out;
}

ExperimentReport refinement_pressure_experiment(const ConstructionArtifact& artifact, const ExperimentConfig& cfg) {
  DenseGraph g = artifact.graph;
  ExperimentReport rep;
  rep.partitioner = cfg.partitioner;
  if (cfg.edit_fraction.num() < 0 || cfg.edit_fraction > Rational(1)) throw DomainError("edit fraction outside [0, 1]");
  const std::int64_t flips = cfg.edit_fraction.floor_times(g.edge_count());
  if (flips > 0) {
    Rng rng(derive_seed(cfg.search.seed, "experiment-edits"));
    const std::int64_t a = g.left_size(), b = g.right_size();
    std::set<std::int64_t> chosen;
    while (static_cast<std::int64_t>(chosen.size()) < flips) chosen.insert(uniform_int(rng, 0, a * b - 1));
    GraphBuilder builder(g);
    for (auto code : chosen) {
      int u = static_cast<int>(code / b), v = static_cast<int>(a + code % b);
      if (builder.has_edge(u, v))
        builder.remove_edge(u, v);
      else
        builder.add_edge(u, v);
    }
    g = std::move(builder).build();
    rep.edits = flips;
  }
  const Partition& x0 = artifact.partitions.front();
  Partition z;
  if (cfg.partitioner == "weakreg") {
    z = weak_regularize(g, x0, cfg.epsilon, cfg.search).final_partition;
  } else if (cfg.partitioner == "sral") {
    z = sral(g, x0, cfg.delta, FSpec::parse(cfg.f_spec), cfg.search).final_partition;
  } else {
    throw DomainError("unknown partitioner: " + cfg.partitioner);
  }
  rep.partition_order = z.order();
  Partition zx = common_refinement(z, x0);
  for (std::size_t r = 0; r < artifact.partitions.size(); ++r) {
    Rational gamma = min_refinement_gamma(zx, artifact.partitions[r]);
    rep.gamma_per_level.push_back(gamma);
    if (gamma <= cfg.gamma) rep.deepest_level = static_cast<int>(r);
  }
  return rep;
}

}  // namespace regkit
