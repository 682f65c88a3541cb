#include "regkit/report.hpp"

#include <filesystem>
#include <fstream>

#include "regkit/error.hpp"

namespace regkit {

namespace fs = std::filesystem;

Json rational_json(const Rational& r) { return r.str(); }

Json to_json(const SearchConfig& cfg) {
  return Json{{"mode", to_string(cfg.mode)},
              {"pair_exact_threshold", cfg.pair_exact_threshold},
              {"weak_exact_threshold", cfg.weak_exact_threshold},
              {"bipartite_weak_exact_threshold", cfg.bipartite_weak_exact_threshold},
              {"auto_exact_side", cfg.auto_exact_side},
              {"samples", cfg.samples},
              {"seed", cfg.seed}};
}

Json to_json(const RunConfig& rc) {
  Json j{{"command", rc.command}, {"search", to_json(rc.search)}};
  j["flags"] = Json::object();
  for (const auto& [k, v] : rc.flags) j["flags"][k] = v;
  j["paths"] = Json::object();
  for (const auto& [k, v] : rc.paths) j["paths"][k] = v;
  return j;
}

Json to_json(const SubsetPair& w) { return Json{{"first", w.first}, {"second", w.second}}; }

Json to_json(const PairVerdict& v) {
  Json j{{"verdict", v.regular},
         {"mode", to_string(v.mode)},
         {"epsilon", rational_json(v.epsilon)},
         {"reference_density", rational_json(v.reference)},
         {"tolerance", rational_json(v.tolerance)},
         {"deviation", rational_json(v.deviation)},
         {"samples_used", v.samples_used},
         {"seed", v.seed}};
  if (v.witness) {
    j["witness"] = to_json(*v.witness);
    j["witness_density"] = rational_json(v.witness_density);
  }
  return j;
}

Json to_json(const PartitionVerdict& v) {
  Json pairs = Json::array();
  for (auto [i, k] : v.irregular) pairs.push_back(Json::array({i, k}));
  return Json{{"epsilon", rational_json(v.epsilon)},
              {"mode", to_string(v.mode)},
              {"include_diagonal", v.include_diagonal},
              {"irregular_pairs", v.irregular_pairs},
              {"irregular_mass", v.irregular_mass},
              {"count_criterion", v.count_criterion},
              {"weighted_criterion", v.weighted_criterion},
              {"irregular", pairs}};
}

Json to_json(const WeakVerdict& v) {
  Json j{{"verdict", v.regular},       {"mode", to_string(v.mode)},       {"epsilon", rational_json(v.epsilon)},
         {"deviation", v.deviation},   {"samples_used", v.samples_used}, {"seed", v.seed}};
  if (v.witness) j["witness"] = to_json(*v.witness);
  return j;
}

Json to_json(const QuasiVerdict& v) {
  return Json{{"verdict", v.holds}, {"violating_pairs", v.violating_pairs}, {"allowed", rational_json(v.allowed)}};
}

Json to_json(const PairFactsReport& r) {
  return Json{{"epsilon", rational_json(r.epsilon)},
              {"density", rational_json(r.density)},
              {"degree_exceptions", r.degree_exceptions},
              {"degree_fact", r.degree_fact},
              {"slices_tested", r.slices_tested},
              {"slice_failures", r.slice_failures},
              {"slice_fact", r.slice_fact},
              {"codegree_skipped", r.codegree_skipped},
              {"codegree_epsilon", rational_json(r.codegree_eps)},
              {"codegree_exceptions", r.codegree_exceptions},
              {"codegree_fact", r.codegree_fact},
              {"verdict", r.all_hold()}};
}

Json to_json(const PotentialReport& r) {
  return Json{{"mean_square", r.mean_square},
              {"mean_square_exact", r.mean_square_exact},
              {"entropy", r.entropy},
              {"l1_distance", r.l1_distance}};
}

Json to_json(const WeakRegRun& run) {
  Json steps = Json::array();
  for (const auto& s : run.iterations) {
    Json j{{"order", s.order}, {"q", s.q}, {"q_exact", s.q_exact}};
    if (s.witness) j["witness"] = to_json(*s.witness);
    if (s.wall_ms > 0) j["wall_ms"] = s.wall_ms;
    steps.push_back(std::move(j));
  }
  return Json{{"epsilon", rational_json(run.epsilon)},
              {"mode", to_string(run.mode)},
              {"refinements", run.refinements()},
              {"iteration_cap", run.iteration_cap},
              {"terminated_by", to_string(run.terminated_by)},
              {"final_order", run.final_partition.order()},
              {"iterations", steps}};
}

Json to_json(const PerturbOutcome& o) {
  return Json{{"success", o.success},
              {"edits", o.edits.size()},
              {"additions", o.edits.additions.size()},
              {"removals", o.edits.removals.size()},
              {"delta_budget", rational_json(o.delta_budget)},
              {"retries", o.retries},
              {"verdict", to_json(o.verdict)}};
}

Json to_json(const SralResult& r) {
  Json rounds = Json::array();
  for (const auto& rd : r.iteration.rounds)
    rounds.push_back(Json{{"order", rd.order},
                          {"epsilon", rational_json(rd.epsilon)},
                          {"entropy_before", rd.entropy_before},
                          {"entropy_after", rd.entropy_after},
                          {"refinements", rd.run.refinements()},
                          {"terminated_by", to_string(rd.run.terminated_by)}});
  Json pairs = Json::array();
  for (const auto& p : r.pairs)
    pairs.push_back(Json{{"i", p.i},
                         {"j", p.j},
                         {"edits", p.edits},
                         {"budget", rational_json(p.budget)},
                         {"retries", p.retries},
                         {"perturb_success", p.perturb_success},
                         {"regular", p.regular},
                         {"mode", to_string(p.mode)}});
  return Json{{"delta", rational_json(r.delta)},
              {"f", r.f_spec},
              {"density", r.density},
              {"alpha", r.alpha},
              {"threshold", r.iteration.threshold},
              {"round_bound", r.iteration.round_bound},
              {"rounds_used", r.iteration.rounds.size()},
              {"rounds", rounds},
              {"partition_order", r.final_partition.order()},
              {"refined_order", r.refined.order()},
              {"l1_distance", r.l1_distance},
              {"edits", r.edits.size()},
              {"edit_fraction", rational_json(r.edit_fraction)},
              {"edit_fraction_value", r.edit_fraction.to_double()},
              {"singleton_guard", r.singleton_guard},
              {"pair_epsilon", rational_json(r.pair_epsilon)},
              {"target_epsilon", rational_json(r.target_epsilon)},
              {"pairs", pairs},
              {"verdict", r.all_pairs_regular() && r.edit_fraction <= r.delta}};
}

Json to_json(const ClaimsReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks)
    checks.push_back(Json{{"id", c.id},
                          {"passed", c.passed},
                          {"skipped", c.skipped},
                          {"checked", c.checked},
                          {"failures", c.failures},
                          {"detail", c.detail}});
  return Json{{"all_passed", r.all_passed()},
              {"quasirandom_delta", rational_json(r.quasirandom_delta)},
              {"regularity_epsilon", r.regularity_epsilon},
              {"checks", checks}};
}

Json to_json(const ExperimentReport& r) {
  Json gammas = Json::array();
  for (const auto& g : r.gamma_per_level) gammas.push_back(rational_json(g));
  return Json{{"partitioner", r.partitioner},
              {"partition_order", r.partition_order},
              {"edits", r.edits},
              {"gamma_per_level", gammas},
              {"deepest_level", r.deepest_level}};
}

Json to_json(const CountingBandVerdict& v) {
  return Json{{"count", v.count}, {"product", v.product}, {"centre", v.centre}, {"band", v.band},
              {"lower", v.lower}, {"upper", v.upper},     {"verdict", v.inside}};
}

Json to_json(const ApproxCountingVerdict& v) {
  return Json{{"count", v.count},
              {"bound", v.bound},
              {"bound_exact", v.bound_exact},
              {"hypotheses_hold", v.hypotheses_hold},
              {"mode", v.asserted ? "assert" : "report"},
              {"holds", v.holds},
              {"verdict", !v.asserted || v.holds}};
}

Json to_json(const BalancedWeightsVerdict& v) {
  return Json{{"qualifying", v.qualifying}, {"length", v.length}, {"verdict", v.holds}};
}

Json sequence_summary(const BipartitionSequence& s) {
  Json sides = Json::array();
  for (const auto& b : s.sides) {
    std::string text(b.size(), '0');
    for (std::size_t i = 0; i < b.size(); ++i) text[i] = static_cast<char>('0' + b[i]);
    sides.push_back(text);
  }
  return Json{{"n", s.n},
              {"length", s.length()},
              {"achieved_alpha", rational_json(s.achieved_alpha)},
              {"achieved_beta", rational_json(s.achieved_beta)},
              {"sides", sides}};
}

Json to_json(const ConstructionParams& p) {
  Json alphas = Json::array();
  for (const auto& a : p.alpha_targets) alphas.push_back(rational_json(a));
  return Json{{"s", p.s},
              {"sizes", p.sizes},
              {"alpha_targets", alphas},
              {"beta_target", rational_json(p.beta_target)},
              {"seed", p.seed},
              {"final_blowup", p.final_blowup},
              {"max_tries", p.max_tries},
              {"claim_samples", p.claim_samples},
              {"search", to_json(p.search)}};
}

Json envelope(const std::string& check, const RunConfig& rc, Json result) {
  return Json{{"schema", kReportSchema}, {"check", check}, {"run", to_json(rc)}, {"result", std::move(result)}};
}

std::string render(const Json& j) { return j.dump(2) + "\n"; }

void write_json(const std::string& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot write " + path);
  out << render(j);
}

namespace {

Json params_json(const ConstructionArtifact& a) {
  Json levels = Json::array();
  for (std::size_t r = 0; r < a.levels.size(); ++r) {
    const auto& l = a.levels[r];
    Json j{{"level", r}, {"vertices", l.graph.n()}, {"edges", l.graph.edge_count()}, {"degree", l.degree}};
    if (r > 0) {
      j["alpha_target"] = rational_json(l.alpha_target);
      j["achieved_alpha"] = rational_json(l.achieved_alpha);
      j["achieved_beta"] = rational_json(l.achieved_beta);
    }
    levels.push_back(std::move(j));
  }
  return Json{{"schema", kReportSchema},
              {"params", to_json(a.params)},
              {"color", a.color},
              {"vertices", a.graph.n()},
              {"edges", a.graph.edge_count()},
              {"density", rational_json(bipartite_density(a.graph))},
              {"levels", levels}};
}

Json associations_json(const ConstructionArtifact& a) {
  Json levels = Json::array();
  for (std::size_t r = 1; r < a.levels.size(); ++r) {
    const auto& prev = a.levels[r - 1].graph;
    const auto& l = a.levels[r];
    Json seqs = Json::array();
    for (const auto& s : l.sequences) seqs.push_back(sequence_summary(s));
    Json edges = Json::array();
    const auto list = prev.edges();
    for (std::size_t e = 0; e < list.size(); ++e) {
      auto [x, y] = list[e];
      edges.push_back(Json{{"x", x},
                           {"y", y},
                           {"bipartition_x", association_index(prev, x, y)},
                           {"bipartition_y", association_index(prev, y, x)},
                           {"choice", l.choices[e] == EdgeChoice::Crossed ? "crossed" : "parallel"}});
    }
    levels.push_back(Json{{"level", r}, {"sequences", seqs}, {"edges", edges}});
  }
  return Json{{"schema", kReportSchema}, {"levels", levels}};
}

void write_levels(const fs::path& dir, const ConstructionArtifact& a, const ClaimsReport& claims) {
  fs::create_directories(dir);
  save_graph((dir / "graph.txt").string(), a.graph);
  for (std::size_t r = 0; r < a.partitions.size(); ++r)
    save_partition((dir / ("level_" + std::to_string(r) + ".part")).string(), a.partitions[r]);
  write_json((dir / "params.json").string(), params_json(a));
  write_json((dir / "associations.json").string(), associations_json(a));
  Json c = to_json(claims);
  c["schema"] = kReportSchema;
  write_json((dir / "claims_report.json").string(), c);
}

}  // namespace

void write_artifact_dir(const std::string& dir, const ConstructionArtifact& artifact, const ClaimsReport& claims) {
  write_levels(dir, artifact, claims);
}

void write_multicolor_dir(const std::string& dir, const MulticolorArtifact& artifact,
                          const std::vector<ClaimsReport>& claims) {
  if (claims.size() != artifact.colors.size()) throw DomainError("one claims report per colour expected");
  const fs::path root(dir);
  fs::create_directories(root);
  save_graph((root / "graph.txt").string(), artifact.complete);
  Json colors = Json::array();
  for (std::size_t c = 0; c < artifact.colors.size(); ++c) {
    const std::string sub = "color_" + std::to_string(c);
    write_levels(root / sub, artifact.colors[c], claims[c]);
    colors.push_back(Json{{"color", c},
                          {"dir", sub},
                          {"edges", artifact.colors[c].graph.edge_count()},
                          {"claims_passed", claims[c].all_passed()}});
  }
  write_json((root / "colors.json").string(), Json{{"schema", kReportSchema},
                                                   {"colors", colors},
                                                   {"disjoint", artifact.disjoint},
                                                   {"covers", artifact.covers},
                                                   {"edge_color", artifact.edge_color}});
}

}  // namespace regkit
