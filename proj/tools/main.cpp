// regkit command line front end.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "regkit/construction.hpp"
#include "regkit/counting.hpp"
#include "regkit/error.hpp"
#include "regkit/potential.hpp"
#include "regkit/regularity.hpp"
#include "regkit/report.hpp"
#include "regkit/rng.hpp"
#include "regkit/sral.hpp"
#include "regkit/weak_regularizer.hpp"

namespace fs = std::filesystem;
using namespace regkit;

namespace {

enum Exit { kOk = 0, kVerdictFalse = 1, kUsage = 2, kCapability = 3, kInternal = 4 };

struct Globals {
  std::uint64_t seed = 0;
  std::string mode = "sampled";
  int exact_threshold = 18;
  int weak_exact_threshold = 16;
  int samples = 20000;
  int workers = 1;
  std::string out;

  SearchConfig search() const {
    SearchConfig c;
    c.mode = parse_mode(mode);
    c.pair_exact_threshold = exact_threshold;
    c.weak_exact_threshold = weak_exact_threshold;
    c.samples = samples;
    c.workers = workers;
    c.seed = seed;
    return c;
  }
};

// Every option of the subcommand chain except the worker count and help.
void collect_flags(const CLI::App* app, RunConfig& rc) {
  for (const CLI::Option* opt : app->get_options()) {
    const std::string name = opt->get_name(false, true);
    if (name == "--help" || name == "-h" || name == "--workers") continue;
    if (opt->get_positional()) continue;
    std::string value;
    if (opt->count() > 0) {
      const auto& res = opt->results();
      for (std::size_t i = 0; i < res.size(); ++i) value += (i ? "," : "") + res[i];
      if (opt->get_type_size() == 0) value = "true";
    } else if (!opt->get_default_str().empty()) {
      value = opt->get_default_str();
    } else {
      continue;
    }
    rc.flags[name.substr(name.rfind('-') == std::string::npos ? 0 : name.find_first_not_of('-'))] = value;
  }
  for (const CLI::App* sub : app->get_subcommands()) collect_flags(sub, rc);
}

Rational rational_arg(const std::string& text, const std::string& what) {
  try {
    return Rational::parse(text);
  } catch (const Error&) {
    throw DomainError("bad value for " + what + ": " + text);
  }
}

// "0,1,2", "0-3" or a mix ("0-3,7").
std::vector<int> vertex_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto dash = item.find('-');
    try {
      if (dash == std::string::npos) {
        out.push_back(std::stoi(item));
      } else {
        int lo = std::stoi(item.substr(0, dash)), hi = std::stoi(item.substr(dash + 1));
        for (int v = lo; v <= hi; ++v) out.push_back(v);
      }
    } catch (const std::exception&) {
      throw DomainError("bad vertex list: " + text);
    }
  }
  return out;
}

VertexSet vertex_set(int n, const std::vector<int>& members) {
  VertexSet s(n);
  for (int v : members) {
    if (v < 0 || v >= n) throw DomainError("vertex out of range: " + std::to_string(v));
    s.set(v);
  }
  return s;
}

void ensure_out(const Globals& g) {
  if (g.out.empty()) throw DomainError("--out <dir> is required for this command");
  fs::create_directories(g.out);
}

std::string out_path(const Globals& g, const std::string& name) { return (fs::path(g.out) / name).string(); }

int emit(const Globals& gl, const std::string& check, const RunConfig& rc, Json result, bool verdict) {
  Json report = envelope(check, rc, std::move(result));
  report["verdict"] = verdict;
  if (!gl.out.empty()) {
    fs::create_directories(gl.out);
    write_json(out_path(gl, "report.json"), report);
  }
  std::cout << render(report);
  return verdict ? kOk : kVerdictFalse;
}

Partition partition_or_trivial(const std::string& path, int n) {
  return path.empty() ? Partition::trivial(n) : load_partition(path);
}

// Options shared by gen-lb, gen-multicolor and experiment.
struct ConstructionFlags {
  int s = 1;
  int n0 = 4;
  int nr = 4;
  std::vector<int> explicit_sizes;  // --n1, --n2, ...
  std::string sizes;
  std::string alpha;
  std::string beta = "1/16";
  int blowup = 1;
  int max_tries = 2000;
  int claim_samples = 32;

  void add(CLI::App* app) {
    app->add_option("--s", s, "Number of blow-up levels")->capture_default_str();
    app->add_option("--n0", n0, "Side size of the base complete bipartite graph")->capture_default_str();
    app->add_option("--nr", nr, "Blow-up factor for every level r >= 1")->capture_default_str();
    explicit_sizes.assign(8, 0);
    for (int r = 1; r <= 8; ++r)
      app->add_option("--n" + std::to_string(r), explicit_sizes[static_cast<std::size_t>(r - 1)],
                      "Blow-up factor for level " + std::to_string(r));
    app->add_option("--sizes", sizes, "Comma separated n_0,...,n_s (overrides the size flags)");
    app->add_option("--alpha", alpha, "Alpha target per level (default 1/4)");
    app->add_option("--beta", beta, "Beta target")->capture_default_str();
    app->add_option("--blowup", blowup, "Final blow-up factor")->capture_default_str();
    app->add_option("--max-tries", max_tries, "Sequence draws allowed per bipartition sequence")->capture_default_str();
    app->add_option("--claim-samples", claim_samples, "Samples for the sampled claim checks")->capture_default_str();
  }

  ConstructionParams params(const Globals& g) const {
    ConstructionParams p;
    p.s = s;
    if (!sizes.empty()) {
      p.sizes = vertex_list(sizes);
    } else {
      p.sizes.push_back(n0);
      for (int r = 1; r <= s; ++r) {
        int v = r <= 8 ? explicit_sizes[static_cast<std::size_t>(r - 1)] : 0;
        p.sizes.push_back(v > 0 ? v : nr);
      }
    }
    if (!alpha.empty()) p.alpha_targets.assign(static_cast<std::size_t>(s), rational_arg(alpha, "--alpha"));
    p.beta_target = rational_arg(beta, "--beta");
    p.seed = g.seed;
    p.final_blowup = blowup;
    p.max_tries = max_tries;
    p.claim_samples = claim_samples;
    p.search = g.search();
    return p;
  }
};

// Rebuilds an artifact from its params.json and checks it against graph.txt.
ConstructionArtifact load_artifact(const std::string& dir, const Globals& gl) {
  std::ifstream in(fs::path(dir) / "params.json");
  if (!in) throw DomainError("no params.json in " + dir);
  Json j = Json::parse(in);
  const Json& pj = j.at("params");
  ConstructionParams p;
  p.s = pj.at("s").get<int>();
  p.sizes = pj.at("sizes").get<std::vector<int>>();
  for (const auto& a : pj.at("alpha_targets")) p.alpha_targets.push_back(Rational::parse(a.get<std::string>()));
  p.beta_target = Rational::parse(pj.at("beta_target").get<std::string>());
  p.seed = pj.at("seed").get<std::uint64_t>();
  p.final_blowup = pj.at("final_blowup").get<int>();
  p.max_tries = pj.at("max_tries").get<int>();
  p.claim_samples = pj.at("claim_samples").get<int>();
  p.search = gl.search();
  p.search.seed = p.seed;
  ConstructionArtifact art = build_construction_unchecked(p);
  DenseGraph stored = load_graph((fs::path(dir) / "graph.txt").string());
  if (edit_distance(stored, art.graph) != 0) throw DomainError("graph.txt does not match params.json");
  return art;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"regkit: regularity partitions, perturbations and lower-bound constructions"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals gl;
  app.add_option("--seed", gl.seed, "Master seed")->envname("REGKIT_SEED")->capture_default_str();
  app.add_option("--mode", gl.mode, "exact or sampled")
      ->envname("REGKIT_MODE")
      ->check(CLI::IsMember({"exact", "sampled"}))
      ->capture_default_str();
  app.add_option("--exact-threshold", gl.exact_threshold, "Largest side size for exact pair enumeration")
      ->envname("REGKIT_EXACT_THRESHOLD")
      ->capture_default_str();
  app.add_option("--weak-exact-threshold", gl.weak_exact_threshold, "Largest |V| for exact weak-regularity search")
      ->envname("REGKIT_WEAK_EXACT_THRESHOLD")
      ->capture_default_str();
  app.add_option("--samples", gl.samples, "Sample budget in sampled mode")
      ->envname("REGKIT_SAMPLES")
      ->capture_default_str();
  app.add_option("--workers", gl.workers, "Worker threads (results do not depend on it)")
      ->envname("REGKIT_WORKERS")
      ->capture_default_str();
  app.add_option("--out", gl.out, "Output directory")->envname("REGKIT_OUT");

  std::function<int(RunConfig&)> action;

  // gen-random
  auto* gen_random = app.add_subcommand("gen-random", "Random graph G(n, p) or bipartite G(a, b, p)");
  int gr_n = 0, gr_left = 0, gr_right = 0;
  std::string gr_p = "1/2";
  gen_random->add_option("--n", gr_n, "Vertices");
  gen_random->add_option("--left", gr_left, "Left side size (bipartite)");
  gen_random->add_option("--right", gr_right, "Right side size (bipartite)");
  gen_random->add_option("--p", gr_p, "Edge probability")->capture_default_str();
  gen_random->callback([&] {
    action = [&](RunConfig& rc) {
      ensure_out(gl);
      const double p = rational_arg(gr_p, "--p").to_double();
      const std::uint64_t seed = derive_seed(gl.seed, "gen-random");
      DenseGraph g;
      if (gr_left > 0 || gr_right > 0)
        g = random_bipartite(gr_left, gr_right, p, seed);
      else if (gr_n > 0)
        g = random_graph(gr_n, p, seed);
      else
        throw DomainError("give --n or --left/--right");
      save_graph(out_path(gl, "graph.txt"), g);
      rc.paths["graph"] = "graph.txt";
      Json r{{"vertices", g.n()},
             {"edges", g.edge_count()},
             {"bipartite", g.is_bipartite()},
             {"density", rational_json(g.is_bipartite() ? bipartite_density(g) : global_density(g))}};
      return emit(gl, "gen-random", rc, r, true);
    };
  });

  // gen-lb
  auto* gen_lb = app.add_subcommand("gen-lb", "Iterated modified blow-up with claim verification");
  ConstructionFlags lb;
  lb.add(gen_lb);
  gen_lb->callback([&] {
    action = [&](RunConfig& rc) {
      ensure_out(gl);
      ConstructionArtifact art = build_construction_unchecked(lb.params(gl));
      ClaimsReport claims = verify_construction_claims(art);
      write_artifact_dir(gl.out, art, claims);
      rc.paths["artifact"] = ".";
      Json r{{"vertices", art.graph.n()},
             {"edges", art.graph.edge_count()},
             {"density", rational_json(bipartite_density(art.graph))},
             {"claims", to_json(claims)}};
      return emit(gl, "gen-lb", rc, r, claims.all_passed());
    };
  });

  // gen-multicolor
  auto* gen_mc = app.add_subcommand("gen-multicolor", "2^s colour classes decomposing K_{N,N}");
  ConstructionFlags mc;
  mc.add(gen_mc);
  gen_mc->callback([&] {
    action = [&](RunConfig& rc) {
      ensure_out(gl);
      MulticolorArtifact art = build_multicolored(mc.params(gl));
      std::vector<ClaimsReport> claims;
      bool all = art.disjoint && art.covers;
      Json colors = Json::array();
      for (const auto& c : art.colors) {
        claims.push_back(verify_construction_claims(c));
        all = all && claims.back().all_passed();
        colors.push_back(Json{{"color", c.color}, {"edges", c.graph.edge_count()},
                              {"claims_passed", claims.back().all_passed()}});
      }
      write_multicolor_dir(gl.out, art, claims);
      rc.paths["artifact"] = ".";
      Json r{{"vertices", art.complete.n()},
             {"colors", colors},
             {"disjoint", art.disjoint},
             {"covers", art.covers}};
      return emit(gl, "gen-multicolor", rc, r, all);
    };
  });

  // weakreg
  auto* weakreg = app.add_subcommand("weakreg", "Iterative weak regularization from an equitable partition");
  std::string wr_graph, wr_part, wr_eps = "1/4";
  bool wr_audit = false;
  weakreg->add_option("--graph", wr_graph, "Graph file")->required();
  weakreg->add_option("--partition", wr_part, "Equitable starting partition (default trivial)");
  weakreg->add_option("--eps", wr_eps, "Epsilon")->capture_default_str();
  weakreg->add_flag("--audit", wr_audit, "Check the auxiliary potential inequalities on every step");
  weakreg->callback([&] {
    action = [&](RunConfig& rc) {
      DenseGraph g = load_graph(wr_graph);
      rc.paths["graph"] = wr_graph;
      if (!wr_part.empty()) rc.paths["partition"] = wr_part;
      WeakRegRun run = weak_regularize(g, partition_or_trivial(wr_part, g.n()), rational_arg(wr_eps, "--eps"),
                                       gl.search(), WeakRegOptions{wr_audit, false});
      if (!gl.out.empty()) {
        fs::create_directories(gl.out);
        save_partition(out_path(gl, "final.part"), run.final_partition);
        rc.paths["final_partition"] = "final.part";
      }
      return emit(gl, "weakreg", rc, to_json(run), true);
    };
  });

  // sral
  auto* sral_cmd = app.add_subcommand("sral", "Sparse regularity with edits");
  std::string sr_graph, sr_part, sr_delta = "1/5", sr_f = "const:0.3", sr_eps_file;
  sral_cmd->add_option("--graph", sr_graph, "Graph file")->required();
  sral_cmd->add_option("--partition", sr_part, "Equitable starting partition (default trivial)");
  sral_cmd->add_option("--delta", sr_delta, "Edit budget as a fraction of |E|")->capture_default_str();
  auto* f_opt = sral_cmd->add_option("--f", sr_f, "const:C | pow:C:A | log:C")->capture_default_str();
  sral_cmd->add_option("--eps-file", sr_eps_file, "File holding the f specification")->excludes(f_opt);
  sral_cmd->callback([&] {
    action = [&](RunConfig& rc) {
      std::string spec = sr_f;
      if (!sr_eps_file.empty()) {
        std::ifstream in(sr_eps_file);
        if (!(in >> spec)) throw DomainError("cannot read an f specification from " + sr_eps_file);
        rc.paths["eps_file"] = sr_eps_file;
      }
      DenseGraph g = load_graph(sr_graph);
      rc.paths["graph"] = sr_graph;
      if (!sr_part.empty()) rc.paths["partition"] = sr_part;
      SralResult res = sral(g, partition_or_trivial(sr_part, g.n()), rational_arg(sr_delta, "--delta"),
                            FSpec::parse(spec), gl.search());
      if (!gl.out.empty()) {
        fs::create_directories(gl.out);
        save_graph(out_path(gl, "edited.txt"), res.edited_graph);
        save_partition(out_path(gl, "final.part"), res.final_partition);
        rc.paths["edited_graph"] = "edited.txt";
        rc.paths["final_partition"] = "final.part";
      }
      Json r = to_json(res);
      const bool ok = r["verdict"].get<bool>();
      return emit(gl, "sral", rc, r, ok);
    };
  });

  // verify
  auto* verify = app.add_subcommand("verify", "Regularity and construction checks");
  verify->require_subcommand(1);
  std::string v_graph, v_part, v_eps = "1/4", v_a, v_b, v_p, v_delta, v_artifact;
  int v_i = -1, v_j = -1;
  bool v_diag = false;
  auto graph_opt = [&](CLI::App* c) { c->add_option("--graph", v_graph, "Graph file")->required(); };

  auto* v_pair = verify->add_subcommand("pair", "Pair regularity");
  graph_opt(v_pair);
  v_pair->add_option("--eps", v_eps, "Epsilon")->capture_default_str();
  v_pair->add_option("--a", v_a, "First set (default: left side)");
  v_pair->add_option("--b", v_b, "Second set (default: right side)");
  v_pair->add_option("--partition", v_part, "Take the sets from classes --i and --j of this partition");
  v_pair->add_option("--i", v_i, "First class");
  v_pair->add_option("--j", v_j, "Second class");
  v_pair->callback([&] {
    action = [&](RunConfig& rc) {
      DenseGraph g = load_graph(v_graph);
      rc.paths["graph"] = v_graph;
      VertexSet a(g.n()), b(g.n());
      if (!v_part.empty()) {
        Partition p = load_partition(v_part);
        rc.paths["partition"] = v_part;
        if (v_i < 0 || v_j < 0 || v_i >= p.order() || v_j >= p.order()) throw DomainError("--i/--j out of range");
        a = p.class_set(v_i);
        b = p.class_set(v_j);
      } else if (!v_a.empty() && !v_b.empty()) {
        a = vertex_set(g.n(), vertex_list(v_a));
        b = vertex_set(g.n(), vertex_list(v_b));
      } else if (g.is_bipartite()) {
        a = g.left_side();
        b = g.right_side();
      } else {
        throw DomainError("give --a/--b, --partition with --i/--j, or a bipartite graph");
      }
      PairVerdict v = check_pair_regular(g, a, b, rational_arg(v_eps, "--eps"), gl.search());
      return emit(gl, "pair", rc, to_json(v), v.regular);
    };
  });

  auto* v_partition = verify->add_subcommand("partition", "Partition regularity (count and weighted forms)");
  graph_opt(v_partition);
  v_partition->add_option("--partition", v_part, "Partition file")->required();
  v_partition->add_option("--eps", v_eps, "Epsilon")->capture_default_str();
  v_partition->add_flag("--diagonal", v_diag, "Also check each class against itself");
  v_partition->callback([&] {
    action = [&](RunConfig& rc) {
      DenseGraph g = load_graph(v_graph);
      rc.paths["graph"] = v_graph;
      rc.paths["partition"] = v_part;
      PartitionVerdict v =
          check_partition_regular(g, load_partition(v_part), rational_arg(v_eps, "--eps"), gl.search(), v_diag);
      return emit(gl, "partition", rc, to_json(v), v.count_criterion || v.weighted_criterion);
    };
  });

  auto* v_weak = verify->add_subcommand("weak", "Weak regularity");
  auto* v_weak_bip = verify->add_subcommand("weak-bip", "Weak regularity, bipartite form");
  for (auto* c : {v_weak, v_weak_bip}) {
    graph_opt(c);
    c->add_option("--partition", v_part, "Partition file (default trivial)");
    c->add_option("--eps", v_eps, "Epsilon")->capture_default_str();
  }
  v_weak->callback([&] {
    action = [&](RunConfig& rc) {
      DenseGraph g = load_graph(v_graph);
      rc.paths["graph"] = v_graph;
      if (!v_part.empty()) rc.paths["partition"] = v_part;
      WeakVerdict v =
          check_weak_regular(g, partition_or_trivial(v_part, g.n()), rational_arg(v_eps, "--eps"), gl.search());
      return emit(gl, "weak", rc, to_json(v), v.regular);
    };
  });
  v_weak_bip->callback([&] {
    action = [&](RunConfig& rc) {
      DenseGraph g = load_graph(v_graph);
      rc.paths["graph"] = v_graph;
      Partition p;
      if (!v_part.empty()) {
        p = load_partition(v_part);
        rc.paths["partition"] = v_part;
      } else {
        if (!g.is_bipartite()) throw DomainError("weak-bip needs a bipartite graph or a partition");
        std::vector<int> labels(static_cast<std::size_t>(g.n()));
        for (int v = 0; v < g.n(); ++v) labels[static_cast<std::size_t>(v)] = g.on_left(v) ? 0 : 1;
        p = Partition(labels);
      }
      WeakVerdict v = check_weak_regular_bipartite(g, p, rational_arg(v_eps, "--eps"), gl.search());
      return emit(gl, "weak-bip", rc, to_json(v), v.regular);
    };
  });

  auto* v_super = verify->add_subcommand("super", "Multiplicative (sparse) regularity of a bipartite graph");
  graph_opt(v_super);
  v_super->add_option("--eps", v_eps, "Epsilon")->capture_default_str();
  v_super->callback([&] {
    action = [&](RunConfig& rc) {
      DenseGraph g = load_graph(v_graph);
      rc.paths["graph"] = v_graph;
      PairVerdict v = check_super_regular(g, rational_arg(v_eps, "--eps"), gl.search());
      return emit(gl, "super", rc, to_json(v), v.regular);
    };
  });

  auto* v_quasi = verify->add_subcommand("quasirandom", "Codegree quasirandomness of a bipartite graph");
  graph_opt(v_quasi);
  v_quasi->add_option("--p", v_p, "Density parameter (default: the bipartite density)");
  v_quasi->add_option("--delta", v_delta, "Allowed fraction of violating pairs (default: report the minimum)");
  v_quasi->callback([&] {
    action = [&](RunConfig& rc) {
      DenseGraph g = load_graph(v_graph);
      rc.paths["graph"] = v_graph;
      const Rational p = v_p.empty() ? bipartite_density(g) : rational_arg(v_p, "--p");
      Json r{{"p", rational_json(p)}, {"min_delta", rational_json(min_quasirandom_delta(g, p))}};
      bool ok = true;
      if (!v_delta.empty()) {
        QuasiVerdict v = check_quasirandom(g, p, rational_arg(v_delta, "--delta"));
        r["delta"] = v_delta;
        r["check"] = to_json(v);
        ok = v.holds;
      }
      return emit(gl, "quasirandom", rc, r, ok);
    };
  });

  auto* v_claims = verify->add_subcommand("claims", "Rebuild an artifact directory and rerun its claim checks");
  v_claims->add_option("--artifact", v_artifact, "Directory written by gen-lb")->required();
  v_claims->callback([&] {
    action = [&](RunConfig& rc) {
      rc.paths["artifact"] = v_artifact;
      ConstructionArtifact art = load_artifact(v_artifact, gl);
      ClaimsReport claims = verify_construction_claims(art);
      return emit(gl, "claims", rc, to_json(claims), claims.all_passed());
    };
  });

  // count
  auto* count = app.add_subcommand("count", "Exact copy counts of a small pattern across clusters");
  std::string c_graph, c_part, c_pattern, c_mode = "induced", c_eps;
  bool c_triangle = false;
  std::int64_t c_budget = kDefaultCountBudget;
  count->add_option("--graph", c_graph, "Graph file")->required();
  count->add_option("--partition", c_part, "Clusters as a partition file")->required();
  auto* pat_opt = count->add_option("--pattern", c_pattern, "Pattern file");
  count->add_flag("--triangle", c_triangle, "Use the triangle as the pattern")->excludes(pat_opt);
  count->add_option("--count-mode", c_mode, "induced | non-induced | f-copy")->capture_default_str();
  count->add_option("--eps", c_eps, "Also check the counting band for exactly eps-regular clusters");
  count->add_option("--budget", c_budget, "Enumeration budget (product of cluster sizes)")->capture_default_str();
  count->callback([&] {
    action = [&](RunConfig& rc) {
      DenseGraph g = load_graph(c_graph);
      rc.paths["graph"] = c_graph;
      rc.paths["partition"] = c_part;
      PatternGraph h;
      if (c_triangle) {
        h = triangle_pattern();
      } else if (!c_pattern.empty()) {
        h = load_pattern(c_pattern);
        rc.paths["pattern"] = c_pattern;
      } else {
        throw DomainError("give --pattern or --triangle");
      }
      auto clusters = clusters_of(load_partition(c_part));
      const CountMode mode = parse_count_mode(c_mode);
      Json r{{"pattern_vertices", h.h},
             {"pattern_edges", h.m()},
             {"mode", to_string(mode)},
             {"count", count_copies(h, g, clusters, mode, gl.workers, c_budget)}};
      bool ok = true;
      if (!c_eps.empty()) {
        CountingBandVerdict band = counting_lemma_check(h, g, clusters, rational_arg(c_eps, "--eps"), gl.search());
        r["band"] = to_json(band);
        ok = band.inside;
      }
      return emit(gl, "count", rc, r, ok);
    };
  });

  // experiment
  auto* experiment = app.add_subcommand("experiment", "Refinement pressure of a partitioner on a construction");
  ConstructionFlags ex;
  ex.add(experiment);
  std::string e_artifact, e_partitioner = "weakreg", e_eps = "1/4", e_delta = "1/5", e_f = "const:0.3",
                          e_edit = "0", e_gamma = "1/8";
  experiment->add_option("--artifact", e_artifact, "Directory written by gen-lb (instead of building one)");
  experiment->add_option("--partitioner", e_partitioner, "weakreg | sral")
      ->check(CLI::IsMember({"weakreg", "sral"}))
      ->capture_default_str();
  experiment->add_option("--eps", e_eps, "Epsilon for weakreg")->capture_default_str();
  experiment->add_option("--delta", e_delta, "Delta for sral")->capture_default_str();
  experiment->add_option("--f", e_f, "f for sral")->capture_default_str();
  experiment->add_option("--edit-fraction", e_edit, "Random edits before partitioning")->capture_default_str();
  experiment->add_option("--gamma", e_gamma, "Approximate refinement threshold")->capture_default_str();
  experiment->callback([&] {
    action = [&](RunConfig& rc) {
      ConstructionArtifact art;
      if (!e_artifact.empty()) {
        art = load_artifact(e_artifact, gl);
        rc.paths["artifact"] = e_artifact;
      } else {
        art = build_construction_unchecked(ex.params(gl));
      }
      ExperimentConfig cfg;
      cfg.partitioner = e_partitioner;
      cfg.epsilon = rational_arg(e_eps, "--eps");
      cfg.delta = rational_arg(e_delta, "--delta");
      cfg.f_spec = e_f;
      cfg.edit_fraction = rational_arg(e_edit, "--edit-fraction");
      cfg.gamma = rational_arg(e_gamma, "--gamma");
      cfg.search = gl.search();
      ExperimentReport rep = refinement_pressure_experiment(art, cfg);
      return emit(gl, "experiment", rc, to_json(rep), true);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  RunConfig rc;
  rc.search = gl.search();
  for (const CLI::App* sub : app.get_subcommands()) {
    rc.command = sub->get_name();
    for (const CLI::App* leaf : sub->get_subcommands()) rc.command += " " + leaf->get_name();
  }
  collect_flags(&app, rc);
  try {
    if (!action) throw DomainError("no action");
    return action(rc);
  } catch (const CapabilityError& e) {
    std::cerr << "capability: " << e.what() << '\n';
    return kCapability;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition: " << e.what() << '\n';
    return kVerdictFalse;
  } catch (const ConstructionError& e) {
    std::cerr << "construction: " << e.what() << '\n';
    return kVerdictFalse;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InternalError& e) {
    std::cerr << "internal: " << e.what() << '\n';
    return kInternal;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInternal;
  }
}
