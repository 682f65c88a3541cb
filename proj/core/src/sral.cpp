#include "regkit/sral.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "regkit/error.hpp"
#include "regkit/parallel.hpp"
#include "regkit/potential.hpp"
#include "regkit/rng.hpp"

namespace regkit {

FSpec FSpec::parse(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  auto number = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      double v = std::stod(s, &used);
      if (used != s.size() || !std::isfinite(v)) throw DomainError("");
      return v;
    } catch (...) {
      throw DomainError("bad number in f-spec: " + text);
    }
  };
  FSpec f;
  f.text_ = text;
  if (parts.size() == 2 && parts[0] == "const") {
    f.kind_ = Kind::Constant;
    f.c_ = number(parts[1]);
  } else if (parts.size() == 3 && parts[0] == "pow") {
    f.kind_ = Kind::Power;
    f.c_ = number(parts[1]);
    f.a_ = number(parts[2]);
    if (f.a_ < 0) throw DomainError("f-spec exponent must be nonnegative so that f decreases");
  } else if (parts.size() == 2 && parts[0] == "log") {
    f.kind_ = Kind::Log;
    f.c_ = number(parts[1]);
  } else {
    throw DomainError("unknown f-spec: " + text + " (expected const:C, pow:C:A or log:C)");
  }
  if (f.c_ <= 0.0 || f.c_ >= 1.0) throw DomainError("f-spec constant must lie in (0, 1)");
  return f;
}

double FSpec::operator()(double x) const {
  if (x < 1.0) throw DomainError("f is evaluated at partition orders >= 1");
  switch (kind_) {
    case Kind::Constant:
      return c_;
    case Kind::Power:
      return c_ * std::pow(x, -a_);
    case Kind::Log:
      return c_ / (1.0 + std::log(x));
  }
  return c_;
}

Rational grid_rational(double x) {
  constexpr std::int64_t kGrid = 1000000;
  if (!(x > 0.0)) throw DomainError("grid value must be positive");
  if (x >= 1.0) return Rational(1);
  auto k = static_cast<std::int64_t>(std::floor(x * static_cast<double>(kGrid)));
  return Rational(std::max<std::int64_t>(1, k), kGrid);
}

bool SralResult::all_pairs_regular() const {
  for (const auto& p : pairs)
    if (!p.regular) return false;
  return true;
}

SralIteration sral_iterate(const DenseGraph& g, const Partition& p0, double alpha, const FSpec& f,
                           const SearchConfig& cfg) {
  const double p = global_density(g).to_double();
  if (p <= 0.0) throw DomainError("graph density is zero");
  if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
  SralIteration it;
  it.alpha = alpha;
  it.threshold = alpha * p * std::log(1.0 / p);
  if (std::isinf(alpha)) it.threshold = 0.0;
  const double inv = 1.0 / alpha;
  it.round_bound = inv >= 9e18 ? std::numeric_limits<std::int64_t>::max()
                               : static_cast<std::int64_t>(std::floor(inv)) + 1;

  Partition cur = p0;
  for (std::int64_t r = 0;; ++r) {
    if (r >= it.round_bound) throw InternalError("entropy iteration exceeded its round bound");
    SralRound round;
    round.order = cur.order();
    const double k = cur.order();
    round.epsilon = grid_rational(f(k) / (2.0 * k));
    SearchConfig rc = cfg;
    rc.seed = derive_seed(cfg.seed, "sral-round", r);
    round.run = weak_regularize(g, cur, round.epsilon, rc);
    Partition next = round.run.final_partition;
    round.entropy_before = entropy_potential(g, cur);
    round.entropy_after = entropy_potential(g, next);
    const bool stop = round.entropy_after - round.entropy_before < it.threshold;
    it.rounds.push_back(std::move(round));
    if (stop) {
      it.p = std::move(cur);
      it.q = std::move(next);
      return it;
    }
    cur = std::move(next);
  }
}

SralResult sral(const DenseGraph& g, const Partition& p0, const Rational& delta, const FSpec& f,
                const SearchConfig& cfg) {
  if (delta.num() <= 0 || delta > Rational(1)) throw DomainError("delta must lie in (0, 1]");
  if (p0.universe() != g.n()) throw DomainError("partition over a different vertex set");
  const Rational dens = global_density(g);
  if (dens.is_zero()) throw DomainError("graph density is zero");
  const double p = dens.to_double();
  const double dd = delta.to_double();
  const double alpha = p >= 1.0 ? std::numeric_limits<double>::infinity() : dd * dd / (2.0 * std::log(1.0 / p));

  SralResult res;
  res.delta = delta;
  res.f_spec = f.text();
  res.density = p;
  res.alpha = alpha;
  res.iteration = sral_iterate(g, p0, alpha, f, cfg);
  const Partition& P = res.iteration.p;
  const Partition& Q = res.iteration.q;
  res.refined = Q;
  res.l1_distance = l1_partition_distance(g, Q, P).value;
  const int k = P.order();
  const double fk = f(static_cast<double>(k));
  res.target_epsilon = grid_rational(fk);
  res.pair_epsilon = grid_rational(fk / 2.0);

  if (k >= 2 && static_cast<double>(P.min_class_size()) < 8.0 / std::pow(fk, 4.0)) {
    // Classes too small for the perturbation argument: parts of size one are
    // trivially regular.
    res.singleton_guard = true;
    res.final_partition = Partition::singletons(g.n());
    res.edited_graph = g;
    res.edit_fraction = Rational(0);
    return res;
  }
  res.final_partition = P;

  std::vector<std::pair<int, int>> jobs;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) jobs.emplace_back(i, j);
  std::vector<PerturbOutcome> outcomes(jobs.size());
  parallel_for(jobs.size(), cfg.workers, [&](std::size_t x) {
    auto [i, j] = jobs[x];
    const auto& vi = P.members(i);
    const auto& vj = P.members(j);
    DenseGraph local = induced_bipartite(g, vi, vj);
    std::vector<int> labels;
    labels.reserve(vi.size() + vj.size());
    for (int v : vi) labels.push_back(Q.class_of(v));
    for (int v : vj) labels.push_back(Q.class_of(v));
    SearchConfig pc = cfg;
    pc.workers = 1;
    pc.seed = derive_seed(cfg.seed, "sral-pair", i, j);
    outcomes[x] = perturb_pair(local, Partition(labels), res.pair_epsilon, pc);
  });

  auto global = [&](int i, int j, int v) {
    const auto& vi = P.members(i);
    return v < static_cast<int>(vi.size()) ? vi[static_cast<std::size_t>(v)]
                                           : P.members(j)[static_cast<std::size_t>(v) - vi.size()];
  };
  for (std::size_t x = 0; x < jobs.size(); ++x) {
    auto [i, j] = jobs[x];
    const auto& o = outcomes[x];
    for (auto [u, v] : o.edits.additions) res.edits.additions.emplace_back(global(i, j, u), global(i, j, v));
    for (auto [u, v] : o.edits.removals) res.edits.removals.emplace_back(global(i, j, u), global(i, j, v));
    PairRepair rep;
    rep.i = i;
    rep.j = j;
    rep.edits = static_cast<std::int64_t>(o.edits.size());
    rep.budget = o.delta_budget;
    rep.retries = o.retries;
    rep.perturb_success = o.success;
    res.pairs.push_back(rep);
  }
  res.edits.normalize();
  const auto total = static_cast<std::int64_t>(res.edits.size());
  if (compare_l1_distance(g, Q, P, Rational(total)) == std::strong_ordering::less)
    throw InternalError("repair edits exceed D(Q, P)");
  res.edit_fraction = Rational(total, g.edge_count());
  if (res.edit_fraction > delta) throw InternalError("repair edits exceed delta |E|");
  res.edited_graph = apply_edits(g, res.edits);

  std::vector<PairVerdict> checks(jobs.size());
  parallel_for(jobs.size(), cfg.workers, [&](std::size_t x) {
    auto [i, j] = jobs[x];
    SearchConfig vc = cfg;
    vc.workers = 1;
    vc.seed = derive_seed(cfg.seed, "sral-verify", i, j);
    checks[x] = check_pair_regular(res.edited_graph, P.class_set(i), P.class_set(j), res.target_epsilon, vc);
  });
  for (std::size_t x = 0; x < jobs.size(); ++x) {
    res.pairs[x].regular = checks[x].regular;
    res.pairs[x].mode = checks[x].mode;
  }
  return res;
}

}  // namespace regkit
