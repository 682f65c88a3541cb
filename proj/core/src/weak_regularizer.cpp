#include "regkit/weak_regularizer.hpp"

#include <chrono>
#include <limits>

#include <gmpxx.h>

#include "regkit/error.hpp"
#include "regkit/potential.hpp"
#include "regkit/rng.hpp"

namespace regkit {

std::string to_string(Termination t) {
  return t == Termination::WitnessExhausted ? "witness-exhaustion" : "iteration-cap";
}

namespace {

mpq_class to_mpq(const Rational& r) {
  return mpq_class(mpz_class(static_cast<long>(r.num())), mpz_class(static_cast<long>(r.den())));
}

mpq_class eps4(const Rational& eps) {
  mpq_class e = to_mpq(eps);
  return e * e * e * e;
}

std::int64_t ceil_of(const mpq_class& x) {
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  // Saturates; only ever compared against sizes and counters.
  if (!c.fits_slong_p()) return std::numeric_limits<std::int64_t>::max();
  return c.get_si();
}

mpq_class q_exact(const DenseGraph& g, const Partition& p) { return mpq_class(mean_square_density_exact(g, p)); }

void require_eps(const Rational& eps) {
  if (eps.num() <= 0 || eps > Rational(1)) throw DomainError("epsilon must lie in (0, 1]");
}

}  // namespace

std::int64_t weak_block_count(const Rational& eps) {
  require_eps(eps);
  return ceil_of(mpq_class(8) / eps4(eps));
}

std::int64_t weak_iteration_cap(const Rational& eps) {
  require_eps(eps);
  return ceil_of(mpq_class(2) / eps4(eps));
}

std::optional<SubsetPair> find_weak_witness(const DenseGraph& g, const Partition& p, const Rational& eps,
                                            const SearchConfig& cfg) {
  WeakVerdict v = check_weak_regular(g, p, eps, cfg, cfg.mode == Mode::Exact);
  if (v.regular) return std::nullopt;
  return v.witness;
}

Partition refine_step(const DenseGraph& g, const Partition& p, const SubsetPair& witness, const Rational& eps,
                      bool audit) {
  require_eps(eps);
  const int n = g.n();
  if (p.universe() != n) throw DomainError("partition over a different vertex set");
  VertexSet s = VertexSet::of(n, witness.first), t = VertexSet::of(n, witness.second);
  if (s.intersects(t)) throw DomainError("witness sets must be disjoint");

  std::vector<int> tag(static_cast<std::size_t>(n), 2);
  for (int v : witness.first) tag[static_cast<std::size_t>(v)] = 0;
  for (int v : witness.second) tag[static_cast<std::size_t>(v)] = 1;
  Partition split(tag);
  Partition q = common_refinement(p, split);

  const std::int64_t b = weak_block_count(eps);
  const std::int64_t bk = b > std::numeric_limits<std::int64_t>::max() / p.order() ? b : b * p.order();
  const int block = static_cast<int>(std::max<std::int64_t>(1, n / bk));
  Partition refined = equitize(p, block, &q);

  const mpq_class gain = eps4(eps);
  const mpq_class before = q_exact(g, p);
  if (q_exact(g, refined) - before < gain / 2)
    throw InternalError("refinement gained less than eps^4/2 in q; witness or equitization is wrong");
  if (audit) {
    Partition star = common_refinement(refined, split);
    mpq_class qq = q_exact(g, q);
    if (q_exact(g, star) < qq || qq < before + gain)
      throw InternalError("auxiliary partition audit failed");
  }
  return refined;
}

WeakRegRun weak_regularize(const DenseGraph& g, const Partition& p0, const Rational& eps, const SearchConfig& cfg,
                           const WeakRegOptions& opts) {
  require_eps(eps);
  if (p0.universe() != g.n()) throw DomainError("partition over a different vertex set");
  if (!p0.is_equitable()) throw DomainError("initial partition must be equitable");
  WeakRegRun run;
  run.epsilon = eps;
  run.mode = cfg.mode;
  run.iteration_cap = weak_iteration_cap(eps);

  Partition cur = p0;
  for (std::int64_t it = 0;; ++it) {
    auto start = std::chrono::steady_clock::now();
    SearchConfig step = cfg;
    step.seed = derive_seed(cfg.seed, "weakreg", it);
    std::optional<SubsetPair> w = find_weak_witness(g, cur, eps, step);

    WeakRegStep rec;
    rec.order = cur.order();
    mpq_class q = q_exact(g, cur);
    rec.q = q.get_d();
    rec.q_exact = q.get_str();
    rec.witness = w;
    run.partitions.push_back(cur);

    if (!w) {
      if (opts.record_time)
        rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      run.iterations.push_back(std::move(rec));
      run.terminated_by = Termination::WitnessExhausted;
      break;
    }
    if (it >= run.iteration_cap) {
      run.iterations.push_back(std::move(rec));
      run.terminated_by = Termination::IterationCap;
      if (cfg.mode == Mode::Exact)
        throw InternalError("weak regularizer hit its iteration cap in exact mode");
      break;
    }
    cur = refine_step(g, cur, *w, eps, opts.audit);
    if (opts.record_time)
      rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    run.iterations.push_back(std::move(rec));
  }
  run.final_partition = cur;
  return run;
}

}  // namespace regkit
