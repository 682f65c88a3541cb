#include "regkit/potential.hpp"

#include <cmath>
#include <map>

#include <gmpxx.h>

#include "regkit/error.hpp"

namespace regkit {

double xlogx(double x) { return x <= 0.0 ? 0.0 : x * std::log(x); }

double xlogx(const Rational& x) {
  if (x.num() <= 0) return 0.0;
  // ln(num/den) = ln num - ln den keeps small ratios accurate.
  return x.to_double() * (std::log(static_cast<double>(x.num())) - std::log(static_cast<double>(x.den())));
}

void CompensatedSum::add(double x) {
  double t = sum_ + x;
  if (std::fabs(sum_) >= std::fabs(x))
    comp_ += (sum_ - t) + x;
  else
    comp_ += (x - t) + sum_;
  sum_ = t;
}

namespace {

mpq_class mean_square_q(const DenseGraph& g, const Partition& p) {
  auto m = class_edge_matrix(g, p);
  mpq_class q = 0;
  for (int i = 0; i < p.order(); ++i)
    for (int j = 0; j < p.order(); ++j) {
      std::int64_t e = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (e == 0) continue;
      mpz_class num = mpz_class(static_cast<long>(e)) * static_cast<long>(e);
      mpz_class den = mpz_class(p.class_size(i)) * p.class_size(j);
      q += mpq_class(num, den);
    }
  q /= mpz_class(g.n()) * g.n();
  return q;
}

mpq_class to_mpq(const Rational& r) {
  return mpq_class(mpz_class(static_cast<long>(r.num())), mpz_class(static_cast<long>(r.den())));
}

// Class of P containing each class of Q; throws unless Q refines P.
std::vector<int> parents(const Partition& q, const Partition& p) {
  if (q.universe() != p.universe()) throw DomainError("partitions over different vertex sets");
  if (!is_refinement(q, p)) throw DomainError("Q does not refine P");
  std::vector<int> par(static_cast<std::size_t>(q.order()));
  for (int c = 0; c < q.order(); ++c) par[static_cast<std::size_t>(c)] = p.class_of(q.members(c).front());
  return par;
}

// Integer numerators of D(Q,P) grouped by parent pair: for (i, j) the sum of
// |e(U,U') |V_i||V_j| - |U||U'| e(V_i,V_j)| over parts U ⊆ V_i, U' ⊆ V_j.
std::map<std::pair<int, int>, mpz_class> l1_numerators(const DenseGraph& g, const Partition& q, const Partition& p) {
  auto par = parents(q, p);
  auto mq = class_edge_matrix(g, q);
  auto mp = class_edge_matrix(g, p);
  std::map<std::pair<int, int>, mpz_class> out;
  for (int a = 0; a < q.order(); ++a)
    for (int b = 0; b < q.order(); ++b) {
      int i = par[static_cast<std::size_t>(a)], j = par[static_cast<std::size_t>(b)];
      __int128 w = static_cast<__int128>(p.class_size(i)) * p.class_size(j);
      __int128 d = static_cast<__int128>(mq[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]) * w -
                   static_cast<__int128>(q.class_size(a)) * q.class_size(b) *
                       mp[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (d < 0) d = -d;
      if (d == 0) continue;
      out[{i, j}] += mpz_class(static_cast<long>(d));
    }
  return out;
}

mpq_class l1_exact(const DenseGraph& g, const Partition& q, const Partition& p) {
  mpq_class total = 0;
  for (auto& [key, num] : l1_numerators(g, q, p))
    total += mpq_class(num, mpz_class(p.class_size(key.first)) * p.class_size(key.second));
  total /= 2;
  return total;
}

}  // namespace

double mean_square_density(const DenseGraph& g, const Partition& p) { return mean_square_q(g, p).get_d(); }

std::string mean_square_density_exact(const DenseGraph& g, const Partition& p) {
  return mean_square_q(g, p).get_str();
}

bool mean_square_gain_at_least(const DenseGraph& g, const Partition& before, const Partition& after,
                               const Rational& gain) {
  return mean_square_q(g, after) - mean_square_q(g, before) >= to_mpq(gain);
}

double entropy_potential(const DenseGraph& g, const Partition& p) {
  auto m = class_edge_matrix(g, p);
  const double n2 = static_cast<double>(g.n()) * g.n();
  CompensatedSum sum;
  for (int i = 0; i < p.order(); ++i)
    for (int j = 0; j < p.order(); ++j) {
      std::int64_t e = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (e == 0) continue;
      std::int64_t w = static_cast<std::int64_t>(p.class_size(i)) * p.class_size(j);
      sum.add(static_cast<double>(w) / n2 * xlogx(Rational(e, w)));
    }
  return sum.value();
}

double entropy_cross(const DenseGraph& g, const std::vector<VertexSet>& parts_a,
                     const std::vector<VertexSet>& parts_b) {
  std::int64_t na = 0, nb = 0;
  for (auto& v : parts_a) na += v.count();
  for (auto& v : parts_b) nb += v.count();
  if (na == 0 || nb == 0) throw DomainError("cross entropy over an empty set");
  CompensatedSum sum;
  for (auto& v : parts_a)
    for (auto& w : parts_b) {
      if (v.empty() || w.empty()) throw DomainError("empty part in cross entropy");
      std::int64_t sz = static_cast<std::int64_t>(v.count()) * w.count();
      sum.add(static_cast<double>(sz) / (static_cast<double>(na) * static_cast<double>(nb)) *
              xlogx(Rational(edge_count(g, v, w), sz)));
    }
  return sum.value();
}

PotentialReport potential_report(const DenseGraph& g, const Partition& p) {
  PotentialReport r;
  mpq_class q = mean_square_q(g, p);
  r.mean_square = q.get_d();
  r.mean_square_exact = q.get_str();
  r.entropy = entropy_potential(g, p);
  return r;
}

InequalityCheck defect_lower_bound(std::span<const double> p, std::span<const double> d) {
  if (p.size() != d.size() || p.empty()) throw DomainError("weights and densities must have equal nonzero length");
  CompensatedSum total, mean;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < 0.0) throw DomainError("negative weight");
    if (d[i] < 0.0 || d[i] > 1.0) throw DomainError("density outside [0, 1]");
    total.add(p[i]);
    mean.add(p[i] * d[i]);
  }
  if (std::fabs(total.value() - 1.0) > kInequalityTolerance) throw DomainError("weights must sum to 1");
  const double dbar = mean.value();
  if (dbar == 0.0) throw DomainError("mean density is zero");
  CompensatedSum lhs, spread;
  for (std::size_t i = 0; i < p.size(); ++i) {
    lhs.add(p[i] * xlogx(d[i]));
    spread.add(p[i] * std::fabs(d[i] / dbar - 1.0));
  }
  lhs.add(-xlogx(dbar));
  InequalityCheck c;
  c.lhs = lhs.value();
  c.rhs = 0.5 * dbar * spread.value() * spread.value();
  c.holds = c.lhs >= c.rhs - kInequalityTolerance;
  return c;
}

PinskerCheck pinsker_check(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size() || p.empty()) throw DomainError("distributions must have equal nonzero length");
  CompensatedSum kl, l1, sp, sq;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < 0.0 || q[i] < 0.0) throw DomainError("negative probability");
    if (q[i] > 0.0 && p[i] == 0.0) throw DomainError("q is not absolutely continuous with respect to p");
    sp.add(p[i]);
    sq.add(q[i]);
    if (q[i] > 0.0) kl.add(q[i] * std::log(q[i] / p[i]));
    l1.add(std::fabs(q[i] - p[i]));
  }
  if (std::fabs(sp.value() - 1.0) > kInequalityTolerance || std::fabs(sq.value() - 1.0) > kInequalityTolerance)
    throw DomainError("distributions must sum to 1");
  PinskerCheck c;
  c.kl = kl.value();
  c.tv = 0.5 * l1.value() * l1.value();
  c.holds = c.kl >= c.tv - kInequalityTolerance;
  return c;
}

L1Distance l1_partition_distance(const DenseGraph& g, const Partition& q, const Partition& p) {
  if (q.universe() != g.n()) throw DomainError("partition over a different vertex set");
  mpq_class d = l1_exact(g, q, p);
  return L1Distance{d.get_d(), d.get_str()};
}

std::strong_ordering compare_l1_distance(const DenseGraph& g, const Partition& q, const Partition& p,
                                         const Rational& edges) {
  int c = cmp(l1_exact(g, q, p), to_mpq(edges));
  return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

PotentialVsL1 potential_vs_l1_check(const DenseGraph& g, const Partition& q, const Partition& p) {
  Rational dens = global_density(g);
  if (dens.is_zero()) throw DomainError("graph density is zero");
  PotentialVsL1 r;
  mpq_class x = l1_exact(g, q, p) / (to_mpq(dens) * mpz_class(g.n()) * g.n());
  r.x = x.get_d();
  r.gain = entropy_potential(g, q) - entropy_potential(g, p);
  r.bound = 2.0 * r.x * r.x * dens.to_double();
  r.holds = r.gain >= r.bound - kInequalityTolerance;
  return r;
}

}  // namespace regkit
