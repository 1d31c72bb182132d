#include "puresig/pst.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include <mpfr.h>

namespace puresig {

PstResult pst_p_value(const ProbVector& p, const CellCounts& x0, std::uint64_t max_outcomes) {
  if (p.k() != x0.k()) throw Error(ErrorCode::kDimensionMismatch, "p and x0 differ in k");
  const Rational f0 = pmf_multinomial(p, x0);
  PstResult r{x0, {}, {}, {}};
  for (const auto& x : enumerate_simplex(static_cast<unsigned>(p.k()), x0.n(), max_outcomes)) {
    const Rational f = pmf_multinomial(p, x);
    if (f < f0) r.rejection_rank_mass += f;
    else if (f == f0) r.tie_mass += f;
  }
  r.p_value = r.rejection_rank_mass + r.tie_mass;
  return r;
}

namespace {

// RAII wrapper for an MPFR float.
class MpfrFloat {
 public:
  explicit MpfrFloat(unsigned bits) { mpfr_init2(v_, bits); mpfr_set_zero(v_, 1); }
  ~MpfrFloat() { mpfr_clear(v_); }
  MpfrFloat(const MpfrFloat&) = delete;
  MpfrFloat& operator=(const MpfrFloat&) = delete;
  mpfr_ptr get() { return v_; }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

 private:
  mpfr_t v_;
};

// acc += scale * log(q), q > 0
void add_log(MpfrFloat& acc, const Rational& q, const Rational& scale, unsigned bits) {
  MpfrFloat t(bits), s(bits);
  mpfr_set_q(t.get(), q.raw().get_mpq_t(), MPFR_RNDN);
  mpfr_log(t.get(), t.get(), MPFR_RNDN);
  mpfr_set_q(s.get(), scale.raw().get_mpq_t(), MPFR_RNDN);
  mpfr_mul(t.get(), t.get(), s.get(), MPFR_RNDN);
  mpfr_add(acc.get(), acc.get(), t.get(), MPFR_RNDN);
}

}  // namespace

ExtendedReal kld_uniform_to(const ProbVector& p, unsigned n, std::uint64_t max_outcomes,
                            unsigned precision_bits) {
  const auto k = static_cast<unsigned>(p.k());
  const auto outcomes = enumerate_simplex(k, n, max_outcomes);
  const Rational w(BigInt(1), BigInt(static_cast<unsigned long>(outcomes.size())));
  const Rational funif = pmf_uniform(k, n);
  MpfrFloat acc(precision_bits);
  for (const auto& x : outcomes) {
    const Rational f = pmf_multinomial(p, x);
    if (f.is_zero()) return ExtendedReal::inf();
    add_log(acc, funif / f, w, precision_bits);
  }
  return ExtendedReal::finite(acc.to_double());
}

ExtendedReal kld_gap(const ProbVector& p, unsigned n, unsigned precision_bits) {
  const auto k = static_cast<long>(p.k());
  for (const auto& pj : p.probs()) {
    if (pj.is_zero()) return ExtendedReal::inf();
  }
  // -n [log k + (1/k) sum log p_j] = -(n/k) sum_j log(k p_j)
  MpfrFloat acc(precision_bits);
  const Rational scale(-static_cast<long>(n), k);
  for (const auto& pj : p.probs()) add_log(acc, Rational(k) * pj, scale, precision_bits);
  return ExtendedReal::finite(acc.to_double());
}

std::vector<std::uint64_t> tail_rank_counts(const std::vector<Rational>& masses) {
  std::vector<std::size_t> order(masses.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return masses[a] > masses[b]; });
  // In descending order, q of a tie group = index one past its last member.
  std::vector<std::uint64_t> q(masses.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j < order.size() && masses[order[j]] == masses[order[i]]) ++j;
    for (std::size_t m = i; m < j; ++m) q[order[m]] = j;
    i = j;
  }
  return q;
}

Rational epv_uniform_sum(const ProbVector& p, unsigned n, std::uint64_t max_outcomes) {
  const PmfTable t = pmf_table(p, n, max_outcomes);
  const auto q = tail_rank_counts(t.masses);
  Rational sum;
  for (std::size_t i = 0; i < q.size(); ++i) {
    sum += Rational(BigInt(static_cast<unsigned long>(q[i]))) * t.masses[i];
  }
  return sum;
}

Rational epv_uniform(const ProbVector& p, unsigned n, std::uint64_t max_outcomes) {
  return epv_uniform_sum(p, n, max_outcomes) / Rational(simplex_size(static_cast<unsigned>(p.k()), n));
}

Prop34Report check_prop34(unsigned k, unsigned n, std::uint64_t max_outcomes) {
  if (k < 2 || n < 1) throw Error(ErrorCode::kInvalidArgument, "check_prop34 needs k >= 2, n >= 1");
  Prop34Report r;
  r.k = k;
  r.n = n;
  r.lhs = epv_uniform_sum(ProbVector::ecp(k), n, max_outcomes);
  r.pass = r.lhs > Rational(1);
  for (unsigned j = 0; j < k; ++j) {
    r.rhs.push_back(epv_uniform_sum(ProbVector::vertex(k, j), n, max_outcomes));
    r.pass = r.pass && r.rhs.back() == Rational(1);
  }
  return r;
}

std::vector<ProbVector> conjecture33_grid(unsigned k, unsigned denominator) {
  if (k == 0 || denominator == 0) throw Error(ErrorCode::kInvalidArgument, "grid needs k, m >= 1");
  std::set<ProbVector> pts;
  for (const auto& a : enumerate_simplex(k, denominator)) {
    std::vector<Rational> p;
    for (unsigned c : a.counts()) p.emplace_back(static_cast<long>(c), static_cast<long>(denominator));
    pts.insert(ProbVector(std::move(p)));
  }
  pts.insert(ProbVector::ecp(k));
  for (unsigned j = 0; j < k; ++j) pts.insert(ProbVector::vertex(k, j));
  return {pts.begin(), pts.end()};
}

Sweep33Report conjecture33_sweep(unsigned k, unsigned n, std::vector<ProbVector> grid,
                                 std::uint64_t max_outcomes) {
  std::set<ProbVector> pts(grid.begin(), grid.end());
  for (const auto& p : pts) {
    if (p.k() != k) throw Error(ErrorCode::kDimensionMismatch, "grid point with wrong k");
  }
  const ProbVector ecp = ProbVector::ecp(k);
  pts.insert(ecp);

  Sweep33Report r{k, n, {}, ecp, {}, false, std::nullopt, std::nullopt};
  std::optional<Rational> best_other;
  for (const auto& p : pts) {
    Rational e = epv_uniform(p, n, max_outcomes);
    if (p == ecp) {
      r.ecp_epv = e;
    } else if (!best_other || e > *best_other) {
      best_other = e;
      r.runner_up = p;
    }
    r.points.push_back({p, std::move(e)});
  }
  Rational best = r.points.front().epv;
  r.argmax = r.points.front().p;
  for (const auto& pt : r.points) {
    if (pt.epv > best) {
      best = pt.epv;
      r.argmax = pt.p;
    }
  }
  if (best_other) {
    r.margin = r.ecp_epv - *best_other;
    r.ecp_strict_max = *r.margin > Rational(0);
    if (r.ecp_strict_max) r.argmax = ecp;
  } else {
    r.ecp_strict_max = true;
    r.argmax = ecp;
  }
  return r;
}

Rational null_epv_diagnostic(const ProbVector& p, unsigned n, std::uint64_t max_outcomes) {
  const PmfTable t = pmf_table(p, n, max_outcomes);
  // pi(y) = sum of masses <= f(y); accumulate in ascending order.
  std::vector<std::size_t> order(t.masses.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return t.masses[a] < t.masses[b]; });
  Rational cumulative, expectation;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    Rational group;
    while (j < order.size() && t.masses[order[j]] == t.masses[order[i]]) group += t.masses[order[j++]];
    cumulative += group;
    expectation += group * cumulative;
    i = j;
  }
  return expectation;
}

}  // namespace puresig
