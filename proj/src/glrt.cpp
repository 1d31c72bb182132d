#include "puresig/glrt.hpp"

namespace puresig {

LStat lrt_statistic(const CellCounts& x) {
  BigInt num = 1, den = 1;
  for (unsigned c : x.counts()) {
    num *= factorial(c);
    den *= pow(BigInt(c), c);  // 0^0 = 1 in GMP
  }
  return {Rational(num, den), x};
}

Rational lrt_p_value(const CellCounts& x0, std::uint64_t max_outcomes) {
  const auto k = static_cast<unsigned>(x0.k());
  const Rational l0 = lrt_statistic(x0).value;
  Rational tail;
  for (const auto& x : enumerate_simplex(k, x0.n(), max_outcomes)) {
    if (lrt_statistic(x).value >= l0) tail += pmf_ecp(k, x0.n(), x);
  }
  return tail;
}

Rational lrt_p_value_binomial(unsigned x10, unsigned n) {
  if (x10 > n) throw Error(ErrorCode::kInvalidArgument, "x10 > n");
  const auto dist = [n](unsigned x) { return x * 2 >= n ? x * 2 - n : n - x * 2; };
  const unsigned d0 = dist(x10);
  BigInt count = 0;
  for (unsigned x = 0; x <= n; ++x) {
    if (dist(x) <= d0) count += binomial_coeff(n, x);
  }
  return Rational(count, pow(BigInt(2), n));
}

TTransformStep check_ttransform_step(const CellCounts& x) {
  if (x.k() < 2) throw Error(ErrorCode::kInvalidArgument, "T-transform step needs k >= 2");
  if (x[0] < 1) throw Error(ErrorCode::kInvalidArgument, "T-transform step needs x1 >= 1");
  std::vector<unsigned> moved = x.counts();
  moved[0] -= 1;
  moved[1] += 1;
  TTransformStep s{x, CellCounts(moved), lrt_statistic(x).value, {}, x[0] <= x[1], false};
  s.l_after = lrt_statistic(s.after).value;
  s.holds = s.l_after <= s.l_before;
  return s;
}

bool PropChainReport::pass() const {
  if (!corollary_violations.empty()) return false;
  for (const auto& c : chains) {
    if (!c.pass()) return false;
  }
  return true;
}

namespace {

// fn(p) = sum over a fixed outcome subset of f_p(x)
PropChainReport run_chain_check(unsigned k, const std::vector<CellCounts>& region, const Rational& c,
                                const std::vector<std::vector<ProbVector>>& chains, SchurDirection dir) {
  const ProbEvaluator fn = [&region](const ProbVector& p) {
    Rational s;
    for (const auto& x : region) s += pmf_multinomial(p, x);
    return s;
  };
  PropChainReport r;
  r.threshold = c;
  r.ecp_value = fn(ProbVector::ecp(k));
  for (const auto& chain : chains) {
    r.chains.push_back(check_schur_monotone(fn, chain, dir));
    const auto& rep = r.chains.back();
    for (std::size_t i = 0; i < chain.size(); ++i) {
      const Rational& v = rep.values[i];
      const bool ok = dir == SchurDirection::kConvex ? v >= r.ecp_value : v <= r.ecp_value;
      if (!ok) r.corollary_violations.emplace_back(chain[i], v);
    }
  }
  return r;
}

}  // namespace

PropChainReport prop41_check(unsigned k, unsigned n, const Rational& c,
                             const std::vector<std::vector<ProbVector>>& chains, std::uint64_t max_outcomes) {
  std::vector<CellCounts> region;
  for (const auto& x : enumerate_simplex(k, n, max_outcomes)) {
    if (pmf_ecp(k, n, x) <= c) region.push_back(x);
  }
  return run_chain_check(k, region, c, chains, SchurDirection::kConvex);
}

PropChainReport prop42_check(unsigned k, unsigned n, const Rational& c,
                             const std::vector<std::vector<ProbVector>>& chains, std::uint64_t max_outcomes) {
  std::vector<CellCounts> region;
  for (const auto& x : enumerate_simplex(k, n, max_outcomes)) {
    if (lrt_statistic(x).value >= c) region.push_back(x);
  }
  return run_chain_check(k, region, c, chains, SchurDirection::kConcave);
}

}  // namespace puresig
