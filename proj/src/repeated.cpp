#include "puresig/repeated.hpp"

#include <algorithm>
#include <functional>

#include "puresig/glrt.hpp"

namespace puresig {

ObsMatrix::ObsMatrix(std::vector<CellCounts> rows) : rows_(std::move(rows)) {
  if (rows_.empty()) throw Error(ErrorCode::kInvalidArgument, "observation matrix needs r >= 1");
  for (const auto& row : rows_) {
    if (row.k() != rows_.front().k() || row.n() != rows_.front().n())
      throw Error(ErrorCode::kDimensionMismatch, "rows differ in k or n");
  }
}

ColumnSums ObsMatrix::column_sums() const {
  std::vector<unsigned> s(k(), 0);
  for (const auto& row : rows_) {
    for (std::size_t j = 0; j < k(); ++j) s[j] += row[j];
  }
  return ColumnSums(std::move(s));
}

std::string ObsMatrix::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (i) s += ",";
    s += rows_[i].to_string();
  }
  return s + ")";
}

std::vector<ObsMatrix> enumerate_obs(unsigned k, unsigned n, unsigned r, std::uint64_t max_matrices) {
  if (r < 1) throw Error(ErrorCode::kInvalidArgument, "r must be >= 1");
  const BigInt size = simplex_size(k, n);
  if (pow(size, r) > BigInt(static_cast<unsigned long>(max_matrices)))
    throw Error(ErrorCode::kSpaceTooLarge, "|S_{k,n}|^r = " + pow(size, r).get_str() + " exceeds cap");
  const auto rows = enumerate_simplex(k, n, max_matrices);
  std::vector<ObsMatrix> out;
  std::vector<std::size_t> idx(r, 0);
  for (;;) {
    std::vector<CellCounts> m;
    m.reserve(r);
    for (auto i : idx) m.push_back(rows[i]);
    out.emplace_back(std::move(m));
    std::size_t pos = r;
    while (pos > 0 && ++idx[pos - 1] == rows.size()) idx[--pos] = 0;
    if (pos == 0) break;
  }
  return out;
}

namespace {

BigInt row_weight(const ObsMatrix& x) {
  BigInt w = 1;
  for (const auto& row : x.rows()) w *= multinomial_coeff(row);
  return w;
}

Rational monomial(const ProbVector& p, const ColumnSums& s) {
  Rational m(1);
  for (std::size_t j = 0; j < p.k(); ++j) m *= pow(p[j], s[j]);
  return m;
}

// Smallest realized value v with P[stat >= v] <= level; nullopt if none.
// Returns the threshold and its realized tail.
std::pair<std::optional<Rational>, Rational> conservative_threshold(
    std::vector<std::pair<Rational, Rational>> value_mass, const Rational& level) {
  std::sort(value_mass.begin(), value_mass.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  std::optional<Rational> thr;
  Rational realized, tail;
  std::size_t i = 0;
  while (i < value_mass.size()) {
    std::size_t j = i;
    while (j < value_mass.size() && value_mass[j].first == value_mass[i].first) tail += value_mass[j++].second;
    if (tail > level) break;
    thr = value_mass[i].first;
    realized = tail;
    i = j;
  }
  return {thr, realized};
}

}  // namespace

Rational joint_pmf(const ProbVector& p, const ObsMatrix& x) {
  if (p.k() != x.k()) throw Error(ErrorCode::kDimensionMismatch, "p and matrix differ in k");
  return Rational(row_weight(x)) * monomial(p, x.column_sums());
}

Rational joint_pmf_ecp(const ObsMatrix& x) { return joint_pmf(ProbVector::ecp(x.k()), x); }

Rational joint_pmf_uniform(unsigned k, unsigned n, unsigned r) {
  return Rational(BigInt(1), pow(simplex_size(k, n), r));
}

Rational ltilde(const ColumnSums& xplus) { return lrt_statistic(xplus).value; }

Rational v_statistic(const ObsMatrix& x) {
  BigInt num = 1, den = 1;
  for (const auto& row : x.rows()) {
    for (unsigned c : row.counts()) num *= factorial(c);
  }
  const ColumnSums s = x.column_sums();
  for (unsigned c : s.counts()) den *= factorial(c);
  return Rational(num, den);
}

Rational lstar(const ObsMatrix& x) {
  BigInt num = 1, den = 1;
  for (const auto& row : x.rows()) {
    for (unsigned c : row.counts()) num *= factorial(c);
  }
  const ColumnSums s = x.column_sums();
  for (unsigned c : s.counts()) den *= pow(BigInt(c), c);
  return Rational(num, den);
}

Rational conditional_pmf(const ObsMatrix& x, const ColumnSums& xplus) {
  if (x.column_sums() != xplus) return Rational(0);
  return Rational(row_weight(x), multinomial_coeff(xplus));
}

std::vector<ObsMatrix> fiber(unsigned n, unsigned r, const ColumnSums& xplus, std::uint64_t max_matrices) {
  if (r < 1) throw Error(ErrorCode::kInvalidArgument, "r must be >= 1");
  if (xplus.n() != r * n) throw Error(ErrorCode::kSumMismatch, "x+ must total r n");
  const auto k = static_cast<unsigned>(xplus.k());
  const auto rows = enumerate_simplex(k, n, max_matrices);
  std::vector<ObsMatrix> out;
  std::vector<CellCounts> current;
  std::vector<unsigned> left = xplus.counts();
  std::function<void()> rec = [&]() {
    if (current.size() + 1 == r) {
      current.emplace_back(left);
      out.emplace_back(current);
      current.pop_back();
      if (out.size() > max_matrices) throw Error(ErrorCode::kSpaceTooLarge, "fiber exceeds cap");
      return;
    }
    for (const auto& row : rows) {
      bool fits = true;
      for (unsigned j = 0; j < k; ++j) fits = fits && row[j] <= left[j];
      if (!fits) continue;
      for (unsigned j = 0; j < k; ++j) left[j] -= row[j];
      current.push_back(row);
      rec();
      current.pop_back();
      for (unsigned j = 0; j < k; ++j) left[j] += row[j];
    }
  };
  rec();
  return out;
}

Rational phi_c(unsigned n, unsigned r, const ColumnSums& xplus, const Rational& c, std::uint64_t max_matrices) {
  Rational s;
  for (const auto& x : fiber(n, r, xplus, max_matrices)) {
    if (lstar(x) >= c) s += conditional_pmf(x, xplus);
  }
  return s;
}

Counterexample222 counterexample_222(const Rational& c) {
  Counterexample222 ce;
  ce.c = c;
  for (unsigned a = 0; a <= 4; ++a) {
    ce.xplus.push_back(ColumnSums{a, 4 - a});
    ce.phi.push_back(phi_c(2, 2, ce.xplus.back(), c));
  }
  ce.violates_schur_concavity = majorizes({Rational(1), Rational(3)}, {Rational(2), Rational(2)}) && ce.phi[2] < ce.phi[1];
  return ce;
}

HybridThresholds hybrid_thresholds(unsigned k, unsigned n, unsigned r, const Rational& alpha, const Rational& beta,
                                   std::uint64_t max_matrices) {
  for (const auto* lv : {&alpha, &beta}) {
    if (lv->sign() < 0 || *lv > Rational(1)) throw Error(ErrorCode::kInvalidArgument, "levels must lie in [0,1]");
  }
  HybridThresholds th{k, n, r, alpha, beta, {}, {}, std::nullopt, {}, {}};
  std::map<ColumnSums, std::vector<std::pair<Rational, Rational>>> fibers;
  for (const auto& x : enumerate_obs(k, n, r, max_matrices)) {
    const ColumnSums s = x.column_sums();
    fibers[s].emplace_back(v_statistic(x), conditional_pmf(x, s));
  }
  for (auto& [s, vm] : fibers) {
    auto [thr, tail] = conservative_threshold(std::move(vm), alpha);
    th.c_alpha.emplace(s, thr);
    th.fiber_tail.emplace(s, tail);
    if (tail > th.alpha_realized) th.alpha_realized = tail;
  }
  std::vector<std::pair<Rational, Rational>> lm;
  for (const auto& s : enumerate_simplex(k, r * n, max_matrices)) lm.emplace_back(ltilde(s), pmf_ecp(k, r * n, s));
  auto [d, tail] = conservative_threshold(std::move(lm), beta);
  th.d_beta = d;
  th.beta_realized = tail;
  return th;
}

HybridDecision hybrid_test(const ObsMatrix& x, const HybridThresholds& th) {
  if (x.k() != th.k || x.n() != th.n || x.r() != th.r)
    throw Error(ErrorCode::kDimensionMismatch, "matrix does not match the thresholds' (k,n,r)");
  const ColumnSums s = x.column_sums();
  HybridDecision d;
  d.v = v_statistic(x);
  d.ltilde = ltilde(s);
  d.c_alpha = th.c_alpha.at(s);
  d.d_beta = th.d_beta;
  d.reject_v = d.c_alpha && d.v >= *d.c_alpha;
  d.reject_l = d.d_beta && d.ltilde >= *d.d_beta;
  return d;
}

LevelReport bonferroni_level_check(const HybridThresholds& th, const std::vector<ProbVector>& p_grid,
                                   std::uint64_t max_matrices) {
  // Rejection probability = sum over x+ of w(x+) prod p_j^x+j.
  std::map<ColumnSums, BigInt> weight;
  for (const auto& x : enumerate_obs(th.k, th.n, th.r, max_matrices)) {
    if (hybrid_test(x, th).reject()) weight[x.column_sums()] += row_weight(x);
  }
  LevelReport rep;
  rep.grid = p_grid;
  rep.realized_bound = th.alpha_realized + th.beta_realized;
  rep.nominal_bound = th.alpha + th.beta;
  for (const auto& p : p_grid) {
    if (p.k() != th.k) throw Error(ErrorCode::kDimensionMismatch, "grid point with wrong k");
    Rational level;
    for (const auto& [s, w] : weight) level += Rational(w) * monomial(p, s);
    if (level > rep.max_level) rep.max_level = level;
    rep.levels.push_back(std::move(level));
  }
  return rep;
}

bool Sweep81Report::pass() const {
  return std::all_of(chains.begin(), chains.end(), [](const SchurReport& c) { return c.pass(); });
}

Sweep81Report conjecture81_sweep(unsigned k, unsigned n, unsigned r, const Rational& c,
                                 const std::vector<std::vector<ProbVector>>& chains, std::uint64_t max_matrices) {
  std::map<ColumnSums, BigInt> weight;
  for (const auto& x : enumerate_obs(k, n, r, max_matrices)) {
    if (lstar(x) >= c) weight[x.column_sums()] += row_weight(x);
  }
  const ProbEvaluator fn = [&weight](const ProbVector& p) {
    Rational s;
    for (const auto& [xs, w] : weight) s += Rational(w) * monomial(p, xs);
    return s;
  };
  Sweep81Report rep{k, n, r, c, {}};
  for (const auto& chain : chains) rep.chains.push_back(check_schur_monotone(fn, chain, SchurDirection::kConcave));
  return rep;
}

ConjecturalPValue pstar_pvalue_conjectural(const ObsMatrix& x0, std::uint64_t max_matrices) {
  const Rational l0 = lstar(x0);
  ConjecturalPValue pv;
  for (const auto& x : enumerate_obs(static_cast<unsigned>(x0.k()), x0.n(), x0.r(), max_matrices)) {
    if (lstar(x) >= l0) pv.value += joint_pmf_ecp(x);
  }
  return pv;
}

}  // namespace puresig
