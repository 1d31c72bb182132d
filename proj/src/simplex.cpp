#include "puresig/simplex.hpp"

#include <algorithm>

#include <numeric>

namespace puresig {

CellCounts::CellCounts(std::vector<unsigned> counts) : counts_(std::move(counts)) {
  if (counts_.empty()) throw Error(ErrorCode::kInvalidArgument, "cell counts need k >= 1");
  for (unsigned c : counts_) n_ += c;
}

std::string CellCounts::to_string() const {
  std::string s = "(";
  for (std::size_t j = 0; j < counts_.size(); ++j) {
    if (j) s += ",";
    s += std::to_string(counts_[j]);
  }
  return s + ")";
}

ProbVector::ProbVector(std::vector<Rational> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw Error(ErrorCode::kInvalidArgument, "probability vector needs k >= 1");
  Rational total;
  for (const auto& p : probs_) {
    if (p.sign() < 0 || p > Rational(1))
      throw Error(ErrorCode::kInvalidArgument, "probability outside [0,1]: " + p.to_string());
    total += p;
  }
  if (total != Rational(1))
    throw Error(ErrorCode::kSumMismatch, "probabilities sum to " + total.to_string());
}

ProbVector ProbVector::ecp(std::size_t k) {
  return ProbVector(std::vector<Rational>(k, Rational(1, static_cast<long>(k))));
}

ProbVector ProbVector::vertex(std::size_t k, std::size_t index) {
  if (index >= k) throw Error(ErrorCode::kIndexOutOfRange, "vertex index");
  std::vector<Rational> v(k);
  v[index] = 1;
  return ProbVector(std::move(v));
}

bool ProbVector::is_ecp() const {
  const Rational e(1, static_cast<long>(probs_.size()));
  return std::all_of(probs_.begin(), probs_.end(), [&](const Rational& p) { return p == e; });
}

std::string ProbVector::to_string() const {
  std::string s = "(";
  for (std::size_t j = 0; j < probs_.size(); ++j) {
    if (j) s += ",";
    s += probs_[j].to_string();
  }
  return s + ")";
}

BigInt simplex_size(unsigned k, unsigned n) {
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "k >= 1 required");
  return binomial_coeff(n + k - 1, k - 1);
}

namespace {

void enumerate_rec(std::vector<unsigned>& cur, std::size_t pos, unsigned remaining,
                   std::vector<CellCounts>& out) {
  if (pos + 1 == cur.size()) {
    cur[pos] = remaining;
    out.emplace_back(cur);
    return;
  }
  for (unsigned v = 0; v <= remaining; ++v) {
    cur[pos] = v;
    enumerate_rec(cur, pos + 1, remaining - v, out);
  }
}

}  // namespace

std::vector<CellCounts> enumerate_simplex(unsigned k, unsigned n, std::uint64_t max_outcomes) {
  const BigInt size = simplex_size(k, n);
  if (size > BigInt(std::to_string(max_outcomes)))
    throw Error(ErrorCode::kSpaceTooLarge,
                "|S_{" + std::to_string(k) + "," + std::to_string(n) + "}| = " + size.get_str() +
                    " exceeds cap " + std::to_string(max_outcomes));
  std::vector<CellCounts> out;
  out.reserve(size.get_ui());
  std::vector<unsigned> cur(k, 0);
  enumerate_rec(cur, 0, n, out);
  return out;
}

BigInt multinomial_coeff(const CellCounts& x) {
  BigInt r = factorial(x.n());
  for (unsigned c : x.counts()) r /= factorial(c);
  return r;
}

Rational pmf_multinomial(const ProbVector& p, const CellCounts& x) {
  if (p.k() != x.k()) throw Error(ErrorCode::kDimensionMismatch, "p and x differ in k");
  Rational mass(multinomial_coeff(x));
  for (std::size_t j = 0; j < x.k(); ++j) {
    if (x[j] == 0) continue;
    if (p[j].is_zero()) return Rational(0);
    mass *= pow(p[j], x[j]);
  }
  return mass;
}

Rational pmf_ecp(unsigned k, unsigned n, const CellCounts& x) {
  if (x.k() != k || x.n() != n) throw Error(ErrorCode::kDimensionMismatch, "x not in S_{k,n}");
  return Rational(multinomial_coeff(x), pow(BigInt(k), n));
}

Rational pmf_uniform(unsigned k, unsigned n) { return Rational(BigInt(1), simplex_size(k, n)); }

PmfTable pmf_table(const ProbVector& p, unsigned n, std::uint64_t max_outcomes) {
  PmfTable t;
  t.k = static_cast<unsigned>(p.k());
  t.n = n;
  t.outcomes = enumerate_simplex(t.k, n, max_outcomes);
  t.masses.reserve(t.outcomes.size());
  for (const auto& x : t.outcomes) t.masses.push_back(pmf_multinomial(p, x));
  return t;
}

UniformWitness uniform_not_in_family_witness(unsigned k, unsigned n) {
  if (k < 2 || n < 2) throw Error(ErrorCode::kNotApplicable, "family degenerate for k < 2 or n < 2");
  // Corners (n,0,..), (0,n,..), ... all carry p_j^n; equality forces p = ecp.
  std::vector<unsigned> corner(k, 0), neighbour(k, 0);
  corner[0] = n;
  neighbour[0] = n - 1;
  neighbour[1] = 1;
  UniformWitness w{CellCounts(corner), CellCounts(neighbour), ProbVector::ecp(k), {}, {}, false};
  w.corner_mass = pmf_multinomial(w.forced_p, w.corner);
  w.neighbour_mass = pmf_multinomial(w.forced_p, w.neighbour);
  // p_1^n = n p_1^{n-1} p_2 would require p_1 = n p_2; at ecp the masses
  // differ by the factor n.
  w.contradiction = w.corner_mass != w.neighbour_mass;
  return w;
}

DirichletCheck dirichlet_mixture_check(unsigned k, unsigned n, const CellCounts& x) {
  if (x.k() != k || x.n() != n) throw Error(ErrorCode::kDimensionMismatch, "x not in S_{k,n}");
  // Integral of prod p_j^{x_j} d(nu) = (k-1)! prod x_j! / (n+k-1)!
  BigInt prod_fact = 1;
  for (unsigned c : x.counts()) prod_fact *= factorial(c);
  const Rational integral(factorial(k - 1) * prod_fact, factorial(n + k - 1));
  return {Rational(multinomial_coeff(x)) * integral, pmf_uniform(k, n)};
}

}  // namespace puresig
