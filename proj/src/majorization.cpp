#include "puresig/majorization.hpp"

#include <algorithm>

namespace puresig {

namespace {

std::vector<Rational> sorted_desc(std::vector<Rational> v) {
  std::stable_sort(v.begin(), v.end(), std::greater<>());
  return v;
}

}  // namespace

bool majorizes(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::kDimensionMismatch, "majorization needs equal lengths");
  const auto sa = sorted_desc(a);
  const auto sb = sorted_desc(b);
  Rational pa, pb;
  bool dominates = true;
  for (std::size_t i = 0; i < sa.size(); ++i) {
    pa += sa[i];
    pb += sb[i];
    if (pa < pb) dominates = false;
  }
  if (pa != pb) throw Error(ErrorCode::kSumMismatch, "sums " + pa.to_string() + " vs " + pb.to_string());
  return dominates;
}

std::vector<Rational> t_transform(const std::vector<Rational>& v, std::size_t i, std::size_t j,
                                  const Rational& lambda) {
  if (i >= v.size() || j >= v.size()) throw Error(ErrorCode::kIndexOutOfRange, "T-transform index");
  if (i == j) throw Error(ErrorCode::kInvalidArgument, "T-transform needs i != j");
  if (lambda.sign() < 0 || lambda > Rational(1))
    throw Error(ErrorCode::kInvalidArgument, "T-transform lambda outside [0,1]");
  std::vector<Rational> out = v;
  const Rational mu = Rational(1) - lambda;
  out[i] = lambda * v[i] + mu * v[j];
  out[j] = mu * v[i] + lambda * v[j];
  return out;
}

ProbVector t_transform(const ProbVector& p, std::size_t i, std::size_t j, const Rational& lambda) {
  return ProbVector(t_transform(p.probs(), i, j, lambda));
}

SchurReport check_schur_monotone(const ProbEvaluator& fn, const std::vector<ProbVector>& chain,
                                 SchurDirection direction) {
  SchurReport report;
  report.direction = direction;
  report.chain = chain;
  report.values.reserve(chain.size());
  for (const auto& p : chain) report.values.push_back(fn(p));
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    const bool up = majorizes(chain[i + 1].probs(), chain[i].probs());
    const bool down = majorizes(chain[i].probs(), chain[i + 1].probs());
    if (!up && !down)
      throw Error(ErrorCode::kIncomparableChain,
                  chain[i].to_string() + " and " + chain[i + 1].to_string() + " are not comparable");
    const Rational& a = report.values[i];
    const Rational& b = report.values[i + 1];
    bool ok;
    if (up && down) {
      ok = a == b;
    } else {
      // moving to a majorizing vector: convex fn must not decrease
      const bool increases_spread = up;
      const bool want_nondecreasing = (direction == SchurDirection::kConvex) == increases_spread;
      ok = want_nondecreasing ? a <= b : a >= b;
    }
    if (!ok && !report.violation) report.violation = SchurViolation{i, chain[i], chain[i + 1], a, b};
  }
  return report;
}

std::vector<ProbVector> random_majorization_chain(std::size_t k, std::mt19937_64& rng, unsigned steps,
                                                  unsigned denominator) {
  std::vector<ProbVector> chain;
  if (std::uniform_int_distribution<int>(0, 1)(rng) == 0 || k == 1) {
    chain.push_back(ProbVector::vertex(k, std::uniform_int_distribution<std::size_t>(0, k - 1)(rng)));
  } else {
    // uniform composition of `denominator` into k parts via stars and bars
    std::vector<unsigned> cuts(k - 1);
    for (auto& c : cuts) c = std::uniform_int_distribution<unsigned>(0, denominator)(rng);
    std::sort(cuts.begin(), cuts.end());
    std::vector<Rational> p(k);
    unsigned prev = 0;
    for (std::size_t j = 0; j + 1 < k; ++j) {
      p[j] = Rational(cuts[j] - prev, denominator);
      prev = cuts[j];
    }
    p[k - 1] = Rational(denominator - prev, denominator);
    chain.emplace_back(std::move(p));
  }
  if (k >= 2) {
    std::uniform_int_distribution<std::size_t> idx(0, k - 1);
    std::uniform_int_distribution<unsigned> lam(1, 7);
    for (unsigned s = 0; s < steps; ++s) {
      std::size_t i = idx(rng), j = idx(rng);
      while (j == i) j = idx(rng);
      chain.push_back(t_transform(chain.back(), i, j, Rational(lam(rng), 8)));
    }
  }
  chain.push_back(ProbVector::ecp(k));
  return chain;
}

}  // namespace puresig
