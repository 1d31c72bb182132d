#pragma once

// Likelihood ratio test of the composite multinomial null against the
// uniform alternative. The supremum over P_k in the p-value is taken at
// p_ecp; the Schur checks below are regression tests of that reduction.

#include <cstdint>
#include <vector>

#include "puresig/majorization.hpp"
#include "puresig/simplex.hpp"

namespace puresig {

/// L(x) = prod_j x_j! / x_j^{x_j}, with 0^0 = 1.
struct LStat {
  Rational value;
  CellCounts outcome;
};

LStat lrt_statistic(const CellCounts& x);

/// P_ecp[L(X) >= L(x0)].
Rational lrt_p_value(const CellCounts& x0, std::uint64_t max_outcomes = kDefaultMaxOutcomes);

/// P_ecp[|X_1 - n/2| <= |x10 - n/2|] for X_1 ~ Binomial(n, 1/2).
Rational lrt_p_value_binomial(unsigned x10, unsigned n);

struct TTransformStep {
  CellCounts before;
  CellCounts after;  // (x1-1, x2+1, x3, ...)
  Rational l_before;
  Rational l_after;
  bool applicable = false;  // x1 <= x2
  bool holds = false;       // l_after <= l_before
  bool pass() const { return !applicable || holds; }
};

TTransformStep check_ttransform_step(const CellCounts& x);

struct PropChainReport {
  Rational threshold;
  std::vector<SchurReport> chains;
  // Corollary: each chain point compared with p_ecp.
  Rational ecp_value;
  std::vector<std::pair<ProbVector, Rational>> corollary_violations;
  bool pass() const;
};

/// P_p[f_ecp(X) <= c] along each chain, direction CONVEX, plus
/// P_p[...] >= P_ecp[...] at every chain point.
PropChainReport prop41_check(unsigned k, unsigned n, const Rational& c,
                             const std::vector<std::vector<ProbVector>>& chains,
                             std::uint64_t max_outcomes = kDefaultMaxOutcomes);

/// P_p[L(X) >= c] along each chain, direction CONCAVE, plus
/// P_p[...] <= P_ecp[...] at every chain point.
PropChainReport prop42_check(unsigned k, unsigned n, const Rational& c,
                             const std::vector<std::vector<ProbVector>>& chains,
                             std::uint64_t max_outcomes = kDefaultMaxOutcomes);

}  // namespace puresig
