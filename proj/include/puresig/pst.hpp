#pragma once

// Pure significance tests of a simple multinomial null against the uniform
// alternative: attained p-values, Kullback-Leibler divergences and expected
// p-values under the uniform law.

#include <cstdint>
#include <optional>
#include <vector>

#include "puresig/simplex.hpp"

namespace puresig {

/// p_value = rejection_rank_mass + tie_mass. The tie mass includes the
/// observed outcome itself.
struct PstResult {
  CellCounts observed;
  Rational p_value;
  Rational rejection_rank_mass;
  Rational tie_mass;
};

PstResult pst_p_value(const ProbVector& p, const CellCounts& x0,
                      std::uint64_t max_outcomes = kDefaultMaxOutcomes);

/// A real that may be +infinity. Used for divergences, which are irrational.
struct ExtendedReal {
  bool infinite = false;
  double value = 0.0;

  static ExtendedReal inf() { return {true, 0.0}; }
  static ExtendedReal finite(double v) { return {false, v}; }
};

inline constexpr unsigned kDefaultLogPrecisionBits = 64;

/// E_unif[log(f_unif(X) / f_p(X))] over S_{k,n}. Each log is evaluated with
/// MPFR at `precision_bits`; +inf when some outcome has zero mass.
ExtendedReal kld_uniform_to(const ProbVector& p, unsigned n,
                            std::uint64_t max_outcomes = kDefaultMaxOutcomes,
                            unsigned precision_bits = kDefaultLogPrecisionBits);

/// KLD(p) - KLD(ecp) in closed form: -n [log k + (1/k) sum_j log p_j].
ExtendedReal kld_gap(const ProbVector& p, unsigned n, unsigned precision_bits = kDefaultLogPrecisionBits);

/// q(x) = |{y : f(x) <= f(y)}| for every index of `masses`, by sorting.
std::vector<std::uint64_t> tail_rank_counts(const std::vector<Rational>& masses);

/// sum_x q_p(x) f_p(x) over S_{k,n}; the EPV times |S_{k,n}|.
Rational epv_uniform_sum(const ProbVector& p, unsigned n, std::uint64_t max_outcomes = kDefaultMaxOutcomes);

/// E_unif[pi_p(Y)], computed by sorting outcomes by exact mass.
Rational epv_uniform(const ProbVector& p, unsigned n, std::uint64_t max_outcomes = kDefaultMaxOutcomes);

struct Prop34Report {
  unsigned k = 0;
  unsigned n = 0;
  Rational lhs;               // ecp side
  std::vector<Rational> rhs;  // one per permutation of (1,0,...,0)
  bool pass = false;
};

Prop34Report check_prop34(unsigned k, unsigned n, std::uint64_t max_outcomes = kDefaultMaxOutcomes);

/// Barycentric lattice {a/m : sum a = m}, plus p_ecp, plus every vertex;
/// deduplicated and sorted lexicographically.
std::vector<ProbVector> conjecture33_grid(unsigned k, unsigned denominator);

struct Sweep33Point {
  ProbVector p;
  Rational epv;
};

struct Sweep33Report {
  unsigned k = 0;
  unsigned n = 0;
  std::vector<Sweep33Point> points;  // lexicographic in p
  ProbVector argmax;
  Rational ecp_epv;
  bool ecp_strict_max = false;
  std::optional<Rational> margin;  // ecp EPV minus best other EPV
  std::optional<ProbVector> runner_up;
};

/// Evaluates the EPV on the grid (p_ecp force-included) and reports whether
/// p_ecp is the strict maximiser.
Sweep33Report conjecture33_sweep(unsigned k, unsigned n, std::vector<ProbVector> grid,
                                 std::uint64_t max_outcomes = kDefaultMaxOutcomes);

/// E_p[pi_p(Y)]. Diagnostic only; near 1/2 for moderate n.
Rational null_epv_diagnostic(const ProbVector& p, unsigned n,
                             std::uint64_t max_outcomes = kDefaultMaxOutcomes);

}  // namespace puresig
