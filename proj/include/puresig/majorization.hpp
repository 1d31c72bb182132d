#pragma once

// Majorization order, T-transforms and a chain-based Schur monotonicity
// checker. Schur-convexity over the continuum is not decidable by finite
// evaluation, so checks run along explicit majorization chains.

#include <cstddef>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "puresig/simplex.hpp"

namespace puresig {

/// True iff a majorizes b. Throws kSumMismatch for unequal sums and
/// kDimensionMismatch for unequal lengths.
bool majorizes(const std::vector<Rational>& a, const std::vector<Rational>& b);

/// Replaces (v_i, v_j) by (l v_i + (1-l) v_j, (1-l) v_i + l v_j).
std::vector<Rational> t_transform(const std::vector<Rational>& v, std::size_t i, std::size_t j,
                                  const Rational& lambda);
ProbVector t_transform(const ProbVector& p, std::size_t i, std::size_t j, const Rational& lambda);

enum class SchurDirection { kConvex, kConcave };

struct SchurViolation {
  std::size_t index = 0;  // violation between chain[index] and chain[index + 1]
  ProbVector from;
  ProbVector to;
  Rational value_from;
  Rational value_to;
};

struct SchurReport {
  SchurDirection direction = SchurDirection::kConvex;
  std::vector<ProbVector> chain;
  std::vector<Rational> values;
  std::optional<SchurViolation> violation;
  bool pass() const { return !violation.has_value(); }
};

using ProbEvaluator = std::function<Rational(const ProbVector&)>;

/// Checks that fn moves in the stated direction along each consecutive
/// majorization step: a Schur-convex fn does not decrease when moving to a
/// majorizing vector. Permutation-equivalent neighbours must give equal
/// values. Throws kIncomparableChain when a step is not comparable.
SchurReport check_schur_monotone(const ProbEvaluator& fn, const std::vector<ProbVector>& chain,
                                 SchurDirection direction);

/// A chain that starts at a random point of P_k (a vertex with probability
/// 1/2, else a random lattice point with the given denominator), applies
/// `steps` random T-transforms, and ends at p_ecp. Each element majorizes
/// the next.
std::vector<ProbVector> random_majorization_chain(std::size_t k, std::mt19937_64& rng,
                                                  unsigned steps = 3, unsigned denominator = 8);

}  // namespace puresig
