#pragma once

// The integer simplex S_{k,n}, multinomial / equal-cell / uniform pmfs on it,
// and the closed-form identities relating them.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "puresig/exactnum.hpp"

namespace puresig {

inline constexpr std::uint64_t kDefaultMaxOutcomes = 1'000'000;

/// A point of S_{k,n}: k nonnegative counts summing to n.
class CellCounts {
 public:
  explicit CellCounts(std::vector<unsigned> counts);
  CellCounts(std::initializer_list<unsigned> counts) : CellCounts(std::vector<unsigned>(counts)) {}

  std::size_t k() const { return counts_.size(); }
  unsigned n() const { return n_; }
  unsigned operator[](std::size_t j) const { return counts_[j]; }
  const std::vector<unsigned>& counts() const { return counts_; }

  friend bool operator==(const CellCounts&, const CellCounts&) = default;
  friend auto operator<=>(const CellCounts& a, const CellCounts& b) { return a.counts_ <=> b.counts_; }

  std::string to_string() const;

 private:
  std::vector<unsigned> counts_;
  unsigned n_ = 0;
};

/// A point of the probability simplex P_k with exact entries.
class ProbVector {
 public:
  explicit ProbVector(std::vector<Rational> probs);
  ProbVector(std::initializer_list<Rational> probs) : ProbVector(std::vector<Rational>(probs)) {}

  static ProbVector ecp(std::size_t k);
  /// (1,0,...,0) with the unit mass at `index`.
  static ProbVector vertex(std::size_t k, std::size_t index);

  std::size_t k() const { return probs_.size(); }
  const Rational& operator[](std::size_t j) const { return probs_[j]; }
  const std::vector<Rational>& probs() const { return probs_; }
  bool is_ecp() const;

  friend bool operator==(const ProbVector&, const ProbVector&) = default;
  friend auto operator<=>(const ProbVector& a, const ProbVector& b) { return a.probs_ <=> b.probs_; }

  std::string to_string() const;

 private:
  std::vector<Rational> probs_;
};

/// |S_{k,n}| = C(n+k-1, k-1).
BigInt simplex_size(unsigned k, unsigned n);

/// Every point of S_{k,n} in lexicographic order. Throws kSpaceTooLarge when
/// |S_{k,n}| exceeds max_outcomes.
std::vector<CellCounts> enumerate_simplex(unsigned k, unsigned n,
                                          std::uint64_t max_outcomes = kDefaultMaxOutcomes);

BigInt multinomial_coeff(const CellCounts& x);
Rational pmf_multinomial(const ProbVector& p, const CellCounts& x);
Rational pmf_ecp(unsigned k, unsigned n, const CellCounts& x);
Rational pmf_uniform(unsigned k, unsigned n);

struct PmfTable {
  unsigned k = 0;
  unsigned n = 0;
  std::vector<CellCounts> outcomes;
  std::vector<Rational> masses;
};

PmfTable pmf_table(const ProbVector& p, unsigned n, std::uint64_t max_outcomes = kDefaultMaxOutcomes);

/// Certificate that the uniform pmf on S_{k,n} is not multinomial: equal
/// corner masses force p_ecp, after which the masses at (n,0,..) and
/// (n-1,1,0,..) differ.
struct UniformWitness {
  CellCounts corner;
  CellCounts neighbour;
  ProbVector forced_p;
  Rational corner_mass;
  Rational neighbour_mass;
  bool contradiction = false;
};

UniformWitness uniform_not_in_family_witness(unsigned k, unsigned n);

/// lhs: C(n,x) times the Dirichlet integral of prod p_j^{x_j} under the
/// uniform law on P_k, via its closed form; rhs: 1/|S_{k,n}|.
struct DirichletCheck {
  Rational lhs;
  Rational rhs;
  bool equal() const { return lhs == rhs; }
};

DirichletCheck dirichlet_mixture_check(unsigned k, unsigned n, const CellCounts& x);

}  // namespace puresig
