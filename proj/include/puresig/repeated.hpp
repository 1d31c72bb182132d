#pragma once

// r independent multinomial observations of the same p: the joint pmf, the
// LRT statistic L* and its factorisation V * L~(X+), the p-free conditional
// law given the column sums, and the hybrid test built from the two factors.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "puresig/majorization.hpp"
#include "puresig/simplex.hpp"

namespace puresig {

inline constexpr std::uint64_t kDefaultMaxMatrices = 10'000'000;

/// Column sums X+ live in S_{k,rn}.
using ColumnSums = CellCounts;

class ObsMatrix {
 public:
  /// Throws kInvalidArgument for r = 0 and kDimensionMismatch when rows
  /// differ in k or in n.
  explicit ObsMatrix(std::vector<CellCounts> rows);

  const std::vector<CellCounts>& rows() const { return rows_; }
  std::size_t k() const { return rows_.front().k(); }
  unsigned n() const { return rows_.front().n(); }
  unsigned r() const { return static_cast<unsigned>(rows_.size()); }
  ColumnSums column_sums() const;
  std::string to_string() const;

 private:
  std::vector<CellCounts> rows_;
};

/// S_{k,n}^r in row-lexicographic order.
std::vector<ObsMatrix> enumerate_obs(unsigned k, unsigned n, unsigned r,
                                     std::uint64_t max_matrices = kDefaultMaxMatrices);

Rational joint_pmf(const ProbVector& p, const ObsMatrix& x);
Rational joint_pmf_ecp(const ObsMatrix& x);
/// C(n+k-1,k-1)^(-r), the same for every matrix.
Rational joint_pmf_uniform(unsigned k, unsigned n, unsigned r);

/// L*(x) = prod_ij x_ij! / prod_j x+j^x+j.
Rational lstar(const ObsMatrix& x);
/// L~(x+) = prod_j x+j! / x+j^x+j.
Rational ltilde(const ColumnSums& xplus);
/// V(x) = prod_ij x_ij! / prod_j x+j!, so L* = V L~.
Rational v_statistic(const ObsMatrix& x);

/// prod_i C(n; x_i) / C(rn; x+), or 0 when x is not in the fiber of x+.
Rational conditional_pmf(const ObsMatrix& x, const ColumnSums& xplus);

/// All matrices in S_{k,n}^r with column sums x+.
std::vector<ObsMatrix> fiber(unsigned n, unsigned r, const ColumnSums& xplus,
                             std::uint64_t max_matrices = kDefaultMaxMatrices);

/// P[L*(X) >= c | X+ = x+].
Rational phi_c(unsigned n, unsigned r, const ColumnSums& xplus, const Rational& c,
               std::uint64_t max_matrices = kDefaultMaxMatrices);

struct Counterexample222 {
  Rational c;
  std::vector<ColumnSums> xplus;  // (0,4), (1,3), (2,2), (3,1), (4,0)
  std::vector<Rational> phi;
  // (1,3) majorizes (2,2) but phi(2,2) < phi(1,3).
  bool violates_schur_concavity = false;
};

Counterexample222 counterexample_222(const Rational& c);

struct HybridThresholds {
  unsigned k = 0, n = 0, r = 0;
  Rational alpha, beta;
  // nullopt is the +inf sentinel: no realized value has tail <= level.
  std::map<ColumnSums, std::optional<Rational>> c_alpha;
  std::map<ColumnSums, Rational> fiber_tail;  // realized conditional tail
  std::optional<Rational> d_beta;
  Rational alpha_realized;  // max fiber tail
  Rational beta_realized;   // ecp tail of L~ at d_beta
};

HybridThresholds hybrid_thresholds(unsigned k, unsigned n, unsigned r, const Rational& alpha,
                                   const Rational& beta, std::uint64_t max_matrices = kDefaultMaxMatrices);

struct HybridDecision {
  Rational v;
  Rational ltilde;
  std::optional<Rational> c_alpha;
  std::optional<Rational> d_beta;
  bool reject_v = false;
  bool reject_l = false;
  bool reject() const { return reject_v || reject_l; }
};

HybridDecision hybrid_test(const ObsMatrix& x, const HybridThresholds& th);

struct LevelReport {
  std::vector<ProbVector> grid;
  std::vector<Rational> levels;
  Rational max_level;
  Rational realized_bound;  // alpha_realized + beta_realized
  Rational nominal_bound;   // alpha + beta
  bool pass() const { return max_level <= realized_bound && realized_bound <= nominal_bound; }
};

LevelReport bonferroni_level_check(const HybridThresholds& th, const std::vector<ProbVector>& p_grid,
                                   std::uint64_t max_matrices = kDefaultMaxMatrices);

struct Sweep81Report {
  unsigned k = 0, n = 0, r = 0;
  Rational c;
  std::vector<SchurReport> chains;
  bool pass() const;
};

/// P_p[L* >= c] along each chain, checked for Schur-concavity directly.
Sweep81Report conjecture81_sweep(unsigned k, unsigned n, unsigned r, const Rational& c,
                                 const std::vector<std::vector<ProbVector>>& chains,
                                 std::uint64_t max_matrices = kDefaultMaxMatrices);

/// P_ecp[L* >= L*(x0)]. Only a valid p-value if the ecp really maximises this tail.
struct ConjecturalPValue {
  Rational value;
  std::string tag = "CONJECTURAL";
};

ConjecturalPValue pstar_pvalue_conjectural(const ObsMatrix& x0,
                                           std::uint64_t max_matrices = kDefaultMaxMatrices);

}  // namespace puresig
