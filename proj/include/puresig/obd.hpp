#pragma once

// Ordered binomial distribution: the Binomial(n,p) masses sorted ascending,
// the strict-less rank r_p, the decomposition of sum r_p f_p against the
// OBD mean, and sweeps over p in [1/2, 1].

#include <optional>
#include <string>
#include <vector>

#include "puresig/exactnum.hpp"

namespace puresig {

struct OrderedBinomial {
  unsigned n = 0;
  Rational p;
  std::vector<Rational> sorted_masses;  // ascending
};

OrderedBinomial obd(unsigned n, const Rational& p);

/// r_p(x) = |{y : f_p(y) < f_p(x)}|. Tied masses share the lower rank.
unsigned rank_r(unsigned n, const Rational& p, unsigned x);
std::vector<unsigned> rank_vector(unsigned n, const Rational& p);

Rational obd_mean(unsigned n, const Rational& p);

enum class TieCase {
  kNoTies,        // delta = 0
  kHalf,          // p = 1/2
  kTiesInterior,  // ties with 1/2 < max(p,1-p) < 1; 0 < delta < 1/2
  kEndpoint,      // p in {0, 1}; delta = 0
};
std::string tie_case_name(TieCase c);

struct TieDecomposition {
  Rational sum_r_f;
  Rational obd_mean;
  Rational delta;  // obd_mean - sum_r_f
  unsigned tie_pair_count = 0;
  TieCase tie_case = TieCase::kNoTies;
  bool reflected = false;  // p < 1/2, classified through 1 - p
  // Whether delta meets the value the case prescribes (1/2 at p = 1/2).
  bool case_holds = false;
};

TieDecomposition lemma73_decompose(unsigned n, const Rational& p);

/// E(X~_{1/2}) as n[1 - C(n,n/2)/2^n] + 1/2 (even n) or
/// n[1 - C(n-1,(n-1)/2)/2^(n-1)] + 1/2 (odd n).
Rational obd_mean_half_closed_form(unsigned n);
/// Exact E(X~_{1/2}). Agrees with the form above for odd n. For even n the
/// unpaired central mass means delta_{n,1/2} = (1 - C(n,n/2)/2^n)/2, so the
/// mean is (n + 1/2)(1 - C(n,n/2)/2^n).
Rational obd_mean_half_exact(unsigned n);
/// delta at p = 1/2 from the tie structure alone.
Rational delta_half_exact(unsigned n);

/// One mode, or two when (n+1)p is an integer in [1, n].
std::vector<unsigned> binomial_mode(unsigned n, const Rational& p);

struct Sweep7xPoint {
  Rational p;
  std::vector<Rational> sorted_masses;
  Rational mean;
  TieDecomposition decomposition;
  Rational margin_plain;    // E(X~_p) - E(X~_{1/2}) + 1/2
  Rational margin_lambda;   // E(X~_p) - E(X~_{1/2}) + Lambda, Lambda = 1/2 - delta_{n,p} under ties
  Rational margin_rank;     // sum r_p f_p - sum r_{1/2} f_{1/2}
};

struct Sweep7xViolation {
  std::string check;  // "7.4", "7.5", "7.6-cdf", "7.6-majorization", "ineq72", "ineq72-lambda", "7.2"
  Rational p;
  std::optional<Rational> p_prev;
  std::string detail;  // e.g. the first CDF coordinate that goes the wrong way
};

struct Sweep7xReport {
  unsigned n = 0;
  Rational mean_half;
  std::vector<Sweep7xPoint> points;
  std::vector<Sweep7xViolation> violations;
  bool pass_74 = true;
  bool pass_75 = true;
  bool pass_76_cdf = true;
  bool pass_76_majorization = true;
  bool pass_ineq72 = true;
  bool pass_ineq72_lambda = true;
  bool pass_72 = true;
  bool pass() const {
    return pass_74 && pass_75 && pass_76_cdf && pass_76_majorization && pass_72;
  }
};

/// True iff X~ under `upper` strictly stochastically dominates X~ under
/// `lower`: every CDF coordinate <= with one strict.
bool obd_strictly_dominates(const std::vector<Rational>& upper, const std::vector<Rational>& lower);
/// First x where P[X~_upper <= x] > P[X~_lower <= x], if any.
std::optional<unsigned> first_cdf_violation(const std::vector<Rational>& upper, const std::vector<Rational>& lower);

/// grid must be strictly ascending, within [1/2, 1], and contain 1/2 and 1.
/// Dominance and monotonicity are checked between consecutive grid points.
Sweep7xReport conjectures7x_sweep(unsigned n, const std::vector<Rational>& grid);

/// {1/2 + j/(2m) : j = 0..m} together with rationals just inside each side
/// of every ladder breakpoint (and the breakpoint itself when rational).
std::vector<Rational> obd_grid(unsigned n, unsigned denominator);

}  // namespace puresig
