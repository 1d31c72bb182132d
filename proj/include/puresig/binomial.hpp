#pragma once

// Binomial case of the uniform-alternative PST: tie-aware tail-rank profiles
// q_p, the exact ladder of odds at which two binomial masses tie, and the
// checks built on them (the strict EPV inequality for p > 1/2, the
// near-1/2 and near-1 sub-ranges, and supporting identities).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "puresig/exactnum.hpp"

namespace puresig {

/// q(x) = |{y : f_p(x) <= f_p(y)}|, x = 0..n.
struct RankProfile {
  unsigned n = 0;
  std::vector<unsigned> q;

  friend bool operator==(const RankProfile&, const RankProfile&) = default;
  std::string to_string() const;
};

Rational binomial_pmf(unsigned n, const Rational& p, unsigned x);
std::vector<Rational> binomial_pmf_vector(unsigned n, const Rational& p);

/// Profile at odds t > 0, every comparison exact.
RankProfile q_profile(unsigned n, const AlgebraicOdds& t);
/// Profile at p in [0,1] from exact masses. At p = 0 or 1 the zero masses
/// tie with each other.
RankProfile q_profile_at(unsigned n, const Rational& p);
/// Limit profile as t -> infinity: (n+1, n, ..., 1).
RankProfile q_profile_at_infinity(unsigned n);

/// q_{1/2}(x) = 1 + |n - 2x|.
unsigned q_half(unsigned n, unsigned x);

struct BreakpointLadder {
  unsigned n = 0;
  std::vector<AlgebraicOdds> breakpoints;      // strictly increasing, all > 1
  std::vector<RankProfile> interval_profiles;  // breakpoints.size() + 1
  std::vector<Rational> interval_samples;      // rational odds inside each interval
  std::vector<RankProfile> point_profiles;     // t = 1, then each breakpoint
};

BreakpointLadder breakpoint_ladder(unsigned n);

/// One displayed row of a ladder: the point t = 1, then alternating open
/// intervals and breakpoints, ending with (last, inf].
struct LadderRow {
  bool is_point = false;
  std::string t_repr;
  std::string p_repr;
  RankProfile profile;
};

std::vector<LadderRow> ladder_rows(const BreakpointLadder& ladder);

/// sum_x q_p(x) f_p(x).
Rational epv_sum(unsigned n, const Rational& p);
/// Same sum with a fixed profile.
Rational epv_sum_with_profile(const RankProfile& profile, const Rational& p);
/// sum_x q_{1/2}(x) f_{1/2}(x) = 1 + sum_x |n-2x| f_{1/2}(x).
Rational epv_sum_half(unsigned n);

enum class Verdict { kPass, kFail, kUndecided };
std::string verdict_name(Verdict v);

struct RegionCheck {
  std::string label;
  RankProfile profile;
  std::vector<Rational> samples;  // p values
  std::vector<Rational> rhs;      // epv_sum at each sample
  Rational min_margin;            // lhs - max rhs
  std::vector<Rational> violations;
  std::vector<Rational> profile_mismatches;
  bool pass() const { return violations.empty() && profile_mismatches.empty(); }
};

struct PointCheck {
  AlgebraicOdds t;
  RankProfile profile;
  Verdict verdict = Verdict::kUndecided;
  Rational rhs_lo;  // enclosure of the EPV sum at the breakpoint
  Rational rhs_hi;
  unsigned refinements = 0;
};

struct Conjecture51Report {
  unsigned n = 0;
  Rational lhs;
  std::vector<RegionCheck> regions;
  std::vector<PointCheck> points;
  bool pass() const;
  bool undecided() const;
};

/// Checks sum q_{1/2} f_{1/2} > sum q_p f_p on every ladder region (at
/// equally spaced rational p strictly inside) and at every breakpoint (by
/// rational interval enclosure, refined up to max_refinements bisections).
Conjecture51Report conjecture51_region_check(unsigned n, unsigned samples_per_region,
                                             unsigned max_refinements = 256);

struct AbsMomentIdentity {
  BigInt lhs;
  BigInt rhs;
  bool holds() const { return lhs == rhs; }
};

/// sum_x |n-2x| C(n,x) against n C(n,n/2) (even) or 2n C(n-1,(n-1)/2) (odd).
AbsMomentIdentity abs_moment_identity(unsigned n);

struct KrafftCheck {
  unsigned n = 0;
  BigInt central;     // C(n, n/2)
  BigInt bound_lhs;   // n C(n,n/2)^2
  BigInt bound_rhs;   // 2^(2n-1)
  bool bound_holds = false;       // C(n,n/2) >= 2^(n-1) sqrt(2/n)
  bool consequent_holds = false;  // 2^(n-1) sqrt(2/n) > 2^n/(n+1)
  bool central_holds = false;     // C(n,n/2) > 2^n/(n+1)
  bool pass() const { return bound_holds && consequent_holds && central_holds; }
};

/// Even n only; odd n raises kNotApplicable (see odd_central_check).
KrafftCheck krafft_bound_check(unsigned n);
/// Odd n >= 3: C(n-1,(n-1)/2) > 2^(n-1)/(n+1), via the bound at n-1.
KrafftCheck odd_central_check(unsigned n);

struct EpsilonN {
  unsigned n = 0;
  AlgebraicOdds a_check;
  unsigned argmin = 0;
  double eps = 0.0;
};

/// a_n(x) = (x/(n-x+1))^(1/(2x-n-1)) minimised exactly over x = (n+3)/2..n
/// (odd n) or n/2+1..n (even n); eps = (a-1)/(2(a+1)).
EpsilonN epsilon_n(unsigned n);

struct Prop52Report {
  unsigned n = 0;
  // near p = 1, checked at the worst point p = n/(n+1)
  Rational near_one_lhs;
  Rational near_one_rhs;
  bool near_one_pass = false;
  // near p = 1/2
  Rational near_half_p;
  RankProfile near_half_profile;
  RankProfile expected_profile;
  Rational near_half_rhs;
  Rational lhs;
  bool near_half_pattern = false;
  bool near_half_strict = false;
  bool pass() const { return near_one_pass && near_half_pattern && near_half_strict; }
};

/// `first_offset_exponent` j starts the search at p = 1/2 + 2^-j; j grows
/// until t(p) < a_check and the strict inequality holds (up to j = 64).
Prop52Report prop52_check(unsigned n, unsigned first_offset_exponent = 5);

struct ThresholdRow {
  unsigned n = 0;
  AlgebraicOdds inner;  // ((n+3)/(n-1))^(1/2)
  AlgebraicOdds outer;  // n^(1/(n-1))
  int order = 0;        // sign of inner - outer
  bool holds = false;   // inner < outer
  bool published_claim = false;
  bool agrees = false;
};

std::vector<ThresholdRow> first_pair_threshold_scan(unsigned n_max);

struct Lemma61Report {
  std::vector<Rational> d_values;  // D_x
  unsigned first_x = 0;
  bool strictly_increasing = false;
};

/// d holds d_1..d_n (n >= 4), which must be strictly convex.
Lemma61Report lemma61_check(const std::vector<Rational>& d);

struct QMonotoneReport {
  unsigned n = 0;
  std::vector<AlgebraicOdds> q_values;  // Q(n/2+1), ..., Q(n)
  bool strictly_increasing = false;
};

QMonotoneReport q_monotone_even_check(unsigned n);

}  // namespace puresig
