#include <gtest/gtest.h>

#include <cmath>

#include "oracle.hpp"
#include "puresig/binomial.hpp"
#include "puresig/pst.hpp"

namespace {

using puresig::AlgebraicOdds;
using puresig::Rational;
using puresig::RankProfile;
using Q = std::vector<unsigned>;

// q(x) = |{y : f(x) <= f(y)}| from oracle masses.
Q q_oracle(unsigned n, const Rational& p) {
  Q q(n + 1, 0);
  for (unsigned x = 0; x <= n; ++x) {
    for (unsigned y = 0; y <= n; ++y) q[x] += oracle::binomial_mass(n, p.raw(), x) <= oracle::binomial_mass(n, p.raw(), y);
  }
  return q;
}

TEST(QProfile, Examples) {
  EXPECT_EQ(puresig::q_profile(3, AlgebraicOdds(Rational(1))).q, (Q{4, 2, 2, 4}));
  EXPECT_EQ(puresig::q_profile(4, AlgebraicOdds(Rational(31, 20))).q, (Q{5, 3, 2, 1, 4}));
  // 8/5 sits just above 4^(1/3), in the next interval
  EXPECT_EQ(puresig::q_profile(4, AlgebraicOdds(Rational(8, 5))).q, (Q{5, 4, 2, 1, 3}));
  EXPECT_EQ(puresig::q_profile(5, AlgebraicOdds(Rational(2), 2)).q, (Q{6, 4, 3, 1, 3, 5}));
  EXPECT_EQ(puresig::q_half(3, 1), 2u);
  EXPECT_EQ(puresig::q_half(4, 2), 1u);
  EXPECT_EQ(puresig::q_half(5, 0), 6u);
  EXPECT_EQ(puresig::q_profile_at(3, Rational(1)).q, (Q{4, 4, 4, 1}));
  EXPECT_EQ(puresig::q_profile_at_infinity(3).q, (Q{4, 3, 2, 1}));
}

TEST(QProfile, HalfClosedFormUpToN64) {
  for (unsigned n = 1; n <= 64; ++n) {
    const auto q = puresig::q_profile(n, AlgebraicOdds(Rational(1))).q;
    for (unsigned x = 0; x <= n; ++x) EXPECT_EQ(q[x], puresig::q_half(n, x));
  }
}

TEST(QProfile, AgreesWithOracleAtRandomRationalP) {
  oracle::Gen g(61);
  for (int trial = 0; trial < 300; ++trial) {
    const unsigned n = g.uniform(1, 14);
    const Rational p = g.open_unit(40);
    const Q want = q_oracle(n, p);
    EXPECT_EQ(puresig::q_profile_at(n, p).q, want);
    EXPECT_EQ(puresig::q_profile(n, AlgebraicOdds(puresig::odds_from_p(p))).q, want);
    // Range invariant and the minimum-mass outcome.
    EXPECT_EQ(*std::max_element(want.begin(), want.end()), n + 1);
    EXPECT_GE(*std::min_element(want.begin(), want.end()), 1u);
  }
}

TEST(QProfile, ReflectionSymmetry) {
  oracle::Gen g(62);
  for (int trial = 0; trial < 200; ++trial) {
    const unsigned n = g.uniform(1, 14);
    const Rational p = g.open_unit(40);
    const Q a = puresig::q_profile_at(n, p).q, b = puresig::q_profile_at(n, Rational(1) - p).q;
    for (unsigned x = 0; x <= n; ++x) EXPECT_EQ(a[x], b[n - x]);
    EXPECT_EQ(puresig::epv_sum(n, p), puresig::epv_sum(n, Rational(1) - p));
  }
}

struct Table {
  unsigned n;
  std::vector<const char*> breakpoints;
  std::vector<Q> rows;
};

const std::vector<Table> kTables = {
    {3, {"3^(1/2)", "3"}, {{4, 2, 2, 4}, {4, 2, 1, 3}, {4, 3, 1, 3}, {4, 3, 1, 2}, {4, 3, 2, 2}, {4, 3, 2, 1}}},
    {4,
     {"3/2", "4^(1/3)", "6^(1/2)", "4"},
     {{5, 3, 1, 3, 5}, {5, 3, 1, 2, 4}, {5, 3, 2, 2, 4}, {5, 3, 2, 1, 4}, {5, 4, 2, 1, 4},
      {5, 4, 2, 1, 3}, {5, 4, 3, 1, 3}, {5, 4, 3, 1, 2}, {5, 4, 3, 2, 2}, {5, 4, 3, 2, 1}}},
    {5,
     {"2^(1/2)", "5^(1/4)", "2", "10^(1/3)", "10^(1/2)", "5"},
     {{6, 4, 2, 2, 4, 6}, {6, 4, 2, 1, 3, 5}, {6, 4, 3, 1, 3, 5}, {6, 4, 3, 1, 2, 5}, {6, 5, 3, 1, 2, 5},
      {6, 5, 3, 1, 2, 4}, {6, 5, 3, 2, 2, 4}, {6, 5, 3, 2, 1, 4}, {6, 5, 4, 2, 1, 4}, {6, 5, 4, 2, 1, 3},
      {6, 5, 4, 3, 1, 3}, {6, 5, 4, 3, 1, 2}, {6, 5, 4, 3, 2, 2}, {6, 5, 4, 3, 2, 1}}},
};

TEST(Ladder, ReproducesPublishedTables) {
  for (const auto& t : kTables) {
    const auto ladder = puresig::breakpoint_ladder(t.n);
    ASSERT_EQ(ladder.breakpoints.size(), t.breakpoints.size()) << "n=" << t.n;
    for (std::size_t i = 0; i < t.breakpoints.size(); ++i) {
      EXPECT_TRUE(cmp_algebraic(ladder.breakpoints[i], AlgebraicOdds::parse(t.breakpoints[i])) == 0) << t.breakpoints[i];
    }
    const auto rows = puresig::ladder_rows(ladder);
    ASSERT_EQ(rows.size(), t.rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      EXPECT_EQ(rows[i].profile.q, t.rows[i]) << "n=" << t.n << " row " << i;
      EXPECT_EQ(rows[i].is_point, i % 2 == 0);
    }
  }
}

TEST(Ladder, RowLabels) {
  const auto rows = puresig::ladder_rows(puresig::breakpoint_ladder(3));
  std::vector<std::string> labels;
  for (const auto& r : rows) labels.push_back(r.t_repr);
  EXPECT_EQ(labels, (std::vector<std::string>{"1", "(1,3^(1/2))", "3^(1/2)", "(3^(1/2),3)", "3", "(3,inf]"}));
  EXPECT_EQ(rows[0].p_repr, "1/2");
  EXPECT_EQ(rows[4].p_repr, "3/4");
}

// Constant profile inside every region; adjacent regions differ; last region
// is (n+1, n, ..., 1).
TEST(Ladder, StructureUpToN20) {
  for (unsigned n = 1; n <= 20; ++n) {
    const auto ladder = puresig::breakpoint_ladder(n);
    const auto& bp = ladder.breakpoints;
    ASSERT_EQ(ladder.interval_profiles.size(), bp.size() + 1);
    ASSERT_EQ(ladder.point_profiles.size(), bp.size() + 1);
    for (std::size_t i = 0; i + 1 < bp.size(); ++i) EXPECT_TRUE(cmp_algebraic(bp[i], bp[i + 1]) < 0);
    for (std::size_t i = 0; i < bp.size(); ++i) EXPECT_TRUE(cmp_algebraic(bp[i], Rational(1)) > 0);
    for (std::size_t i = 0; i <= bp.size(); ++i) {
      const AlgebraicOdds lo = i == 0 ? AlgebraicOdds(Rational(1)) : bp[i - 1];
      const Rational s = ladder.interval_samples[i];
      const Rational a = puresig::rational_between(lo, AlgebraicOdds(s));
      const Rational b = i < bp.size() ? puresig::rational_between(AlgebraicOdds(s), bp[i]) : s * Rational(3);
      EXPECT_EQ(puresig::q_profile(n, AlgebraicOdds(a)), ladder.interval_profiles[i]);
      EXPECT_EQ(puresig::q_profile(n, AlgebraicOdds(b)), ladder.interval_profiles[i]);
      if (i > 0) EXPECT_NE(ladder.interval_profiles[i], ladder.interval_profiles[i - 1]);
    }
    EXPECT_EQ(ladder.interval_profiles.back(), puresig::q_profile_at_infinity(n));
  }
}

// Per-region polynomials of the n = 3 table, "2xp^3" read as 2p^3.
TEST(EpvSum, PublishedPolynomialsForN3) {
  using Poly = std::function<Rational(const Rational&)>;
  const std::vector<std::pair<Q, Poly>> polys = {
      {{4, 2, 2, 4}, [](const Rational& p) { return Rational(4) - 6 * p + 6 * p * p; }},
      {{4, 2, 1, 3}, [](const Rational& p) { return Rational(4) - 6 * p + 3 * p * p + 2 * p * p * p; }},
      {{4, 3, 1, 3}, [](const Rational& p) { return Rational(4) - 3 * p - 3 * p * p + 5 * p * p * p; }},
      {{4, 3, 1, 2}, [](const Rational& p) { return Rational(4) - 3 * p - 3 * p * p + 4 * p * p * p; }},
      {{4, 3, 2, 2}, [](const Rational& p) { return Rational(4) - 3 * p + p * p * p; }},
      {{4, 3, 2, 1}, [](const Rational& p) { return Rational(4) - 3 * p; }},
  };
  for (const auto& [q, poly] : polys) {
    for (long a = 0; a <= 20; ++a) {
      const Rational p(a, 20);
      EXPECT_EQ(puresig::epv_sum_with_profile(RankProfile{3, q}, p), poly(p));
    }
  }
  // Rational sample points inside the open regions.
  EXPECT_EQ(puresig::epv_sum(3, Rational(3, 5)), polys[1].second(Rational(3, 5)));
  EXPECT_EQ(puresig::epv_sum(3, Rational(7, 10)), polys[3].second(Rational(7, 10)));
  EXPECT_EQ(puresig::epv_sum(3, Rational(3, 4)), polys[4].second(Rational(3, 4)));
}

TEST(EpvSum, Examples) {
  EXPECT_EQ(puresig::epv_sum(3, Rational(1, 2)), Rational(5, 2));
  EXPECT_EQ(puresig::epv_sum(3, Rational(1)), Rational(1));
  EXPECT_EQ(puresig::epv_sum(3, Rational(4, 5)), Rational(8, 5));
  EXPECT_EQ(puresig::epv_sum_half(3), Rational(5, 2));
}

TEST(EpvSum, MatchesMultinomialEpvAndOracle) {
  oracle::Gen g(63);
  for (unsigned n = 1; n <= 12; ++n) {
    for (int trial = 0; trial < 8; ++trial) {
      const Rational p = trial == 0 ? Rational(1, 2) : (trial == 1 ? Rational(1) : g.open_unit(24));
      const Rational s = puresig::epv_sum(n, p);
      EXPECT_EQ(s, Rational(static_cast<long>(n + 1)) * puresig::epv_uniform(puresig::ProbVector{p, Rational(1) - p}, n));
      EXPECT_EQ(s.raw(), oracle::epv_double_sum({p.raw(), 1 - p.raw()}, n) * (n + 1));
    }
    EXPECT_EQ(puresig::epv_sum_half(n), puresig::epv_sum(n, Rational(1, 2)));
  }
}

TEST(Conjecture51, HoldsForN3To5) {
  const std::vector<std::size_t> regions = {6, 10, 14};
  for (unsigned n = 3; n <= 5; ++n) {
    const auto rep = puresig::conjecture51_region_check(n, 8);
    EXPECT_TRUE(rep.pass()) << "n=" << n;
    EXPECT_EQ(rep.regions.size() + rep.points.size(), regions[n - 3] - 1);  // t = 1 itself is the left side
    for (const auto& r : rep.regions) {
      EXPECT_GE(r.samples.size(), 8u);
      EXPECT_GT(r.min_margin, Rational(0));
    }
    for (const auto& pt : rep.points) {
      EXPECT_EQ(pt.verdict, puresig::Verdict::kPass);
      EXPECT_LT(pt.rhs_hi, rep.lhs);
      EXPECT_LE(pt.rhs_lo, pt.rhs_hi);
    }
  }
}

TEST(AbsMoment, ExamplesAndRange) {
  auto a = puresig::abs_moment_identity(4);
  EXPECT_EQ(a.lhs, 24);
  EXPECT_EQ(a.rhs, 24);
  a = puresig::abs_moment_identity(3);
  EXPECT_EQ(a.lhs, 12);
  a = puresig::abs_moment_identity(1);
  EXPECT_EQ(a.lhs, 2);
  for (unsigned n = 1; n <= 64; ++n) {
    mpz_class direct = 0;
    for (unsigned x = 0; x <= n; ++x) {
      const long d = std::labs(static_cast<long>(n) - 2 * static_cast<long>(x));
      direct += d * oracle::fact(n) / (oracle::fact(x) * oracle::fact(n - x));
    }
    a = puresig::abs_moment_identity(n);
    EXPECT_EQ(a.lhs, direct);
    EXPECT_TRUE(a.holds()) << n;
  }
}

TEST(Krafft, ExamplesAndRange) {
  auto k = puresig::krafft_bound_check(2);
  EXPECT_EQ(k.bound_lhs, 8);
  EXPECT_EQ(k.bound_rhs, 8);
  EXPECT_TRUE(k.pass());
  k = puresig::krafft_bound_check(4);
  EXPECT_EQ(k.bound_lhs, 144);
  EXPECT_EQ(k.bound_rhs, 128);
  k = puresig::krafft_bound_check(10);
  EXPECT_EQ(k.bound_lhs, 635040);
  EXPECT_EQ(k.bound_rhs, 524288);
  for (unsigned n = 2; n <= 64; n += 2) EXPECT_TRUE(puresig::krafft_bound_check(n).pass()) << n;
  for (unsigned n = 3; n <= 63; n += 2) EXPECT_TRUE(puresig::odd_central_check(n).central_holds) << n;
  try {
    puresig::krafft_bound_check(5);
    FAIL();
  } catch (const puresig::Error& e) {
    EXPECT_EQ(e.code(), puresig::ErrorCode::kNotApplicable);
  }
}

TEST(EpsilonN, Examples) {
  auto e = puresig::epsilon_n(5);
  EXPECT_TRUE(cmp_algebraic(e.a_check, AlgebraicOdds(Rational(2), 2)) == 0);
  EXPECT_NEAR(e.eps, (std::sqrt(2.0) - 1) / (2 * (std::sqrt(2.0) + 1)), 1e-15);
  EXPECT_NEAR(e.eps, 0.08579, 1e-5);
  e = puresig::epsilon_n(3);
  EXPECT_TRUE(cmp_algebraic(e.a_check, AlgebraicOdds(Rational(3), 2)) == 0);
  EXPECT_NEAR(e.eps, 0.13397, 1e-5);
  e = puresig::epsilon_n(4);
  EXPECT_TRUE(cmp_algebraic(e.a_check, Rational(3, 2)) == 0);
  EXPECT_NEAR(e.eps, 0.1, 1e-15);
}

TEST(EpsilonN, MinimumOverCandidatesByFloatOracle) {
  for (unsigned n = 3; n <= 40; ++n) {
    double best = 1e300;
    const unsigned lo = n % 2 ? (n + 3) / 2 : n / 2 + 1;
    for (unsigned x = lo; x <= n; ++x) {
      best = std::min(best, std::pow(static_cast<double>(x) / (n - x + 1), 1.0 / (2.0 * x - n - 1)));
    }
    EXPECT_NEAR(puresig::epsilon_n(n).eps, (best - 1) / (2 * (best + 1)), 1e-12) << n;
  }
}

TEST(Prop52, Examples) {
  auto r = puresig::prop52_check(3);
  EXPECT_EQ(r.near_one_lhs, Rational(3, 2));
  EXPECT_EQ(r.near_one_rhs, Rational(3, 4));
  EXPECT_TRUE(r.pass());
  r = puresig::prop52_check(5);
  EXPECT_EQ(r.near_half_p, Rational(1, 2) + Rational(1, 32));
  EXPECT_EQ(r.near_half_profile.q, (Q{6, 4, 2, 1, 3, 5}));
  EXPECT_TRUE(r.pass());
  r = puresig::prop52_check(4, 6);
  EXPECT_EQ(r.near_half_p, Rational(1, 2) + Rational(1, 64));
  EXPECT_EQ(r.near_half_profile.q, (Q{5, 3, 1, 2, 4}));
  EXPECT_TRUE(r.pass());
  for (unsigned n = 3; n <= 20; ++n) EXPECT_TRUE(puresig::prop52_check(n).pass()) << n;
}

TEST(ThresholdScan, Examples) {
  const auto rows = puresig::first_pair_threshold_scan(61);
  ASSERT_EQ(rows.size(), 30u);
  EXPECT_EQ(rows[0].n, 3u);
  EXPECT_EQ(rows[0].order, 0);
  EXPECT_FALSE(rows[0].holds);
  EXPECT_EQ(rows[1].n, 5u);
  EXPECT_TRUE(rows[1].holds);
  for (const auto& r : rows) {
    EXPECT_EQ(r.published_claim, r.n <= 45);
    EXPECT_EQ(r.agrees, r.holds == r.published_claim);
    if (r.n < 5) continue;
    // Logs differ by well over double resolution for every odd n in range.
    const double lhs = 0.5 * std::log((r.n + 3.0) / (r.n - 1.0));
    const double rhs = std::log(static_cast<double>(r.n)) / (r.n - 1.0);
    ASSERT_GT(std::abs(lhs - rhs), 1e-6);
    EXPECT_EQ(r.holds, lhs < rhs) << r.n;
  }
}

TEST(Lemma61, Examples) {
  std::vector<Rational> sq, pw, lin;
  for (long m = 1; m <= 6; ++m) sq.emplace_back(m * m);
  for (long m = 1; m <= 4; ++m) pw.emplace_back(1l << m);
  for (long m = 1; m <= 6; ++m) lin.emplace_back(m);
  const auto a = puresig::lemma61_check(sq);
  EXPECT_TRUE(a.strictly_increasing);
  EXPECT_EQ(a.first_x, 4u);
  EXPECT_EQ(a.d_values.size(), 3u);
  EXPECT_TRUE(puresig::lemma61_check(pw).strictly_increasing);
  try {
    puresig::lemma61_check(lin);
    FAIL();
  } catch (const puresig::Error& e) {
    EXPECT_EQ(e.code(), puresig::ErrorCode::kConvexityViolation);
  }
}

TEST(QMonotone, Examples) {
  auto r = puresig::q_monotone_even_check(4);
  ASSERT_EQ(r.q_values.size(), 2u);
  EXPECT_TRUE(cmp_algebraic(r.q_values[0], Rational(3, 2)) == 0);
  EXPECT_TRUE(cmp_algebraic(r.q_values[1], AlgebraicOdds(Rational(4), 3)) == 0);
  EXPECT_TRUE(r.strictly_increasing);
  r = puresig::q_monotone_even_check(6);
  ASSERT_EQ(r.q_values.size(), 3u);
  EXPECT_TRUE(cmp_algebraic(r.q_values[0], Rational(4, 3)) == 0);
  EXPECT_TRUE(cmp_algebraic(r.q_values[1], AlgebraicOdds(Rational(5, 2), 3)) == 0);
  EXPECT_TRUE(cmp_algebraic(r.q_values[2], AlgebraicOdds(Rational(6), 5)) == 0);
  EXPECT_TRUE(r.strictly_increasing);
  r = puresig::q_monotone_even_check(10);
  EXPECT_EQ(r.q_values.size(), 5u);
  EXPECT_TRUE(r.strictly_increasing);
}

}  // namespace
