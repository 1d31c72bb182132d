#include <gtest/gtest.h>

#include <set>

#include "oracle.hpp"
#include "puresig/glrt.hpp"
#include "puresig/repeated.hpp"

namespace {

using puresig::CellCounts;
using puresig::ObsMatrix;
using puresig::ProbVector;
using puresig::Rational;

ObsMatrix m(std::initializer_list<CellCounts> rows) { return ObsMatrix(std::vector<CellCounts>(rows)); }

TEST(Enumerate, Sizes) {
  EXPECT_EQ(puresig::enumerate_obs(2, 2, 2).size(), 9u);
  EXPECT_EQ(puresig::enumerate_obs(2, 1, 3).size(), 8u);
  EXPECT_EQ(puresig::enumerate_obs(3, 2, 2).size(), 36u);
  try {
    puresig::enumerate_obs(3, 3, 4, 1000);
    FAIL();
  } catch (const puresig::Error& e) {
    EXPECT_EQ(e.code(), puresig::ErrorCode::kSpaceTooLarge);
  }
}

TEST(Enumerate, RowLexicographicOrder) {
  const auto all = puresig::enumerate_obs(2, 1, 2);
  std::vector<std::string> s;
  for (const auto& x : all) s.push_back(x.to_string());
  EXPECT_EQ(all.front().rows(), (std::vector<CellCounts>{{0, 1}, {0, 1}}));
  EXPECT_EQ(all[1].rows(), (std::vector<CellCounts>{{0, 1}, {1, 0}}));
  EXPECT_EQ(all.back().rows(), (std::vector<CellCounts>{{1, 0}, {1, 0}}));
}

TEST(ObsMatrixType, Validation) {
  EXPECT_THROW(ObsMatrix(std::vector<CellCounts>{}), puresig::Error);
  EXPECT_THROW(m({{1, 1}, {1, 2}}), puresig::Error);
  EXPECT_THROW(m({{1, 1}, {1, 1, 0}}), puresig::Error);
  EXPECT_EQ(m({{0, 2}, {1, 1}}).column_sums(), (CellCounts{1, 3}));
}

TEST(JointPmf, Examples) {
  const ProbVector half{Rational(1, 2), Rational(1, 2)};
  EXPECT_EQ(puresig::joint_pmf(half, m({{1, 1}, {1, 1}})), Rational(1, 4));
  EXPECT_EQ(puresig::joint_pmf_uniform(2, 2, 2), Rational(1, 9));
  for (unsigned k = 1; k <= 3; ++k) {
    for (const auto& x : puresig::enumerate_obs(k, 2, 2)) {
      EXPECT_EQ(puresig::joint_pmf_ecp(x), puresig::joint_pmf(ProbVector::ecp(k), x));
    }
  }
}

TEST(JointPmf, ColumnSumMarginalIsMultinomial) {
  oracle::Gen g(81);
  for (int trial = 0; trial < 12; ++trial) {
    const unsigned k = g.uniform(2, 3), n = g.uniform(1, 3), r = g.uniform(1, 3);
    const ProbVector p = g.simplex_point(k, 9);
    std::map<CellCounts, Rational> marginal;
    Rational total;
    for (const auto& x : puresig::enumerate_obs(k, n, r)) {
      marginal[x.column_sums()] += puresig::joint_pmf(p, x);
      total += puresig::joint_pmf(p, x);
    }
    EXPECT_EQ(total, Rational(1));
    for (const auto& [s, mass] : marginal) EXPECT_EQ(mass, pmf_multinomial(p, s));
  }
}

TEST(Statistics, Examples) {
  EXPECT_EQ(puresig::lstar(m({{0, 2}, {0, 2}})), Rational(1, 64));
  EXPECT_EQ(puresig::lstar(m({{1, 1}, {1, 1}})), Rational(1, 16));
  EXPECT_EQ(puresig::lstar(m({{0, 2}, {2, 0}})), Rational(1, 4));
  EXPECT_EQ(puresig::ltilde({2, 2}), Rational(1, 4));
  EXPECT_EQ(puresig::ltilde({4, 0}), Rational(3, 32));
  EXPECT_EQ(puresig::ltilde({0, 0, 6}), Rational(720, 46656));
  EXPECT_EQ(puresig::v_statistic(m({{1, 1}, {1, 1}})), Rational(1, 4));
  EXPECT_EQ(puresig::v_statistic(m({{0, 2}, {0, 2}})), Rational(1, 6));
}

TEST(Statistics, FactorizationExhaustive) {
  for (unsigned k = 1; k <= 3; ++k) {
    for (unsigned n = 1; n <= 3; ++n) {
      for (unsigned r = 1; r <= 3; ++r) {
        for (const auto& x : puresig::enumerate_obs(k, n, r)) {
          const auto s = x.column_sums();
          EXPECT_EQ(puresig::lstar(x), puresig::v_statistic(x) * puresig::ltilde(s));
          EXPECT_EQ(puresig::ltilde(s), puresig::lrt_statistic(s).value);
          if (r == 1) EXPECT_EQ(puresig::v_statistic(x), Rational(1));
        }
      }
    }
  }
}

TEST(Conditional, Examples) {
  EXPECT_EQ(puresig::conditional_pmf(m({{1, 1}, {1, 1}}), {2, 2}), Rational(2, 3));
  EXPECT_EQ(puresig::conditional_pmf(m({{0, 2}, {2, 0}}), {2, 2}), Rational(1, 6));
  EXPECT_EQ(puresig::conditional_pmf(m({{0, 2}, {0, 2}}), {0, 4}), Rational(1));
  EXPECT_EQ(puresig::conditional_pmf(m({{0, 2}, {0, 2}}), {2, 2}), Rational(0));
}

TEST(Conditional, FibersPartitionAndSumToOne) {
  for (unsigned k = 2; k <= 3; ++k) {
    for (unsigned n = 1; n <= 3; ++n) {
      for (unsigned r = 1; r <= 3; ++r) {
        std::size_t covered = 0;
        for (const auto& s : puresig::enumerate_simplex(k, r * n)) {
          Rational total;
          const auto f = puresig::fiber(n, r, s);
          for (const auto& x : f) {
            EXPECT_EQ(x.column_sums(), s);
            total += puresig::conditional_pmf(x, s);
          }
          EXPECT_EQ(total, Rational(1));
          covered += f.size();
        }
        EXPECT_EQ(covered, puresig::enumerate_obs(k, n, r).size());
      }
    }
  }
}

// P_p[X = x | X+ = s] computed as a ratio of p-dependent masses equals the
// p-free conditional pmf.
TEST(Conditional, IsFreeOfP) {
  oracle::Gen g(82);
  for (int trial = 0; trial < 10; ++trial) {
    const ProbVector p = g.simplex_point(3, 7);
    if (std::any_of(p.probs().begin(), p.probs().end(), [](const Rational& v) { return v.is_zero(); })) continue;
    for (const auto& x : puresig::enumerate_obs(3, 2, 2)) {
      const auto s = x.column_sums();
      EXPECT_EQ(puresig::joint_pmf(p, x) / pmf_multinomial(p, s), puresig::conditional_pmf(x, s));
    }
  }
}

TEST(Phi, Examples) {
  const Rational c(7, 100);
  EXPECT_EQ(puresig::phi_c(2, 2, {2, 2}, c), Rational(1, 3));
  EXPECT_EQ(puresig::phi_c(2, 2, {1, 3}, c), Rational(1));
  EXPECT_EQ(puresig::phi_c(2, 2, {0, 4}, c), Rational(0));
}

TEST(Phi, TotalProbability) {
  oracle::Gen g(83);
  const auto all = puresig::enumerate_obs(2, 2, 2);
  std::set<Rational> values;
  for (const auto& x : all) values.insert(puresig::lstar(x));
  for (int trial = 0; trial < 8; ++trial) {
    const ProbVector p = g.simplex_point(2, 12);
    for (const auto& c : values) {
      Rational direct, via_fibers;
      for (const auto& x : all) {
        if (puresig::lstar(x) >= c) direct += puresig::joint_pmf(p, x);
      }
      for (const auto& s : puresig::enumerate_simplex(2, 4)) via_fibers += pmf_multinomial(p, s) * puresig::phi_c(2, 2, s, c);
      EXPECT_EQ(direct, via_fibers);
    }
  }
}

TEST(Counterexample, Examples) {
  const std::vector<Rational> want{Rational(0), Rational(1), Rational(1, 3), Rational(1), Rational(0)};
  auto ce = puresig::counterexample_222(Rational(7, 100));
  EXPECT_EQ(ce.phi, want);
  EXPECT_TRUE(ce.violates_schur_concavity);
  EXPECT_EQ(ce.xplus.front(), (CellCounts{0, 4}));
  ce = puresig::counterexample_222(Rational(1, 15));
  EXPECT_EQ(ce.phi, want);
  ce = puresig::counterexample_222(Rational(1, 16));
  EXPECT_EQ(ce.phi[2], Rational(1));
  EXPECT_FALSE(ce.violates_schur_concavity);
}

TEST(UniformJoint, IsNotPushedForwardUniform) {
  std::set<std::size_t> sizes;
  for (const auto& s : puresig::enumerate_simplex(2, 4)) sizes.insert(puresig::fiber(2, 2, s).size());
  EXPECT_GT(sizes.size(), 1u);
  EXPECT_EQ(puresig::fiber(2, 2, {0, 4}).size(), 1u);
  EXPECT_EQ(puresig::fiber(2, 2, {2, 2}).size(), 3u);
}

// On the (2,2) fiber V takes 1/4 with mass 2/3 and 1 with mass 1/3, so the
// threshold exists at level 1/3 and becomes the +inf sentinel below it.
TEST(Hybrid, FiberThresholdAndInfiniteSentinel) {
  EXPECT_EQ(puresig::v_statistic(m({{0, 2}, {2, 0}})), Rational(1));
  auto th = puresig::hybrid_thresholds(2, 2, 2, Rational(1, 3), Rational(1, 4));
  ASSERT_TRUE(th.c_alpha.at(CellCounts{2, 2}).has_value());
  EXPECT_EQ(*th.c_alpha.at(CellCounts{2, 2}), Rational(1));
  EXPECT_EQ(th.fiber_tail.at(CellCounts{2, 2}), Rational(1, 3));

  th = puresig::hybrid_thresholds(2, 2, 2, Rational(1, 4), Rational(1, 4));
  EXPECT_FALSE(th.c_alpha.at(CellCounts{2, 2}).has_value());
  EXPECT_EQ(th.fiber_tail.at(CellCounts{2, 2}), Rational(0));
  const auto d = puresig::hybrid_test(m({{0, 2}, {2, 0}}), th);
  EXPECT_FALSE(d.reject_v);
  EXPECT_FALSE(d.c_alpha.has_value());
}

TEST(Hybrid, LevelOneThresholds) {
  const auto th = puresig::hybrid_thresholds(2, 2, 2, Rational(1), Rational(1));
  Rational min_l = Rational(2);
  for (const auto& s : puresig::enumerate_simplex(2, 4)) min_l = std::min(min_l, puresig::ltilde(s));
  ASSERT_TRUE(th.d_beta.has_value());
  EXPECT_EQ(*th.d_beta, min_l);
  EXPECT_EQ(th.beta_realized, Rational(1));
  for (const auto& [s, c] : th.c_alpha) {
    ASSERT_TRUE(c.has_value());
    Rational vmin = Rational(2);
    for (const auto& x : puresig::fiber(2, 2, s)) vmin = std::min(vmin, puresig::v_statistic(x));
    EXPECT_EQ(*c, vmin);
    EXPECT_EQ(th.fiber_tail.at(s), Rational(1));
  }
}

TEST(Hybrid, ThresholdsAreConservative) {
  const auto th = puresig::hybrid_thresholds(3, 2, 2, Rational(1, 5), Rational(1, 10));
  EXPECT_LE(th.alpha_realized, Rational(1, 5));
  EXPECT_LE(th.beta_realized, Rational(1, 10));
  for (const auto& [s, tail] : th.fiber_tail) EXPECT_LE(tail, Rational(1, 5));
}

TEST(Hybrid, DecisionsAndDimensionMismatch) {
  const auto th = puresig::hybrid_thresholds(2, 2, 2, Rational(1, 4), Rational(1, 2));
  ASSERT_TRUE(th.d_beta.has_value());
  EXPECT_EQ(*th.d_beta, Rational(1, 4));
  EXPECT_EQ(th.beta_realized, Rational(3, 8));
  const auto top = m({{1, 1}, {1, 1}});
  const auto d = puresig::hybrid_test(top, th);
  EXPECT_EQ(d.ltilde, Rational(1, 4));
  EXPECT_TRUE(d.reject_l);
  EXPECT_TRUE(d.reject());
  const auto low = puresig::hybrid_test(m({{0, 2}, {0, 2}}), th);
  EXPECT_FALSE(low.reject());
  try {
    puresig::hybrid_test(m({{1, 1, 0}, {1, 1, 0}}), th);
    FAIL();
  } catch (const puresig::Error& e) {
    EXPECT_EQ(e.code(), puresig::ErrorCode::kDimensionMismatch);
  }
}

TEST(Level, Examples) {
  auto th = puresig::hybrid_thresholds(2, 2, 2, Rational(1, 4), Rational(1, 4));
  std::vector<ProbVector> grid;
  for (long i = 0; i <= 8; ++i) grid.push_back(ProbVector{Rational(i, 8), Rational(8 - i, 8)});
  auto rep = puresig::bonferroni_level_check(th, grid);
  EXPECT_TRUE(rep.pass());
  EXPECT_LE(rep.max_level, Rational(1, 2));

  th = puresig::hybrid_thresholds(2, 2, 2, Rational(0), Rational(0));
  rep = puresig::bonferroni_level_check(th, grid);
  EXPECT_EQ(rep.max_level, Rational(0));

  th = puresig::hybrid_thresholds(2, 3, 1, Rational(1, 5), Rational(1, 5));
  EXPECT_TRUE(puresig::bonferroni_level_check(th, grid).pass());
}

TEST(Sweep81, Examples) {
  const std::vector<std::vector<ProbVector>> chains = {
      {ProbVector::ecp(2), ProbVector{Rational(3, 4), Rational(1, 4)}, ProbVector{Rational(1), Rational(0)}}};
  auto rep = puresig::conjecture81_sweep(2, 2, 2, Rational(7, 100), chains);
  EXPECT_TRUE(rep.pass());
  ASSERT_EQ(rep.chains[0].values.size(), 3u);
  // The two swaps ((0,2),(2,0)) and the four matrices over (1,3) or (3,1) reach 7/100.
  EXPECT_EQ(rep.chains[0].values[0], Rational(5, 8));
  EXPECT_EQ(rep.chains[0].values[2], Rational(0));
  rep = puresig::conjecture81_sweep(2, 2, 2, Rational(0), chains);
  for (const auto& v : rep.chains[0].values) EXPECT_EQ(v, Rational(1));
  rep = puresig::conjecture81_sweep(2, 2, 2, Rational(2), chains);
  for (const auto& v : rep.chains[0].values) EXPECT_EQ(v, Rational(0));
}

TEST(PStar, Examples) {
  auto v = puresig::pstar_pvalue_conjectural(m({{1, 1}, {1, 1}}));
  EXPECT_EQ(v.tag, "CONJECTURAL");
  EXPECT_EQ(v.value, Rational(7, 8));
  EXPECT_EQ(puresig::pstar_pvalue_conjectural(m({{0, 2}, {0, 2}})).value, Rational(1));
  EXPECT_EQ(puresig::pstar_pvalue_conjectural(m({{0, 2}, {2, 0}})).value, Rational(1, 8));
}

}  // namespace
