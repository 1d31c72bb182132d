#include "puresig/verify.hpp"

#include <string>

#include "puresig/glrt.hpp"
#include "puresig/obd.hpp"
#include "puresig/pst.hpp"
#include "puresig/repeated.hpp"

namespace puresig {

namespace {

struct PublishedLadder {
  unsigned n;
  std::vector<std::string> breakpoints;
  std::vector<std::vector<unsigned>> rows;
};

// q columns of the published n = 3, 4, 5 tables, top to bottom.
const std::vector<PublishedLadder>& published_ladders() {
  static const std::vector<PublishedLadder> tables = {
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
  return tables;
}

bool ladder_matches(const PublishedLadder& t) {
  const auto ladder = breakpoint_ladder(t.n);
  if (ladder.breakpoints.size() != t.breakpoints.size()) return false;
  for (std::size_t i = 0; i < t.breakpoints.size(); ++i) {
    if (cmp_algebraic(ladder.breakpoints[i], AlgebraicOdds::parse(t.breakpoints[i])) != 0) return false;
  }
  const auto rows = ladder_rows(ladder);
  if (rows.size() != t.rows.size()) return false;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].profile.q != t.rows[i]) return false;
  }
  return true;
}

}  // namespace

Report verify_all(unsigned nmax) {
  if (nmax < 3) throw Error(ErrorCode::kInvalidArgument, "verify all needs --nmax >= 3");
  Report rep;
  rep.command = "verify all";
  rep.parameters["nmax"] = nmax;
  const Rational half(1, 2);

  bool ok = true;
  for (const auto& t : published_ladders()) ok = ok && ladder_matches(t);
  rep.add_verdict("ladder_tables_n3_n4_n5", ok);

  const auto ce = counterexample_222(Rational(7, 100));
  ok = ce.violates_schur_concavity &&
       ce.phi == std::vector<Rational>{Rational(0), Rational(1), Rational(1, 3), Rational(1), Rational(0)};
  rep.add_verdict("counterexample_222", ok);

  ok = true;
  for (unsigned n = 1; n <= 64; ++n) ok = ok && abs_moment_identity(n).holds();
  rep.add_verdict("abs_moment_identity_n1_64", ok);

  ok = true;
  for (unsigned n = 2; n <= 64; n += 2) ok = ok && krafft_bound_check(n).pass();
  for (unsigned n = 3; n <= 63; n += 2) ok = ok && odd_central_check(n).central_holds;
  rep.add_verdict("krafft_bound_n_le_64", ok);

  ok = true;
  for (unsigned k = 2; k <= 3; ++k) {
    for (unsigned n = 1; n <= nmax; ++n) {
      for (const auto& x : enumerate_simplex(k, n)) ok = ok && dirichlet_mixture_check(k, n, x).equal();
    }
  }
  rep.add_verdict("uniform_as_dirichlet_mixture", ok);

  ok = true;
  for (unsigned k = 2; k <= 3; ++k) {
    for (unsigned n = 1; n <= std::min(nmax, 5u); ++n) ok = ok && check_prop34(k, n).pass;
  }
  rep.add_verdict("vertex_vs_ecp_epv", ok);

  ok = true;
  const std::vector<Rational> ps = {half, Rational(3, 5), Rational(2, 3), Rational(3, 4), Rational(9, 10), Rational(1)};
  for (unsigned n = 1; n <= nmax; ++n) {
    for (const auto& p : ps) {
      const Rational via_pst = Rational(static_cast<long>(n + 1)) * epv_uniform(ProbVector{p, Rational(1) - p}, n);
      ok = ok && epv_sum(n, p) == via_pst;
    }
  }
  rep.add_verdict("binomial_epv_matches_multinomial", ok);

  ok = true;
  for (unsigned n = 1; n <= nmax; ++n) {
    for (unsigned x = 0; x <= n; ++x) {
      ok = ok && lrt_p_value(CellCounts{x, n - x}) == lrt_p_value_binomial(x, n);
    }
  }
  rep.add_verdict("lrt_pvalue_binomial_reduction", ok);

  ok = true;
  for (unsigned n = 1; n <= nmax; ++n) {
    for (const auto& p : ps) {
      const auto r = rank_vector(n, p);
      const auto q = q_profile_at(n, p);
      for (unsigned x = 0; x <= n; ++x) ok = ok && r[x] + q.q[x] == n + 1;
    }
  }
  rep.add_verdict("rank_plus_q_is_n_plus_1", ok);

  // Decomposition cases at p = a/b.
  bool ties_ok = true, distinct_ok = true, one_ok = true;
  for (unsigned n = 1; n <= nmax; ++n) {
    one_ok = one_ok && lemma73_decompose(n, Rational(1)).case_holds;
    for (long b = 3; b <= 20; ++b) {
      for (long a = b / 2 + 1; a < b; ++a) {
        const auto d = lemma73_decompose(n, Rational(a, b));
        if (d.tie_case == TieCase::kTiesInterior) ties_ok = ties_ok && d.case_holds;
        if (d.tie_case == TieCase::kNoTies) distinct_ok = distinct_ok && d.case_holds;
      }
    }
  }
  rep.add_verdict("decomposition_no_ties", distinct_ok);
  rep.add_verdict("decomposition_ties_interior", ties_ok);
  rep.add_verdict("decomposition_p_one", one_ok);

  bool odd_ok = true, even_claim = true, exact_ok = true;
  std::string first_even;
  for (unsigned n = 1; n <= nmax; ++n) {
    const auto d = lemma73_decompose(n, half);
    exact_ok = exact_ok && d.delta == delta_half_exact(n) && d.obd_mean == obd_mean_half_exact(n);
    if (n % 2 == 1) {
      odd_ok = odd_ok && d.case_holds && obd_mean_half_closed_form(n) == d.obd_mean;
    } else if (!d.case_holds || obd_mean_half_closed_form(n) != d.obd_mean) {
      if (even_claim) first_even = "n=" + std::to_string(n) + ": delta " + d.delta.to_string() + ", mean " +
                                   d.obd_mean.to_string() + " vs closed form " +
                                   obd_mean_half_closed_form(n).to_string();
      even_claim = false;
    }
  }
  rep.add_verdict("half_delta_and_mean_odd_n", odd_ok);
  rep.add_verdict("half_delta_and_mean_exact_form", exact_ok);
  rep.add_verdict("published_half_delta_even_n", even_claim, "finding", first_even);

  ok = true;
  for (unsigned k = 1; k <= 3; ++k) {
    for (unsigned n = 1; n <= 3; ++n) {
      for (unsigned r = 1; r <= 3; ++r) {
        for (const auto& x : enumerate_obs(k, n, r)) ok = ok && lstar(x) == v_statistic(x) * ltilde(x.column_sums());
      }
    }
  }
  rep.add_verdict("lstar_factorization", ok);

  ok = true;
  for (const auto& s : enumerate_simplex(3, 4)) {
    Rational total;
    for (const auto& x : fiber(2, 2, s)) total += conditional_pmf(x, s);
    ok = ok && total == Rational(1);
  }
  rep.add_verdict("fiber_conditional_sums_to_one", ok);

  const auto th = hybrid_thresholds(2, 2, 2, Rational(1, 4), Rational(1, 4));
  const auto level = bonferroni_level_check(th, conjecture33_grid(2, 16));
  rep.add_verdict("hybrid_level_bound", level.pass());

  ok = true;
  for (unsigned n = 3; n <= nmax; ++n) ok = ok && prop52_check(n).pass();
  rep.add_verdict("near_half_and_near_one", ok);

  ok = true;
  for (unsigned n = 4; n <= std::max(nmax, 4u); n += 2) ok = ok && q_monotone_even_check(n).strictly_increasing;
  rep.add_verdict("even_first_pair_monotone", ok);

  ok = true;
  bool undecided = false;
  for (unsigned n = 3; n <= nmax; ++n) {
    const auto c = conjecture51_region_check(n, 8);
    ok = ok && c.pass();
    undecided = undecided || c.undecided();
  }
  rep.verdicts.push_back({"binomial_epv_strict_inequality",
                          ok ? Verdict::kPass : (undecided ? Verdict::kUndecided : Verdict::kFail), "conjecture", {}});

  ok = true;
  for (unsigned n = 3; n <= std::min(nmax, 5u); ++n) ok = ok && conjecture33_sweep(3, n, conjecture33_grid(3, 6)).ecp_strict_max;
  rep.add_verdict("ecp_maximizes_epv_k3", ok, "conjecture");

  const auto sweep = conjectures7x_sweep(nmax, obd_grid(nmax, 32));
  rep.add_verdict("obd_mean_above_half", sweep.pass_74, "conjecture");
  rep.add_verdict("obd_mean_increasing", sweep.pass_75, "conjecture");
  rep.add_verdict("obd_stochastically_increasing", sweep.pass_76_cdf, "conjecture");
  rep.add_verdict("obd_majorization_increasing", sweep.pass_76_majorization, "conjecture");

  const auto scan = first_pair_threshold_scan(61);
  std::string disagree;
  for (const auto& row : scan) {
    if (!row.agrees) disagree += (disagree.empty() ? "n=" : ",") + std::to_string(row.n);
  }
  rep.add_verdict("published_first_pair_threshold", disagree.empty(), "finding",
                  disagree.empty() ? "" : "disagrees at " + disagree);

  auto summary = nlohmann::json::object();
  for (const auto& v : rep.verdicts) summary[v.name] = verdict_name(v.verdict);
  rep.results["checks"] = summary;
  rep.results["invariant_failures"] = static_cast<int>(std::count_if(
      rep.verdicts.begin(), rep.verdicts.end(),
      [](const VerdictEntry& v) { return v.kind == "invariant" && v.verdict == Verdict::kFail; }));
  rep.table = {{"check", "kind", "verdict", "detail"}, {}};
  for (const auto& v : rep.verdicts) rep.table.rows.push_back({v.name, v.kind, verdict_name(v.verdict), v.detail});
  return rep;
}

}  // namespace puresig
