#include "puresig/cli.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "puresig/glrt.hpp"
#include "puresig/obd.hpp"
#include "puresig/pst.hpp"
#include "puresig/repeated.hpp"
#include "puresig/report.hpp"
#include "puresig/verify.hpp"

namespace puresig {

namespace {

using nlohmann::json;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) parts.push_back(cur);
  return parts;
}

std::vector<Rational> parse_rationals(const std::string& s) {
  std::vector<Rational> v;
  for (const auto& part : split(s, ',')) v.push_back(Rational::parse(part));
  return v;
}

CellCounts parse_counts(const std::string& s) {
  std::vector<unsigned> c;
  for (const auto& r : parse_rationals(s)) {
    if (!r.is_integer() || r.sign() < 0 || !r.num().fits_uint_p())
      throw Error(ErrorCode::kParse, "counts must be nonnegative integers: " + s);
    c.push_back(static_cast<unsigned>(r.num().get_ui()));
  }
  return CellCounts(std::move(c));
}

ObsMatrix load_matrix(const std::string& path, const std::string& rows) {
  std::vector<CellCounts> out;
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot open " + path);
    json j;
    try {
      in >> j;
      for (const auto& row : j.at("rows")) out.emplace_back(row.get<std::vector<unsigned>>());
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kParse, path + ": " + e.what());
    }
  } else if (!rows.empty()) {
    for (const auto& row : split(rows, ';')) out.push_back(parse_counts(row));
  } else {
    throw Error(ErrorCode::kInvalidArgument, "give the matrix with --data FILE or --rows \"a,b;c,d\"");
  }
  return ObsMatrix(std::move(out));
}

json to_json(const ExtendedReal& e) { return e.infinite ? json("inf") : json(e.value); }
json to_json(const ProbVector& p) { return puresig::to_json(p.probs()); }
json to_json(const std::optional<Rational>& r) { return r ? json(r->to_string()) : json("inf"); }

json to_json(const SchurReport& s) {
  json j;
  auto chain = json::array();
  for (const auto& p : s.chain) chain.push_back(to_json(p));
  j["chain"] = chain;
  j["values"] = to_json(s.values);
  j["pass"] = s.pass();
  if (s.violation) {
    j["violation"] = {{"index", s.violation->index},
                      {"from", to_json(s.violation->from)},
                      {"to", to_json(s.violation->to)},
                      {"value_from", to_json(s.violation->value_from)},
                      {"value_to", to_json(s.violation->value_to)}};
  }
  return j;
}

json to_json(const TieDecomposition& d) {
  return {{"sum_r_f", to_json(d.sum_r_f)},       {"obd_mean", to_json(d.obd_mean)},
          {"delta", to_json(d.delta)},           {"tie_pair_count", d.tie_pair_count},
          {"case", tie_case_name(d.tie_case)},   {"reflected", d.reflected},
          {"case_holds", d.case_holds}};
}

std::vector<std::vector<ProbVector>> random_chains(unsigned k, unsigned count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<ProbVector>> chains;
  for (unsigned i = 0; i < count; ++i) chains.push_back(random_majorization_chain(k, rng));
  return chains;
}

struct Options {
  std::string format = "json";
  std::uint64_t max_outcomes = 0;  // 0: module default
  std::string p, x, rows, data, grid_p;
  std::string alpha = "1/4", beta = "1/4", c;
  unsigned k = 0, n = 0, r = 0, nmax = 8, n_max = 61, samples = 8, refinements = 256;
  unsigned grid_denominator = 0, precision_bits = kDefaultLogPrecisionBits, chains = 10;
  std::uint64_t seed = 1;
};

std::uint64_t cap(const Options& o, std::uint64_t fallback) { return o.max_outcomes ? o.max_outcomes : fallback; }

Report cmd_pst_pvalue(const Options& o) {
  const ProbVector p(parse_rationals(o.p));
  const CellCounts x = parse_counts(o.x);
  const auto res = pst_p_value(p, x, cap(o, kDefaultMaxOutcomes));
  Report r;
  r.command = "pst pvalue";
  r.parameters = {{"p", to_json(p)}, {"x", x.to_string()}};
  r.results = {{"p_value", to_json(res.p_value)},
               {"rejection_rank_mass", to_json(res.rejection_rank_mass)},
               {"tie_mass", to_json(res.tie_mass)}};
  return r;
}

Report cmd_pst_epv(const Options& o) {
  const ProbVector p(parse_rationals(o.p));
  const auto c = cap(o, kDefaultMaxOutcomes);
  Report r;
  r.command = "pst epv";
  r.parameters = {{"p", to_json(p)}, {"n", o.n}};
  r.results = {{"epv", to_json(epv_uniform(p, o.n, c))},
               {"epv_sum", to_json(epv_uniform_sum(p, o.n, c))},
               {"kld_gap", to_json(kld_gap(p, o.n, o.precision_bits))},
               {"kld", to_json(kld_uniform_to(p, o.n, c, o.precision_bits))},
               {"null_epv", to_json(null_epv_diagnostic(p, o.n, c))}};
  return r;
}

Report cmd_pst_kld(const Options& o) {
  const ProbVector p(parse_rationals(o.p));
  Report r;
  r.command = "pst kld";
  r.parameters = {{"p", to_json(p)}, {"n", o.n}, {"precision_bits", o.precision_bits}};
  r.results = {{"kld", to_json(kld_uniform_to(p, o.n, cap(o, kDefaultMaxOutcomes), o.precision_bits))},
               {"kld_gap", to_json(kld_gap(p, o.n, o.precision_bits))}};
  return r;
}

Report cmd_pst_sweep33(const Options& o) {
  const unsigned m = o.grid_denominator ? o.grid_denominator : 4;
  const auto rep = conjecture33_sweep(o.k, o.n, conjecture33_grid(o.k, m), cap(o, kDefaultMaxOutcomes));
  Report r;
  r.command = "pst sweep33";
  r.parameters = {{"k", o.k}, {"n", o.n}, {"grid_denominator", m}};
  auto pts = json::array();
  r.table = {{"p", "epv"}, {}};
  for (const auto& pt : rep.points) {
    pts.push_back({{"p", to_json(pt.p)}, {"epv", to_json(pt.epv)}});
    r.table.rows.push_back({pt.p.to_string(), pt.epv.to_string()});
  }
  r.results = {{"points", pts},
               {"argmax", to_json(rep.argmax)},
               {"ecp_epv", to_json(rep.ecp_epv)},
               {"ecp_strict_max", rep.ecp_strict_max}};
  if (rep.margin) r.results["margin"] = to_json(*rep.margin);
  if (rep.runner_up) r.results["runner_up"] = to_json(*rep.runner_up);
  r.add_verdict("ecp_strict_max", rep.ecp_strict_max, "conjecture");
  return r;
}

Report cmd_glrt(const Options& o, bool with_pvalue) {
  const CellCounts x = parse_counts(o.x);
  if ((o.k && o.k != x.k()) || (o.n && o.n != x.n()))
    throw Error(ErrorCode::kDimensionMismatch, "--k/--n disagree with --x");
  Report r;
  r.command = with_pvalue ? "glrt pvalue" : "glrt stat";
  r.parameters = {{"x", x.to_string()}, {"k", x.k()}, {"n", x.n()}};
  r.results["L"] = to_json(lrt_statistic(x).value);
  if (with_pvalue) {
    const Rational pv = lrt_p_value(x, cap(o, kDefaultMaxOutcomes));
    r.results["p_value"] = to_json(pv);
    if (x.k() == 2) {
      const Rational pb = lrt_p_value_binomial(x[0], x.n());
      r.results["p_value_binomial"] = to_json(pb);
      r.add_verdict("binomial_reduction", pb == pv);
    }
  }
  return r;
}

Report cmd_ladder(const Options& o) {
  const auto ladder = breakpoint_ladder(o.n);
  Report r;
  r.command = "binomial ladder";
  r.parameters = {{"n", o.n}};
  auto bps = json::array();
  for (const auto& t : ladder.breakpoints) bps.push_back(to_json(t));
  auto rows = json::array();
  r.table.header = {"t_repr", "p_repr"};
  for (unsigned x = 0; x <= o.n; ++x) r.table.header.push_back("q_" + std::to_string(x));
  for (const auto& row : ladder_rows(ladder)) {
    rows.push_back({{"t", row.t_repr}, {"p", row.p_repr}, {"point", row.is_point}, {"q", row.profile.q}});
    std::vector<std::string> cells = {row.t_repr, row.p_repr};
    for (unsigned q : row.profile.q) cells.push_back(std::to_string(q));
    r.table.rows.push_back(std::move(cells));
  }
  r.results = {{"breakpoints", bps}, {"rows", rows}};
  return r;
}

Report cmd_conjecture51(const Options& o) {
  const auto rep = conjecture51_region_check(o.n, o.samples, o.refinements);
  Report r;
  r.command = "binomial conjecture51";
  r.parameters = {{"n", o.n}, {"samples", o.samples}, {"max_refinements", o.refinements}};
  auto regions = json::array();
  r.table = {{"region", "profile", "min_margin", "violations"}, {}};
  for (const auto& g : rep.regions) {
    regions.push_back({{"label", g.label},
                       {"q", g.profile.q},
                       {"samples", to_json(g.samples)},
                       {"min_margin", to_json(g.min_margin)},
                       {"violations", to_json(g.violations)},
                       {"profile_mismatches", to_json(g.profile_mismatches)}});
    r.table.rows.push_back({g.label, g.profile.to_string(), g.min_margin.to_string(),
                            std::to_string(g.violations.size())});
  }
  auto points = json::array();
  for (const auto& pt : rep.points) {
    points.push_back({{"t", to_json(pt.t)},
                      {"q", pt.profile.q},
                      {"verdict", verdict_name(pt.verdict)},
                      {"rhs_lo", to_json(pt.rhs_lo)},
                      {"rhs_hi", to_json(pt.rhs_hi)},
                      {"refinements", pt.refinements}});
    r.table.rows.push_back({pt.t.pretty(), pt.profile.to_string(), "[" + pt.rhs_lo.to_string() + ", " +
                            pt.rhs_hi.to_string() + "]", verdict_name(pt.verdict)});
  }
  r.results = {{"lhs", to_json(rep.lhs)}, {"regions", regions}, {"points", points}};
  r.verdicts.push_back({"strict_inequality",
                        rep.pass() ? Verdict::kPass : (rep.undecided() ? Verdict::kUndecided : Verdict::kFail),
                        "conjecture", {}});
  return r;
}

Report cmd_identities(const Options& o) {
  const unsigned n = o.n;
  Report r;
  r.command = "binomial identities";
  r.parameters = {{"n", n}};
  const auto id = abs_moment_identity(n);
  r.results["abs_moment"] = {{"lhs", id.lhs.get_str()}, {"rhs", id.rhs.get_str()}, {"holds", id.holds()}};
  r.add_verdict("abs_moment_identity", id.holds());
  if (n % 2 == 0 && n >= 2) {
    const auto kc = krafft_bound_check(n);
    r.results["krafft"] = {{"central", kc.central.get_str()},
                           {"bound_lhs", kc.bound_lhs.get_str()},
                           {"bound_rhs", kc.bound_rhs.get_str()},
                           {"bound_holds", kc.bound_holds},
                           {"central_holds", kc.central_holds}};
    r.add_verdict("krafft_bound", kc.pass());
  } else if (n >= 3) {
    const auto kc = odd_central_check(n);
    r.results["odd_central"] = {{"central", kc.central.get_str()}, {"central_holds", kc.central_holds}};
    r.add_verdict("odd_central", kc.central_holds);
  }
  if (n >= 3) {
    const auto e = epsilon_n(n);
    r.results["epsilon_n"] = {{"a", to_json(e.a_check)}, {"argmin", e.argmin}, {"eps", e.eps}};
    const auto p52 = prop52_check(n);
    r.results["near_one"] = {{"lhs", to_json(p52.near_one_lhs)}, {"rhs", to_json(p52.near_one_rhs)}};
    r.results["near_half"] = {{"p", to_json(p52.near_half_p)},
                              {"q", p52.near_half_profile.q},
                              {"expected_q", p52.expected_profile.q},
                              {"lhs", to_json(p52.lhs)},
                              {"rhs", to_json(p52.near_half_rhs)}};
    r.add_verdict("near_one", p52.near_one_pass);
    r.add_verdict("near_half", p52.near_half_pattern && p52.near_half_strict);
  }
  if (n % 2 == 0 && n >= 4) {
    const auto qm = q_monotone_even_check(n);
    auto qs = json::array();
    for (const auto& q : qm.q_values) qs.push_back(to_json(q));
    r.results["first_pair_q"] = qs;
    r.add_verdict("first_pair_q_increasing", qm.strictly_increasing);
  }
  r.results["epv_half"] = to_json(epv_sum_half(n));
  return r;
}

Report cmd_threshold_scan(const Options& o) {
  const auto rows = first_pair_threshold_scan(o.n_max);
  Report r;
  r.command = "binomial threshold-scan";
  r.parameters = {{"n_max", o.n_max}};
  auto arr = json::array();
  r.table = {{"n", "inner", "outer", "order", "holds", "published_claim", "agrees"}, {}};
  std::string disagree;
  for (const auto& row : rows) {
    const char* ord = row.order < 0 ? "LT" : (row.order > 0 ? "GT" : "EQ");
    arr.push_back({{"n", row.n},
                   {"inner", to_json(row.inner)},
                   {"outer", to_json(row.outer)},
                   {"order", ord},
                   {"holds", row.holds},
                   {"published_claim", row.published_claim},
                   {"agrees", row.agrees}});
    r.table.rows.push_back({std::to_string(row.n), row.inner.pretty(), row.outer.pretty(), ord,
                            row.holds ? "true" : "false", row.published_claim ? "true" : "false",
                            row.agrees ? "agree" : "DISAGREE"});
    if (!row.agrees) disagree += (disagree.empty() ? "" : ",") + std::to_string(row.n);
  }
  r.results = {{"rows", arr}};
  r.add_verdict("exact_verdicts", true);
  r.add_verdict("published_claim", disagree.empty(), "finding",
                disagree.empty() ? "" : "disagrees at n=" + disagree);
  return r;
}

Report cmd_obd_show(const Options& o, bool decompose_only) {
  const Rational p = Rational::parse(o.p);
  Report r;
  r.command = decompose_only ? "obd decompose" : "obd show";
  r.parameters = {{"n", o.n}, {"p", to_json(p)}};
  const auto d = lemma73_decompose(o.n, p);
  r.results["decomposition"] = to_json(d);
  if (!decompose_only) {
    r.results["sorted_masses"] = to_json(obd(o.n, p).sorted_masses);
    r.results["mean"] = to_json(d.obd_mean);
    r.results["ranks"] = rank_vector(o.n, p);
    r.results["modes"] = binomial_mode(o.n, p);
  }
  if (p == Rational(1, 2) && o.n >= 1) {
    r.results["closed_form_mean"] = to_json(obd_mean_half_closed_form(o.n));
    r.results["exact_form_mean"] = to_json(obd_mean_half_exact(o.n));
    r.add_verdict("published_half_decomposition", d.case_holds && obd_mean_half_closed_form(o.n) == d.obd_mean,
                  "finding");
  } else {
    r.add_verdict("decomposition_case", d.case_holds);
  }
  return r;
}

Report cmd_obd_sweep(const Options& o) {
  const unsigned m = o.grid_denominator ? o.grid_denominator : 64;
  std::vector<Rational> grid;
  if (!o.grid_p.empty()) {
    grid = parse_rationals(o.grid_p);
  } else {
    grid = obd_grid(o.n, m);
  }
  const auto rep = conjectures7x_sweep(o.n, grid);
  Report r;
  r.command = "obd sweep7x";
  r.parameters = {{"n", o.n}, {"grid_denominator", m}, {"grid_points", grid.size()}};
  auto pts = json::array();
  r.table = {{"p", "mean", "delta", "margin_plain", "margin_lambda", "margin_rank"}, {}};
  for (const auto& pt : rep.points) {
    pts.push_back({{"p", to_json(pt.p)},
                   {"sorted_masses", to_json(pt.sorted_masses)},
                   {"mean", to_json(pt.mean)},
                   {"decomposition", to_json(pt.decomposition)},
                   {"margin_plain", to_json(pt.margin_plain)},
                   {"margin_lambda", to_json(pt.margin_lambda)},
                   {"margin_rank", to_json(pt.margin_rank)}});
    r.table.rows.push_back({pt.p.to_string(), pt.mean.to_string(), pt.decomposition.delta.to_string(),
                            pt.margin_plain.to_string(), pt.margin_lambda.to_string(), pt.margin_rank.to_string()});
  }
  auto viol = json::array();
  for (const auto& v : rep.violations) {
    json e{{"check", v.check}, {"p", to_json(v.p)}};
    if (v.p_prev) e["p_prev"] = to_json(*v.p_prev);
    if (!v.detail.empty()) e["detail"] = v.detail;
    viol.push_back(std::move(e));
  }
  r.results = {{"mean_half", to_json(rep.mean_half)}, {"points", pts}, {"violations", viol}};
  r.add_verdict("7.2", rep.pass_72, "conjecture");
  r.add_verdict("7.4", rep.pass_74, "conjecture");
  r.add_verdict("7.5", rep.pass_75, "conjecture");
  r.add_verdict("7.6-cdf", rep.pass_76_cdf, "conjecture");
  r.add_verdict("7.6-majorization", rep.pass_76_majorization, "conjecture");
  r.add_verdict("ineq72", rep.pass_ineq72, "conjecture");
  r.add_verdict("ineq72-lambda", rep.pass_ineq72_lambda, "conjecture");
  return r;
}

Report cmd_lstar(const Options& o) {
  const ObsMatrix x = load_matrix(o.data, o.rows);
  const ColumnSums s = x.column_sums();
  Report r;
  r.command = "repeated lstar";
  r.parameters = {{"matrix", x.to_string()}};
  const Rational ls = lstar(x), v = v_statistic(x), lt = ltilde(s);
  const auto pv = pstar_pvalue_conjectural(x, cap(o, kDefaultMaxMatrices));
  r.results = {{"lstar", to_json(ls)},
               {"v", to_json(v)},
               {"ltilde", to_json(lt)},
               {"xplus", s.to_string()},
               {"pvalue_ecp", to_json(pv.value)},
               {"pvalue_tag", pv.tag}};
  r.add_verdict("factorization", ls == v * lt);
  return r;
}

unsigned reps(const Options& o) { return o.r ? o.r : 2; }

HybridThresholds thresholds_from(const Options& o) {
  return hybrid_thresholds(o.k, o.n, reps(o), Rational::parse(o.alpha), Rational::parse(o.beta),
                           cap(o, kDefaultMaxMatrices));
}

json thresholds_json(const HybridThresholds& th) {
  auto fibers = json::array();
  for (const auto& [s, c] : th.c_alpha) {
    fibers.push_back({{"xplus", s.to_string()}, {"c_alpha", to_json(c)}, {"tail", to_json(th.fiber_tail.at(s))}});
  }
  return {{"fibers", fibers},
          {"d_beta", to_json(th.d_beta)},
          {"alpha_realized", to_json(th.alpha_realized)},
          {"beta_realized", to_json(th.beta_realized)}};
}

Report cmd_hybrid(const Options& o) {
  const ObsMatrix x = load_matrix(o.data, o.rows);
  Options oo = o;
  if (!oo.k) oo.k = static_cast<unsigned>(x.k());
  if (!oo.n) oo.n = x.n();
  if (!oo.r) oo.r = x.r();
  const auto th = thresholds_from(oo);
  const auto d = hybrid_test(x, th);
  Report r;
  r.command = "repeated hybrid";
  r.parameters = {{"k", oo.k}, {"n", oo.n}, {"r", oo.r}, {"alpha", o.alpha}, {"beta", o.beta}, {"matrix", x.to_string()}};
  r.results = {{"thresholds", thresholds_json(th)},
               {"v", to_json(d.v)},
               {"ltilde", to_json(d.ltilde)},
               {"c_alpha", to_json(d.c_alpha)},
               {"d_beta", to_json(d.d_beta)},
               {"reject_v", d.reject_v},
               {"reject_ltilde", d.reject_l},
               {"reject", d.reject()}};
  return r;
}

Report cmd_level(const Options& o) {
  const auto th = thresholds_from(o);
  const unsigned m = o.grid_denominator ? o.grid_denominator : 16;
  const auto rep = bonferroni_level_check(th, conjecture33_grid(o.k, m), cap(o, kDefaultMaxMatrices));
  Report r;
  r.command = "repeated level";
  r.parameters = {{"k", o.k}, {"n", o.n}, {"r", reps(o)}, {"alpha", o.alpha}, {"beta", o.beta}, {"grid_denominator", m}};
  auto lv = json::array();
  r.table = {{"p", "level"}, {}};
  for (std::size_t i = 0; i < rep.grid.size(); ++i) {
    lv.push_back({{"p", to_json(rep.grid[i])}, {"level", to_json(rep.levels[i])}});
    r.table.rows.push_back({rep.grid[i].to_string(), rep.levels[i].to_string()});
  }
  r.results = {{"thresholds", thresholds_json(th)},
               {"levels", lv},
               {"max_level", to_json(rep.max_level)},
               {"realized_bound", to_json(rep.realized_bound)},
               {"nominal_bound", to_json(rep.nominal_bound)}};
  r.add_verdict("level_bound", rep.pass());
  return r;
}

Report cmd_counterexample(const Options& o) {
  const Rational c = o.c.empty() ? Rational(7, 100) : Rational::parse(o.c);
  const auto ce = counterexample_222(c);
  Report r;
  r.command = "repeated counterexample222";
  r.parameters = {{"c", to_json(c)}};
  auto xs = json::array();
  r.table = {{"xplus", "phi"}, {}};
  for (std::size_t i = 0; i < ce.xplus.size(); ++i) {
    xs.push_back(ce.xplus[i].to_string());
    r.table.rows.push_back({ce.xplus[i].to_string(), ce.phi[i].to_string()});
  }
  r.results = {{"xplus", xs}, {"phi", to_json(ce.phi)}, {"violates_schur_concavity", ce.violates_schur_concavity}};
  r.add_verdict("schur_concavity_violated", ce.violates_schur_concavity, "finding");
  return r;
}

Report cmd_sweep81(const Options& o) {
  const Rational c = o.c.empty() ? Rational(7, 100) : Rational::parse(o.c);
  auto chains = random_chains(o.k, o.chains, o.seed);
  if (o.k == 2) {
    chains.insert(chains.begin(), {ProbVector{Rational(1), Rational(0)}, ProbVector{Rational(3, 4), Rational(1, 4)},
                                   ProbVector::ecp(2)});
  }
  const auto rep = conjecture81_sweep(o.k, o.n, reps(o), c, chains, cap(o, kDefaultMaxMatrices));
  Report r;
  r.command = "repeated sweep81";
  r.parameters = {{"k", o.k}, {"n", o.n}, {"r", reps(o)}, {"c", to_json(c)}, {"chains", chains.size()}, {"seed", o.seed}};
  auto arr = json::array();
  for (const auto& ch : rep.chains) arr.push_back(to_json(ch));
  r.results = {{"chains", arr}};
  r.add_verdict("schur_concave_along_chains", rep.pass(), "conjecture");
  return r;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact pure significance tests for multinomial and binomial models", "puresig"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", o.format, "json, csv or table")->check(CLI::IsMember({"json", "csv", "table"}));
  app.add_option("--max-outcomes", o.max_outcomes, "enumeration cap (default 10^6, 10^7 for repeated)")
      ->envname("PURESIG_MAX_OUTCOMES");

  std::function<Report()> action;
  auto on = [&action](CLI::App* sub, std::function<Report()> f) {
    sub->callback([&action, f = std::move(f)]() { action = f; });
    sub->fallthrough();
    return sub;
  };

  auto* pst = app.add_subcommand("pst", "pure significance test against the uniform alternative");
  pst->require_subcommand(1);
  auto* pv = on(pst->add_subcommand("pvalue", "exact p-value"), [&o] { return cmd_pst_pvalue(o); });
  pv->add_option("--p", o.p, "cell probabilities a/b,...")->required();
  pv->add_option("--x", o.x, "observed counts")->required();
  auto* epv = on(pst->add_subcommand("epv", "expected p-value under the uniform law"), [&o] { return cmd_pst_epv(o); });
  epv->add_option("--p", o.p)->required();
  epv->add_option("--n", o.n)->required();
  epv->add_option("--precision-bits", o.precision_bits);
  auto* kld = on(pst->add_subcommand("kld", "divergence from the uniform law"), [&o] { return cmd_pst_kld(o); });
  kld->add_option("--p", o.p)->required();
  kld->add_option("--n", o.n)->required();
  kld->add_option("--precision-bits", o.precision_bits);
  auto* s33 = on(pst->add_subcommand("sweep33", "EPV over a simplex grid"), [&o] { return cmd_pst_sweep33(o); });
  s33->add_option("--k", o.k)->required();
  s33->add_option("--n", o.n)->required();
  s33->add_option("--grid-denominator", o.grid_denominator);

  auto* glrt = app.add_subcommand("glrt", "likelihood ratio test of the multinomial family");
  glrt->require_subcommand(1);
  auto* gs = on(glrt->add_subcommand("stat", "L(x)"), [&o] { return cmd_glrt(o, false); });
  gs->add_option("--x", o.x)->required();
  auto* gp = on(glrt->add_subcommand("pvalue", "P_ecp[L >= L(x)]"), [&o] { return cmd_glrt(o, true); });
  gp->add_option("--x", o.x)->required();
  gp->add_option("--k", o.k);
  gp->add_option("--n", o.n);

  auto* bin = app.add_subcommand("binomial", "binomial rank profiles");
  bin->require_subcommand(1);
  auto* bl = on(bin->add_subcommand("ladder", "breakpoints and q profiles"), [&o] { return cmd_ladder(o); });
  bl->add_option("--n", o.n)->required();
  auto* bc = on(bin->add_subcommand("conjecture51", "EPV inequality over every ladder region"),
                [&o] { return cmd_conjecture51(o); });
  bc->add_option("--n", o.n)->required();
  bc->add_option("--samples", o.samples);
  bc->add_option("--max-refinements", o.refinements);
  auto* bi = on(bin->add_subcommand("identities", "moment identity, central bounds, near-1/2 and near-1"),
                [&o] { return cmd_identities(o); });
  bi->add_option("--n", o.n)->required();
  auto* bt = on(bin->add_subcommand("threshold-scan", "first changing pair for odd n"),
                [&o] { return cmd_threshold_scan(o); });
  bt->add_option("--n-max", o.n_max);

  auto* obdc = app.add_subcommand("obd", "ordered binomial distribution");
  obdc->require_subcommand(0, 1);
  obdc->add_option("--n", o.n);
  obdc->add_option("--p", o.p);
  obdc->callback([&action, &o, obdc]() {
    if (obdc->get_subcommands().empty()) action = [&o] { return cmd_obd_show(o, false); };
  });
  obdc->fallthrough();
  auto* os = on(obdc->add_subcommand("show", "sorted masses, mean, decomposition"), [&o] { return cmd_obd_show(o, false); });
  os->add_option("--n", o.n)->required();
  os->add_option("--p", o.p)->required();
  auto* od = on(obdc->add_subcommand("decompose", "rank-sum decomposition"), [&o] { return cmd_obd_show(o, true); });
  od->add_option("--n", o.n)->required();
  od->add_option("--p", o.p)->required();
  auto* ow = on(obdc->add_subcommand("sweep7x", "mean and dominance sweep over p in [1/2,1]"),
                [&o] { return cmd_obd_sweep(o); });
  ow->alias("sweep");
  ow->add_option("--n", o.n)->required();
  ow->add_option("--grid-denominator", o.grid_denominator);
  ow->add_option("--grid", o.grid_p, "explicit ascending grid a/b,...");

  auto* rep = app.add_subcommand("repeated", "repeated multinomial observations");
  rep->require_subcommand(1);
  auto* rl = on(rep->add_subcommand("lstar", "L*, V and L~ for one matrix"), [&o] { return cmd_lstar(o); });
  rl->add_option("--data", o.data, "JSON file {\"rows\": [[...], ...]}");
  rl->add_option("--rows", o.rows, "inline matrix a,b;c,d");
  auto* rh = on(rep->add_subcommand("hybrid", "hybrid test decision"), [&o] { return cmd_hybrid(o); });
  rh->add_option("--k", o.k);
  rh->add_option("--n", o.n);
  rh->add_option("--r", o.r);
  rh->add_option("--alpha", o.alpha);
  rh->add_option("--beta", o.beta);
  rh->add_option("--data", o.data);
  rh->add_option("--rows", o.rows);
  auto* rv = on(rep->add_subcommand("level", "exact level of the hybrid test over a p grid"),
                [&o] { return cmd_level(o); });
  rv->add_option("--k", o.k)->required();
  rv->add_option("--n", o.n)->required();
  rv->add_option("--r", o.r);
  rv->add_option("--alpha", o.alpha);
  rv->add_option("--beta", o.beta);
  rv->add_option("--grid-denominator", o.grid_denominator);
  auto* rc = on(rep->add_subcommand("counterexample222", "conditional tails for k=n=r=2"),
                [&o] { return cmd_counterexample(o); });
  rc->add_option("--c", o.c);
  auto* rs = on(rep->add_subcommand("sweep81", "P_p[L* >= c] along majorization chains"),
                [&o] { return cmd_sweep81(o); });
  rs->add_option("--k", o.k)->required();
  rs->add_option("--n", o.n)->required();
  rs->add_option("--r", o.r);
  rs->add_option("--c", o.c);
  rs->add_option("--chains", o.chains);
  rs->add_option("--seed", o.seed);

  auto* ver = app.add_subcommand("verify", "invariant suite");
  ver->require_subcommand(1);
  auto* va = on(ver->add_subcommand("all", "run every check at desk scale"), [&o] { return verify_all(o.nmax); });
  va->add_option("--nmax", o.nmax);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }
  try {
    if (!action) throw Error(ErrorCode::kInvalidArgument, "no command given");
    Report report = action();
    out << render(report, parse_format(o.format));
    return report.invariant_failed() ? 2 : 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace puresig
