#include "puresig/binomial.hpp"

#include <algorithm>

#include <mpfr.h>

namespace puresig {

std::string RankProfile::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(q[i]);
  }
  return s + ")";
}

Rational binomial_pmf(unsigned n, const Rational& p, unsigned x) {
  if (x > n) throw Error(ErrorCode::kIndexOutOfRange, "x > n");
  if (p.sign() < 0 || p > Rational(1)) throw Error(ErrorCode::kInvalidArgument, "p outside [0,1]");
  return Rational(binomial_coeff(n, x)) * pow(p, x) * pow(Rational(1) - p, n - x);
}

std::vector<Rational> binomial_pmf_vector(unsigned n, const Rational& p) {
  std::vector<Rational> f;
  f.reserve(n + 1);
  for (unsigned x = 0; x <= n; ++x) f.push_back(binomial_pmf(n, p, x));
  return f;
}

RankProfile q_profile(unsigned n, const AlgebraicOdds& t) {
  RankProfile r{n, std::vector<unsigned>(n + 1, 0)};
  for (unsigned x = 0; x <= n; ++x) {
    for (unsigned y = 0; y <= n; ++y) {
      if (compare_binomial_mass(n, x, y, t) <= 0) ++r.q[x];
    }
  }
  return r;
}

RankProfile q_profile_at(unsigned n, const Rational& p) {
  const auto f = binomial_pmf_vector(n, p);
  RankProfile r{n, std::vector<unsigned>(n + 1, 0)};
  for (unsigned x = 0; x <= n; ++x) {
    for (unsigned y = 0; y <= n; ++y) {
      if (f[x] <= f[y]) ++r.q[x];
    }
  }
  return r;
}

RankProfile q_profile_at_infinity(unsigned n) {
  RankProfile r{n, {}};
  for (unsigned x = 0; x <= n; ++x) r.q.push_back(n + 1 - x);
  return r;
}

unsigned q_half(unsigned n, unsigned x) {
  if (x > n) throw Error(ErrorCode::kIndexOutOfRange, "x > n");
  return 1 + (2 * x >= n ? 2 * x - n : n - 2 * x);
}

BreakpointLadder breakpoint_ladder(unsigned n) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "ladder needs n >= 1");
  // every crossing C(n,x) t^x = C(n,y) t^y with x < y and t > 1
  std::vector<AlgebraicOdds> candidates;
  for (unsigned x = 0; x <= n; ++x) {
    for (unsigned y = x + 1; y <= n; ++y) {
      const Rational ratio(binomial_coeff(n, x), binomial_coeff(n, y));
      if (ratio > Rational(1)) candidates.emplace_back(ratio, y - x);
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const AlgebraicOdds& a, const AlgebraicOdds& b) { return cmp_algebraic(a, b) < 0; });
  BreakpointLadder ladder;
  ladder.n = n;
  for (auto& c : candidates) {
    if (ladder.breakpoints.empty() || cmp_algebraic(ladder.breakpoints.back(), c) != 0)
      ladder.breakpoints.push_back(std::move(c));
  }

  auto fill = [&ladder, n]() {
    ladder.interval_profiles.clear();
    ladder.interval_samples.clear();
    ladder.point_profiles.clear();
    const auto& bp = ladder.breakpoints;
    const AlgebraicOdds one(Rational(1));
    ladder.point_profiles.push_back(q_profile(n, one));
    for (std::size_t i = 0; i <= bp.size(); ++i) {
      const AlgebraicOdds& lo = i == 0 ? one : bp[i - 1];
      Rational sample = i == bp.size() ? rational_above(lo) : rational_between(lo, bp[i]);
      ladder.interval_profiles.push_back(q_profile(n, AlgebraicOdds(sample)));
      ladder.interval_samples.push_back(std::move(sample));
      if (i < bp.size()) ladder.point_profiles.push_back(q_profile(n, bp[i]));
    }
  };
  fill();
  // Drop any candidate across which nothing changes.
  for (std::size_t i = 0; i < ladder.breakpoints.size();) {
    if (ladder.interval_profiles[i] == ladder.interval_profiles[i + 1] &&
        ladder.point_profiles[i + 1] == ladder.interval_profiles[i]) {
      ladder.breakpoints.erase(ladder.breakpoints.begin() + static_cast<std::ptrdiff_t>(i));
      fill();
    } else {
      ++i;
    }
  }
  return ladder;
}

namespace {

std::string p_repr_of(const AlgebraicOdds& t) {
  if (t.is_rational()) return p_from_odds(t.base()).to_compact_string();
  const std::string s = t.pretty();
  return s + "/(" + s + "+1)";
}

}  // namespace

std::vector<LadderRow> ladder_rows(const BreakpointLadder& ladder) {
  std::vector<LadderRow> rows;
  const auto& bp = ladder.breakpoints;
  const AlgebraicOdds one(Rational(1));
  rows.push_back({true, "1", "1/2", ladder.point_profiles[0]});
  for (std::size_t i = 0; i <= bp.size(); ++i) {
    const AlgebraicOdds& lo = i == 0 ? one : bp[i - 1];
    if (i == bp.size()) {
      rows.push_back({false, "(" + lo.pretty() + ",inf]", "(" + p_repr_of(lo) + ",1]", ladder.interval_profiles[i]});
    } else {
      rows.push_back({false, "(" + lo.pretty() + "," + bp[i].pretty() + ")",
                      "(" + p_repr_of(lo) + "," + p_repr_of(bp[i]) + ")", ladder.interval_profiles[i]});
      rows.push_back({true, bp[i].pretty(), p_repr_of(bp[i]), ladder.point_profiles[i + 1]});
    }
  }
  return rows;
}

Rational epv_sum_with_profile(const RankProfile& profile, const Rational& p) {
  Rational s;
  for (unsigned x = 0; x <= profile.n; ++x) s += Rational(static_cast<long>(profile.q[x])) * binomial_pmf(profile.n, p, x);
  return s;
}

Rational epv_sum(unsigned n, const Rational& p) { return epv_sum_with_profile(q_profile_at(n, p), p); }

Rational epv_sum_half(unsigned n) {
  Rational s;
  const Rational half(1, 2);
  for (unsigned x = 0; x <= n; ++x) s += Rational(static_cast<long>(q_half(n, x))) * binomial_pmf(n, half, x);
  return s;
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kPass: return "pass";
    case Verdict::kFail: return "fail";
    case Verdict::kUndecided: return "undecided";
  }
  return "undecided";
}

bool Conjecture51Report::pass() const {
  for (const auto& r : regions) {
    if (!r.pass()) return false;
  }
  for (const auto& p : points) {
    if (p.verdict != Verdict::kPass) return false;
  }
  return true;
}

bool Conjecture51Report::undecided() const {
  return std::any_of(points.begin(), points.end(), [](const PointCheck& p) { return p.verdict == Verdict::kUndecided; });
}

namespace {

// Rational odds strictly inside (a, b) and close to a (lower) or b (upper).
Rational inner_near(const AlgebraicOdds& boundary, const Rational& mid, bool from_below) {
  Rational w(1, 1 << 20);
  for (;;) {
    const auto br = bracket(boundary, w);
    Rational cand = from_below ? (boundary.is_rational() || br.lo == br.hi ? br.lo - w : br.lo)
                               : (boundary.is_rational() || br.lo == br.hi ? br.hi + w : br.hi);
    if (from_below ? cand > mid : cand < mid) return cand;
    w /= Rational(2);
  }
}

// [lo, hi] enclosure of sum q(x) C(n,x) p^x (1-p)^(n-x) for p in [plo, phi]
std::pair<Rational, Rational> enclose_epv(const RankProfile& prof, const Rational& plo, const Rational& phi) {
  Rational lo, hi;
  const unsigned n = prof.n;
  for (unsigned x = 0; x <= n; ++x) {
    const Rational w = Rational(static_cast<long>(prof.q[x])) * Rational(binomial_coeff(n, x));
    lo += w * pow(plo, x) * pow(Rational(1) - phi, n - x);
    hi += w * pow(phi, x) * pow(Rational(1) - plo, n - x);
  }
  return {lo, hi};
}

}  // namespace

Conjecture51Report conjecture51_region_check(unsigned n, unsigned samples_per_region, unsigned max_refinements) {
  if (samples_per_region < 1) throw Error(ErrorCode::kInvalidArgument, "need >= 1 sample per region");
  const BreakpointLadder ladder = breakpoint_ladder(n);
  const auto rows = ladder_rows(ladder);
  Conjecture51Report rep;
  rep.n = n;
  rep.lhs = epv_sum_half(n);

  const auto& bp = ladder.breakpoints;
  const AlgebraicOdds one(Rational(1));
  for (std::size_t i = 0; i <= bp.size(); ++i) {
    RegionCheck rc;
    rc.label = rows[2 * i + 1].t_repr;
    rc.profile = ladder.interval_profiles[i];
    const Rational& mid = ladder.interval_samples[i];
    const Rational p_lo = p_from_odds(inner_near(i == 0 ? one : bp[i - 1], mid, false));
    const bool last = i == bp.size();
    const Rational p_hi = last ? Rational(1) : p_from_odds(inner_near(bp[i], mid, true));
    if (samples_per_region == 1) {
      rc.samples.push_back(p_from_odds(mid));
    } else {
      for (unsigned j = 0; j < samples_per_region; ++j) {
        rc.samples.push_back(p_lo + (p_hi - p_lo) * Rational(j, samples_per_region - 1));
      }
    }
    std::optional<Rational> worst;
    for (const auto& p : rc.samples) {
      const RankProfile at = q_profile_at(n, p);
      if (p != Rational(1) && at != rc.profile) rc.profile_mismatches.push_back(p);
      Rational rhs = epv_sum_with_profile(at, p);
      if (!(rep.lhs > rhs)) rc.violations.push_back(p);
      if (!worst || rhs > *worst) worst = rhs;
      rc.rhs.push_back(std::move(rhs));
    }
    rc.min_margin = rep.lhs - *worst;
    rep.regions.push_back(std::move(rc));
  }

  for (std::size_t i = 0; i < bp.size(); ++i) {
    PointCheck pc{bp[i], ladder.point_profiles[i + 1], Verdict::kUndecided, {}, {}, 0};
    if (bp[i].is_rational()) {
      const Rational v = epv_sum_with_profile(pc.profile, p_from_odds(bp[i].base()));
      pc.rhs_lo = pc.rhs_hi = v;
      pc.verdict = rep.lhs > v ? Verdict::kPass : Verdict::kFail;
    } else {
      auto br = bracket(bp[i], Rational(1, 256));
      for (;;) {
        auto [lo, hi] = enclose_epv(pc.profile, p_from_odds(br.lo), p_from_odds(br.hi));
        pc.rhs_lo = lo;
        pc.rhs_hi = hi;
        if (hi < rep.lhs) { pc.verdict = Verdict::kPass; break; }
        if (lo >= rep.lhs) { pc.verdict = Verdict::kFail; break; }
        if (pc.refinements >= max_refinements) break;
        const Rational m = (br.lo + br.hi) / Rational(2);
        const auto c = cmp_algebraic(bp[i], m);
        if (c == 0) { br.lo = br.hi = m; } else if (c > 0) { br.lo = m; } else { br.hi = m; }
        ++pc.refinements;
      }
    }
    rep.points.push_back(std::move(pc));
  }
  return rep;
}

AbsMomentIdentity abs_moment_identity(unsigned n) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "identity needs n >= 1");
  AbsMomentIdentity r;
  r.lhs = 0;
  for (unsigned x = 0; x <= n; ++x) {
    const unsigned d = 2 * x >= n ? 2 * x - n : n - 2 * x;
    r.lhs += BigInt(d) * binomial_coeff(n, x);
  }
  r.rhs = n % 2 == 0 ? BigInt(n) * binomial_coeff(n, n / 2) : BigInt(2 * n) * binomial_coeff(n - 1, (n - 1) / 2);
  return r;
}

KrafftCheck krafft_bound_check(unsigned n) {
  if (n % 2 != 0 || n < 2) throw Error(ErrorCode::kNotApplicable, "Krafft bound check needs even n >= 2");
  KrafftCheck k;
  k.n = n;
  k.central = binomial_coeff(n, n / 2);
  // C >= 2^(n-1) sqrt(2/n)  <=>  n C^2 >= 2^(2n-1)
  k.bound_lhs = BigInt(n) * k.central * k.central;
  k.bound_rhs = pow(BigInt(2), 2 * n - 1);
  k.bound_holds = k.bound_lhs >= k.bound_rhs;
  // 2^(n-1) sqrt(2/n) > 2^n/(n+1)  <=>  (n+1)^2 > 2n
  k.consequent_holds = BigInt(n + 1) * BigInt(n + 1) > BigInt(2 * n);
  k.central_holds = BigInt(n + 1) * k.central > pow(BigInt(2), n);
  return k;
}

KrafftCheck odd_central_check(unsigned n) {
  if (n % 2 == 0 || n < 3) throw Error(ErrorCode::kNotApplicable, "odd central check needs odd n >= 3");
  KrafftCheck k = krafft_bound_check(n - 1);
  k.n = n;
  // C(n-1,(n-1)/2) > 2^(n-1)/(n+1)
  k.central_holds = BigInt(n + 1) * k.central > pow(BigInt(2), n - 1);
  return k;
}

EpsilonN epsilon_n(unsigned n) {
  if (n < 3) throw Error(ErrorCode::kInvalidArgument, "epsilon_n needs n >= 3");
  const unsigned first = n % 2 == 1 ? (n + 3) / 2 : n / 2 + 1;
  std::optional<AlgebraicOdds> best;
  unsigned arg = first;
  for (unsigned x = first; x <= n; ++x) {
    AlgebraicOdds a(Rational(static_cast<long>(x), static_cast<long>(n - x + 1)), 2 * x - n - 1);
    if (!best || cmp_algebraic(a, *best) < 0) {
      best = a;
      arg = x;
    }
  }
  mpfr_t a, num, den;
  mpfr_inits2(128, a, num, den, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_q(a, best->base().raw().get_mpq_t(), MPFR_RNDN);
  mpfr_rootn_ui(a, a, best->root_degree(), MPFR_RNDN);
  mpfr_sub_ui(num, a, 1, MPFR_RNDN);
  mpfr_add_ui(den, a, 1, MPFR_RNDN);
  mpfr_mul_ui(den, den, 2, MPFR_RNDN);
  mpfr_div(num, num, den, MPFR_RNDN);
  const double eps = mpfr_get_d(num, MPFR_RNDN);
  mpfr_clears(a, num, den, static_cast<mpfr_ptr>(nullptr));
  return {n, *best, arg, eps};
}

Prop52Report prop52_check(unsigned n, unsigned first_offset_exponent) {
  if (n < 3) throw Error(ErrorCode::kInvalidArgument, "prop52_check needs n >= 3");
  Prop52Report r;
  r.n = n;
  r.lhs = epv_sum_half(n);
  // sum |n-2x| f_{1/2}(x) > n (1 - p) at p = n/(n+1)
  r.near_one_lhs = Rational(abs_moment_identity(n).lhs, pow(BigInt(2), n));
  r.near_one_rhs = Rational(static_cast<long>(n), static_cast<long>(n + 1));
  r.near_one_pass = r.near_one_lhs > r.near_one_rhs;

  const EpsilonN eps = epsilon_n(n);
  r.expected_profile = RankProfile{n, {}};
  for (unsigned x = 0; x <= n; ++x) r.expected_profile.q.push_back(q_half(n, x) - (2 * x > n ? 1 : 0));
  for (unsigned j = first_offset_exponent; j <= 64; ++j) {
    const Rational p = Rational(1, 2) + Rational(BigInt(1), pow(BigInt(2), j));
    if (cmp_algebraic(eps.a_check, odds_from_p(p)) <= 0) continue;  // need t(p) < a_check
    r.near_half_p = p;
    r.near_half_profile = q_profile_at(n, p);
    r.near_half_rhs = epv_sum_with_profile(r.near_half_profile, p);
    r.near_half_pattern = r.near_half_profile == r.expected_profile;
    r.near_half_strict = r.lhs > r.near_half_rhs;
    if (r.near_half_pattern && r.near_half_strict) break;
  }
  return r;
}

std::vector<ThresholdRow> first_pair_threshold_scan(unsigned n_max) {
  std::vector<ThresholdRow> rows;
  for (unsigned n = 3; n <= n_max; n += 2) {
    ThresholdRow r{n,
                   AlgebraicOdds(Rational(static_cast<long>(n + 3), static_cast<long>(n - 1)), 2),
                   AlgebraicOdds(Rational(static_cast<long>(n)), n - 1),
                   0, false, n <= 45, false};
    const auto c = cmp_algebraic(r.inner, r.outer);
    r.order = c < 0 ? -1 : (c > 0 ? 1 : 0);
    r.holds = r.order < 0;
    r.agrees = r.holds == r.published_claim;
    rows.push_back(std::move(r));
  }
  return rows;
}

Lemma61Report lemma61_check(const std::vector<Rational>& d) {
  const auto n = static_cast<unsigned>(d.size());
  if (n < 4) throw Error(ErrorCode::kInvalidArgument, "lemma61_check needs n >= 4");
  for (unsigned i = 1; i + 1 < n; ++i) {
    if (!(d[i + 1] - d[i] > d[i] - d[i - 1]))
      throw Error(ErrorCode::kConvexityViolation, "sequence not strictly convex at m = " + std::to_string(i + 1));
  }
  Lemma61Report r;
  r.first_x = n % 2 == 0 ? n / 2 + 1 : (n + 3) / 2;
  for (unsigned x = r.first_x; x <= n; ++x) {
    Rational s;
    for (unsigned m = n - x + 2; m <= x; ++m) s += d[m - 1];
    r.d_values.push_back(s / Rational(static_cast<long>(2 * x - n - 1)));
  }
  r.strictly_increasing = true;
  for (std::size_t i = 0; i + 1 < r.d_values.size(); ++i) {
    if (!(r.d_values[i] < r.d_values[i + 1])) r.strictly_increasing = false;
  }
  return r;
}

QMonotoneReport q_monotone_even_check(unsigned n) {
  if (n % 2 != 0 || n < 4) throw Error(ErrorCode::kInvalidArgument, "q_monotone_even_check needs even n >= 4");
  QMonotoneReport r;
  r.n = n;
  for (unsigned x = n / 2 + 1; x <= n; ++x) {
    r.q_values.emplace_back(Rational(static_cast<long>(x), static_cast<long>(n - x + 1)), 2 * x - n - 1);
  }
  r.strictly_increasing = true;
  for (std::size_t i = 0; i + 1 < r.q_values.size(); ++i) {
    if (cmp_algebraic(r.q_values[i], r.q_values[i + 1]) >= 0) r.strictly_increasing = false;
  }
  return r;
}

}  // namespace puresig
