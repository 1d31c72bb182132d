#include "puresig/obd.hpp"

#include <algorithm>
#include <set>

#include "puresig/binomial.hpp"
#include "puresig/majorization.hpp"

namespace puresig {

namespace {

void require_p(const Rational& p) {
  if (p.sign() < 0 || p > Rational(1)) throw Error(ErrorCode::kInvalidArgument, "p outside [0,1]");
}

Rational weighted_index_sum(const std::vector<Rational>& masses) {
  Rational s;
  for (std::size_t i = 0; i < masses.size(); ++i) s += Rational(static_cast<long>(i)) * masses[i];
  return s;
}

}  // namespace

OrderedBinomial obd(unsigned n, const Rational& p) {
  require_p(p);
  OrderedBinomial o{n, p, binomial_pmf_vector(n, p)};
  std::sort(o.sorted_masses.begin(), o.sorted_masses.end());
  return o;
}

std::vector<unsigned> rank_vector(unsigned n, const Rational& p) {
  require_p(p);
  const auto f = binomial_pmf_vector(n, p);
  std::vector<unsigned> r(n + 1, 0);
  for (unsigned x = 0; x <= n; ++x) {
    for (unsigned y = 0; y <= n; ++y) {
      if (f[y] < f[x]) ++r[x];
    }
  }
  return r;
}

unsigned rank_r(unsigned n, const Rational& p, unsigned x) {
  if (x > n) throw Error(ErrorCode::kIndexOutOfRange, "x > n");
  return rank_vector(n, p)[x];
}

Rational obd_mean(unsigned n, const Rational& p) { return weighted_index_sum(obd(n, p).sorted_masses); }

std::string tie_case_name(TieCase c) {
  switch (c) {
    case TieCase::kNoTies: return "no_ties";
    case TieCase::kHalf: return "half";
    case TieCase::kTiesInterior: return "ties_interior";
    case TieCase::kEndpoint: return "endpoint";
  }
  return "no_ties";
}

TieDecomposition lemma73_decompose(unsigned n, const Rational& p) {
  require_p(p);
  const auto f = binomial_pmf_vector(n, p);
  const auto r = rank_vector(n, p);
  TieDecomposition d;
  for (unsigned x = 0; x <= n; ++x) {
    d.sum_r_f += Rational(static_cast<long>(r[x])) * f[x];
    for (unsigned y = x + 1; y <= n; ++y) {
      if (f[x] == f[y]) ++d.tie_pair_count;
    }
  }
  d.obd_mean = obd_mean(n, p);
  d.delta = d.obd_mean - d.sum_r_f;

  const Rational half(1, 2);
  d.reflected = p < half;
  const Rational pp = d.reflected ? Rational(1) - p : p;
  if (pp == Rational(1)) {
    d.tie_case = TieCase::kEndpoint;
    d.case_holds = d.delta.is_zero();
  } else if (pp == half) {
    d.tie_case = TieCase::kHalf;
    d.case_holds = d.delta == half;
  } else if (d.tie_pair_count == 0) {
    d.tie_case = TieCase::kNoTies;
    d.case_holds = d.delta.is_zero();
  } else {
    d.tie_case = TieCase::kTiesInterior;
    d.case_holds = d.delta.sign() > 0 && d.delta < half;
  }
  return d;
}

Rational obd_mean_half_closed_form(unsigned n) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "closed form needs n >= 1");
  const Rational c = n % 2 == 0 ? Rational(binomial_coeff(n, n / 2), pow(BigInt(2), n))
                                : Rational(binomial_coeff(n - 1, (n - 1) / 2), pow(BigInt(2), n - 1));
  return Rational(static_cast<long>(n)) * (Rational(1) - c) + Rational(1, 2);
}

Rational delta_half_exact(unsigned n) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "needs n >= 1");
  if (n % 2 == 1) return Rational(1, 2);
  return Rational(1, 2) * (Rational(1) - Rational(binomial_coeff(n, n / 2), pow(BigInt(2), n)));
}

Rational obd_mean_half_exact(unsigned n) {
  if (n % 2 == 1) return obd_mean_half_closed_form(n);
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "needs n >= 1");
  const Rational c(binomial_coeff(n, n / 2), pow(BigInt(2), n));
  return Rational(2 * static_cast<long>(n) + 1, 2) * (Rational(1) - c);
}

std::vector<unsigned> binomial_mode(unsigned n, const Rational& p) {
  require_p(p);
  const Rational m = Rational(static_cast<long>(n + 1)) * p;
  std::vector<unsigned> modes;
  if (m.is_integer()) {
    const BigInt v = m.num();
    if (v >= 1) modes.push_back(static_cast<unsigned>(v.get_ui()) - 1);
    if (v <= n) modes.push_back(static_cast<unsigned>(v.get_ui()));
  } else {
    BigInt fl;
    mpz_fdiv_q(fl.get_mpz_t(), m.num().get_mpz_t(), m.den().get_mpz_t());
    modes.push_back(static_cast<unsigned>(fl.get_ui()));
  }
  return modes;
}

bool obd_strictly_dominates(const std::vector<Rational>& upper, const std::vector<Rational>& lower) {
  if (upper.size() != lower.size()) throw Error(ErrorCode::kDimensionMismatch, "OBD sizes differ");
  Rational cu, cl;
  bool strict = false;
  for (std::size_t i = 0; i < upper.size(); ++i) {
    cu += upper[i];
    cl += lower[i];
    if (cu > cl) return false;
    if (cu < cl) strict = true;
  }
  return strict;
}

std::optional<unsigned> first_cdf_violation(const std::vector<Rational>& upper, const std::vector<Rational>& lower) {
  if (upper.size() != lower.size()) throw Error(ErrorCode::kDimensionMismatch, "OBD sizes differ");
  Rational cu, cl;
  for (std::size_t i = 0; i < upper.size(); ++i) {
    cu += upper[i];
    cl += lower[i];
    if (cu > cl) return static_cast<unsigned>(i);
  }
  return std::nullopt;
}

namespace {

std::string cdf_detail(const std::vector<Rational>& upper, const std::vector<Rational>& lower) {
  const auto x = first_cdf_violation(upper, lower);
  if (!x) return "no strict CDF coordinate";
  Rational cu, cl;
  for (unsigned i = 0; i <= *x; ++i) {
    cu += upper[i];
    cl += lower[i];
  }
  return "x=" + std::to_string(*x) + " cdf " + cu.to_string() + " > " + cl.to_string();
}

// First top-m sum of the masses where the later point falls short.
std::string majorization_detail(const std::vector<Rational>& upper, const std::vector<Rational>& lower) {
  if (upper == lower) return "identical profiles";
  Rational su, sl;
  for (std::size_t i = 0; i < upper.size(); ++i) {
    su += upper[upper.size() - 1 - i];
    sl += lower[lower.size() - 1 - i];
    if (su < sl) return "top-" + std::to_string(i + 1) + " sum " + su.to_string() + " < " + sl.to_string();
  }
  return "no shortfall";
}

}  // namespace

Sweep7xReport conjectures7x_sweep(unsigned n, const std::vector<Rational>& grid) {
  const Rational half(1, 2), one(1);
  if (grid.empty() || grid.front() != half || grid.back() != one)
    throw Error(ErrorCode::kInvalidArgument, "grid must start at 1/2 and end at 1");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i - 1] < grid[i])) throw Error(ErrorCode::kInvalidArgument, "grid must be strictly ascending");
  }
  Sweep7xReport rep;
  rep.n = n;
  rep.mean_half = obd_mean(n, half);
  const Rational rank_sum_half = lemma73_decompose(n, half).sum_r_f;

  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Rational& p = grid[i];
    Sweep7xPoint pt;
    pt.p = p;
    pt.sorted_masses = obd(n, p).sorted_masses;
    pt.decomposition = lemma73_decompose(n, p);
    pt.mean = pt.decomposition.obd_mean;
    pt.margin_plain = pt.mean - rep.mean_half + half;
    const bool ties = pt.decomposition.tie_case == TieCase::kTiesInterior;
    pt.margin_lambda = pt.mean - rep.mean_half + (ties ? half - pt.decomposition.delta : half);
    pt.margin_rank = pt.decomposition.sum_r_f - rank_sum_half;

    if (p > half) {
      auto flag = [&](bool& pass, const char* name, bool ok, std::string detail) {
        if (!ok) {
          pass = false;
          rep.violations.push_back({name, p, std::nullopt, std::move(detail)});
        }
      };
      flag(rep.pass_74, "7.4", pt.mean > rep.mean_half, "mean " + pt.mean.to_string() + " <= " + rep.mean_half.to_string());
      flag(rep.pass_ineq72, "ineq72", pt.margin_plain.sign() > 0, "margin " + pt.margin_plain.to_string());
      flag(rep.pass_ineq72_lambda, "ineq72-lambda", pt.margin_lambda.sign() > 0, "margin " + pt.margin_lambda.to_string());
      flag(rep.pass_72, "7.2", pt.margin_rank.sign() > 0, "margin " + pt.margin_rank.to_string());
    }
    if (i > 0) {
      const auto& prev = rep.points.back();
      if (!(pt.mean > prev.mean)) {
        rep.pass_75 = false;
        rep.violations.push_back({"7.5", p, prev.p, "mean " + pt.mean.to_string() + " <= " + prev.mean.to_string()});
      }
      if (!obd_strictly_dominates(pt.sorted_masses, prev.sorted_masses)) {
        rep.pass_76_cdf = false;
        rep.violations.push_back({"7.6-cdf", p, prev.p, cdf_detail(pt.sorted_masses, prev.sorted_masses)});
      }
      if (!(majorizes(pt.sorted_masses, prev.sorted_masses) && pt.sorted_masses != prev.sorted_masses)) {
        rep.pass_76_majorization = false;
        rep.violations.push_back({"7.6-majorization", p, prev.p, majorization_detail(pt.sorted_masses, prev.sorted_masses)});
      }
    }
    rep.points.push_back(std::move(pt));
  }
  return rep;
}

std::vector<Rational> obd_grid(unsigned n, unsigned denominator) {
  if (denominator < 1) throw Error(ErrorCode::kInvalidArgument, "grid denominator must be >= 1");
  std::set<Rational> pts;
  for (unsigned j = 0; j <= denominator; ++j) {
    pts.insert(Rational(1, 2) + Rational(j, 2 * denominator));
  }
  if (n >= 1) {
    const Rational w(1, 1 << 16);
    for (const auto& t : breakpoint_ladder(n).breakpoints) {
      const auto br = bracket(t, w);
      if (t.is_rational()) {
        pts.insert(p_from_odds(t.base()));
        pts.insert(p_from_odds(t.base() - w));
        pts.insert(p_from_odds(t.base() + w));
      } else {
        pts.insert(p_from_odds(br.lo));
        pts.insert(p_from_odds(br.hi));
      }
    }
  }
  return {pts.begin(), pts.end()};
}

}  // namespace puresig
