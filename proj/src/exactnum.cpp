#include "puresig/exactnum.hpp"

#include <cctype>
#include <cmath>
#include <numeric>
#include <ostream>

namespace puresig {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDivisionAtOne: return "DIVISION_AT_ONE";
    case ErrorCode::kSpaceTooLarge: return "SPACE_TOO_LARGE";
    case ErrorCode::kNotApplicable: return "NOT_APPLICABLE";
    case ErrorCode::kSumMismatch: return "SUM_MISMATCH";
    case ErrorCode::kIndexOutOfRange: return "INDEX_OUT_OF_RANGE";
    case ErrorCode::kIncomparableChain: return "INCOMPARABLE_CHAIN";
    case ErrorCode::kConvexityViolation: return "CONVEXITY_VIOLATION";
    case ErrorCode::kDimensionMismatch: return "DIMENSION_MISMATCH";
    case ErrorCode::kInvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::kParse: return "PARSE";
  }
  return "UNKNOWN";
}

BigInt factorial(unsigned n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

BigInt binomial_coeff(unsigned n, unsigned k) {
  if (k > n) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

BigInt pow(const BigInt& base, unsigned exp) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

Rational::Rational(const BigInt& num) : q_(num) {}

Rational::Rational(const BigInt& num, const BigInt& den) : q_(num, den) {
  if (den == 0) throw Error(ErrorCode::kInvalidArgument, "zero denominator");
  q_.canonicalize();
}

Rational::Rational(long num, long den) : Rational(BigInt(num), BigInt(den)) {}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error(ErrorCode::kInvalidArgument, "division by zero");
  q_ /= o.q_;
  return *this;
}

Rational Rational::operator-() const {
  Rational r;
  r.q_ = -q_;
  return r;
}

std::string Rational::to_string() const {
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::string Rational::to_compact_string() const {
  if (is_integer()) return q_.get_num().get_str();
  return to_string();
}

namespace {

bool parse_integer(std::string_view s, BigInt& out, bool allow_sign) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
  if (i == s.size()) return false;
  for (std::size_t j = i; j < s.size(); ++j) {
    if (!std::isdigit(static_cast<unsigned char>(s[j]))) return false;
  }
  std::string digits(s.substr(s[0] == '+' ? 1 : 0));
  return out.set_str(digits, 10) == 0;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  BigInt num, den = 1;
  const bool ok = slash == std::string_view::npos
                      ? parse_integer(text, num, true)
                      : parse_integer(text.substr(0, slash), num, true) &&
                            parse_integer(text.substr(slash + 1), den, false);
  if (!ok) throw Error(ErrorCode::kParse, "not an exact rational: '" + std::string(text) + "'");
  if (den == 0) throw Error(ErrorCode::kParse, "zero denominator: '" + std::string(text) + "'");
  return Rational(num, den);
}

Rational pow(const Rational& base, unsigned exp) {
  BigInt num, den;
  mpz_pow_ui(num.get_mpz_t(), base.raw().get_num_mpz_t(), exp);
  mpz_pow_ui(den.get_mpz_t(), base.raw().get_den_mpz_t(), exp);
  return Rational(num, den);
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

AlgebraicOdds::AlgebraicOdds(Rational base, unsigned root_degree)
    : base_(std::move(base)), degree_(root_degree) {
  if (base_.sign() <= 0) throw Error(ErrorCode::kInvalidArgument, "odds base must be > 0");
  if (degree_ == 0) throw Error(ErrorCode::kInvalidArgument, "root degree must be >= 1");
}

std::string AlgebraicOdds::to_string() const {
  return "(" + base_.to_string() + ")^(1/" + std::to_string(degree_) + ")";
}

std::string AlgebraicOdds::pretty() const {
  if (degree_ == 1) return base_.to_compact_string();
  const std::string b = base_.is_integer() ? base_.to_compact_string() : "(" + base_.to_string() + ")";
  return b + "^(1/" + std::to_string(degree_) + ")";
}

AlgebraicOdds AlgebraicOdds::parse(std::string_view text) {
  const auto caret = text.find("^(1/");
  if (caret == std::string_view::npos) return AlgebraicOdds(Rational::parse(text), 1);
  std::string_view base = text.substr(0, caret);
  std::string_view rest = text.substr(caret + 4);
  if (rest.empty() || rest.back() != ')') throw Error(ErrorCode::kParse, "bad odds: " + std::string(text));
  rest.remove_suffix(1);
  if (base.size() >= 2 && base.front() == '(' && base.back() == ')') {
    base.remove_prefix(1);
    base.remove_suffix(1);
  }
  BigInt d;
  if (!parse_integer(rest, d, false) || d == 0 || !d.fits_uint_p())
    throw Error(ErrorCode::kParse, "bad root degree: " + std::string(text));
  return AlgebraicOdds(Rational::parse(base), static_cast<unsigned>(d.get_ui()));
}

double AlgebraicOdds::approx() const {
  return std::pow(base_.to_double(), 1.0 / static_cast<double>(degree_));
}

std::strong_ordering cmp_algebraic(const AlgebraicOdds& a, const AlgebraicOdds& b) {
  const unsigned l = std::lcm(a.root_degree(), b.root_degree());
  return pow(a.base(), l / a.root_degree()) <=> pow(b.base(), l / b.root_degree());
}

std::strong_ordering cmp_algebraic(const AlgebraicOdds& a, const Rational& b) {
  if (b.sign() <= 0) return std::strong_ordering::greater;
  return a.base() <=> pow(b, a.root_degree());
}

Rational odds_from_p(const Rational& p) {
  if (p == Rational(1)) throw Error(ErrorCode::kDivisionAtOne, "odds undefined at p = 1");
  if (p.sign() < 0 || p > Rational(1)) throw Error(ErrorCode::kInvalidArgument, "p outside [0,1)");
  return p / (Rational(1) - p);
}

Rational p_from_odds(const Rational& t) { return t / (Rational(1) + t); }

std::strong_ordering compare_binomial_mass(unsigned n, unsigned x, unsigned y,
                                           const AlgebraicOdds& t) {
  if (x > n || y > n) throw Error(ErrorCode::kIndexOutOfRange, "outcome outside [0,n]");
  if (x == y) return std::strong_ordering::equal;
  if (x > y) return 0 <=> compare_binomial_mass(n, y, x, t);
  // C(n,x) t^x vs C(n,y) t^y  <=>  C(n,x)^d vs C(n,y)^d base^(y-x)
  const unsigned d = t.root_degree();
  const Rational lhs(pow(binomial_coeff(n, x), d));
  const Rational rhs = Rational(pow(binomial_coeff(n, y), d)) * pow(t.base(), y - x);
  return lhs <=> rhs;
}

namespace {

BigInt floor_of(const AlgebraicOdds& t) {
  // largest m >= 0 with m <= t
  BigInt hi = 1;
  while (cmp_algebraic(t, Rational(hi)) >= 0) hi *= 2;
  BigInt lo = 0;  // lo <= t < hi
  while (hi - lo > 1) {
    BigInt mid = (lo + hi) / 2;
    if (cmp_algebraic(t, Rational(mid)) >= 0) lo = mid; else hi = mid;
  }
  return lo;
}

struct Frac {
  BigInt n, d;
};

}  // namespace

RationalBracket bracket(const AlgebraicOdds& t, const Rational& width) {
  if (t.is_rational()) return {t.base(), t.base()};
  Rational lo(floor_of(t));
  Rational hi = lo + Rational(1);
  if (cmp_algebraic(t, lo) == 0) return {lo, lo};
  while (hi - lo > width) {
    Rational mid = (lo + hi) / Rational(2);
    const auto c = cmp_algebraic(t, mid);
    if (c == 0) return {mid, mid};
    if (c > 0) lo = mid; else hi = mid;
  }
  return {lo, hi};
}

Rational rational_above(const AlgebraicOdds& a) { return Rational(floor_of(a) + 1); }

Rational rational_between(const AlgebraicOdds& a, const AlgebraicOdds& b) {
  if (cmp_algebraic(a, b) >= 0) throw Error(ErrorCode::kInvalidArgument, "rational_between needs a < b");
  // Stern-Brocot descent with galloping along runs of equal direction.
  Frac lo{0, 1}, hi{1, 0};
  auto value = [](const Frac& f) { return Rational(f.n, f.d); };
  for (;;) {
    const Frac m{lo.n + hi.n, lo.d + hi.d};
    const Rational mv = value(m);
    if (cmp_algebraic(a, mv) < 0 && cmp_algebraic(b, mv) > 0) return mv;
    const bool go_right = cmp_algebraic(a, mv) >= 0;
    auto step = [&](const BigInt& k) {
      return go_right ? Frac{lo.n + k * hi.n, lo.d + k * hi.d} : Frac{k * lo.n + hi.n, k * lo.d + hi.d};
    };
    auto still_outside = [&](const BigInt& k) {
      const Rational v = value(step(k));
      return go_right ? cmp_algebraic(a, v) >= 0 : cmp_algebraic(b, v) <= 0;
    };
    BigInt good = 1, bad = 2;
    while (still_outside(bad)) {
      good = bad;
      bad *= 2;
    }
    while (bad - good > 1) {
      BigInt mid = (good + bad) / 2;
      if (still_outside(mid)) good = mid; else bad = mid;
    }
    if (go_right) lo = step(good); else hi = step(good);
  }
}

}  // namespace puresig
