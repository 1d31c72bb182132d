#pragma once

// Exact arithmetic substrate: arbitrary-precision rationals and odds of the
// form base^(1/d). Nothing in here ever rounds.

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "puresig/error.hpp"

namespace puresig {

using BigInt = mpz_class;

BigInt factorial(unsigned n);
BigInt binomial_coeff(unsigned n, unsigned k);
BigInt pow(const BigInt& base, unsigned exp);

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(const BigInt& num);  // NOLINT(google-explicit-constructor)
  Rational(const BigInt& num, const BigInt& den);
  Rational(long num, long den);

  BigInt num() const { return q_.get_num(); }
  BigInt den() const { return q_.get_den(); }
  int sign() const { return sgn(q_); }
  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const;

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  /// "num/den", always with an explicit denominator ("1/1", "0/1").
  std::string to_string() const;
  /// "3", "3/2": integers without the "/1".
  std::string to_compact_string() const;
  /// Parses "a/b" or a bare integer "a". Decimal and float syntax is rejected.
  static Rational parse(std::string_view text);

  double to_double() const { return q_.get_d(); }
  const mpq_class& raw() const { return q_; }

 private:
  mpq_class q_;
};

Rational pow(const Rational& base, unsigned exp);  // 0^0 = 1
Rational abs(const Rational& r);
std::ostream& operator<<(std::ostream& os, const Rational& r);

/// t = base^(1/root_degree) with base > 0. Not canonicalized: (9,2) and (3,1)
/// are distinct representations of the same real, compared with
/// cmp_algebraic.
class AlgebraicOdds {
 public:
  AlgebraicOdds(Rational base, unsigned root_degree = 1);

  const Rational& base() const { return base_; }
  unsigned root_degree() const { return degree_; }
  bool is_rational() const { return degree_ == 1; }

  /// "(u/v)^(1/d)".
  std::string to_string() const;
  static AlgebraicOdds parse(std::string_view text);
  /// Compact human form: "3", "3/2", "3^(1/2)", "(5/2)^(1/3)".
  std::string pretty() const;

  /// Real approximation, for reporting only.
  double approx() const;

 private:
  Rational base_;
  unsigned degree_;
};

std::strong_ordering cmp_algebraic(const AlgebraicOdds& a, const AlgebraicOdds& b);
std::strong_ordering cmp_algebraic(const AlgebraicOdds& a, const Rational& b);

/// p/(1-p) for 0 <= p < 1; p = 1 raises kDivisionAtOne.
Rational odds_from_p(const Rational& p);
/// t/(1+t), the inverse of odds_from_p.
Rational p_from_odds(const Rational& t);

/// Exact order of f_p(x) vs f_p(y) for Binomial(n, p) with odds t, i.e. of
/// C(n,x) t^x vs C(n,y) t^y.
std::strong_ordering compare_binomial_mass(unsigned n, unsigned x, unsigned y,
                                           const AlgebraicOdds& t);

/// Rationals lo <= t <= hi with hi - lo <= width. lo == hi == t when t is
/// rational.
struct RationalBracket {
  Rational lo;
  Rational hi;
};
RationalBracket bracket(const AlgebraicOdds& t, const Rational& width);

/// Some rational r with a < r < b. Requires a < b. Prefers small denominators
/// (Stern-Brocot descent).
Rational rational_between(const AlgebraicOdds& a, const AlgebraicOdds& b);
/// Some rational r > a.
Rational rational_above(const AlgebraicOdds& a);

}  // namespace puresig
