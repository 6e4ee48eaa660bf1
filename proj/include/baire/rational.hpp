#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace baire {

using BigInt = mpz_class;

/// Exact rational number, always kept in canonical form: the denominator is
/// positive and coprime to the numerator.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(implicit)
  Rational(const BigInt& numerator, const BigInt& denominator);
  Rational(long numerator, long denominator)
      : Rational(BigInt(numerator), BigInt(denominator)) {}
  explicit Rational(mpq_class value) : value_(std::move(value)) {
    value_.canonicalize();
  }

  /// Accepts "p/q" or "p" with optional leading sign.
  static Rational parse(std::string_view text);

  /// 2^{-k}.
  static Rational dyadic(unsigned k);
  /// 2^{e} for any signed exponent.
  static Rational pow2(long e);

  BigInt numerator() const { return value_.get_num(); }
  BigInt denominator() const { return value_.get_den(); }

  /// Always "p/q", including "0/1" and "3/1".
  std::string to_string() const;
  /// Truncated decimal expansion, for human-facing output only.
  std::string to_decimal(unsigned digits = 12) const;
  double to_double() const { return value_.get_d(); }

  BigInt floor() const;
  BigInt ceil() const;
  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return value_.get_den() == 1; }

  Rational abs() const { return Rational(mpq_class(::abs(value_))); }
  Rational reciprocal() const;

  const mpq_class& raw() const { return value_; }

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) {
    return Rational(mpq_class(-a.value_));
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return cmp(a.value_, b.value_) == 0;
  }
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) {
    int c = cmp(a.value_, b.value_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  mpq_class value_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& q);

inline Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }
inline Rational midpoint(const Rational& a, const Rational& b) {
  return (a + b) / Rational(2);
}

/// Least m >= 0 with 2^{-m} <= r. Requires r > 0.
unsigned dyadic_floor_exponent(const Rational& r);

}  // namespace baire
