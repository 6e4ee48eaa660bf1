#include "baire/rational.hpp"

#include <ostream>

#include "baire/errors.hpp"

namespace baire {

Rational::Rational(const BigInt& numerator, const BigInt& denominator) {
  if (denominator == 0) throw Error("rational with zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  auto parse_int = [&](std::string_view s) {
    std::string_view digits = s;
    if (!digits.empty() && (digits.front() == '-' || digits.front() == '+'))
      digits.remove_prefix(1);
    if (digits.empty()) throw MalformedInstance("bad rational '" + std::string(text) + "'");
    for (char c : digits)
      if (c < '0' || c > '9')
        throw MalformedInstance("bad rational '" + std::string(text) + "'");
    std::string owned(s);
    if (owned.front() == '+') owned.erase(0, 1);
    return BigInt(owned, 10);
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text), BigInt(1));
  BigInt den = parse_int(text.substr(slash + 1));
  if (den == 0) throw MalformedInstance("zero denominator in '" + std::string(text) + "'");
  return Rational(parse_int(text.substr(0, slash)), den);
}

Rational Rational::dyadic(unsigned k) {
  BigInt den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, k);
  return Rational(BigInt(1), den);
}

Rational Rational::pow2(long e) {
  if (e >= 0) {
    BigInt num;
    mpz_ui_pow_ui(num.get_mpz_t(), 2, static_cast<unsigned long>(e));
    return Rational(num, BigInt(1));
  }
  return dyadic(static_cast<unsigned>(-e));
}

std::string Rational::to_string() const {
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::string Rational::to_decimal(unsigned digits) const {
  std::string out;
  mpq_class v = value_;
  if (sgn(v) < 0) {
    out += '-';
    v = -v;
  }
  BigInt whole = v.get_num() / v.get_den();
  BigInt rest = v.get_num() % v.get_den();
  out += whole.get_str();
  if (digits == 0) return out;
  out += '.';
  for (unsigned i = 0; i < digits; ++i) {
    rest *= 10;
    BigInt d = rest / v.get_den();
    rest %= v.get_den();
    out += static_cast<char>('0' + d.get_si());
  }
  return out;
}

BigInt Rational::floor() const {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return q;
}

BigInt Rational::ceil() const {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return q;
}

Rational Rational::reciprocal() const {
  if (is_zero()) throw Error("reciprocal of zero");
  return Rational(value_.get_den(), value_.get_num());
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error("division by zero");
  value_ /= o.value_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& q) {
  return os << q.to_string();
}

unsigned dyadic_floor_exponent(const Rational& r) {
  if (r.sign() <= 0) throw Error("dyadic_floor_exponent of non-positive value");
  if (r >= Rational(1)) return 0;
  // 2^{-m} <= r  <=>  den <= num * 2^m; start near the bit-length gap.
  std::size_t num_bits = mpz_sizeinbase(r.numerator().get_mpz_t(), 2);
  std::size_t den_bits = mpz_sizeinbase(r.denominator().get_mpz_t(), 2);
  unsigned m = den_bits > num_bits + 1 ? static_cast<unsigned>(den_bits - num_bits - 1) : 0;
  while (Rational::dyadic(m) > r) ++m;
  while (m > 0 && Rational::dyadic(m - 1) <= r) --m;
  return m;
}

}  // namespace baire
