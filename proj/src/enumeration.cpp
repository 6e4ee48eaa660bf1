#include "baire/enumeration.hpp"

#include "baire/errors.hpp"

namespace baire {

namespace {

// Simplest rational in (lo, hi) for 0 <= lo; hi == nullopt means +infinity.
Rational simplest_nonnegative(const Rational& lo, const std::optional<Rational>& hi) {
  BigInt fl = lo.floor();
  Rational next_integer(fl + 1, BigInt(1));
  if (!hi || next_integer < *hi) return next_integer;
  Rational base(fl, BigInt(1));
  Rational lo_frac = lo - base;
  Rational hi_frac = *hi - base;
  std::optional<Rational> inner_hi;
  if (!lo_frac.is_zero()) inner_hi = lo_frac.reciprocal();
  return base + simplest_nonnegative(hi_frac.reciprocal(), inner_hi).reciprocal();
}

}  // namespace

Rational simplest_rational(const Rational& lo, const Rational& hi) {
  if (!(lo < hi)) throw Error("simplest_rational on empty interval");
  if (lo.sign() < 0 && hi.sign() > 0) return Rational(0);
  if (hi.sign() <= 0) return -simplest_nonnegative(-hi, -lo);
  return simplest_nonnegative(lo, hi);
}

Rational canonical_rational(std::uint64_t n) {
  if (n == 0) return Rational(0);
  if (n == 1) return Rational(1);
  std::uint64_t j = n - 2 + 1;  // 1-based position in the breadth-first order
  unsigned level = 63 - static_cast<unsigned>(__builtin_clzll(j));
  std::uint64_t pos = j - (std::uint64_t{1} << level);
  BigInt a = 0, b = 1, c = 1, d = 1;  // left = a/b, right = c/d
  for (unsigned bit = level; bit-- > 0;) {
    BigInt p = a + c, q = b + d;
    if ((pos >> bit) & 1U) {
      a = p;
      b = q;
    } else {
      c = p;
      d = q;
    }
  }
  return Rational(a + c, b + d);
}

IntervalRationals::IntervalRationals(const RationalInterval& interval) {
  if (interval.contains(Rational(0))) prefix_.emplace_back(0);
  if (interval.contains(Rational(1))) prefix_.emplace_back(1);
  Rational lo = max(interval.lo, Rational(0));
  Rational hi = min(interval.hi, Rational(1));
  if (lo < hi) frontier_.emplace_back(lo, hi);
}

Rational IntervalRationals::next() {
  if (prefix_pos_ < prefix_.size()) return prefix_[prefix_pos_++];
  if (frontier_.empty()) throw Error("empty interval has no rationals");
  auto [lo, hi] = std::move(frontier_.front());
  frontier_.pop_front();
  Rational s = simplest_rational(lo, hi);
  frontier_.emplace_back(lo, s);
  frontier_.emplace_back(s, hi);
  return s;
}

FareyNeighbours farey_neighbours(const Rational& x, const BigInt& order) {
  if (x.sign() < 0 || x > Rational(1)) throw Error("farey_neighbours outside [0,1]");
  if (x.denominator() <= order) return {x, x};
  BigInt a = 0, b = 1, c = 1, d = 1;
  const BigInt xn = x.numerator(), xd = x.denominator();
  while (b + d <= order) {
    // Compare x with the mediant (a+c)/(b+d).
    if (xn * (b + d) < (a + c) * xd) {
      // Move the right end towards the left: R_t = (a t + c) / (b t + d).
      // R_t > x  <=>  t < (c - x d) / (x b - a).
      Rational ratio = (Rational(c) - x * Rational(d)) / (x * Rational(b) - Rational(a));
      BigInt t = ratio.ceil() - 1;
      BigInt t_order = (order - d) / b;
      if (t_order < t) t = t_order;
      c = a * t + c;
      d = b * t + d;
    } else {
      Rational ratio = (x * Rational(b) - Rational(a)) / (Rational(c) - x * Rational(d));
      BigInt t = ratio.ceil() - 1;
      BigInt t_order = (order - b) / d;
      if (t_order < t) t = t_order;
      a = a + c * t;
      b = b + d * t;
    }
  }
  return {Rational(a, b), Rational(c, d)};
}

Rational farey_distance(const Rational& x, const BigInt& order) {
  if (x.sign() < 0 || x > Rational(1)) return Rational(0);
  auto nb = farey_neighbours(x, order);
  if (nb.below == x) return Rational(0);
  return min(x - nb.below, nb.above - x);
}

std::vector<Rational> farey_sequence(std::uint64_t order) {
  std::vector<Rational> out;
  if (order == 0) return out;
  std::uint64_t a = 0, b = 1, c = 1, d = order;
  out.emplace_back(0);
  while (c <= order) {
    std::uint64_t k = (order + b) / d;
    std::uint64_t e = k * c - a, f = k * d - b;
    a = c;
    b = d;
    c = e;
    d = f;
    out.emplace_back(static_cast<long>(a), static_cast<long>(b));
  }
  return out;
}

std::uint64_t cantor_pair(std::uint64_t a, std::uint64_t b) {
  return (a + b) * (a + b + 1) / 2 + b;
}

std::pair<std::uint64_t, std::uint64_t> cantor_unpair(std::uint64_t n) {
  std::uint64_t w = 0;
  while ((w + 1) * (w + 2) / 2 <= n) ++w;
  std::uint64_t t = w * (w + 1) / 2;
  std::uint64_t b = n - t;
  return {w - b, b};
}

}  // namespace baire
