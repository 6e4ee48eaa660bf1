#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <utility>
#include <vector>

#include "baire/exact_real.hpp"

namespace baire {

/// The simplest rational (least denominator, then least absolute numerator)
/// strictly inside the open interval (lo, hi). Requires lo < hi.
Rational simplest_rational(const Rational& lo, const Rational& hi);

/// n-th element of the canonical enumeration of Q ∩ [0,1]:
/// 0, 1, then the Stern-Brocot tree on (0,1) in breadth-first order
/// (1/2, 1/3, 2/3, 1/4, 2/5, 3/5, 3/4, ...). Duplicate-free.
Rational canonical_rational(std::uint64_t n);

/// Canonical enumeration restricted to an open interval: 0 and 1 first when
/// they lie inside, then the Stern-Brocot order restricted to the interval,
/// produced as a breadth-first walk where each node is the simplest rational
/// of its sub-interval. Deterministic, duplicate-free, dense in the interval.
class IntervalRationals {
 public:
  explicit IntervalRationals(const RationalInterval& interval);
  Rational next();

 private:
  std::vector<Rational> prefix_;
  std::size_t prefix_pos_ = 0;
  std::deque<std::pair<Rational, Rational>> frontier_;
};

/// Nearest fractions with denominator <= order on either side of x in [0,1].
/// If x itself has denominator <= order, both neighbours equal x.
struct FareyNeighbours {
  Rational below;
  Rational above;
};
FareyNeighbours farey_neighbours(const Rational& x, const BigInt& order);

/// Distance from x to the nearest fraction in [0,1] with denominator <= order
/// (0 when x itself is one, or x lies outside [0,1]).
Rational farey_distance(const Rational& x, const BigInt& order);

/// All canonical fractions in [0,1] with denominator <= order, ascending.
std::vector<Rational> farey_sequence(std::uint64_t order);

/// Cantor pairing and its inverse.
std::uint64_t cantor_pair(std::uint64_t a, std::uint64_t b);
std::pair<std::uint64_t, std::uint64_t> cantor_unpair(std::uint64_t n);

}  // namespace baire
