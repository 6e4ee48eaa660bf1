#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "baire/rational.hpp"

namespace baire {

/// Open interval (lo, hi) with rational endpoints, lo < hi.
struct RationalInterval {
  Rational lo;
  Rational hi;

  RationalInterval(Rational lo_, Rational hi_);

  Rational width() const { return hi - lo; }
  Rational center() const { return midpoint(lo, hi); }
  bool contains(const Rational& q) const { return lo < q && q < hi; }
  bool closure_contains(const Rational& q) const { return lo <= q && q <= hi; }
  /// (lo, hi) ⊆ other
  bool subset_of(const RationalInterval& other) const {
    return other.lo <= lo && hi <= other.hi;
  }
  /// [lo, hi] ⊆ other, with other open.
  bool closure_subset_of(const RationalInterval& other) const {
    return other.lo < lo && hi < other.hi;
  }

  friend bool operator==(const RationalInterval&, const RationalInterval&) = default;
};

/// A real number coded as a fast-converging Cauchy sequence of rationals:
/// |approx(n) - approx(n+i)| <= 2^{-n} for all n, i. Hence
/// |approx(k) - x| <= 2^{-k} for the represented x.
///
/// Values are immutable and cheap to copy; the approximation function is
/// shared and must be pure.
class ExactReal {
 public:
  using Approximation = std::function<Rational(unsigned)>;

  ExactReal() : ExactReal(from_rational(Rational(0))) {}

  /// Trusted constructor: the caller guarantees the Cauchy bound.
  static ExactReal from_approximation(Approximation fn);
  static ExactReal from_rational(Rational q);
  /// Kohlenbach-style normalisation of an arbitrary rational stream: the
  /// stream is followed while its prefix obeys the Cauchy bound and frozen
  /// at the last consistent term otherwise. Always yields a valid real.
  static ExactReal hat(Approximation raw);
  /// Limit of nested intervals with width(I_n) <= 2^{-n}; approx(k) is the
  /// center of I_{k+1}.
  static ExactReal from_nested_intervals(std::function<RationalInterval(unsigned)> intervals);

  Rational approx(unsigned k) const;
  /// Set when the value is known to be exactly this rational.
  const std::optional<Rational>& exact() const { return exact_; }

 private:
  explicit ExactReal(std::shared_ptr<const Approximation> fn,
                     std::optional<Rational> exact)
      : fn_(std::move(fn)), exact_(std::move(exact)) {}

  std::shared_ptr<const Approximation> fn_;
  std::optional<Rational> exact_;
};

enum class ArithOp { Add, Sub, Neg, Abs, Min, Max, Midpoint };

ExactReal add(const ExactReal& x, const ExactReal& y);
ExactReal sub(const ExactReal& x, const ExactReal& y);
ExactReal neg(const ExactReal& x);
ExactReal abs(const ExactReal& x);
ExactReal min(const ExactReal& x, const ExactReal& y);
ExactReal max(const ExactReal& x, const ExactReal& y);
ExactReal midpoint(const ExactReal& x, const ExactReal& y);
/// Dispatcher; unary operations ignore y.
ExactReal arith(ArithOp op, const ExactReal& x, const ExactReal& y = ExactReal());

struct Comparison {
  enum class Kind { Less, Greater, Indistinguishable };
  Kind kind;
  unsigned precision;

  bool less() const { return kind == Kind::Less; }
  bool greater() const { return kind == Kind::Greater; }
  bool indistinguishable() const { return kind == Kind::Indistinguishable; }
};

/// Less iff approx(x,k+2) + 2^{-(k+1)} < approx(y,k+2); Greater symmetric.
/// Less and Greater are always sound for the represented reals.
Comparison cmp_at_precision(const ExactReal& x, const ExactReal& y, unsigned k);

/// Least m (tried upwards from 0) with |approx(x,m) - approx(y,m)| > 2^{-m+1},
/// which certifies x != y. Without a budget this diverges on equal inputs;
/// with one it throws BudgetExhausted after trying m = 0..budget.
unsigned separation_certificate(const ExactReal& x, const ExactReal& y,
                                std::optional<unsigned> budget = std::nullopt);

/// Least m <= max_precision with |approx(x,m) - target| > 2 * 2^{-m}, the
/// separation test used for rational targets throughout the realisers.
std::optional<unsigned> separation_precision(const ExactReal& x, const Rational& target,
                                             unsigned max_precision);

}  // namespace baire
