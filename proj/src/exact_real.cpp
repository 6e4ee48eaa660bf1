#include "baire/exact_real.hpp"

#include "baire/errors.hpp"

namespace baire {

RationalInterval::RationalInterval(Rational lo_, Rational hi_)
    : lo(std::move(lo_)), hi(std::move(hi_)) {
  if (!(lo < hi))
    throw Error("degenerate interval (" + lo.to_string() + ", " + hi.to_string() + ")");
}

ExactReal ExactReal::from_approximation(Approximation fn) {
  return ExactReal(std::make_shared<const Approximation>(std::move(fn)), std::nullopt);
}

ExactReal ExactReal::from_rational(Rational q) {
  return ExactReal(std::make_shared<const Approximation>([q](unsigned) { return q; }), q);
}

ExactReal ExactReal::hat(Approximation raw) {
  return from_approximation([raw = std::move(raw)](unsigned n) {
    std::vector<Rational> terms;
    terms.reserve(n + 1);
    terms.push_back(raw(0));
    for (unsigned j = 1; j <= n; ++j) {
      Rational next = raw(j);
      for (unsigned i = 0; i < j; ++i) {
        if ((terms[i] - next).abs() > Rational::dyadic(i)) return terms.back();
      }
      terms.push_back(std::move(next));
    }
    return terms.back();
  });
}

ExactReal ExactReal::from_nested_intervals(std::function<RationalInterval(unsigned)> intervals) {
  return from_approximation(
      [intervals = std::move(intervals)](unsigned k) { return intervals(k + 1).center(); });
}

Rational ExactReal::approx(unsigned k) const { return (*fn_)(k); }

namespace {

std::optional<Rational> both_exact(const ExactReal& x, const ExactReal& y,
                                   Rational (*op)(const Rational&, const Rational&)) {
  if (x.exact() && y.exact()) return op(*x.exact(), *y.exact());
  return std::nullopt;
}

}  // namespace

ExactReal add(const ExactReal& x, const ExactReal& y) {
  if (auto e = both_exact(x, y, [](const Rational& a, const Rational& b) { return a + b; }))
    return ExactReal::from_rational(*e);
  return ExactReal::from_approximation(
      [x, y](unsigned k) { return x.approx(k + 1) + y.approx(k + 1); });
}

ExactReal neg(const ExactReal& x) {
  if (x.exact()) return ExactReal::from_rational(-*x.exact());
  return ExactReal::from_approximation([x](unsigned k) { return -x.approx(k); });
}

ExactReal sub(const ExactReal& x, const ExactReal& y) { return add(x, neg(y)); }

ExactReal abs(const ExactReal& x) {
  if (x.exact()) return ExactReal::from_rational(x.exact()->abs());
  return ExactReal::from_approximation([x](unsigned k) { return x.approx(k).abs(); });
}

ExactReal min(const ExactReal& x, const ExactReal& y) {
  if (auto e = both_exact(x, y, [](const Rational& a, const Rational& b) { return min(a, b); }))
    return ExactReal::from_rational(*e);
  return ExactReal::from_approximation(
      [x, y](unsigned k) { return min(x.approx(k), y.approx(k)); });
}

ExactReal max(const ExactReal& x, const ExactReal& y) {
  if (auto e = both_exact(x, y, [](const Rational& a, const Rational& b) { return max(a, b); }))
    return ExactReal::from_rational(*e);
  return ExactReal::from_approximation(
      [x, y](unsigned k) { return max(x.approx(k), y.approx(k)); });
}

ExactReal midpoint(const ExactReal& x, const ExactReal& y) {
  if (auto e = both_exact(x, y, [](const Rational& a, const Rational& b) { return midpoint(a, b); }))
    return ExactReal::from_rational(*e);
  return ExactReal::from_approximation(
      [x, y](unsigned k) { return midpoint(x.approx(k), y.approx(k)); });
}

ExactReal arith(ArithOp op, const ExactReal& x, const ExactReal& y) {
  switch (op) {
    case ArithOp::Add: return add(x, y);
    case ArithOp::Sub: return sub(x, y);
    case ArithOp::Neg: return neg(x);
    case ArithOp::Abs: return abs(x);
    case ArithOp::Min: return min(x, y);
    case ArithOp::Max: return max(x, y);
    case ArithOp::Midpoint: return midpoint(x, y);
  }
  throw Error("unknown arithmetic operation");
}

Comparison cmp_at_precision(const ExactReal& x, const ExactReal& y, unsigned k) {
  Rational a = x.approx(k + 2);
  Rational b = y.approx(k + 2);
  Rational slack = Rational::dyadic(k + 1);
  if (a + slack < b) return {Comparison::Kind::Less, k};
  if (b + slack < a) return {Comparison::Kind::Greater, k};
  return {Comparison::Kind::Indistinguishable, k};
}

unsigned separation_certificate(const ExactReal& x, const ExactReal& y,
                                std::optional<unsigned> budget) {
  for (unsigned m = 0;; ++m) {
    if (budget && m > *budget)
      throw BudgetExhausted("no separation up to precision " + std::to_string(*budget));
    Rational gap = (x.approx(m) - y.approx(m)).abs();
    if (gap > Rational::pow2(1 - static_cast<long>(m))) return m;
  }
}

std::optional<unsigned> separation_precision(const ExactReal& x, const Rational& target,
                                             unsigned max_precision) {
  for (unsigned m = 0; m <= max_precision; ++m) {
    if ((x.approx(m) - target).abs() > Rational(2) * Rational::dyadic(m)) return m;
  }
  return std::nullopt;
}

}  // namespace baire
