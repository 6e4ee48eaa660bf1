#include "baire/functions.hpp"

#include <algorithm>

#include "baire/errors.hpp"

namespace baire {

std::function<std::optional<unsigned>(const Rational&, unsigned)> osc_witness_from(
    std::function<OscillationValue(const Rational&)> osc) {
  return [osc = std::move(osc)](const Rational& q, unsigned budget) -> std::optional<unsigned> {
    OscillationValue v = osc(q);
    if (v.exact_rational) {
      if (v.exact_rational->sign() <= 0) return std::nullopt;
      unsigned m = dyadic_floor_exponent(*v.exact_rational);
      if (m > budget) return std::nullopt;
      return m;
    }
    for (unsigned k = 0; k <= budget; ++k) {
      Rational lower = v.value.approx(k) - Rational::dyadic(k);
      if (lower.sign() > 0) return dyadic_floor_exponent(lower);
    }
    return std::nullopt;
  };
}

EnrichedBaire1 thomae() {
  EnrichedBaire1 f;
  f.name = "thomae";
  auto value = [](const Rational& q) { return Rational(BigInt(1), q.denominator()); };
  f.eval_at_rational = [value](const Rational& q) { return ExactReal::from_rational(value(q)); };
  f.osc_at_rational = [value](const Rational& q) {
    Rational v = value(q);
    return OscillationValue{ExactReal::from_rational(v), v};
  };
  f.osc_positive_witness = osc_witness_from(f.osc_at_rational);
  f.osc_zero_decision = [](const Rational&) { return false; };
  f.complement_of_Dk = [](unsigned k) {
    BigInt order;
    mpz_ui_pow_ui(order.get_mpz_t(), 2, k);
    return OpenR2::from_geometry(SetGeometry::complement_of_farey(order));
  };
  return f;
}

std::vector<Rational> thomae_Dk(unsigned k) {
  if (k >= 32) throw Error("thomae_Dk listing is only practical for small k");
  return farey_sequence(std::uint64_t{1} << k);
}

EnrichedBaire1 make_h(ClosedNowhereDenseSeq sets) {
  EnrichedBaire1 f;
  f.name = "h";
  auto least = sets.least_index;
  auto value = [least](const Rational& q) -> Rational {
    if (!least) throw NeedsMembershipDecision();
    if (q.sign() < 0 || q > Rational(1)) return Rational(0);
    auto n = least(q);
    return n ? Rational::dyadic(*n + 1) : Rational(0);
  };
  f.eval_at_rational = [value](const Rational& q) { return ExactReal::from_rational(value(q)); };
  f.osc_at_rational = [value](const Rational& q) {
    Rational v = value(q);
    return OscillationValue{ExactReal::from_rational(v), v};
  };
  f.osc_positive_witness = osc_witness_from(f.osc_at_rational);
  if (least) f.osc_zero_decision = [value](const Rational& q) { return value(q).is_zero(); };
  auto complement_at = sets.complement_at;
  f.complement_of_Dk = [complement_at](unsigned k) {
    if (k == 0) return OpenR2::full();
    std::vector<OpenR2> parts;
    parts.reserve(k);
    for (unsigned n = 0; n < k; ++n) parts.push_back(r4_to_r2(complement_at(n)));
    return OpenR2::intersection(parts);
  };
  return f;
}

EnrichedBaire1 finite_indicator(std::vector<Rational> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  auto shared = std::make_shared<const std::vector<Rational>>(std::move(points));
  EnrichedBaire1 f;
  f.name = "finite-indicator";
  auto value = [shared](const Rational& q) {
    return Rational(std::binary_search(shared->begin(), shared->end(), q) ? 1 : 0);
  };
  f.eval_at_rational = [value](const Rational& q) { return ExactReal::from_rational(value(q)); };
  f.osc_at_rational = [value](const Rational& q) {
    Rational v = value(q);
    return OscillationValue{ExactReal::from_rational(v), v};
  };
  f.osc_positive_witness = osc_witness_from(f.osc_at_rational);
  f.osc_zero_decision = [value](const Rational& q) { return value(q).is_zero(); };
  auto witness = OpenR2::complement_of_points(*shared);
  f.complement_of_Dk = [witness](unsigned) { return witness; };
  return f;
}

OpenR4 complement_r4(std::vector<Rational> points) {
  std::vector<Rational> inside;
  for (auto& p : points)
    if (p.sign() >= 0 && p <= Rational(1)) inside.push_back(std::move(p));
  std::sort(inside.begin(), inside.end());
  inside.erase(std::unique(inside.begin(), inside.end()), inside.end());
  std::vector<RationalInterval> gaps;
  if (inside.empty()) return OpenR4::finite({RationalInterval(Rational(-1), Rational(2))});
  if (inside.front().sign() > 0) gaps.emplace_back(Rational(-1), inside.front());
  for (std::size_t i = 0; i + 1 < inside.size(); ++i) gaps.emplace_back(inside[i], inside[i + 1]);
  if (inside.back() < Rational(1)) gaps.emplace_back(inside.back(), Rational(2));
  return OpenR4::finite(std::move(gaps));
}

ClosedNowhereDenseSeq dyadic_levels() {
  ClosedNowhereDenseSeq seq;
  seq.complement_at = [](unsigned n) {
    // Gaps between consecutive odd multiples of 2^{-(n+1)}, listed lazily.
    Rational step = Rational::dyadic(n + 1);
    BigInt count;  // number of points: 2^n
    mpz_ui_pow_ui(count.get_mpz_t(), 2, n);
    OpenR4 r4(
        [step, count](std::size_t i) -> std::optional<RationalInterval> {
          BigInt idx(static_cast<unsigned long>(i));
          if (idx > count) return std::nullopt;
          Rational left = i == 0 ? Rational(-1) : step * Rational(2 * idx - 1, BigInt(1));
          Rational right = idx == count ? Rational(2) : step * Rational(2 * idx + 1, BigInt(1));
          return RationalInterval(left, right);
        },
        n < 62 ? std::optional<std::size_t>((std::size_t{1} << n) + 1) : std::nullopt);
    return r4.with_geometry(SetGeometry::complement_of_grid(step, Rational::dyadic(n)));
  };
  auto least = [](const Rational& q) -> std::optional<unsigned> {
    if (!(q.sign() > 0 && q < Rational(1))) return std::nullopt;
    const BigInt den = q.denominator();
    if (mpz_popcount(den.get_mpz_t()) != 1) return std::nullopt;
    auto bits = static_cast<unsigned>(mpz_sizeinbase(den.get_mpz_t(), 2));  // den = 2^{bits-1}
    return bits - 2;
  };
  seq.least_index = least;
  seq.membership_decision = [least](const Rational& q, unsigned n) {
    auto i = least(q);
    return i && *i == n;
  };
  return seq;
}

ClosedNowhereDenseSeq finite_closed_sets(std::vector<std::vector<Rational>> sets) {
  for (auto& s : sets) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  auto shared = std::make_shared<const std::vector<std::vector<Rational>>>(std::move(sets));
  ClosedNowhereDenseSeq seq;
  seq.complement_at = [shared](unsigned n) {
    return complement_r4(n < shared->size() ? (*shared)[n] : std::vector<Rational>{});
  };
  seq.membership_decision = [shared](const Rational& q, unsigned n) {
    return n < shared->size() && std::binary_search((*shared)[n].begin(), (*shared)[n].end(), q);
  };
  seq.least_index = [shared](const Rational& q) -> std::optional<unsigned> {
    for (std::size_t n = 0; n < shared->size(); ++n)
      if (std::binary_search((*shared)[n].begin(), (*shared)[n].end(), q))
        return static_cast<unsigned>(n);
    return std::nullopt;
  };
  return seq;
}

Rational brute_force_osc(const std::function<Rational(const Rational&)>& f, const Rational& q,
                         unsigned window, unsigned grid) {
  if (grid < window) throw Error("brute_force_osc needs grid >= window");
  const long half = 1L << (grid - window);
  const Rational step = Rational::dyadic(grid);
  std::optional<Rational> lo, hi;
  for (long i = -half; i <= half; ++i) {
    Rational x = q + Rational(i) * step;
    if (x.sign() < 0 || x > Rational(1)) continue;
    Rational v = f(x);
    if (!lo || v < *lo) lo = v;
    if (!hi || *hi < v) hi = v;
  }
  if (!lo) return Rational(0);
  return *hi - *lo;
}

std::function<Rational(const Rational&)> exact_evaluator(const EnrichedBaire1& f) {
  auto eval = f.eval_at_rational;
  return [eval](const Rational& q) {
    ExactReal v = eval(q);
    if (!v.exact()) throw Error("function value is not an exact rational");
    return *v.exact();
  };
}

}  // namespace baire
