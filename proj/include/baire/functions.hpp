#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "baire/exact_real.hpp"
#include "baire/open_sets.hpp"

namespace baire {

/// osc_f(x) as an exact real, with the rational value when it is known.
struct OscillationValue {
  ExactReal value;
  std::optional<Rational> exact_rational;
};

/// A Baire 1 function on [0,1] given together with its oscillation data.
///
/// Reductions never evaluate f at irrational points. They consume the
/// oscillation at rational probes and the R.2 witnesses for
/// O_k = [0,1] \ D_k, where D_k = {x : osc_f(x) >= 2^{-k}}.
struct EnrichedBaire1 {
  std::string name;
  std::function<ExactReal(const Rational&)> eval_at_rational;
  std::function<OscillationValue(const Rational&)> osc_at_rational;
  /// Some m with osc_f(q) >= 2^{-m}, searching precisions up to budget.
  std::function<std::optional<unsigned>(const Rational&, unsigned budget)> osc_positive_witness;
  /// Instance-supplied decision of osc_f(q) = 0; empty when unavailable.
  std::function<bool(const Rational&)> osc_zero_decision;
  std::function<OpenR2(unsigned k)> complement_of_Dk;
};

/// Derives osc_positive_witness from osc_at_rational: the least m with
/// 2^{-m} <= osc when the value is exactly rational, otherwise the first
/// certified lower bound approx(k) - 2^{-k} > 0.
std::function<std::optional<unsigned>(const Rational&, unsigned)> osc_witness_from(
    std::function<OscillationValue(const Rational&)> osc);

/// Closed nowhere dense sets X_n given by their open complements.
struct ClosedNowhereDenseSeq {
  std::function<OpenR4(unsigned n)> complement_at;
  /// q ∈ X_n, when the instance can decide it.
  std::function<bool(const Rational&, unsigned n)> membership_decision;
  /// Least n with q ∈ X_n, or nullopt when q lies in no X_n.
  std::function<std::optional<unsigned>(const Rational&)> least_index;
};

/// Thomae's function: 1/q at p/q in lowest terms, 0 at irrationals.
EnrichedBaire1 thomae();

/// {x ∈ [0,1] : osc_T(x) >= 2^{-k}}: the fractions with denominator <= 2^k.
std::vector<Rational> thomae_Dk(unsigned k);

/// h(x) = 2^{-(n+1)} for the least n with x ∈ X_n, else 0. h is its own
/// oscillation, so D_k = X_0 ∪ ... ∪ X_{k-1} and D_0 = ∅.
EnrichedBaire1 make_h(ClosedNowhereDenseSeq sets);

/// Indicator of a finite set X: its own oscillation, D_k = X for all k.
EnrichedBaire1 finite_indicator(std::vector<Rational> points);

/// X_n = odd multiples of 2^{-(n+1)} in (0,1): X_0 = {1/2}, X_1 = {1/4, 3/4}, ...
ClosedNowhereDenseSeq dyadic_levels();

/// Finite sets X_n listed explicitly; X_n = ∅ beyond the list.
ClosedNowhereDenseSeq finite_closed_sets(std::vector<std::vector<Rational>> sets);

/// R.4 representation of [0,1] minus a finite point set: the open gaps
/// between consecutive points, with the outer gaps extended past 0 and 1.
OpenR4 complement_r4(std::vector<Rational> points);

/// max - min of f over the grid {q + i 2^{-grid} : |i 2^{-grid}| <= 2^{-window}} ∩ [0,1].
/// A finite approximation of osc_f(q), used as a test and verification oracle.
Rational brute_force_osc(const std::function<Rational(const Rational&)>& f, const Rational& q,
                         unsigned window, unsigned grid);

/// f restricted to rationals where its values are exact rationals.
std::function<Rational(const Rational&)> exact_evaluator(const EnrichedBaire1& f);

}  // namespace baire
