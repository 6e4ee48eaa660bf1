#include <doctest.h>

#include <random>

#include "baire/errors.hpp"
#include "baire/functions.hpp"
#include "oracles.hpp"

using namespace baire;

namespace {
Rational R(long p, long q = 1) { return Rational(p, q); }

std::vector<std::string> strs(const std::vector<Rational>& v) {
  std::vector<std::string> out;
  for (const auto& q : v) out.push_back(q.to_string());
  return out;
}
}  // namespace

TEST_CASE("Thomae values and oscillation") {
  EnrichedBaire1 t = thomae();
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    mpq_class q = oracle::random_rational(rng, 500);
    CHECK(t.eval_at_rational(Rational(q)).approx(8).raw() == oracle::thomae(q));
    auto osc = t.osc_at_rational(Rational(q));
    REQUIRE(osc.exact_rational);
    CHECK(osc.exact_rational->raw() == oracle::thomae(q));
    CHECK_FALSE(t.osc_zero_decision(Rational(q)));
  }
  CHECK(t.osc_positive_witness(R(1, 3), 10) == 2u);
  CHECK(t.osc_positive_witness(R(1, 4), 10) == 2u);
  CHECK(t.osc_positive_witness(R(0), 10) == 0u);
}

TEST_CASE("Thomae D_k") {
  CHECK(strs(thomae_Dk(0)) == std::vector<std::string>{"0/1", "1/1"});
  CHECK(strs(thomae_Dk(1)) == std::vector<std::string>{"0/1", "1/2", "1/1"});
  CHECK(strs(thomae_Dk(2)) ==
        std::vector<std::string>{"0/1", "1/4", "1/3", "1/2", "2/3", "3/4", "1/1"});
  for (unsigned k = 0; k < 6; ++k) {
    auto dk = thomae_Dk(k);
    auto f = oracle::farey(1L << k);
    REQUIRE(dk.size() == f.size());
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(dk[i].raw() == f[i]);
    OpenR2 o = thomae().complement_of_Dk(k);
    for (const auto& q : dk) CHECK(o.witness(q, 30).is_zero());
  }
  CHECK_THROWS(thomae_Dk(40));
}

TEST_CASE("brute-force oscillation matches frozen values") {
  auto t = exact_evaluator(thomae());
  CHECK(brute_force_osc(t, R(1, 3), 6, 12) == R(1365, 4096));
  auto f = exact_evaluator(finite_indicator({R(1, 3)}));
  CHECK(brute_force_osc(f, R(1, 3), 6, 12) == R(1));
  CHECK(brute_force_osc(f, R(1, 2), 6, 12) == R(0));
}

TEST_CASE("h over the dyadic levels") {
  EnrichedBaire1 h = make_h(dyadic_levels());
  CHECK(h.eval_at_rational(R(1, 2)).approx(4) == R(1, 2));
  CHECK(h.eval_at_rational(R(1, 4)).approx(4) == R(1, 4));
  CHECK(h.eval_at_rational(R(3, 8)).approx(4) == R(1, 8));
  CHECK(h.eval_at_rational(R(1, 3)).approx(4) == R(0));
  CHECK(h.eval_at_rational(R(0)).approx(4) == R(0));
  CHECK(h.osc_zero_decision(R(1, 3)));
  CHECK_FALSE(h.osc_zero_decision(R(5, 16)));
  // D_0 is empty, D_2 = {1/4, 1/2, 3/4}.
  CHECK(h.complement_of_Dk(0).witness(R(1, 2), 5) > R(0));
  OpenR2 o2 = h.complement_of_Dk(2);
  for (const auto& q : {R(1, 4), R(1, 2), R(3, 4)}) CHECK(o2.witness(q, 20).is_zero());
  CHECK(o2.witness(R(3, 8), 20) == R(1, 8));
  CHECK(o2.witness(R(1, 8), 20) == R(1, 8));
}

TEST_CASE("h needs a membership decision") {
  ClosedNowhereDenseSeq bare{[](unsigned) { return complement_r4({R(1, 2)}); }, nullptr, nullptr};
  // Construction is lazy; evaluation is what needs the hook.
  EnrichedBaire1 h = make_h(bare);
  CHECK_THROWS_AS(h.eval_at_rational(R(1, 3)), NeedsMembershipDecision);
  CHECK(h.complement_of_Dk(2).witness(R(1, 3), 0) > R(0));
}

TEST_CASE("h over explicit finite sets") {
  EnrichedBaire1 h = make_h(finite_closed_sets({{R(1, 3)}, {R(1, 5), R(1, 3)}}));
  CHECK(h.eval_at_rational(R(1, 3)).approx(3) == R(1, 2));
  CHECK(h.eval_at_rational(R(1, 5)).approx(3) == R(1, 4));
  CHECK(h.eval_at_rational(R(1, 7)).approx(3) == R(0));
  auto f = exact_evaluator(h);
  CHECK(brute_force_osc(f, R(1, 5), 4, 10) == R(1, 4));
}

TEST_CASE("finite indicator") {
  EnrichedBaire1 f = finite_indicator({R(2, 3), R(1, 3), R(2, 3)});
  CHECK(f.eval_at_rational(R(1, 3)).approx(2) == R(1));
  CHECK(f.eval_at_rational(R(1, 2)).approx(2) == R(0));
  CHECK(f.osc_zero_decision(R(1, 2)));
  CHECK_FALSE(f.osc_zero_decision(R(2, 3)));
  for (unsigned k : {0u, 3u, 9u}) {
    OpenR2 o = f.complement_of_Dk(k);
    CHECK(o.witness(R(1, 2), 0) == R(1, 6));
    CHECK(o.witness(R(1, 3), 0).is_zero());
  }
}

TEST_CASE("complement_r4 of a finite set") {
  OpenR4 o = complement_r4({R(1, 2), R(1, 4)});
  auto l = o.prefix(10);
  REQUIRE(l.size() == 3);
  CHECK(l[0] == RationalInterval(R(-1), R(1, 4)));
  CHECK(l[1] == RationalInterval(R(1, 4), R(1, 2)));
  CHECK(l[2] == RationalInterval(R(1, 2), R(2)));
  auto e = complement_r4({}).prefix(3);
  REQUIRE(e.size() == 1);
  CHECK(e[0] == RationalInterval(R(-1), R(2)));
}

TEST_CASE("dyadic levels") {
  auto x = dyadic_levels();
  CHECK(x.membership_decision(R(1, 2), 0));
  CHECK(x.membership_decision(R(3, 4), 1));
  CHECK_FALSE(x.membership_decision(R(1, 2), 1));
  CHECK(x.least_index(R(5, 16)) == 3u);
  CHECK(x.least_index(R(1, 3)) == std::nullopt);
  CHECK(x.least_index(R(0)) == std::nullopt);
  OpenR4 o1 = x.complement_at(1);
  auto first = o1.prefix(3);
  REQUIRE(first.size() == 3);
  CHECK(first[1] == RationalInterval(R(1, 4), R(3, 4)));
}

TEST_CASE("osc witness from an inexact value") {
  auto osc = osc_witness_from([](const Rational&) {
    return OscillationValue{ExactReal::from_approximation([](unsigned k) { return R(1, 3) + Rational::dyadic(k + 2); }),
                            std::nullopt};
  });
  auto m = osc(R(0), 20);
  REQUIRE(m);
  CHECK(Rational::dyadic(*m) <= R(1, 3));
  auto zero = osc_witness_from([](const Rational&) {
    return OscillationValue{ExactReal::from_rational(R(0)), R(0)};
  });
  CHECK_FALSE(zero(R(0), 20));
}
