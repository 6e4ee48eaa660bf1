#include <doctest.h>

#include "baire/errors.hpp"
#include "baire/reductions.hpp"
#include "oracles.hpp"

using namespace baire;

namespace {
Rational R(long p, long q = 1) { return Rational(p, q); }

void check_apart(const TaggedPoint& p, std::size_t count) {
  REQUIRE(p.tag == TaggedPoint::Tag::ApartFromRationals);
  REQUIRE(p.apart_certifier);
  for (std::size_t n = 0; n < count; ++n) {
    auto c = p.apart_certifier(n);
    REQUIRE(c);
    CHECK(c->target == canonical_rational(n));
    CHECK((p.value.approx(c->precision) - c->target).abs() > R(2) * Rational::dyadic(c->precision));
  }
}

// Distance to D_k, for a point known through its approximants.
bool outside(const std::vector<Rational>& dk, const ExactReal& y) {
  for (const auto& q : dk)
    if (!certify_separation(y, q, 300)) return false;
  return true;
}
}  // namespace

TEST_CASE("tagged literals") {
  TaggedPoint t = TaggedPoint::rational(R(1, 3));
  CHECK(t.tag == TaggedPoint::Tag::RationalLiteral);
  CHECK(t.literal == R(1, 3));
  CHECK(std::string(tag_name(t.tag)) == "rational-literal");
}

TEST_CASE("continuity point of Thomae from the Baire realiser") {
  TaggedPoint p = continuity_point_from_baire(thomae(), builtin_baire(16), true);
  check_apart(p, 30);
  for (unsigned k = 0; k < 5; ++k) CHECK(outside(thomae_Dk(k), p.value));
  CHECK(p.stages.size() == 16);
}

TEST_CASE("round trip through the continuity oracle") {
  ClosedNowhereDenseSeq x = dyadic_levels();
  ContinuityPointOracle c = [](const EnrichedBaire1& f) {
    return continuity_point_from_baire(f, builtin_baire(16), true);
  };
  CertifiedPoint cp = baire_from_continuity(x, c, 16);
  REQUIRE(cp.memberships.size() == 16);
  for (const auto& m : cp.memberships) {
    auto geo = x.complement_at(static_cast<unsigned>(m.index)).geometry();
    REQUIRE(geo);
    CHECK(geo->contains_ball(m.center, m.radius));
    CHECK(m.radius > Rational::dyadic(m.precision));
    CHECK(m.center == cp.point.value.approx(m.precision));
  }
  // A continuity oracle that returns 1/2, a point of X_0.
  ContinuityPointOracle liar = [](const EnrichedBaire1&) { return TaggedPoint::rational(R(1, 2)); };
  CHECK_THROWS_AS(baire_from_continuity(x, liar, 4), CertificateFailure);
}

TEST_CASE("rational discontinuity search") {
  auto hit = rational_discontinuity_search(thomae(), 100);
  REQUIRE(hit);
  CHECK(hit->point == R(0));
  CHECK(hit->m == 0u);
  auto f = finite_indicator({R(2, 5)});
  auto h2 = rational_discontinuity_search(f, 1000);
  REQUIRE(h2);
  CHECK(h2->point == R(2, 5));
  CHECK(h2->index == 6u);
  CHECK_FALSE(rational_discontinuity_search(finite_indicator({}), 500));
}

TEST_CASE("Volterra answers") {
  auto d = volterra_from_baire(thomae(), builtin_baire(16), VolterraMode::Dovetail);
  REQUIRE(std::holds_alternative<RationalDiscontinuity>(d));
  CHECK(std::get<RationalDiscontinuity>(d).m == 0u);
  auto ir = volterra_from_baire(thomae(), builtin_baire(16), VolterraMode::ForceIrrational);
  REQUIRE(std::holds_alternative<IrrationalContinuity>(ir));
  check_apart(std::get<IrrationalContinuity>(ir).point, 20);
  // A function with no discontinuities at all: dovetail falls back.
  auto zero = volterra_from_baire(finite_indicator({}), builtin_baire(12), VolterraMode::Dovetail, 12, 200);
  CHECK(std::holds_alternative<IrrationalContinuity>(zero));
}

TEST_CASE("continuity from a Volterra oracle") {
  VolterraOracle v = [](const EnrichedBaire1& f) {
    return volterra_from_baire(f, builtin_baire(16), VolterraMode::ForceIrrational);
  };
  TaggedPoint p = continuity_from_volterra(finite_indicator({R(1, 3), R(2, 3)}), v);
  REQUIRE(p.tag == TaggedPoint::Tag::RationalLiteral);
  CHECK(p.literal == R(0));
  TaggedPoint t = continuity_from_volterra(thomae(), v, 500);
  check_apart(t, 10);
  EnrichedBaire1 nohook = thomae();
  nohook.osc_zero_decision = nullptr;
  CHECK_THROWS_AS(continuity_from_volterra(nohook, v), NeedsOscZeroDecision);
  VolterraOracle rational_liar = [](const EnrichedBaire1&) -> VolterraAnswer {
    return IrrationalContinuity{TaggedPoint::rational(R(1, 2))};
  };
  CHECK_THROWS_AS(continuity_from_volterra(thomae(), rational_liar, 10), CertificateFailure);
}

TEST_CASE("pair reduction and the pair oracle") {
  auto f = finite_indicator({R(1, 3)});
  TaggedPoint p = pair_reduction(f, thomae(), builtin_baire(16));
  check_apart(p, 20);
  CHECK(certify_separation(p.value, R(1, 3), 300).has_value());

  PairOracle honest = [](const EnrichedBaire1& a, const EnrichedBaire1& b) {
    return pair_reduction(a, b, builtin_baire(16));
  };
  CHECK(std::holds_alternative<IrrationalContinuity>(volterra_from_pair(f, honest)));
  PairOracle third = [](const EnrichedBaire1&, const EnrichedBaire1&) { return TaggedPoint::rational(R(1, 3)); };
  auto d = volterra_from_pair(f, third);
  REQUIRE(std::holds_alternative<RationalDiscontinuity>(d));
  CHECK(std::get<RationalDiscontinuity>(d).point == R(1, 3));
  CHECK(std::get<RationalDiscontinuity>(d).m == 0u);
  PairOracle half = [](const EnrichedBaire1&, const EnrichedBaire1&) { return TaggedPoint::rational(R(1, 2)); };
  CHECK_THROWS_AS(volterra_from_pair(finite_indicator({}), half), CertificateFailure);
  PairOracle vague = [](const EnrichedBaire1&, const EnrichedBaire1&) {
    TaggedPoint t;
    t.value = ExactReal::from_rational(R(1, 2));
    return t;
  };
  CHECK_THROWS_AS(volterra_from_pair(f, vague), CertificateFailure);
}

TEST_CASE("common continuity point of a sequence") {
  FunctionSequence fs = [](std::size_t n) {
    return finite_indicator({Rational(1, static_cast<long>(n) + 2)});
  };
  TaggedPoint p = common_continuity_point(fs, builtin_baire(16));
  for (long n = 2; n < 8; ++n) CHECK(certify_separation(p.value, R(1, n), 300).has_value());
}

TEST_CASE("min-max oracle") {
  MinMaxOracle honest = [](const EnrichedBaire1& h) {
    TaggedPoint a = continuity_point_from_baire(h, builtin_baire(16), true);
    return std::pair{a, TaggedPoint::rational(R(1, 2))};
  };
  CertifiedPoint cp = baire_from_minmax(dyadic_levels(), honest, 12);
  CHECK(cp.memberships.size() == 12);
  MinMaxOracle third = [](const EnrichedBaire1&) {
    return std::pair{TaggedPoint::rational(R(1, 3)), TaggedPoint::rational(R(1, 2))};
  };
  CHECK(baire_from_minmax(dyadic_levels(), third, 12).memberships.size() == 12);
  MinMaxOracle half = [](const EnrichedBaire1&) {
    return std::pair{TaggedPoint::rational(R(1, 2)), TaggedPoint::rational(R(1, 2))};
  };
  CHECK_THROWS_AS(baire_from_minmax(dyadic_levels(), half, 12), CertificateFailure);
}

TEST_CASE("countable dense sets") {
  auto d = dyadic_rationals();
  CHECK(d.at(0).first == R(1, 2));
  CHECK(d.at(1).first == R(1, 4));
  CHECK(d.at(2).first == R(3, 4));
  CHECK(d.at(3).first == R(1, 8));
  CHECK(d.slice(2).size() == 3);
  check_injective(d, 100);
  auto dup = listed_dense_set({{R(1, 2), 0}, {R(1, 3), 0}});
  CHECK_THROWS_AS(check_injective(dup, 2), InjectivityViolation);
  auto c = canonical_rationals();
  CHECK(c.at(5).first == canonical_rational(5));
}

TEST_CASE("countable dense Volterra") {
  auto dyadic = dyadic_rationals();
  auto hit = countable_dense_volterra(dyadic, thomae(), builtin_baire(16), DenseMode::Dovetail);
  REQUIRE(std::holds_alternative<DenseDiscontinuity>(hit));
  CHECK(std::get<DenseDiscontinuity>(hit).point == R(1, 2));
  auto zero = finite_indicator({});
  auto cont = countable_dense_volterra(dyadic, zero, builtin_baire(16), DenseMode::Avoidance, 16);
  REQUIRE(std::holds_alternative<DenseContinuity>(cont));
  const auto& dc = std::get<DenseContinuity>(cont);
  CHECK(dc.separations.size() == dyadic.slice(16).size());
  for (const auto& s : dc.separations)
    CHECK((dc.point.value.approx(s.precision) - s.target).abs() > R(2) * Rational::dyadic(s.precision));
}

TEST_CASE("bootheel") {
  auto f = finite_indicator({R(1, 3), R(2, 3)});
  WitnessProducer w = [](const EnrichedBaire1& g, unsigned n) { return g.complement_of_Dk(n); };
  TaggedPoint p = bootheel_continuity(f, w, builtin_baire(16));
  CHECK(certify_separation(p.value, R(1, 3), 300).has_value());
  CHECK(certify_separation(p.value, R(2, 3), 300).has_value());
  auto pts = bootheel_enumerate(f, w, 3, 2, 8);
  REQUIRE(pts.size() == 2);
  CHECK((pts[0].value.approx(8) - R(1, 3)).abs() <= Rational::dyadic(8));
  CHECK((pts[1].value.approx(8) - R(2, 3)).abs() <= Rational::dyadic(8));
  WitnessProducer opaque = [](const EnrichedBaire1& g, unsigned n) {
    OpenR2 o = g.complement_of_Dk(n);
    return OpenR2([o](const Rational& x, unsigned k) { return o.witness(x, k); });
  };
  CHECK_THROWS_AS(bootheel_enumerate(f, opaque, 3, 2, 8), DeltaHookUnavailable);
}
