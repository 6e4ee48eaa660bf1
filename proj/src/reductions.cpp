#include "baire/reductions.hpp"

#include <algorithm>
#include <set>

#include "baire/enumeration.hpp"
#include "baire/errors.hpp"

namespace baire {

TaggedPoint TaggedPoint::rational(const Rational& q) {
  TaggedPoint p;
  p.value = ExactReal::from_rational(q);
  p.tag = Tag::RationalLiteral;
  p.literal = q;
  return p;
}

const char* tag_name(TaggedPoint::Tag tag) {
  switch (tag) {
    case TaggedPoint::Tag::RationalLiteral: return "rational-literal";
    case TaggedPoint::Tag::ApartFromRationals: return "apart-from-rationals";
    case TaggedPoint::Tag::Undeclared: return "undeclared";
  }
  return "?";
}

namespace {

BairePoint call_checked(const BaireRealiserOracle& baire, const DenseOpenSequence& seq) {
  BairePoint p = baire(seq);
  if (auto bad = check_trace(seq, p.trace)) throw CertificateFailure("Baire oracle trace, " + *bad);
  return p;
}

TaggedPoint from_baire_point(BairePoint p, bool apart) {
  TaggedPoint t;
  t.value = p.value;
  t.tag = apart ? TaggedPoint::Tag::ApartFromRationals : TaggedPoint::Tag::Undeclared;
  if (apart) t.apart_certifier = rational_apartness(t.value);
  t.stages = std::move(p.trace);
  t.construction = std::move(p.construction);
  return t;
}

}  // namespace

BaireRealiserOracle builtin_baire(unsigned depth, std::optional<std::size_t> stage_budget) {
  return [depth, stage_budget](const DenseOpenSequence& seq) {
    return bct_realiser(seq, depth, stage_budget);
  };
}

DenseOpenSequence avoid_rationals(DenseOpenSequence seq) {
  auto inner = seq.set_at;
  return DenseOpenSequence{[inner](std::size_t n) {
    std::vector<Rational> qs;
    qs.reserve(n + 1);
    for (std::size_t i = 0; i <= n; ++i) qs.push_back(canonical_rational(i));
    return OpenR2::intersection({inner(n), OpenR2::complement_of_points(std::move(qs))});
  }};
}

DenseOpenSequence dk_complements(const EnrichedBaire1& f) {
  auto dk = f.complement_of_Dk;
  return DenseOpenSequence{[dk](std::size_t n) { return dk(static_cast<unsigned>(n)); }};
}

std::function<std::optional<SeparationCertificate>(std::size_t)> rational_apartness(
    const ExactReal& y, unsigned max_precision) {
  return [y, max_precision](std::size_t n) -> std::optional<SeparationCertificate> {
    auto cert = certify_separation(y, canonical_rational(n), max_precision);
    if (cert) {
      cert->family = "rationals";
      cert->index = n;
    }
    return cert;
  };
}

TaggedPoint continuity_point_from_baire(const EnrichedBaire1& f, const BaireRealiserOracle& baire,
                                        bool avoid_all_rationals) {
  DenseOpenSequence seq = dk_complements(f);
  if (avoid_all_rationals) seq = avoid_rationals(seq);
  return from_baire_point(call_checked(baire, seq), avoid_all_rationals);
}

CertifiedPoint baire_from_continuity(const ClosedNowhereDenseSeq& sets,
                                     const ContinuityPointOracle& oracle, unsigned depth,
                                     unsigned max_precision) {
  EnrichedBaire1 h = make_h(sets);
  CertifiedPoint out{oracle(h), {}};
  for (unsigned n = 0; n < depth; ++n) {
    OpenR2 on = r4_to_r2(sets.complement_at(n));
    auto cert = certify_membership(out.point.value, on, max_precision);
    if (!cert)
      throw CertificateFailure("continuity oracle's point not certified outside X_" +
                               std::to_string(n));
    cert->family = "x";
    cert->index = n;
    out.memberships.push_back(*cert);
  }
  return out;
}

std::optional<DiscontinuityHit> rational_discontinuity_search(const EnrichedBaire1& f,
                                                              std::size_t budget) {
  std::size_t steps = 0;
  for (std::size_t round = 0;; ++round) {
    for (std::size_t j = 0; j <= round; ++j) {
      if (steps >= budget) return std::nullopt;
      ++steps;
      Rational q = canonical_rational(j);
      if (auto m = f.osc_positive_witness(q, static_cast<unsigned>(round - j)))
        return DiscontinuityHit{q, *m, j, steps};
    }
  }
}

VolterraAnswer volterra_from_baire(const EnrichedBaire1& f, const BaireRealiserOracle& baire,
                                   VolterraMode mode, unsigned depth, std::size_t search_budget) {
  if (mode == VolterraMode::Dovetail) {
    // One more search round per Baire stage; the Baire side runs last since
    // the oracle is a black box.
    std::size_t per_round = 0;
    for (unsigned s = 0; s <= depth; ++s) {
      per_round += s + 1;
      if (auto hit = rational_discontinuity_search(f, std::min(per_round, search_budget)))
        return RationalDiscontinuity{hit->point, hit->m};
    }
  }
  return IrrationalContinuity{continuity_point_from_baire(f, baire, true)};
}

TaggedPoint continuity_from_volterra(const EnrichedBaire1& f, const VolterraOracle& oracle,
                                     std::size_t search_budget) {
  if (!f.osc_zero_decision) throw NeedsOscZeroDecision();
  for (std::size_t i = 0; i < search_budget; ++i) {
    Rational q = canonical_rational(i);
    if (f.osc_zero_decision(q)) return TaggedPoint::rational(q);
  }
  VolterraAnswer answer = oracle(f);
  if (auto* c = std::get_if<IrrationalContinuity>(&answer)) {
    if (c->point.tag != TaggedPoint::Tag::ApartFromRationals || !c->point.apart_certifier)
      throw CertificateFailure(std::string("Volterra oracle's irrational point is tagged ") +
                               tag_name(c->point.tag));
    return c->point;
  }
  const auto& d = std::get<RationalDiscontinuity>(answer);
  throw CertificateFailure("Volterra oracle answered a discontinuity at " + d.point.to_string() +
                           " where a continuity point is required");
}

TaggedPoint pair_reduction(const EnrichedBaire1& f, const EnrichedBaire1& g,
                           const BaireRealiserOracle& baire, bool avoid_all_rationals) {
  auto df = f.complement_of_Dk, dg = g.complement_of_Dk;
  DenseOpenSequence seq{[df, dg](std::size_t n) {
    auto k = static_cast<unsigned>(n);
    return OpenR2::intersection({df(k), dg(k)});
  }};
  if (avoid_all_rationals) seq = avoid_rationals(seq);
  return from_baire_point(call_checked(baire, seq), avoid_all_rationals);
}

VolterraAnswer volterra_from_pair(const EnrichedBaire1& f, const PairOracle& oracle,
                                  unsigned depth, unsigned osc_budget) {
  TaggedPoint p = oracle(f, thomae());
  switch (p.tag) {
    case TaggedPoint::Tag::RationalLiteral: {
      const Rational& q = *p.literal;
      if (q.sign() < 0 || Rational(1) < q)
        throw CertificateFailure("pair oracle answered " + q.to_string() + " outside [0,1]");
      auto m = f.osc_positive_witness(q, osc_budget);
      if (!m)
        throw CertificateFailure("osc_f(" + q.to_string() + ") > 0 could not be certified");
      return RationalDiscontinuity{q, *m};
    }
    case TaggedPoint::Tag::ApartFromRationals:
      for (std::size_t n = 0; n < depth; ++n)
        if (!p.apart_certifier || !p.apart_certifier(n))
          throw CertificateFailure("pair oracle's point not apart from canonical rational " +
                                   std::to_string(n));
      return IrrationalContinuity{std::move(p)};
    case TaggedPoint::Tag::Undeclared:
      break;
  }
  throw CertificateFailure("pair oracle did not declare rationality of its point");
}

DenseOpenSequence common_complements(const FunctionSequence& fs) {
  return DenseOpenSequence{[fs](std::size_t m) {
    std::vector<OpenR2> parts;
    for (std::size_t n = 0; n <= m; ++n)
      for (std::size_t k = 0; cantor_pair(k, n) <= m; ++k)
        parts.push_back(fs(n).complement_of_Dk(static_cast<unsigned>(k)));
    return OpenR2::intersection(parts);
  }};
}

TaggedPoint common_continuity_point(const FunctionSequence& fs, const BaireRealiserOracle& baire) {
  return from_baire_point(call_checked(baire, common_complements(fs)), false);
}

CertifiedPoint baire_from_minmax(const ClosedNowhereDenseSeq& sets, const MinMaxOracle& oracle,
                                 unsigned depth, unsigned max_precision) {
  EnrichedBaire1 h = make_h(sets);
  auto [a, b] = oracle(h);
  (void)b;
  if (a.tag == TaggedPoint::Tag::RationalLiteral) {
    if (!sets.membership_decision) throw NeedsMembershipDecision();
    for (unsigned n = 0; n < depth; ++n)
      if (sets.membership_decision(*a.literal, n))
        throw CertificateFailure("h(a) > 0: a = " + a.literal->to_string() + " lies in X_" +
                                 std::to_string(n) + ", so the level set is finite");
  }
  CertifiedPoint out{a, {}};
  for (unsigned n = 0; n < depth; ++n) {
    auto cert = certify_membership(a.value, r4_to_r2(sets.complement_at(n)), max_precision);
    if (!cert) throw CertificateFailure("a not certified outside X_" + std::to_string(n));
    cert->family = "x";
    cert->index = n;
    out.memberships.push_back(*cert);
  }
  return out;
}

CountableDenseSet dyadic_rationals() {
  auto at = [](std::size_t i) -> std::pair<Rational, std::uint64_t> {
    std::uint64_t j = i + 1;
    unsigned level = 63 - static_cast<unsigned>(__builtin_clzll(j));  // j in [2^level, 2^{level+1})
    std::uint64_t odd = 2 * (j - (std::uint64_t{1} << level)) + 1;
    return {Rational(BigInt(static_cast<unsigned long>(odd)), BigInt(1) << (level + 1)), i};
  };
  return CountableDenseSet{at, std::nullopt, [at](std::size_t n) {
                             std::vector<Rational> out;
                             for (std::size_t i = 0; i <= n; ++i) out.push_back(at(i).first);
                             return out;
                           }};
}

CountableDenseSet canonical_rationals() {
  return CountableDenseSet{
      [](std::size_t i) { return std::pair<Rational, std::uint64_t>{canonical_rational(i), i}; },
      std::nullopt, [](std::size_t n) {
        std::vector<Rational> out;
        for (std::size_t i = 0; i <= n; ++i) out.push_back(canonical_rational(i));
        return out;
      }};
}

CountableDenseSet listed_dense_set(std::vector<std::pair<Rational, std::uint64_t>> entries) {
  auto shared = std::make_shared<const std::vector<std::pair<Rational, std::uint64_t>>>(
      std::move(entries));
  return CountableDenseSet{[shared](std::size_t i) { return shared->at(i); }, shared->size(),
                           [shared](std::size_t n) {
                             std::vector<Rational> out;
                             for (const auto& [d, y] : *shared)
                               if (y <= n) out.push_back(d);
                             return out;
                           }};
}

void check_injective(const CountableDenseSet& dense, std::size_t prefix) {
  std::size_t limit = dense.size ? std::min(prefix, *dense.size) : prefix;
  std::set<std::uint64_t> heights;
  for (std::size_t i = 0; i < limit; ++i) {
    auto [d, y] = dense.at(i);
    if (!heights.insert(y).second)
      throw InjectivityViolation("Y(" + d.to_string() + ") = " + std::to_string(y) +
                                 " repeats an earlier value");
  }
}

DenseOpenSequence dense_avoiding(const EnrichedBaire1& f, const CountableDenseSet& dense) {
  auto dk = f.complement_of_Dk;
  auto slice = dense.slice;
  return DenseOpenSequence{[dk, slice](std::size_t n) {
    return OpenR2::intersection(
        {dk(static_cast<unsigned>(n)), OpenR2::complement_of_points(slice(n))});
  }};
}

DenseAnswer countable_dense_volterra(const CountableDenseSet& dense, const EnrichedBaire1& f,
                                     const BaireRealiserOracle& baire, DenseMode mode,
                                     unsigned depth, std::size_t search_budget) {
  check_injective(dense, std::max<std::size_t>(depth + 1, 64));
  if (mode == DenseMode::Dovetail) {
    std::size_t steps = 0;
    for (std::size_t round = 0; steps < search_budget; ++round) {
      for (std::size_t j = 0; j <= round && steps < search_budget; ++j) {
        if (dense.size && j >= *dense.size) break;
        ++steps;
        auto [d, y] = dense.at(j);
        if (auto m = f.osc_positive_witness(d, static_cast<unsigned>(round - j)))
          return DenseDiscontinuity{d, y, *m};
      }
      if (dense.size && round > *dense.size + 64) break;  // finite list: budgets saturate
    }
  }
  TaggedPoint p = from_baire_point(call_checked(baire, dense_avoiding(f, dense)), false);
  DenseContinuity out{p, {}};
  auto slice = dense.slice(depth);
  for (std::size_t i = 0; i < slice.size(); ++i) {
    auto cert = certify_separation(p.value, slice[i], 512);
    if (!cert) throw CertificateFailure("point not apart from " + slice[i].to_string());
    cert->family = "dense";
    cert->index = i;
    out.separations.push_back(*cert);
  }
  return out;
}

TaggedPoint bootheel_continuity(const EnrichedBaire1& f, const WitnessProducer& producer,
                                const BaireRealiserOracle& baire) {
  DenseOpenSequence seq{[f, producer](std::size_t n) {
    return producer(f, static_cast<unsigned>(n));
  }};
  return from_baire_point(call_checked(baire, seq), false);
}

OpenR3 delta_hook(const OpenR2& set) {
  if (!set.geometry()) throw DeltaHookUnavailable();
  return r3_from_geometry(set.geometry());
}

std::vector<LocatedPoint> bootheel_enumerate(const EnrichedBaire1& f,
                                             const WitnessProducer& producer, unsigned n,
                                             std::size_t bound, unsigned k,
                                             std::size_t stage_budget) {
  OpenR4 r4 = r3_to_r4(delta_hook(producer(f, n)));
  return enumerate_finite_closed(r4, bound, k, stage_budget);
}

}  // namespace baire
