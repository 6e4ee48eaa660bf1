#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "baire/functions.hpp"
#include "baire/realisers.hpp"

namespace baire {

/// An oracle's output point. Whether a real is rational is undecidable, so
/// the producer declares it: a literal rational, a point certified apart
/// from the canonical rationals, or nothing (Undeclared).
struct TaggedPoint {
  enum class Tag { RationalLiteral, ApartFromRationals, Undeclared };

  ExactReal value;
  Tag tag = Tag::Undeclared;
  std::optional<Rational> literal;
  /// Separation from the n-th canonical rational (ApartFromRationals only).
  std::function<std::optional<SeparationCertificate>(std::size_t n)> apart_certifier;
  std::vector<StageRecord> stages;
  std::shared_ptr<BaireConstruction> construction;

  static TaggedPoint rational(const Rational& q);
};

const char* tag_name(TaggedPoint::Tag tag);

struct RationalDiscontinuity {
  Rational point;
  unsigned m;  // osc_f(point) >= 2^{-m}
};
struct IrrationalContinuity {
  TaggedPoint point;
};
using VolterraAnswer = std::variant<RationalDiscontinuity, IrrationalContinuity>;

using BaireRealiserOracle = std::function<BairePoint(const DenseOpenSequence&)>;
using ContinuityPointOracle = std::function<TaggedPoint(const EnrichedBaire1&)>;
using VolterraOracle = std::function<VolterraAnswer(const EnrichedBaire1&)>;
using PairOracle = std::function<TaggedPoint(const EnrichedBaire1&, const EnrichedBaire1&)>;
using MinMaxOracle = std::function<std::pair<TaggedPoint, TaggedPoint>(const EnrichedBaire1&)>;

/// The shipped Baire realiser as an oracle.
BaireRealiserOracle builtin_baire(unsigned depth = 16,
                                  std::optional<std::size_t> stage_budget = std::nullopt);

/// Sequence n ↦ O_n ∩ ([0,1] minus {q_0, ..., q_n}), the q_i canonical.
DenseOpenSequence avoid_rationals(DenseOpenSequence seq);
/// Sequence n ↦ complement_of_Dk(n).
DenseOpenSequence dk_complements(const EnrichedBaire1& f);

/// Certifier for separation from canonical rationals, by approximants.
std::function<std::optional<SeparationCertificate>(std::size_t)> rational_apartness(
    const ExactReal& y, unsigned max_precision = 512);

TaggedPoint continuity_point_from_baire(const EnrichedBaire1& f, const BaireRealiserOracle& baire,
                                        bool avoid_all_rationals = false);

struct CertifiedPoint {
  TaggedPoint point;
  std::vector<MembershipCertificate> memberships;
};

/// h from X, a continuity point of h from the oracle, re-certified in
/// O_n = [0,1] minus X_n for n < depth.
CertifiedPoint baire_from_continuity(const ClosedNowhereDenseSeq& sets,
                                     const ContinuityPointOracle& oracle, unsigned depth = 16,
                                     unsigned max_precision = 512);

struct DiscontinuityHit {
  Rational point;
  unsigned m;
  std::size_t index;
  std::size_t steps;
};

/// Dovetails canonical rationals against osc_positive_witness budgets.
/// Absence means "nothing found within the budget".
std::optional<DiscontinuityHit> rational_discontinuity_search(const EnrichedBaire1& f,
                                                              std::size_t budget);

enum class VolterraMode { Dovetail, ForceIrrational };

VolterraAnswer volterra_from_baire(const EnrichedBaire1& f, const BaireRealiserOracle& baire,
                                   VolterraMode mode, unsigned depth = 16,
                                   std::size_t search_budget = 100000);

/// A rational with osc_f = 0 via the decision hook, else the oracle's
/// irrational continuity point.
TaggedPoint continuity_from_volterra(const EnrichedBaire1& f, const VolterraOracle& oracle,
                                     std::size_t search_budget = 100000);

/// Common continuity point of f and g from O_n = [0,1] minus (D_n ∪ E_n).
TaggedPoint pair_reduction(const EnrichedBaire1& f, const EnrichedBaire1& g,
                           const BaireRealiserOracle& baire, bool avoid_all_rationals = true);

/// Calls the pair oracle on (f, Thomae) and dispatches on the tag.
VolterraAnswer volterra_from_pair(const EnrichedBaire1& f, const PairOracle& oracle,
                                  unsigned depth = 16, unsigned osc_budget = 64);

using FunctionSequence = std::function<EnrichedBaire1(std::size_t n)>;

/// Set m is the intersection of complement_of_D_{k,n} over all Cantor-paired
/// (k, n) with pair index <= m.
DenseOpenSequence common_complements(const FunctionSequence& fs);

TaggedPoint common_continuity_point(const FunctionSequence& fs, const BaireRealiserOracle& baire);

/// Takes a from M(h, osc_h) and certifies h(a) = 0 for the first depth sets.
CertifiedPoint baire_from_minmax(const ClosedNowhereDenseSeq& sets, const MinMaxOracle& oracle,
                                 unsigned depth = 16, unsigned max_precision = 512);

/// An enumerated dense set with an injection Y into the naturals. slice(n)
/// lists {d : Y(d) <= n}.
struct CountableDenseSet {
  std::function<std::pair<Rational, std::uint64_t>(std::size_t i)> at;
  std::optional<std::size_t> size;
  std::function<std::vector<Rational>(std::size_t n)> slice;
};

/// 1/2, 1/4, 3/4, 1/8, ... with Y = rank.
CountableDenseSet dyadic_rationals();
/// The canonical rationals of [0,1] with Y = rank.
CountableDenseSet canonical_rationals();
CountableDenseSet listed_dense_set(std::vector<std::pair<Rational, std::uint64_t>> entries);

enum class DenseMode { Avoidance, Dovetail };

struct DenseDiscontinuity {
  Rational point;
  std::uint64_t height;
  unsigned m;
};
struct DenseContinuity {
  TaggedPoint point;
  std::vector<SeparationCertificate> separations;  // from every d with Y(d) <= depth
};
using DenseAnswer = std::variant<DenseDiscontinuity, DenseContinuity>;

/// Injectivity of Y over the first `prefix` entries; throws InjectivityViolation.
void check_injective(const CountableDenseSet& dense, std::size_t prefix);

DenseOpenSequence dense_avoiding(const EnrichedBaire1& f, const CountableDenseSet& dense);

DenseAnswer countable_dense_volterra(const CountableDenseSet& dense, const EnrichedBaire1& f,
                                     const BaireRealiserOracle& baire, DenseMode mode,
                                     unsigned depth = 16, std::size_t search_budget = 100000);

using WitnessProducer = std::function<OpenR2(const EnrichedBaire1&, unsigned n)>;

/// Part 1: a continuity point of f from the witnesses W(f, n).
TaggedPoint bootheel_continuity(const EnrichedBaire1& f, const WitnessProducer& producer,
                                const BaireRealiserOracle& baire);

/// The shipped Δ stub: exact distance when the witness carries a geometry.
OpenR3 delta_hook(const OpenR2& set);

/// Part 2: Δ, then R.3 to R.4, then ℰ on [0,1] minus O_n.
std::vector<LocatedPoint> bootheel_enumerate(const EnrichedBaire1& f,
                                             const WitnessProducer& producer, unsigned n,
                                             std::size_t bound, unsigned k,
                                             std::size_t stage_budget = 100000);

}  // namespace baire
