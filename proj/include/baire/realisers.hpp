#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "baire/exact_real.hpp"
#include "baire/open_sets.hpp"

namespace baire {

/// One stage of the nested-interval construction: the witness ball
/// (center ± radius) lies in O_n ∩ I_{n-1}, and I_n is a shrunken copy of it.
struct StageRecord {
  unsigned stage;
  RationalInterval interval;
  Rational center;
  Rational radius;
  std::size_t steps;
};

/// y ∈ O witnessed by a ball: center = approx(y, precision) and
/// 2^{-precision} < radius, with (center ± radius) ∩ [0,1] ⊆ O.
struct MembershipCertificate {
  std::string family;
  std::size_t index;
  Rational center;
  Rational radius;
  unsigned precision;
};

/// y ≠ target witnessed by |approx(y, precision) - target| > 2 * 2^{-precision}.
struct SeparationCertificate {
  std::string family;
  std::size_t index;
  Rational target;
  Rational approx;
  unsigned precision;
};

std::optional<MembershipCertificate> certify_membership(const ExactReal& y, const OpenR2& set,
                                                        unsigned max_precision);
std::optional<SeparationCertificate> certify_separation(const ExactReal& y, const Rational& target,
                                                        unsigned max_precision);

/// The lazily extended Baire construction. Stages are computed on demand and
/// cached, so the limit point can be refined past the requested depth.
class BaireConstruction {
 public:
  BaireConstruction(DenseOpenSequence seq, std::optional<std::size_t> stage_budget);

  StageRecord stage(unsigned n);
  std::vector<StageRecord> trace(unsigned depth);
  std::size_t total_steps();
  const DenseOpenSequence& sequence() const { return seq_; }

 private:
  void extend_to(unsigned n);

  DenseOpenSequence seq_;
  std::optional<std::size_t> stage_budget_;
  std::mutex mutex_;
  std::vector<StageRecord> stages_;
  std::size_t steps_ = 0;
};

struct BairePoint {
  ExactReal value;
  std::vector<StageRecord> trace;
  std::shared_ptr<BaireConstruction> construction;
};

/// Constructive Baire category: I_{-1} = (0,1); at stage n a dense witness
/// (q, r) in O_n ∩ I_{n-1} is found and I_n = (q - r', q + r') with
/// r' = min(r/2, 2^{-(n+1)}). approx(k) is the center of I_{k+1}.
/// The budget bounds each stage's witness search.
BairePoint bct_realiser(const DenseOpenSequence& seq, unsigned depth = 32,
                        std::optional<std::size_t> stage_budget = std::nullopt);

/// Structural check of a trace against its sequence: nesting, widths, and
/// witness balls re-derived through the set's geometry or witness.
/// Returns a description of the first failure.
std::optional<std::string> check_trace(const DenseOpenSequence& seq,
                                       const std::vector<StageRecord>& trace);

struct AvoidanceStage {
  unsigned stage;
  Rational lo;  // closed interval J_n = [lo, hi]
  Rational hi;
  std::optional<Rational> target_approx;  // α with |a_n - α| <= 2^{-precision}
  unsigned precision;
  Rational separation;  // distance from J_n to [α ± 2^{-precision}]; 0 without a target
};

using PointSequence = std::function<std::optional<ExactReal>(std::size_t)>;

class AvoidanceConstruction {
 public:
  explicit AvoidanceConstruction(PointSequence points) : points_(std::move(points)) {}
  AvoidanceStage stage(unsigned n);

 private:
  PointSequence points_;
  std::mutex mutex_;
  std::vector<AvoidanceStage> stages_;
};

struct AvoidancePoint {
  ExactReal value;
  std::shared_ptr<AvoidanceConstruction> construction;

  /// r_n > 0 with |value - a_n| >= r_n, or 0 for an empty entry.
  Rational separation(unsigned n) const { return construction->stage(n).separation; }
};

/// Trisection avoidance: J_{-1} = [0,1]; at stage n keep the middle third of
/// J_{n-1} if its closure misses the ball around a_n, otherwise the first
/// outer third that does. Empty entries keep the middle third.
AvoidancePoint cantor_avoid(PointSequence points);

/// Enumerated finite set to exact reals, deduplicated in order.
std::vector<ExactReal> omega_fin(const std::vector<Rational>& points);

/// A_n finite and nested in n.
struct HeightCountableSet {
  std::function<std::vector<Rational>(unsigned n)> slice_at;
};

/// A_n = fractions in [0,1] with denominator <= n.
HeightCountableSet height_denominator();

enum class CantorRoute { ViaBaire, ViaEnumeration };

struct StrongCantorPoint {
  ExactReal value;
  CantorRoute route;
  std::vector<SeparationCertificate> separations;  // every element of A_depth
  std::optional<BairePoint> baire;
  std::optional<AvoidancePoint> avoidance;
};

/// Feeds the sequence built from A into the chosen realiser and certifies
/// separation from every element of A_depth.
StrongCantorPoint strong_cantor_realiser(const HeightCountableSet& set, CantorRoute route,
                                         unsigned depth = 20,
                                         std::optional<std::size_t> stage_budget = std::nullopt);

/// Entry n of the merged enumeration used by the enumeration route: the new
/// elements of each slice in order, each slice closed by an empty entry.
PointSequence merged_slices(const HeightCountableSet& set);

struct LocatedPoint {
  ExactReal value;
  ClosedComponent component;  // contains the located point; width <= 2^{-k}
  std::size_t stage;
};

/// ℰ for finite C = [0,1] minus the union: sweep stages until at most
/// `bound` components remain, each of width <= 2^{-k}; their midpoints are
/// the outputs, refined further on demand.
std::vector<LocatedPoint> enumerate_finite_closed(const OpenR4& complement, std::size_t bound,
                                                  unsigned k, std::size_t stage_budget = 100000);

}  // namespace baire
