#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "baire/enumeration.hpp"
#include "baire/exact_real.hpp"

namespace baire {

/// Exact description of an open subset of [0,1] for the set families this
/// library ships. It is the "richer view" used to re-check R.2 witnesses and
/// certificates geometrically, independently of the witness code.
class SetGeometry {
 public:
  struct Full {};
  struct Intervals { std::vector<RationalInterval> intervals; };  // union, ∩ [0,1]
  struct ComplementOfPoints { std::vector<Rational> points; };
  struct ComplementOfFarey { BigInt order; };  // [0,1] minus fractions with den <= order
  struct ComplementOfGrid { Rational offset; Rational step; };  // minus {offset + i step}
  struct Intersection { std::vector<std::shared_ptr<const SetGeometry>> parts; };
  using Shape = std::variant<Full, Intervals, ComplementOfPoints, ComplementOfFarey,
                             ComplementOfGrid, Intersection>;

  explicit SetGeometry(Shape shape) : shape_(std::move(shape)) {}

  static std::shared_ptr<const SetGeometry> full();
  static std::shared_ptr<const SetGeometry> intervals(std::vector<RationalInterval> list);
  static std::shared_ptr<const SetGeometry> complement_of_points(std::vector<Rational> points);
  static std::shared_ptr<const SetGeometry> complement_of_farey(BigInt order);
  static std::shared_ptr<const SetGeometry> complement_of_grid(Rational offset, Rational step);
  static std::shared_ptr<const SetGeometry> intersection(
      std::vector<std::shared_ptr<const SetGeometry>> parts);

  /// (c - r, c + r) ∩ [0,1] ⊆ O, for c ∈ [0,1] and r > 0.
  bool contains_ball(const Rational& c, const Rational& r) const;
  bool contains_point(const Rational& q) const;
  /// (lo, hi) ∩ [0,1] ⊆ O.
  bool contains_interval(const Rational& lo, const Rational& hi) const;
  /// Exact distance from x ∈ [0,1] to [0,1] \ O; 1 when O = [0,1]; 0 outside [0,1].
  Rational distance_to_complement(const Rational& x) const;

  const Shape& shape() const { return shape_; }

 private:
  Shape shape_;
};

/// R.1: characteristic function, probed at rationals only. Nothing in the
/// pipeline consumes it except as a post-check oracle.
struct OpenR1 {
  std::function<bool(const Rational&)> member_at_rational;
};

/// R.2: a radius witness. If witness(x, p) = r > 0 then
/// (x - r, x + r) ∩ [0,1] ⊆ O. A zero answer carries no information.
class OpenR2 {
 public:
  using Witness = std::function<Rational(const Rational& x, unsigned precision)>;

  OpenR2(Witness witness, std::shared_ptr<const SetGeometry> geometry = nullptr)
      : witness_(std::make_shared<const Witness>(std::move(witness))),
        geometry_(std::move(geometry)) {}

  /// Witness computed exactly from a geometry (distance to the complement).
  static OpenR2 from_geometry(std::shared_ptr<const SetGeometry> geometry);
  static OpenR2 full();
  /// [0,1] minus a finite point set, with exact distance witnesses.
  static OpenR2 complement_of_points(std::vector<Rational> points);
  /// Pointwise minimum of the radii: a witness for the intersection.
  static OpenR2 intersection(const std::vector<OpenR2>& parts);

  Rational witness(const Rational& x, unsigned precision) const;
  const std::shared_ptr<const SetGeometry>& geometry() const { return geometry_; }

 private:
  std::shared_ptr<const Witness> witness_;
  std::shared_ptr<const SetGeometry> geometry_;
};

/// R.3 (budgeted): lower_bound(x, m) <= d(x, [0,1] \ O), non-decreasing in
/// the stage m and converging to the distance; constant 1 when O = [0,1].
struct OpenR3 {
  std::function<Rational(const Rational& x, unsigned stage)> lower_bound;
};

/// R.4: O is the union (intersected with [0,1]) of a sequence of open
/// rational intervals. Entries may be empty, which lets finite lists and
/// the empty set be sequences too.
class OpenR4 {
 public:
  using Entry = std::function<std::optional<RationalInterval>(std::size_t)>;

  OpenR4(Entry entry, std::optional<std::size_t> length = std::nullopt)
      : entry_(std::make_shared<const Entry>(std::move(entry))), length_(length) {}

  static OpenR4 finite(std::vector<RationalInterval> intervals);
  /// Attaches an exact description of the same set.
  OpenR4 with_geometry(std::shared_ptr<const SetGeometry> geometry) const;

  std::optional<RationalInterval> at(std::size_t n) const { return (*entry_)(n); }
  /// Known length for finite lists; every later entry is empty.
  std::optional<std::size_t> length() const { return length_; }
  /// Non-empty entries among the first m.
  std::vector<RationalInterval> prefix(std::size_t m) const;
  /// Full interval list of a finite representation.
  const std::vector<RationalInterval>* finite_list() const { return list_.get(); }
  const std::shared_ptr<const SetGeometry>& geometry() const { return geometry_; }

 private:
  std::shared_ptr<const Entry> entry_;
  std::optional<std::size_t> length_;
  std::shared_ptr<const std::vector<RationalInterval>> list_;
  std::shared_ptr<const SetGeometry> geometry_;
};

/// A sequence of dense open subsets of [0,1] in executable (R.2) form.
struct DenseOpenSequence {
  std::function<OpenR2(std::size_t n)> set_at;
};

struct InsideWithRadius { Rational radius; };
struct UnknownAt { std::size_t stage; };
using Membership = std::variant<InsideWithRadius, UnknownAt>;

/// Semidecision of q ∈ O from the first m entries; the radius is the best
/// gap to the endpoints of a containing interval.
Membership r4_membership(const OpenR4& set, const Rational& q, std::size_t stage);

/// R.4 to R.2. witness(x, p) scans the first p entries. A finite list is
/// scanned completely regardless of p, and a representation with attached
/// geometry answers with the exact distance.
OpenR2 r4_to_r2(const OpenR4& set);

/// Distance from x to [0,1] minus the union of the first m entries, merged.
Rational r4_to_r3_lower_bound(const OpenR4& set, const Rational& x, std::size_t stage);
OpenR3 r4_to_r3(const OpenR4& set);
OpenR3 r3_from_geometry(std::shared_ptr<const SetGeometry> geometry);

/// R.3 to R.4 by dovetailing (probe index, stage) with the Cantor pairing:
/// entry n = cantor_pair(i, m) is (q_i - l, q_i + l) for l = lower_bound(q_i, m + 1)
/// when l > 0, and empty otherwise.
OpenR4 r3_to_r4(const OpenR3& set);

/// Closed components of [0,1] minus a union of open intervals; a component
/// may be a single point.
struct ClosedComponent {
  Rational lo;
  Rational hi;
};
std::vector<ClosedComponent> complement_components(std::vector<RationalInterval> intervals);

struct DenseWitness {
  Rational point;
  Rational radius;
  std::size_t steps;
};

/// Finds q ∈ I and r > 0 with (q - r, q + r) ⊆ O ∩ I, trying the canonical
/// rationals of I against increasing probe precision in a dovetailed order.
/// A budget bounds the number of witness calls.
DenseWitness dense_witness_search(const OpenR2& set, const RationalInterval& interval,
                                  std::optional<std::size_t> budget = std::nullopt);

}  // namespace baire
