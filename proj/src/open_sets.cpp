#include "baire/open_sets.hpp"

#include <algorithm>

#include "baire/errors.hpp"

namespace baire {

namespace {

bool in_unit(const Rational& x) { return x.sign() >= 0 && x <= Rational(1); }

// Sorted union of open intervals; overlapping ones are merged, touching ones
// (shared endpoint, which stays uncovered) are kept apart.
std::vector<RationalInterval> merge_open(std::vector<RationalInterval> intervals) {
  std::sort(intervals.begin(), intervals.end(),
            [](const RationalInterval& a, const RationalInterval& b) { return a.lo < b.lo; });
  std::vector<RationalInterval> merged;
  for (auto& iv : intervals) {
    if (!merged.empty() && iv.lo < merged.back().hi) {
      if (merged.back().hi < iv.hi) merged.back().hi = iv.hi;
    } else {
      merged.push_back(std::move(iv));
    }
  }
  return merged;
}

Rational distance_to_closed(const Rational& x, const ClosedComponent& c) {
  if (x < c.lo) return c.lo - x;
  if (x > c.hi) return x - c.hi;
  return Rational(0);
}

// (lo, hi) ∩ [0,1] described as a segment with endpoint inclusion flags.
struct Segment {
  Rational a, b;
  bool a_in, b_in;
  bool empty() const { return b < a || (a == b && !(a_in && b_in)); }
  bool contains(const Rational& p) const {
    return (a < p || (a == p && a_in)) && (p < b || (p == b && b_in));
  }
};

Segment clip_to_unit(const Rational& lo, const Rational& hi) {
  Segment s{max(lo, Rational(0)), min(hi, Rational(1)), lo.sign() < 0, hi > Rational(1)};
  return s;
}

}  // namespace

std::vector<ClosedComponent> complement_components(std::vector<RationalInterval> intervals) {
  auto merged = merge_open(std::move(intervals));
  std::vector<ClosedComponent> out;
  std::optional<Rational> prev_end;
  auto push_gap = [&](Rational lo, Rational hi) {
    lo = max(lo, Rational(0));
    hi = min(hi, Rational(1));
    if (lo <= hi) out.push_back({std::move(lo), std::move(hi)});
  };
  for (const auto& iv : merged) {
    push_gap(prev_end ? *prev_end : Rational(0), iv.lo);
    if (!prev_end || *prev_end < iv.hi) prev_end = iv.hi;
  }
  push_gap(prev_end ? *prev_end : Rational(0), Rational(1));
  return out;
}

// ---------------------------------------------------------------------------
// SetGeometry

std::shared_ptr<const SetGeometry> SetGeometry::full() {
  return std::make_shared<const SetGeometry>(Full{});
}

std::shared_ptr<const SetGeometry> SetGeometry::intervals(std::vector<RationalInterval> list) {
  return std::make_shared<const SetGeometry>(Intervals{std::move(list)});
}

std::shared_ptr<const SetGeometry> SetGeometry::complement_of_points(std::vector<Rational> points) {
  return std::make_shared<const SetGeometry>(ComplementOfPoints{std::move(points)});
}

std::shared_ptr<const SetGeometry> SetGeometry::complement_of_farey(BigInt order) {
  return std::make_shared<const SetGeometry>(ComplementOfFarey{std::move(order)});
}

std::shared_ptr<const SetGeometry> SetGeometry::complement_of_grid(Rational offset,
                                                                  Rational step) {
  if (step.sign() <= 0) throw Error("grid step must be positive");
  return std::make_shared<const SetGeometry>(ComplementOfGrid{std::move(offset), std::move(step)});
}

std::shared_ptr<const SetGeometry> SetGeometry::intersection(
    std::vector<std::shared_ptr<const SetGeometry>> parts) {
  return std::make_shared<const SetGeometry>(Intersection{std::move(parts)});
}

bool SetGeometry::contains_point(const Rational& q) const {
  if (!in_unit(q)) return false;
  return std::visit(
      [&](const auto& s) -> bool {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Full>) {
          return true;
        } else if constexpr (std::is_same_v<T, Intervals>) {
          return std::any_of(s.intervals.begin(), s.intervals.end(),
                             [&](const RationalInterval& iv) { return iv.contains(q); });
        } else if constexpr (std::is_same_v<T, ComplementOfPoints>) {
          return std::find(s.points.begin(), s.points.end(), q) == s.points.end();
        } else if constexpr (std::is_same_v<T, ComplementOfFarey>) {
          return q.denominator() > s.order;
        } else if constexpr (std::is_same_v<T, ComplementOfGrid>) {
          return !((q - s.offset) / s.step).is_integer();
        } else {
          return std::all_of(s.parts.begin(), s.parts.end(),
                             [&](const auto& p) { return p->contains_point(q); });
        }
      },
      shape_);
}

bool SetGeometry::contains_interval(const Rational& lo, const Rational& hi) const {
  Segment seg = clip_to_unit(lo, hi);
  if (seg.empty()) return true;
  return std::visit(
      [&](const auto& s) -> bool {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Full>) {
          return true;
        } else if constexpr (std::is_same_v<T, Intervals>) {
          // A connected segment is covered iff one merged component covers it.
          for (const auto& m : merge_open(s.intervals)) {
            bool left_ok = m.lo < seg.a || (m.lo == seg.a && !seg.a_in);
            bool right_ok = seg.b < m.hi || (seg.b == m.hi && !seg.b_in);
            if (left_ok && right_ok) return true;
          }
          return false;
        } else if constexpr (std::is_same_v<T, ComplementOfPoints>) {
          return std::none_of(s.points.begin(), s.points.end(),
                              [&](const Rational& p) { return seg.contains(p); });
        } else if constexpr (std::is_same_v<T, ComplementOfFarey>) {
          // 0 and 1 always belong to the removed set.
          if (seg.a_in || seg.b_in) return false;
          return simplest_rational(seg.a, seg.b).denominator() > s.order;
        } else if constexpr (std::is_same_v<T, ComplementOfGrid>) {
          // First grid point at or after a.
          BigInt i = ((seg.a - s.offset) / s.step).ceil();
          Rational p = s.offset + Rational(i, BigInt(1)) * s.step;
          if (p == seg.a && !seg.a_in) p += s.step;
          return !seg.contains(p);
        } else {
          return std::all_of(s.parts.begin(), s.parts.end(),
                             [&](const auto& p) { return p->contains_interval(lo, hi); });
        }
      },
      shape_);
}

bool SetGeometry::contains_ball(const Rational& c, const Rational& r) const {
  if (r.sign() <= 0) return false;
  return contains_interval(c - r, c + r);
}

Rational SetGeometry::distance_to_complement(const Rational& x) const {
  if (!in_unit(x)) return Rational(0);
  return std::visit(
      [&](const auto& s) -> Rational {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Full>) {
          return Rational(1);
        } else if constexpr (std::is_same_v<T, Intervals>) {
          auto comps = complement_components(s.intervals);
          if (comps.empty()) return Rational(1);
          Rational best = distance_to_closed(x, comps.front());
          for (const auto& c : comps) best = min(best, distance_to_closed(x, c));
          return best;
        } else if constexpr (std::is_same_v<T, ComplementOfPoints>) {
          if (s.points.empty()) return Rational(1);
          Rational best(1);
          for (const auto& p : s.points)
            if (in_unit(p)) best = min(best, (x - p).abs());
          return best;
        } else if constexpr (std::is_same_v<T, ComplementOfFarey>) {
          return farey_distance(x, s.order);
        } else if constexpr (std::is_same_v<T, ComplementOfGrid>) {
          Rational t = (x - s.offset) / s.step;
          Rational below = s.offset + Rational(t.floor(), BigInt(1)) * s.step;
          Rational above = s.offset + Rational(t.ceil(), BigInt(1)) * s.step;
          Rational best(1);
          if (in_unit(below)) best = min(best, x - below);
          if (in_unit(above)) best = min(best, above - x);
          return best;
        } else {
          Rational best(1);
          for (const auto& p : s.parts) best = min(best, p->distance_to_complement(x));
          return best;
        }
      },
      shape_);
}

// ---------------------------------------------------------------------------
// R.2

OpenR2 OpenR2::from_geometry(std::shared_ptr<const SetGeometry> geometry) {
  auto g = geometry;
  return OpenR2([g](const Rational& x, unsigned) { return g->distance_to_complement(x); },
                std::move(geometry));
}

OpenR2 OpenR2::full() { return from_geometry(SetGeometry::full()); }

OpenR2 OpenR2::complement_of_points(std::vector<Rational> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return from_geometry(SetGeometry::complement_of_points(std::move(points)));
}

OpenR2 OpenR2::intersection(const std::vector<OpenR2>& parts) {
  if (parts.empty()) return full();
  std::vector<std::shared_ptr<const SetGeometry>> geoms;
  bool all_geometric = true;
  for (const auto& p : parts) {
    if (p.geometry()) geoms.push_back(p.geometry());
    else all_geometric = false;
  }
  auto copy = parts;
  return OpenR2(
      [copy](const Rational& x, unsigned precision) {
        Rational best = copy.front().witness(x, precision);
        for (std::size_t i = 1; i < copy.size() && best.sign() > 0; ++i)
          best = min(best, copy[i].witness(x, precision));
        return best;
      },
      all_geometric ? SetGeometry::intersection(std::move(geoms)) : nullptr);
}

Rational OpenR2::witness(const Rational& x, unsigned precision) const {
  if (!in_unit(x)) return Rational(0);
  Rational r = (*witness_)(x, precision);
  return r.sign() > 0 ? r : Rational(0);
}

// ---------------------------------------------------------------------------
// R.4

OpenR4 OpenR4::finite(std::vector<RationalInterval> intervals) {
  auto list = std::make_shared<const std::vector<RationalInterval>>(std::move(intervals));
  OpenR4 out(
      [list](std::size_t n) -> std::optional<RationalInterval> {
        if (n < list->size()) return (*list)[n];
        return std::nullopt;
      },
      list->size());
  out.list_ = list;
  return out;
}

OpenR4 OpenR4::with_geometry(std::shared_ptr<const SetGeometry> geometry) const {
  OpenR4 out = *this;
  out.geometry_ = std::move(geometry);
  return out;
}

std::vector<RationalInterval> OpenR4::prefix(std::size_t m) const {
  std::vector<RationalInterval> out;
  if (list_) {
    std::size_t take = std::min(m, list_->size());
    out.assign(list_->begin(), list_->begin() + static_cast<std::ptrdiff_t>(take));
    return out;
  }
  for (std::size_t i = 0; i < m; ++i)
    if (auto iv = at(i)) out.push_back(std::move(*iv));
  return out;
}

Membership r4_membership(const OpenR4& set, const Rational& q, std::size_t stage) {
  std::optional<Rational> best;
  for (const auto& iv : set.prefix(stage)) {
    if (!iv.contains(q)) continue;
    Rational gap = min(q - iv.lo, iv.hi - q);
    if (!best || *best < gap) best = gap;
  }
  if (best) return InsideWithRadius{*best};
  return UnknownAt{stage};
}

namespace {

// Sorted view of a finite interval list for logarithmic-time containment.
struct SortedIntervals {
  std::vector<RationalInterval> by_lo;
  std::vector<Rational> prefix_max_hi;

  explicit SortedIntervals(std::vector<RationalInterval> list) : by_lo(std::move(list)) {
    std::sort(by_lo.begin(), by_lo.end(),
              [](const RationalInterval& a, const RationalInterval& b) { return a.lo < b.lo; });
    for (const auto& iv : by_lo)
      prefix_max_hi.push_back(prefix_max_hi.empty() ? iv.hi : max(prefix_max_hi.back(), iv.hi));
  }

  Rational best_radius(const Rational& x) const {
    auto it = std::lower_bound(by_lo.begin(), by_lo.end(), x,
                               [](const RationalInterval& iv, const Rational& v) { return iv.lo < v; });
    Rational best(0);
    for (auto i = static_cast<std::ptrdiff_t>(it - by_lo.begin()) - 1; i >= 0; --i) {
      if (prefix_max_hi[static_cast<std::size_t>(i)] <= x) break;
      const auto& iv = by_lo[static_cast<std::size_t>(i)];
      if (x < iv.hi) best = max(best, min(x - iv.lo, iv.hi - x));
    }
    return best;
  }
};

}  // namespace

OpenR2 r4_to_r2(const OpenR4& set) {
  if (const auto* list = set.finite_list()) {
    auto sorted = std::make_shared<const SortedIntervals>(*list);
    return OpenR2([sorted](const Rational& x, unsigned) { return sorted->best_radius(x); },
                  SetGeometry::intervals(*list));
  }
  if (set.geometry()) return OpenR2::from_geometry(set.geometry());
  return OpenR2([set](const Rational& x, unsigned precision) {
    auto m = r4_membership(set, x, precision);
    if (auto* in = std::get_if<InsideWithRadius>(&m)) return in->radius;
    return Rational(0);
  });
}

Rational r4_to_r3_lower_bound(const OpenR4& set, const Rational& x, std::size_t stage) {
  if (!in_unit(x)) return Rational(0);
  auto comps = complement_components(set.prefix(stage));
  if (comps.empty()) return Rational(1);
  Rational best = distance_to_closed(x, comps.front());
  for (const auto& c : comps) best = min(best, distance_to_closed(x, c));
  return best;
}

OpenR3 r4_to_r3(const OpenR4& set) {
  return OpenR3{[set](const Rational& x, unsigned stage) {
    return r4_to_r3_lower_bound(set, x, stage);
  }};
}

OpenR3 r3_from_geometry(std::shared_ptr<const SetGeometry> geometry) {
  return OpenR3{[geometry](const Rational& x, unsigned) {
    return geometry->distance_to_complement(x);
  }};
}

OpenR4 r3_to_r4(const OpenR3& set) {
  return OpenR4([set](std::size_t n) -> std::optional<RationalInterval> {
    auto [i, m] = cantor_unpair(n);
    Rational q = canonical_rational(i);
    Rational l = set.lower_bound(q, static_cast<unsigned>(m + 1));
    if (l.sign() <= 0) return std::nullopt;
    return RationalInterval(q - l, q + l);
  });
}

// ---------------------------------------------------------------------------

DenseWitness dense_witness_search(const OpenR2& set, const RationalInterval& interval,
                                  std::optional<std::size_t> budget) {
  IntervalRationals source(interval);
  std::vector<Rational> candidates;
  std::size_t steps = 0;
  for (std::size_t round = 0;; ++round) {
    for (std::size_t j = 0; j <= round; ++j) {
      if (j == candidates.size()) candidates.push_back(source.next());
      if (budget && steps >= *budget)
        throw BudgetExhausted("dense witness search in (" + interval.lo.to_string() + ", " +
                              interval.hi.to_string() + ") after " + std::to_string(steps) +
                              " witness calls");
      ++steps;
      const Rational& q = candidates[j];
      Rational r = set.witness(q, static_cast<unsigned>(round - j + 1));
      if (r.sign() > 0) {
        r = min(r, min(q - interval.lo, interval.hi - q));
        return {q, r, steps};
      }
    }
  }
}

}  // namespace baire
