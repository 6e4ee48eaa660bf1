#include "baire/realisers.hpp"

#include <algorithm>
#include <map>

#include "baire/enumeration.hpp"
#include "baire/errors.hpp"

namespace baire {

std::optional<MembershipCertificate> certify_membership(const ExactReal& y, const OpenR2& set,
                                                        unsigned max_precision) {
  for (unsigned k = 0; k <= max_precision; ++k) {
    Rational a = y.approx(k);
    Rational rho = set.witness(a, k + 32);
    if (Rational::dyadic(k) < rho) return MembershipCertificate{"", 0, a, rho, k};
  }
  return std::nullopt;
}

std::optional<SeparationCertificate> certify_separation(const ExactReal& y, const Rational& target,
                                                        unsigned max_precision) {
  auto m = separation_precision(y, target, max_precision);
  if (!m) return std::nullopt;
  return SeparationCertificate{"", 0, target, y.approx(*m), *m};
}

// ---------------------------------------------------------------------------

BaireConstruction::BaireConstruction(DenseOpenSequence seq,
                                     std::optional<std::size_t> stage_budget)
    : seq_(std::move(seq)), stage_budget_(stage_budget) {}

void BaireConstruction::extend_to(unsigned n) {
  while (stages_.size() <= n) {
    const auto stage = static_cast<unsigned>(stages_.size());
    RationalInterval parent =
        stages_.empty() ? RationalInterval(Rational(0), Rational(1)) : stages_.back().interval;
    OpenR2 set = seq_.set_at(stage);
    DenseWitness w = dense_witness_search(set, parent, stage_budget_);
    steps_ += w.steps;
    Rational shrink = min(w.radius / Rational(2), Rational::dyadic(stage + 1));
    stages_.push_back(StageRecord{stage, RationalInterval(w.point - shrink, w.point + shrink),
                                  w.point, w.radius, w.steps});
  }
}

StageRecord BaireConstruction::stage(unsigned n) {
  std::lock_guard lock(mutex_);
  extend_to(n);
  return stages_[n];
}

std::vector<StageRecord> BaireConstruction::trace(unsigned depth) {
  std::lock_guard lock(mutex_);
  if (depth == 0) return {};
  extend_to(depth - 1);
  return {stages_.begin(), stages_.begin() + depth};
}

std::size_t BaireConstruction::total_steps() {
  std::lock_guard lock(mutex_);
  return steps_;
}

BairePoint bct_realiser(const DenseOpenSequence& seq, unsigned depth,
                        std::optional<std::size_t> stage_budget) {
  auto construction = std::make_shared<BaireConstruction>(seq, stage_budget);
  auto trace = construction->trace(depth);
  ExactReal value = ExactReal::from_nested_intervals(
      [construction](unsigned n) { return construction->stage(n).interval; });
  return BairePoint{std::move(value), std::move(trace), std::move(construction)};
}

std::optional<std::string> check_trace(const DenseOpenSequence& seq,
                                       const std::vector<StageRecord>& trace) {
  RationalInterval parent(Rational(0), Rational(1));
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const auto& s = trace[i];
    const std::string where = "stage " + std::to_string(i) + ": ";
    if (s.stage != i) return where + "out of order";
    if (Rational::dyadic(static_cast<long>(i)) < s.interval.width())
      return where + "interval wider than 2^-" + std::to_string(i);
    bool nested = i == 0 ? s.interval.subset_of(parent) : s.interval.closure_subset_of(parent);
    if (!nested) return where + "interval not nested in the previous stage";
    if (s.radius.sign() <= 0) return where + "non-positive radius";
    if (!s.interval.subset_of(RationalInterval(s.center - s.radius, s.center + s.radius)))
      return where + "interval leaves the witness ball";
    OpenR2 set = seq.set_at(i);
    bool inside = set.geometry() ? set.geometry()->contains_ball(s.center, s.radius)
                                 : !(set.witness(s.center, 64) < s.radius);
    if (!inside) return where + "witness ball not inside the open set";
    parent = s.interval;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

AvoidanceStage AvoidanceConstruction::stage(unsigned n) {
  std::lock_guard lock(mutex_);
  while (stages_.size() <= n) {
    const auto idx = static_cast<unsigned>(stages_.size());
    Rational lo = stages_.empty() ? Rational(0) : stages_.back().lo;
    Rational hi = stages_.empty() ? Rational(1) : stages_.back().hi;
    Rational third = (hi - lo) / Rational(3);
    // Thirds in order of preference: middle, left, right.
    const Rational cands[3][2] = {{lo + third, hi - third}, {lo, lo + third}, {hi - third, hi}};
    auto target = points_(idx);
    if (!target) {
      stages_.push_back({idx, cands[0][0], cands[0][1], std::nullopt, 0, Rational(0)});
      continue;
    }
    // Ball of radius 2^{-p} <= width / 12, so at most two adjacent thirds meet it.
    unsigned p = dyadic_floor_exponent((hi - lo) / Rational(12));
    Rational alpha = target->approx(p);
    Rational blo = alpha - Rational::dyadic(p), bhi = alpha + Rational::dyadic(p);
    bool placed = false;
    for (const auto& c : cands) {
      Rational gap = bhi < c[0] ? c[0] - bhi : (c[1] < blo ? blo - c[1] : Rational(0));
      if (gap.sign() > 0) {
        stages_.push_back({idx, c[0], c[1], alpha, p, gap});
        placed = true;
        break;
      }
    }
    if (!placed) throw Error("cantor_avoid: no third avoids the ball");  // unreachable
  }
  return stages_[n];
}

AvoidancePoint cantor_avoid(PointSequence points) {
  auto construction = std::make_shared<AvoidanceConstruction>(std::move(points));
  ExactReal value = ExactReal::from_approximation([construction](unsigned k) {
    // width(J_n) = 3^{-(n+1)} <= 2^{-k}
    unsigned n = 0;
    BigInt three_pow = 3, two_pow = BigInt(1) << k;
    while (three_pow < two_pow) {
      three_pow *= 3;
      ++n;
    }
    AvoidanceStage s = construction->stage(n);
    return midpoint(s.lo, s.hi);
  });
  return AvoidancePoint{std::move(value), std::move(construction)};
}

std::vector<ExactReal> omega_fin(const std::vector<Rational>& points) {
  std::vector<ExactReal> out;
  std::vector<Rational> seen;
  for (const auto& p : points) {
    if (std::find(seen.begin(), seen.end(), p) != seen.end()) continue;
    seen.push_back(p);
    out.push_back(ExactReal::from_rational(p));
  }
  return out;
}

HeightCountableSet height_denominator() {
  return HeightCountableSet{[](unsigned n) {
    return n == 0 ? std::vector<Rational>{} : farey_sequence(n);
  }};
}

PointSequence merged_slices(const HeightCountableSet& set) {
  struct State {
    std::mutex mutex;
    std::vector<std::optional<Rational>> entries;
    std::vector<Rational> seen;  // sorted
    unsigned next_slice = 0;
  };
  auto state = std::make_shared<State>();
  auto slice_at = set.slice_at;
  return [state, slice_at](std::size_t i) -> std::optional<ExactReal> {
    std::lock_guard lock(state->mutex);
    while (state->entries.size() <= i) {
      for (auto& q : slice_at(state->next_slice)) {
        auto it = std::lower_bound(state->seen.begin(), state->seen.end(), q);
        if (it != state->seen.end() && *it == q) continue;
        state->seen.insert(it, q);
        state->entries.emplace_back(q);
      }
      state->entries.emplace_back(std::nullopt);
      ++state->next_slice;
    }
    const auto& e = state->entries[i];
    if (!e) return std::nullopt;
    return ExactReal::from_rational(*e);
  };
}

StrongCantorPoint strong_cantor_realiser(const HeightCountableSet& set, CantorRoute route,
                                         unsigned depth, std::optional<std::size_t> stage_budget) {
  StrongCantorPoint out{ExactReal(), route, {}, std::nullopt, std::nullopt};
  if (route == CantorRoute::ViaBaire) {
    auto slice_at = set.slice_at;
    DenseOpenSequence seq{[slice_at](std::size_t n) {
      return OpenR2::complement_of_points(slice_at(static_cast<unsigned>(n)));
    }};
    out.baire = bct_realiser(seq, depth + 1, stage_budget);
    out.value = out.baire->value;
  } else {
    out.avoidance = cantor_avoid(merged_slices(set));
    out.value = out.avoidance->value;
  }
  auto slice = set.slice_at(depth);
  for (std::size_t i = 0; i < slice.size(); ++i) {
    auto cert = certify_separation(out.value, slice[i], 512);
    if (!cert) throw CertificateFailure("no separation from " + slice[i].to_string());
    cert->family = "height";
    cert->index = i;
    out.separations.push_back(*cert);
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// Incremental stage sweep over an R.4 list, shared by the located points.
class ComponentSweep {
 public:
  ComponentSweep(OpenR4 set, std::size_t budget) : set_(std::move(set)), budget_(budget) {}

  // Advances until pred(components) holds; returns the components and stage.
  template <class Pred>
  std::pair<std::vector<ClosedComponent>, std::size_t> until(Pred pred) {
    std::lock_guard lock(mutex_);
    for (;;) {
      if (!cached_) cached_ = complement_components(intervals_);
      if (pred(*cached_)) return {*cached_, stage_};
      if (stage_ >= budget_ || (set_.length() && stage_ >= *set_.length()))
        throw BudgetExhausted("closed-set sweep stopped at stage " + std::to_string(stage_));
      if (auto iv = set_.at(stage_)) {
        intervals_.push_back(*iv);
        cached_.reset();
      }
      ++stage_;
    }
  }

 private:
  OpenR4 set_;
  std::size_t budget_;
  std::mutex mutex_;
  std::vector<RationalInterval> intervals_;
  std::optional<std::vector<ClosedComponent>> cached_;
  std::size_t stage_ = 0;
};

}  // namespace

std::vector<LocatedPoint> enumerate_finite_closed(const OpenR4& complement, std::size_t bound,
                                                  unsigned k, std::size_t stage_budget) {
  auto sweep = std::make_shared<ComponentSweep>(complement, stage_budget);
  auto narrow = [](unsigned precision) {
    return [precision](const std::vector<ClosedComponent>& comps, std::size_t limit) {
      if (comps.size() > limit) return false;
      for (const auto& c : comps)
        if (Rational::dyadic(precision) < c.hi - c.lo) return false;
      return true;
    };
  };
  auto [comps, stage] =
      sweep->until([&](const std::vector<ClosedComponent>& c) { return narrow(k)(c, bound); });
  std::vector<LocatedPoint> out;
  for (const auto& comp : comps) {
    Rational mid = midpoint(comp.lo, comp.hi);
    // approx(j): midpoint of the component inside `comp` once it is narrower
    // than 2^{-(j+1)}; the point itself is then within 2^{-(j+1)}.
    ExactReal value = ExactReal::from_approximation([sweep, comp, mid, k](unsigned j) {
      if (j + 1 <= k) return mid;
      auto inside = [&](const ClosedComponent& c) { return comp.lo <= c.lo && c.hi <= comp.hi; };
      auto [later, st] = sweep->until([&](const std::vector<ClosedComponent>& cs) {
        for (const auto& c : cs)
          if (inside(c)) return !(Rational::dyadic(j + 1) < c.hi - c.lo);
        return false;
      });
      for (const auto& c : later)
        if (inside(c)) return midpoint(c.lo, c.hi);
      throw BudgetExhausted("located point vanished");
    });
    out.push_back(LocatedPoint{std::move(value), comp, stage});
  }
  return out;
}

}  // namespace baire
