#include <algorithm>
#include <map>
#include <set>

#include "baire/cli.hpp"
#include "baire/enumeration.hpp"
#include "baire/errors.hpp"

namespace baire::cli {

namespace {

Rational q(const json& j) { return parse_rational(j); }

// Closed intervals that must all contain the reported real.
struct Constraints {
  std::optional<Rational> lo, hi;
  void add(const Rational& a, const Rational& b) {
    if (!lo || *lo < a) lo = a;
    if (!hi || b < *hi) hi = b;
  }
  void around(const Rational& center, unsigned precision) {
    add(center - Rational::dyadic(precision), center + Rational::dyadic(precision));
  }
};

class Verifier {
 public:
  explicit Verifier(const json& header)
      : instance_(header.at("instance")),
        config_(header.at("config")),
        subcommand_(header.at("subcommand").get<std::string>()) {}

  void record(const json& r) {
    const std::string type = r.at("type");
    if (type == "fed") fed(r.at("descriptor"));
    else if (type == "stage") stage(r);
    else if (type == "answer") answer(r);
    else if (type == "separation") separation(r);
    else if (type == "membership") membership(r);
    else if (type == "osc-bound") osc_bound(r);
    else if (type == "osc-zero") osc_zero(r);
    else if (type == "avoid") avoid(r);
    else if (type == "closed-set") closed_set_ = r.at("set");
    else if (type == "located") located_.push_back(r);
    else if (type == "element") elements_.push_back(r);
    else if (type == "witness") witness(r);
    else if (type == "distance") distance(r);
    else if (type == "interval") interval(r);
    else if (type == "error") add("run", false, r.at("message").get<std::string>());
  }

  std::vector<Verdict> finish() {
    if (!located_.empty() || closed_set_) check_located();
    if (subcommand_ == "omega-fin" && !closed_set_) check_elements();
    if (constraints_.lo) {
      bool ok = !(*constraints_.hi < *constraints_.lo);
      add("consistency", ok, ok ? "" : "approximants and stage intervals have no common point");
      if (literal_) {
        bool in = *constraints_.lo <= *literal_ && *literal_ <= *constraints_.hi;
        add("literal", in, in ? "" : "declared rational violates the certificates");
      }
    }
    return std::move(verdicts_);
  }

 private:
  void add(std::string check, bool pass, std::string detail = "") {
    verdicts_.push_back({std::move(check), pass, std::move(detail)});
  }

  EnrichedBaire1 function() const {
    if (instance_.contains("function")) return parse_function(instance_.at("function"));
    throw MalformedInstance("instance has no function");
  }

  unsigned depth() const { return config_.at("depth").get<unsigned>(); }

  void fed(const json& d) {
    descriptor_ = d;
    seq_ = build_fed(d);
    const std::string kind = d.at("kind");
    if (kind == "pair")
      for (const auto& f : d.at("functions")) constituents_.push_back(parse_function(f));
  }

  void stage(const json& r) {
    const auto n = r.at("stage").get<unsigned>();
    const std::string name = "stage " + std::to_string(n);
    if (!seq_) return add(name, false, "no fed sequence in report");
    Rational lo = q(r.at("lo")), hi = q(r.at("hi")), c = q(r.at("center")), rad = q(r.at("radius"));
    std::string why;
    if (n != next_stage_) why = "stage out of order";
    else if (!(lo < hi)) why = "empty interval";
    else if (Rational::dyadic(n) < hi - lo) why = "width exceeds 2^-" + std::to_string(n);
    else if (n == 0 ? (lo.sign() < 0 || Rational(1) < hi) : !(prev_lo_ < lo && hi < prev_hi_))
      why = "closure not inside the previous stage";
    else if (rad.sign() <= 0 || lo < c - rad || c + rad < hi) why = "interval leaves the witness ball";
    if (why.empty()) {
      OpenR2 set = seq_->set_at(n);
      if (set.geometry()) {
        if (!set.geometry()->contains_ball(c, rad)) why = "witness ball meets the complement";
      } else if (set.witness(c, 64) < rad) {
        why = "witness ball not confirmed";
      }
    }
    add(name, why.empty(), why);
    for (std::size_t i = 0; i < constituents_.size(); ++i) {
      auto g = constituents_[i].complement_of_Dk(n).geometry();
      bool ok = g && g->contains_ball(c, rad);
      add(name + " dk:" + std::to_string(i), ok, ok ? "" : "ball meets D_k of this function");
    }
    next_stage_ = n + 1;
    prev_lo_ = lo;
    prev_hi_ = hi;
    constraints_.add(lo, hi);
  }

  void answer(const json& r) {
    constraints_.around(q(r.at("approx")), r.at("precision").get<unsigned>());
    if (r.contains("literal")) literal_ = q(r.at("literal"));
    if (r.contains("literal") && r.at("tag") != "rational-literal")
      add("answer tag", false, "literal without rational-literal tag");
  }

  void separation(const json& r) {
    const std::string family = r.at("family");
    const auto idx = r.at("index").get<std::size_t>();
    const std::string name = "separation " + family + ":" + std::to_string(idx);
    Rational target = q(r.at("target")), a = q(r.at("approx"));
    const auto p = r.at("precision").get<unsigned>();
    std::string why;
    if (!(Rational(2) * Rational::dyadic(p) < (a - target).abs())) why = "gap not above 2*2^-p";
    try {
      if (family == "rationals" && canonical_rational(idx) != target)
        why = "target is not canonical rational " + std::to_string(idx);
      if (family == "height") {
        auto slice = parse_height_set(instance_.at("height_set")).slice_at(depth());
        if (idx >= slice.size() || slice[idx] != target) why = "target not in the slice";
      }
      if (family == "dense") {
        auto slice = parse_dense_set(instance_.at("dense_set")).slice(depth());
        if (idx >= slice.size() || slice[idx] != target) why = "target not in the dense slice";
      }
    } catch (const std::exception& ex) {
      why = ex.what();
    }
    add(name, why.empty(), why);
    constraints_.around(a, p);
  }

  void membership(const json& r) {
    const std::string family = r.at("family");
    const auto idx = r.at("index").get<std::size_t>();
    const std::string name = "membership " + family + ":" + std::to_string(idx);
    Rational c = q(r.at("center")), rad = q(r.at("radius"));
    const auto p = r.at("precision").get<unsigned>();
    std::string why;
    if (!(Rational::dyadic(p) < rad)) why = "radius not above 2^-p";
    if (why.empty() && family == "x") {
      auto x = parse_closed_sequence(instance_.at("closed_sequence"));
      auto g = r4_to_r2(x.complement_at(static_cast<unsigned>(idx))).geometry();
      if (!g || !g->contains_ball(c, rad)) why = "ball meets X_n";
    }
    add(name, why.empty(), why);
    constraints_.around(c, p);
  }

  void osc_bound(const json& r) {
    Rational x = q(r.at("point"));
    const auto m = r.at("m").get<unsigned>();
    EnrichedBaire1 f = function();
    auto exact = f.osc_at_rational(x).exact_rational;
    Rational target = Rational::dyadic(m);
    Rational brute = brute_force_osc(exact_evaluator(f), x, 10, 20);
    std::string why;
    if (!exact || *exact < target) why = "exact oscillation below 2^-m";
    else if (brute < target - Rational::dyadic(10)) why = "grid oscillation below 2^-m - 2^-10";
    add("osc-bound " + x.to_string(), why.empty(), why);
  }

  void osc_zero(const json& r) {
    Rational x = q(r.at("point"));
    EnrichedBaire1 f = function();
    auto exact = f.osc_at_rational(x).exact_rational;
    Rational brute = brute_force_osc(exact_evaluator(f), x, 10, 20);
    bool ok = exact && exact->is_zero() && !(Rational::dyadic(10) < brute);
    add("osc-zero " + x.to_string(), ok, ok ? "" : "oscillation is positive");
    literal_ = x;
  }

  void avoid(const json& r) {
    const auto n = r.at("stage").get<unsigned>();
    const std::string name = "avoid " + std::to_string(n);
    Rational lo = q(r.at("lo")), hi = q(r.at("hi")), sep = q(r.at("separation"));
    Rational plo = n == 0 ? Rational(0) : prev_lo_, phi = n == 0 ? Rational(1) : prev_hi_;
    Rational t = (phi - plo) / Rational(3);
    std::string why;
    bool third = (lo == plo && hi == plo + t) || (lo == plo + t && hi == phi - t) ||
                 (lo == phi - t && hi == phi);
    if (n != next_stage_) why = "stage out of order";
    else if (!third) why = "not a third of the previous interval";
    if (why.empty()) {
      if (!enumeration_)
        enumeration_ = merged_slices(parse_height_set(instance_.at("height_set")));
      auto target = (*enumeration_)(n);
      if (target.has_value() != r.contains("target")) {
        why = "target presence disagrees with the enumeration";
      } else if (target) {
        Rational alpha = q(r.at("target"));
        const auto p = r.at("precision").get<unsigned>();
        Rational ball = Rational::dyadic(p);
        Rational exact = *target->exact();
        Rational gap = hi < alpha - ball ? alpha - ball - hi : (alpha + ball < lo ? lo - alpha - ball : Rational(0));
        if (ball < (alpha - exact).abs()) why = "target approximation off by more than 2^-p";
        else if (gap.sign() <= 0 || gap != sep) why = "separation does not match the geometry";
      }
    }
    add(name, why.empty(), why);
    next_stage_ = n + 1;
    prev_lo_ = lo;
    prev_hi_ = hi;
    constraints_.add(lo, hi);
  }

  void check_located() {
    if (!closed_set_ || closed_set_->is_null()) return add("located", false, "no exact closed set");
    auto truth = exact_complement(*closed_set_);
    if (!truth) return add("located", false, "closed set has no exact view");
    std::vector<std::pair<Rational, Rational>> boxes;
    for (const auto& r : located_) {
      Rational lo = q(r.at("lo")), hi = q(r.at("hi"));
      const auto k = r.at("precision").get<unsigned>();
      Rational a = q(r.at("approx"));
      std::size_t inside = 0;
      for (const auto& c : *truth)
        if (lo <= c.lo && c.hi <= hi) ++inside;
      std::string why;
      if (Rational::dyadic(k) < hi - lo) why = "component wider than 2^-k";
      else if (inside != 1) why = std::to_string(inside) + " true points in the component";
      else if (a < lo || hi < a) why = "approximation outside its component";
      add("located " + r.at("index").dump(), why.empty(), why);
      boxes.emplace_back(lo, hi);
    }
    std::size_t covered = 0;
    for (const auto& c : *truth)
      for (const auto& [lo, hi] : boxes)
        if (lo <= c.lo && c.hi <= hi) {
          ++covered;
          break;
        }
    bool ok = covered == truth->size() && boxes.size() == truth->size();
    add("located count", ok,
        ok ? "" : std::to_string(boxes.size()) + " located for " + std::to_string(truth->size()) + " points");
  }

  void check_elements() {
    std::vector<Rational> expected;
    for (auto& x : parse_points(instance_.at("points")))
      if (std::find(expected.begin(), expected.end(), x) == expected.end()) expected.push_back(x);
    bool ok = elements_.size() == expected.size();
    for (std::size_t i = 0; ok && i < elements_.size(); ++i)
      ok = q(elements_[i].at("value")) == expected[i];
    add("elements", ok, ok ? "" : "enumeration differs from the deduplicated input");
  }

  const std::shared_ptr<const SetGeometry>& set_geometry() {
    if (!set_geom_) {
      set_geom_ = parse_set(instance_.at("set")).geometry();
      if (!set_geom_) throw MalformedInstance("set has no exact geometry");
    }
    return set_geom_;
  }

  void witness(const json& r) {
    Rational x = q(r.at("x")), rad = q(r.at("radius"));
    bool ok = rad.sign() == 0 || set_geometry()->contains_ball(x, rad);
    add("witness " + x.to_string(), ok, ok ? "" : "ball meets the complement");
  }

  void distance(const json& r) {
    Rational x = q(r.at("x")), lb = q(r.at("lower_bound"));
    const auto m = r.at("stage").get<std::size_t>();
    Rational d = set_geometry()->distance_to_complement(x);
    std::string key = x.to_string();
    bool ok = !(d < lb) && (!last_lb_.count(key) || !(lb < last_lb_[key]));
    last_lb_[key] = lb;
    add("distance " + key + "@" + std::to_string(m), ok, ok ? "" : "bound above the distance or not monotone");
  }

  void interval(const json& r) {
    Rational lo = q(r.at("lo")), hi = q(r.at("hi"));
    bool ok = lo < hi && set_geometry()->contains_interval(lo, hi);
    add("interval " + r.at("index").dump(), ok, ok ? "" : "interval leaves the set");
  }

  json instance_;
  json config_;
  std::string subcommand_;
  std::vector<Verdict> verdicts_;
  std::optional<json> descriptor_;
  std::optional<DenseOpenSequence> seq_;
  std::vector<EnrichedBaire1> constituents_;
  std::optional<PointSequence> enumeration_;
  unsigned next_stage_ = 0;
  Rational prev_lo_, prev_hi_;
  Constraints constraints_;
  std::optional<Rational> literal_;
  std::optional<json> closed_set_;
  std::vector<json> located_;
  std::vector<json> elements_;
  std::shared_ptr<const SetGeometry> set_geom_;
  std::map<std::string, Rational> last_lb_;
};

}  // namespace

std::vector<Verdict> verify(const std::vector<json>& records) {
  if (records.empty() || records.front().value("type", "") != "header")
    return {{"report", false, "report does not start with a header"}};
  try {
    Verifier v(records.front());
    for (std::size_t i = 1; i < records.size(); ++i) v.record(records[i]);
    return v.finish();
  } catch (const std::exception& ex) {
    return {{"report", false, ex.what()}};
  }
}

}  // namespace baire::cli
