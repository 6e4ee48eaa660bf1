#include <cstdlib>
#include <sstream>

#include "baire/cli.hpp"
#include "baire/enumeration.hpp"
#include "baire/errors.hpp"

namespace baire::cli {

std::size_t default_budget() {
  if (const char* env = std::getenv("BAIRE_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 100000;
}

namespace {

struct Emitter {
  std::vector<json>& out;

  void fed(const json& descriptor) { out.push_back({{"type", "fed"}, {"descriptor", descriptor}}); }

  void stages(const std::vector<StageRecord>& trace) {
    for (const auto& s : trace)
      out.push_back({{"type", "stage"},
                     {"stage", s.stage},
                     {"lo", rational_json(s.interval.lo)},
                     {"hi", rational_json(s.interval.hi)},
                     {"center", rational_json(s.center)},
                     {"radius", rational_json(s.radius)},
                     {"steps", s.steps}});
  }

  void point(const std::string& kind, const TaggedPoint& p, unsigned precision) {
    json a = {{"type", "answer"},
              {"kind", kind},
              {"tag", tag_name(p.tag)},
              {"precision", precision},
              {"approx", rational_json(p.value.approx(precision))}};
    if (p.literal) a["literal"] = rational_json(*p.literal);
    out.push_back(std::move(a));
  }

  void separation(const SeparationCertificate& c) {
    out.push_back({{"type", "separation"},
                   {"family", c.family},
                   {"index", c.index},
                   {"target", rational_json(c.target)},
                   {"approx", rational_json(c.approx)},
                   {"precision", c.precision}});
  }

  void membership(const MembershipCertificate& c) {
    out.push_back({{"type", "membership"},
                   {"family", c.family},
                   {"index", c.index},
                   {"center", rational_json(c.center)},
                   {"radius", rational_json(c.radius)},
                   {"precision", c.precision}});
  }

  void osc_bound(const Rational& q, unsigned m) {
    out.push_back({{"type", "osc-bound"}, {"point", rational_json(q)}, {"m", m}});
  }

  void apartness(const TaggedPoint& p, unsigned count) {
    for (std::size_t n = 0; n < count; ++n) {
      auto cert = p.apart_certifier ? p.apart_certifier(n) : std::nullopt;
      if (!cert) throw CertificateFailure("no separation from canonical rational " + std::to_string(n));
      separation(*cert);
    }
  }

  void located(const std::vector<LocatedPoint>& pts, unsigned k) {
    for (std::size_t i = 0; i < pts.size(); ++i)
      out.push_back({{"type", "located"},
                     {"index", i},
                     {"lo", rational_json(pts[i].component.lo)},
                     {"hi", rational_json(pts[i].component.hi)},
                     {"stage", pts[i].stage},
                     {"precision", k},
                     {"approx", rational_json(pts[i].value.approx(k))}});
  }
};

const json& field(const json& instance, const char* key) {
  if (!instance.contains(key))
    throw MalformedInstance(std::string("instance has no \"") + key + "\"");
  return instance.at(key);
}

BaireRealiserOracle widened_trace(unsigned depth, std::size_t budget) {
  return [depth, budget](const DenseOpenSequence& seq) {
    BairePoint p = bct_realiser(seq, depth, budget);
    if (!p.trace.empty()) {
      auto& s = p.trace[std::min<std::size_t>(5, p.trace.size() - 1)];
      s.interval = RationalInterval(s.interval.lo - s.interval.width(), s.interval.hi);
    }
    return p;
  };
}

BaireRealiserOracle baire_oracle(const RunConfig& c) {
  if (c.oracle == "builtin") return builtin_baire(c.depth, c.budget);
  if (c.oracle == "widened-trace") return widened_trace(c.depth, c.budget);
  throw MalformedInstance("unknown Baire oracle \"" + c.oracle + "\"");
}

json fed_dk(const json& function, bool avoid) {
  return {{"kind", "dk"}, {"function", function}, {"avoid_rationals", avoid}};
}

// Report for a point built by the Baire realiser from a fed sequence.
void emit_baire_point(Emitter& e, const json& fed, const TaggedPoint& p, const std::string& kind,
                      const RunConfig& c) {
  e.fed(fed);
  e.stages(p.stages);
  e.point(kind, p, c.precision);
  if (p.tag == TaggedPoint::Tag::ApartFromRationals) e.apartness(p, 2 * c.depth);
}

void run_bct(const RunConfig& c, Emitter& e) {
  const json& inst = c.instance;
  if (c.mode.empty() || c.mode == "direct") {
    json fed = {{"kind", "sequence"}, {"sequence", field(inst, "sequence")}};
    BairePoint p = baire_oracle(c)(build_fed(fed));
    TaggedPoint t;
    t.value = p.value;
    t.stages = p.trace;
    emit_baire_point(e, fed, t, "baire-point", c);
    return;
  }
  if (c.mode != "via-continuity") throw MalformedInstance("unknown bct mode \"" + c.mode + "\"");
  const json& closed = field(inst, "closed_sequence");
  json h = {{"name", "h"}, {"closed_sequence", closed}};
  ContinuityPointOracle oracle;
  if (c.oracle == "builtin") {
    auto b = builtin_baire(c.depth, c.budget);
    oracle = [b](const EnrichedBaire1& f) { return continuity_point_from_baire(f, b); };
  } else if (c.oracle == "point-in-x0") {
    oracle = [](const EnrichedBaire1&) { return TaggedPoint::rational(Rational(1, 2)); };
  } else {
    throw MalformedInstance("unknown continuity oracle \"" + c.oracle + "\"");
  }
  CertifiedPoint r = baire_from_continuity(parse_closed_sequence(closed), oracle, c.depth);
  if (!r.point.stages.empty()) {
    e.fed(fed_dk(h, false));
    e.stages(r.point.stages);
  }
  e.point("baire-point", r.point, c.precision);
  for (const auto& m : r.memberships) e.membership(m);
}

void emit_volterra(Emitter& e, const VolterraAnswer& answer, const json& fed,
                   const RunConfig& c) {
  if (const auto* d = std::get_if<RationalDiscontinuity>(&answer)) {
    e.point("rational-discontinuity", TaggedPoint::rational(d->point), c.precision);
    e.osc_bound(d->point, d->m);
    return;
  }
  emit_baire_point(e, fed, std::get<IrrationalContinuity>(answer).point, "irrational-continuity", c);
}

VolterraAnswer volterra_answer(const RunConfig& c, const EnrichedBaire1& f, const json& fn,
                               json& fed) {
  VolterraMode mode =
      c.mode == "force-irrational" ? VolterraMode::ForceIrrational : VolterraMode::Dovetail;
  if (!c.mode.empty() && c.mode != "force-irrational" && c.mode != "dovetail")
    throw MalformedInstance("unknown volterra mode \"" + c.mode + "\"");
  if (c.oracle == "builtin") {
    fed = fed_dk(fn, true);
    return volterra_from_baire(f, builtin_baire(c.depth, c.budget), mode, c.depth, c.budget);
  }
  PairOracle pair;
  auto b = builtin_baire(c.depth, c.budget);
  if (c.oracle == "pair") {
    pair = [b](const EnrichedBaire1& x, const EnrichedBaire1& y) { return pair_reduction(x, y, b, true); };
  } else if (c.oracle == "pair-undeclared") {
    pair = [b](const EnrichedBaire1& x, const EnrichedBaire1& y) { return pair_reduction(x, y, b, false); };
  } else if (c.oracle == "pair-literal-third") {
    pair = [](const EnrichedBaire1&, const EnrichedBaire1&) { return TaggedPoint::rational(Rational(1, 3)); };
  } else if (c.oracle == "pair-literal-half") {
    pair = [](const EnrichedBaire1&, const EnrichedBaire1&) { return TaggedPoint::rational(Rational(1, 2)); };
  } else {
    throw MalformedInstance("unknown Volterra oracle \"" + c.oracle + "\"");
  }
  fed = {{"kind", "pair"}, {"functions", json::array({fn, "thomae"})}, {"avoid_rationals", true}};
  return volterra_from_pair(f, pair, c.depth);
}

void run_volterra(const RunConfig& c, Emitter& e) {
  const json& fn = field(c.instance, "function");
  json fed;
  VolterraAnswer answer = volterra_answer(c, parse_function(fn), fn, fed);
  emit_volterra(e, answer, fed, c);
}

void run_continuity(const RunConfig& c, Emitter& e) {
  const json& fn = field(c.instance, "function");
  EnrichedBaire1 f = parse_function(fn);
  if (c.mode.empty() || c.mode == "baire") {
    emit_baire_point(e, fed_dk(fn, false), continuity_point_from_baire(f, baire_oracle(c)),
                     "continuity-point", c);
  } else if (c.mode == "bootheel") {
    WitnessProducer w = [](const EnrichedBaire1& g, unsigned n) { return g.complement_of_Dk(n); };
    json fed = {{"kind", "witness-producer"}, {"function", fn}};
    emit_baire_point(e, fed, bootheel_continuity(f, w, baire_oracle(c)), "continuity-point", c);
  } else if (c.mode == "from-volterra") {
    VolterraOracle v;
    if (c.oracle == "builtin") {
      auto b = builtin_baire(c.depth, c.budget);
      unsigned depth = c.depth;
      v = [b, depth](const EnrichedBaire1& g) {
        return volterra_from_baire(g, b, VolterraMode::ForceIrrational, depth);
      };
    } else if (c.oracle == "volterra-rational") {
      v = [](const EnrichedBaire1&) { return VolterraAnswer(RationalDiscontinuity{Rational(1, 2), 1}); };
    } else {
      throw MalformedInstance("unknown Volterra oracle \"" + c.oracle + "\"");
    }
    TaggedPoint p = continuity_from_volterra(f, v, c.budget);
    if (p.tag == TaggedPoint::Tag::RationalLiteral) {
      e.point("continuity-point", p, c.precision);
      e.out.push_back({{"type", "osc-zero"}, {"point", rational_json(*p.literal)}});
    } else {
      emit_baire_point(e, fed_dk(fn, true), p, "continuity-point", c);
    }
  } else {
    throw MalformedInstance("unknown continuity-point mode \"" + c.mode + "\"");
  }
}

void run_pair(const RunConfig& c, Emitter& e) {
  const json& fs = field(c.instance, "functions");
  if (!fs.is_array() || fs.size() != 2) throw MalformedInstance("pair needs two functions");
  TaggedPoint p = pair_reduction(parse_function(fs[0]), parse_function(fs[1]), baire_oracle(c), true);
  emit_baire_point(e, {{"kind", "pair"}, {"functions", fs}, {"avoid_rationals", true}}, p,
                   "continuity-point", c);
}

void run_sequence(const RunConfig& c, Emitter& e) {
  const json& fs = field(c.instance, "functions");
  TaggedPoint p = common_continuity_point(parse_function_sequence(fs), baire_oracle(c));
  emit_baire_point(e, {{"kind", "common"}, {"functions", fs}}, p, "continuity-point", c);
}

void run_minmax(const RunConfig& c, Emitter& e) {
  const json& closed = field(c.instance, "closed_sequence");
  MinMaxOracle m;
  std::shared_ptr<TaggedPoint> seen = std::make_shared<TaggedPoint>();
  if (c.oracle == "builtin") {
    auto b = builtin_baire(c.depth, c.budget);
    m = [b, seen](const EnrichedBaire1& h) {
      *seen = continuity_point_from_baire(h, b);
      return std::pair{*seen, *seen};
    };
  } else if (c.oracle == "literal-third" || c.oracle == "literal-half") {
    Rational a = c.oracle == "literal-third" ? Rational(1, 3) : Rational(1, 2);
    m = [a](const EnrichedBaire1&) { return std::pair{TaggedPoint::rational(a), TaggedPoint::rational(a)}; };
  } else {
    throw MalformedInstance("unknown min-max oracle \"" + c.oracle + "\"");
  }
  CertifiedPoint r = baire_from_minmax(parse_closed_sequence(closed), m, c.depth);
  if (!r.point.stages.empty()) {
    e.fed(fed_dk({{"name", "h"}, {"closed_sequence", closed}}, false));
    e.stages(r.point.stages);
  }
  e.point("baire-point", r.point, c.precision);
  for (const auto& cert : r.memberships) e.membership(cert);
}

void run_countable_dense(const RunConfig& c, Emitter& e) {
  const json& fn = field(c.instance, "function");
  const json& dense = field(c.instance, "dense_set");
  DenseMode mode = c.mode == "dovetail" ? DenseMode::Dovetail : DenseMode::Avoidance;
  if (!c.mode.empty() && c.mode != "dovetail" && c.mode != "avoidance")
    throw MalformedInstance("unknown countable-dense mode \"" + c.mode + "\"");
  DenseAnswer answer = countable_dense_volterra(parse_dense_set(dense), parse_function(fn),
                                                baire_oracle(c), mode, c.depth, c.budget);
  if (const auto* d = std::get_if<DenseDiscontinuity>(&answer)) {
    e.point("dense-discontinuity", TaggedPoint::rational(d->point), c.precision);
    e.out.back()["height"] = d->height;
    e.osc_bound(d->point, d->m);
    return;
  }
  const auto& cont = std::get<DenseContinuity>(answer);
  emit_baire_point(e, {{"kind", "dense"}, {"function", fn}, {"dense_set", dense}}, cont.point,
                   "continuity-point", c);
  for (const auto& s : cont.separations) e.separation(s);
}

void run_strong_cantor(const RunConfig& c, Emitter& e) {
  const json& hs = field(c.instance, "height_set");
  CantorRoute route;
  if (c.route == "via-baire") route = CantorRoute::ViaBaire;
  else if (c.route == "via-enumeration") route = CantorRoute::ViaEnumeration;
  else throw MalformedInstance("unknown route \"" + c.route + "\"");
  StrongCantorPoint p = strong_cantor_realiser(parse_height_set(hs), route, c.depth, c.budget);
  TaggedPoint t;
  t.value = p.value;
  if (p.baire) {
    e.fed({{"kind", "height"}, {"height_set", hs}});
    e.stages(p.baire->trace);
  } else {
    // Every stage that the certificates and the answer touched.
    unsigned needed = 0;
    for (const auto& s : p.separations) needed = std::max(needed, s.precision);
    needed = std::max(needed, c.precision);
    unsigned stages = 1;
    BigInt three = 3;
    while (three < (BigInt(1) << needed)) {
      three *= 3;
      ++stages;
    }
    for (unsigned n = 0; n < stages; ++n) {
      AvoidanceStage s = p.avoidance->construction->stage(n);
      json r = {{"type", "avoid"},
                {"stage", n},
                {"lo", rational_json(s.lo)},
                {"hi", rational_json(s.hi)},
                {"precision", s.precision},
                {"separation", rational_json(s.separation)}};
      if (s.target_approx) r["target"] = rational_json(*s.target_approx);
      e.out.push_back(std::move(r));
    }
  }
  e.point("strong-cantor-point", t, c.precision);
  for (const auto& s : p.separations) e.separation(s);
}

json closed_set_spec(const json& fn) {
  EnrichedBaire1 f = parse_function(fn);
  if (f.name == "finite-indicator") return {{"kind", "complement-of-finite"}, {"points", fn.at("points")}};
  if (f.name == "constant-zero") return {{"kind", "generator"}, {"name", "full"}};
  return nullptr;
}

void run_omega_fin(const RunConfig& c, Emitter& e) {
  if (c.mode == "bootheel") {
    const json& fn = field(c.instance, "function");
    std::size_t bound = c.bound ? *c.bound : c.instance.value("bound", std::size_t{0});
    WitnessProducer w = [](const EnrichedBaire1& g, unsigned n) { return g.complement_of_Dk(n); };
    auto pts = bootheel_enumerate(parse_function(fn), w, 0, bound, c.precision, c.budget);
    e.out.push_back({{"type", "closed-set"}, {"set", closed_set_spec(fn)}});
    e.located(pts, c.precision);
    return;
  }
  if (!c.mode.empty()) throw MalformedInstance("unknown omega-fin mode \"" + c.mode + "\"");
  auto xs = omega_fin(parse_points(field(c.instance, "points")));
  for (std::size_t i = 0; i < xs.size(); ++i)
    e.out.push_back({{"type", "element"}, {"index", i}, {"value", rational_json(*xs[i].exact())}});
}

std::vector<Rational> probes(const json& inst) {
  if (inst.contains("probes")) return parse_points(inst.at("probes"));
  std::vector<Rational> out;
  for (std::size_t i = 0; i < 32; ++i) out.push_back(canonical_rational(i));
  return out;
}

void run_convert(const RunConfig& c, Emitter& e) {
  const json& set = field(c.instance, "set");
  OpenR4 r4 = parse_set_r4(set);
  if (c.mode.empty() || c.mode == "r4-to-r2") {
    OpenR2 r2 = r4_to_r2(r4);
    for (const auto& x : probes(c.instance))
      e.out.push_back({{"type", "witness"},
                       {"x", rational_json(x)},
                       {"precision", c.precision},
                       {"radius", rational_json(r2.witness(x, c.precision))}});
  } else if (c.mode == "r4-to-r3") {
    for (const auto& x : probes(c.instance))
      for (std::size_t m = 1; m <= c.depth; ++m)
        e.out.push_back({{"type", "distance"},
                         {"x", rational_json(x)},
                         {"stage", m},
                         {"lower_bound", rational_json(r4_to_r3_lower_bound(r4, x, m))}});
  } else if (c.mode == "r3-to-r4") {
    OpenR4 back = r3_to_r4(r4_to_r3(r4));
    std::size_t count = std::min<std::size_t>(c.budget, 1024);
    for (std::size_t n = 0; n < count; ++n)
      if (auto iv = back.at(n))
        e.out.push_back({{"type", "interval"},
                         {"index", n},
                         {"lo", rational_json(iv->lo)},
                         {"hi", rational_json(iv->hi)}});
  } else {
    throw MalformedInstance("unknown convert mode \"" + c.mode + "\"");
  }
}

void run_enumerate_closed(const RunConfig& c, Emitter& e) {
  const json& set = field(c.instance, "set");
  std::size_t bound = c.bound ? *c.bound : c.instance.value("bound", std::size_t{0});
  auto pts = enumerate_finite_closed(parse_set_r4(set), bound, c.precision, c.budget);
  e.out.push_back({{"type", "closed-set"}, {"set", set}});
  e.located(pts, c.precision);
}

}  // namespace

RunReport run(const RunConfig& c) {
  RunReport report;
  Emitter e{report.records};
  json config = {{"oracle", c.oracle}, {"mode", c.mode},       {"route", c.route},
                 {"depth", c.depth},   {"precision", c.precision}, {"budget", c.budget}};
  if (c.bound) config["bound"] = *c.bound;
  report.records.push_back({{"type", "header"},
                            {"subcommand", c.subcommand},
                            {"instance_name", c.instance_name},
                            {"config", config},
                            {"instance", c.instance}});
  try {
    if (c.depth == 0 || c.precision == 0 || c.budget == 0)
      throw MalformedInstance("depth, precision and budget must be positive");
    const std::string& s = c.subcommand;
    if (s == "bct") run_bct(c, e);
    else if (s == "continuity-point") run_continuity(c, e);
    else if (s == "volterra") run_volterra(c, e);
    else if (s == "pair") run_pair(c, e);
    else if (s == "sequence") run_sequence(c, e);
    else if (s == "minmax-to-baire") run_minmax(c, e);
    else if (s == "countable-dense") run_countable_dense(c, e);
    else if (s == "strong-cantor") run_strong_cantor(c, e);
    else if (s == "omega-fin") run_omega_fin(c, e);
    else if (s == "convert") run_convert(c, e);
    else if (s == "enumerate-closed") run_enumerate_closed(c, e);
    else throw MalformedInstance("unknown subcommand \"" + s + "\"");
  } catch (const BudgetExhausted& ex) {
    report.status = kBudgetExhausted;
    report.error = ex.what();
  } catch (const CertificateFailure& ex) {
    report.status = kCertificateFailure;
    report.error = ex.what();
  } catch (const MalformedInstance& ex) {
    report.status = kMalformed;
    report.error = ex.what();
  } catch (const NeedsMembershipDecision& ex) {
    report.status = kMalformed;
    report.error = ex.what();
  } catch (const NeedsOscZeroDecision& ex) {
    report.status = kMalformed;
    report.error = ex.what();
  } catch (const DeltaHookUnavailable& ex) {
    report.status = kMalformed;
    report.error = ex.what();
  } catch (const InjectivityViolation& ex) {
    report.status = kMalformed;
    report.error = ex.what();
  } catch (const json::exception& ex) {
    report.status = kMalformed;
    report.error = std::string("malformed instance: ") + ex.what();
  } catch (const std::exception& ex) {
    report.status = kInternal;
    report.error = ex.what();
  }
  if (report.status != kCertified) {
    // Partial certificates are not part of a failed run.
    report.records.resize(1);
    report.records.push_back({{"type", "error"}, {"status", report.status}, {"message", report.error}});
  } else {
    report.records.push_back({{"type", "summary"}, {"status", "certified"}});
  }
  return report;
}

std::vector<json> read_records(const std::string& text) {
  std::vector<json> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) out.push_back(json::parse(line));
  return out;
}

std::string write_records(const std::vector<json>& records) {
  std::string out;
  for (const auto& r : records) out += r.dump() + "\n";
  return out;
}

std::string render_human(const RunReport& report) {
  std::ostringstream out;
  auto dec = [](const json& q) { return parse_rational(q).to_decimal(12); };
  std::size_t stages = 0, separations = 0, memberships = 0;
  for (const auto& r : report.records) {
    const std::string type = r.at("type");
    if (type == "header") {
      out << r.at("subcommand").get<std::string>();
      if (!r.at("instance_name").get<std::string>().empty())
        out << " on " << r.at("instance_name").get<std::string>();
      out << "\n";
    } else if (type == "stage") {
      ++stages;
      out << "  stage " << r.at("stage") << ": (" << dec(r.at("lo")) << ", " << dec(r.at("hi"))
          << ")  radius " << dec(r.at("radius")) << "\n";
    } else if (type == "answer") {
      out << "answer: " << r.at("kind").get<std::string>() << " [" << r.at("tag").get<std::string>()
          << "] ";
      if (r.contains("literal")) out << r.at("literal").get<std::string>();
      else out << "~ " << dec(r.at("approx")) << " (±2^-" << r.at("precision") << ")";
      out << "\n";
    } else if (type == "osc-bound") {
      out << "  osc_f(" << r.at("point").get<std::string>() << ") >= 2^-" << r.at("m") << "\n";
    } else if (type == "osc-zero") {
      out << "  osc_f(" << r.at("point").get<std::string>() << ") = 0\n";
    } else if (type == "separation") {
      ++separations;
    } else if (type == "membership") {
      ++memberships;
    } else if (type == "located") {
      out << "  point " << r.at("index") << " ~ " << dec(r.at("approx")) << "  in ["
          << r.at("lo").get<std::string>() << ", " << r.at("hi").get<std::string>() << "]\n";
    } else if (type == "element") {
      out << "  " << r.at("value").get<std::string>() << "\n";
    } else if (type == "witness") {
      out << "  witness(" << r.at("x").get<std::string>() << ") = " << r.at("radius").get<std::string>() << "\n";
    } else if (type == "interval") {
      out << "  interval " << r.at("index") << ": (" << r.at("lo").get<std::string>() << ", "
          << r.at("hi").get<std::string>() << ")\n";
    } else if (type == "error") {
      out << "error: " << r.at("message").get<std::string>() << "\n";
    }
  }
  if (stages) out << stages << " stages\n";
  if (separations) out << separations << " separation certificates\n";
  if (memberships) out << memberships << " membership certificates\n";
  out << (report.status == kCertified ? "certified" : "not certified") << " (exit " << report.status << ")\n";
  return out.str();
}

std::string render_verdicts(const std::vector<Verdict>& verdicts) {
  std::ostringstream out;
  std::size_t failed = 0;
  for (const auto& v : verdicts) {
    if (!v.pass) ++failed;
    out << (v.pass ? "pass  " : "FAIL  ") << v.check;
    if (!v.detail.empty()) out << "  (" << v.detail << ")";
    out << "\n";
  }
  out << verdicts.size() - failed << "/" << verdicts.size() << " checks passed\n";
  return out.str();
}

}  // namespace baire::cli
