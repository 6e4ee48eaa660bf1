#include <algorithm>

#include "baire/cli.hpp"
#include "baire/enumeration.hpp"
#include "baire/errors.hpp"

namespace baire::cli {

namespace {

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw MalformedInstance(std::string("missing key \"") + key + "\"");
  return j.at(key);
}

std::string name_of(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_object() && j.contains("name")) return j.at("name").get<std::string>();
  if (j.is_object() && j.contains("generator")) return j.at("generator").get<std::string>();
  throw MalformedInstance("expected a name: " + j.dump());
}

unsigned param(const json& j, const char* key, unsigned fallback) {
  if (j.is_object() && j.contains("params") && j.at("params").contains(key))
    return j.at("params").at(key).get<unsigned>();
  if (j.is_object() && j.contains(key)) return j.at(key).get<unsigned>();
  return fallback;
}

bool drops(const json& j, const char* hook) {
  if (!j.is_object() || !j.contains("drop_hooks")) return false;
  for (const auto& h : j.at("drop_hooks"))
    if (h.get<std::string>() == hook) return true;
  return false;
}

std::vector<Rational> dyadic_level_points(unsigned n) {
  if (n > 20) throw MalformedInstance("dyadic level too deep to list");
  std::vector<Rational> out;
  BigInt den = BigInt(1) << (n + 1);
  for (unsigned long odd = 1; odd < (2UL << n); odd += 2) out.emplace_back(BigInt(odd), den);
  return out;
}

}  // namespace

Rational parse_rational(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  throw MalformedInstance("expected a rational \"p/q\": " + j.dump());
}

std::vector<Rational> parse_points(const json& j) {
  if (!j.is_array()) throw MalformedInstance("expected an array of rationals");
  std::vector<Rational> out;
  for (const auto& e : j) out.push_back(parse_rational(e));
  return out;
}

json rational_json(const Rational& q) { return q.to_string(); }

std::vector<std::string> generator_names() {
  return {"avoid-all-rationals", "h-dyadic", "thomae", "finite-indicator",
          "height-denominator", "dyadics", "constant-zero"};
}

json generator_instance(const std::string& name) {
  json third = json::array({"1/3", "2/3"});
  if (name == "avoid-all-rationals")
    return {{"sequence", {{"generator", "avoid-all-rationals"}}}};
  if (name == "h-dyadic")
    return {{"function", "h-dyadic"},
            {"closed_sequence", {{"generator", "dyadic-levels"}}},
            {"sequence", {{"generator", "h-dyadic"}}}};
  if (name == "thomae")
    return {{"function", "thomae"},
            {"functions", json::array({"thomae", "thomae"})},
            {"sequence", {{"generator", "thomae"}}},
            {"dense_set", {{"generator", "rationals"}}}};
  if (name == "finite-indicator")
    return {{"function", {{"name", "finite-indicator"}, {"points", third}}},
            {"sequence", {{"generator", "finite-indicator"}, {"points", third}}},
            {"points", third},
            {"set", {{"kind", "distance-to-finite"}, {"points", third}}},
            {"bound", 2}};
  if (name == "height-denominator")
    return {{"height_set", {{"generator", "height-denominator"}}}};
  if (name == "dyadics")
    return {{"function", "thomae"}, {"dense_set", {{"generator", "dyadics"}}}};
  if (name == "constant-zero")
    return {{"function", "constant-zero"},
            {"functions", json::array({"constant-zero", "constant-zero"})},
            {"sequence", {{"generator", "full"}}},
            {"closed_sequence", json::array()}};
  throw MalformedInstance("unknown generator \"" + name + "\"");
}

// ---------------------------------------------------------------------------

OpenR4 parse_set_r4(const json& j) {
  const std::string kind = require(j, "kind").get<std::string>();
  if (kind == "r4") {
    std::vector<RationalInterval> list;
    for (const auto& iv : require(j, "intervals")) {
      if (!iv.is_array() || iv.size() != 2) throw MalformedInstance("interval must be [lo, hi]");
      Rational lo = parse_rational(iv[0]), hi = parse_rational(iv[1]);
      if (!(lo < hi)) throw MalformedInstance("interval with lo >= hi");
      list.emplace_back(lo, hi);
    }
    return OpenR4::finite(std::move(list));
  }
  if (kind == "complement-of-finite") return complement_r4(parse_points(require(j, "points")));
  if (kind == "distance-to-finite")
    return r3_to_r4(r3_from_geometry(SetGeometry::complement_of_points(parse_points(require(j, "points")))));
  if (kind == "generator") {
    const std::string name = require(j, "name").get<std::string>();
    if (name == "full") return OpenR4::finite({RationalInterval(Rational(-1), Rational(2))});
    if (name == "empty") return OpenR4::finite({});
    if (name == "dyadic-complement") return dyadic_levels().complement_at(param(j, "n", 0));
    if (name == "thomae-dk") {
      auto geometry = thomae().complement_of_Dk(param(j, "k", 0)).geometry();
      return r3_to_r4(r3_from_geometry(geometry)).with_geometry(geometry);
    }
    throw MalformedInstance("unknown set generator \"" + name + "\"");
  }
  throw MalformedInstance("unknown set kind \"" + kind + "\"");
}

OpenR2 parse_set(const json& j) {
  const std::string kind = require(j, "kind").get<std::string>();
  if (kind == "complement-of-finite" || kind == "distance-to-finite")
    return OpenR2::complement_of_points(parse_points(require(j, "points")));
  if (kind == "generator" && require(j, "name").get<std::string>() == "thomae-dk")
    return thomae().complement_of_Dk(param(j, "k", 0));
  return r4_to_r2(parse_set_r4(j));
}

std::optional<std::vector<ClosedComponent>> exact_complement(const json& j) {
  const std::string kind = require(j, "kind").get<std::string>();
  auto points_of = [](std::vector<Rational> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::vector<ClosedComponent> out;
    for (auto& p : pts)
      if (p.sign() >= 0 && p <= Rational(1)) out.push_back({p, p});
    return out;
  };
  if (kind == "r4") return complement_components(*parse_set_r4(j).finite_list());
  if (kind == "complement-of-finite" || kind == "distance-to-finite")
    return points_of(parse_points(require(j, "points")));
  if (kind == "generator") {
    const std::string name = require(j, "name").get<std::string>();
    if (name == "full") return std::vector<ClosedComponent>{};
    if (name == "empty") return std::vector<ClosedComponent>{{Rational(0), Rational(1)}};
    if (name == "dyadic-complement" && param(j, "n", 0) <= 16)
      return points_of(dyadic_level_points(param(j, "n", 0)));
    if (name == "thomae-dk" && param(j, "k", 0) <= 10)
      return points_of(thomae_Dk(param(j, "k", 0)));
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

EnrichedBaire1 parse_function(const json& j) {
  const std::string name = name_of(j);
  EnrichedBaire1 f;
  if (name == "thomae") {
    f = thomae();
  } else if (name == "h-dyadic") {
    ClosedNowhereDenseSeq x = dyadic_levels();
    if (drops(j, "membership_decision")) { x.membership_decision = nullptr; x.least_index = nullptr; }
    f = make_h(std::move(x));
  } else if (name == "h") {
    f = make_h(parse_closed_sequence(require(j, "closed_sequence")));
  } else if (name == "finite-indicator") {
    f = finite_indicator(parse_points(require(j, "points")));
  } else if (name == "constant-zero") {
    f = finite_indicator({});
    f.name = "constant-zero";
  } else if (name == "dyadic-indicator") {
    f = finite_indicator(dyadic_level_points(param(j, "n", 0)));
  } else {
    throw MalformedInstance("unknown function \"" + name + "\"");
  }
  if (drops(j, "osc_zero_decision")) f.osc_zero_decision = nullptr;
  if (drops(j, "geometry")) {
    // Witnesses only: no exact distance view for the Δ hook.
    f.complement_of_Dk = [dk = f.complement_of_Dk](unsigned k) {
      OpenR2 o = dk(k);
      return OpenR2([o](const Rational& x, unsigned p) { return o.witness(x, p); });
    };
  }
  return f;
}

FunctionSequence parse_function_sequence(const json& j) {
  if (j.is_array()) {
    std::vector<EnrichedBaire1> fs;
    for (const auto& e : j) fs.push_back(parse_function(e));
    auto shared = std::make_shared<const std::vector<EnrichedBaire1>>(std::move(fs));
    auto zero = parse_function("constant-zero");
    return [shared, zero](std::size_t n) { return n < shared->size() ? (*shared)[n] : zero; };
  }
  const std::string name = name_of(j);
  if (name == "dyadic-indicators")
    return [](std::size_t n) {
      return parse_function(json{{"name", "dyadic-indicator"}, {"n", n}});
    };
  if (name == "repeat") {
    auto f = parse_function(require(j, "function"));
    return [f](std::size_t) { return f; };
  }
  throw MalformedInstance("unknown function sequence \"" + name + "\"");
}

ClosedNowhereDenseSeq parse_closed_sequence(const json& j) {
  ClosedNowhereDenseSeq out;
  if (j.is_array()) {
    std::vector<std::vector<Rational>> sets;
    for (const auto& s : j) sets.push_back(parse_points(s));
    out = finite_closed_sets(std::move(sets));
  } else if (name_of(j) == "dyadic-levels") {
    out = dyadic_levels();
  } else {
    throw MalformedInstance("unknown closed sequence " + j.dump());
  }
  if (drops(j, "membership_decision")) { out.membership_decision = nullptr; out.least_index = nullptr; }
  return out;
}

HeightCountableSet parse_height_set(const json& j) {
  if (j.is_array()) {
    // Slices as listed, made cumulative; the last one repeats.
    std::vector<std::vector<Rational>> slices;
    std::vector<Rational> acc;
    for (const auto& s : j) {
      for (auto& q : parse_points(s))
        if (std::find(acc.begin(), acc.end(), q) == acc.end()) acc.push_back(q);
      slices.push_back(acc);
    }
    auto shared = std::make_shared<const std::vector<std::vector<Rational>>>(std::move(slices));
    return HeightCountableSet{[shared](unsigned n) {
      if (shared->empty()) return std::vector<Rational>{};
      return (*shared)[std::min<std::size_t>(n, shared->size() - 1)];
    }};
  }
  if (name_of(j) == "height-denominator") return height_denominator();
  throw MalformedInstance("unknown height set " + j.dump());
}

CountableDenseSet parse_dense_set(const json& j) {
  if (j.is_array()) {
    std::vector<std::pair<Rational, std::uint64_t>> entries;
    for (const auto& e : j) {
      if (!e.is_array() || e.size() != 2) throw MalformedInstance("dense set entry must be [d, Y]");
      entries.emplace_back(parse_rational(e[0]), e[1].get<std::uint64_t>());
    }
    return listed_dense_set(std::move(entries));
  }
  const std::string name = name_of(j);
  if (name == "dyadics") return dyadic_rationals();
  if (name == "rationals") return canonical_rationals();
  throw MalformedInstance("unknown dense set \"" + name + "\"");
}

DenseOpenSequence parse_sequence(const json& j) {
  if (j.is_array()) {
    std::vector<OpenR2> sets;
    for (const auto& s : j) sets.push_back(parse_set(s));
    auto shared = std::make_shared<const std::vector<OpenR2>>(std::move(sets));
    return DenseOpenSequence{[shared](std::size_t n) {
      return n < shared->size() ? (*shared)[n] : OpenR2::full();
    }};
  }
  const std::string name = name_of(j);
  if (name == "avoid-all-rationals")
    return DenseOpenSequence{[](std::size_t n) {
      return OpenR2::complement_of_points({canonical_rational(n)});
    }};
  if (name == "full") return DenseOpenSequence{[](std::size_t) { return OpenR2::full(); }};
  if (name == "h-dyadic" || name == "thomae") return dk_complements(parse_function(name));
  if (name == "finite-indicator")
    return dk_complements(finite_indicator(parse_points(require(j, "points"))));
  throw MalformedInstance("unknown sequence generator \"" + name + "\"");
}

DenseOpenSequence build_fed(const json& d) {
  const std::string kind = require(d, "kind").get<std::string>();
  bool avoid = d.value("avoid_rationals", false);
  DenseOpenSequence seq;
  if (kind == "sequence") {
    seq = parse_sequence(require(d, "sequence"));
  } else if (kind == "dk") {
    seq = dk_complements(parse_function(require(d, "function")));
  } else if (kind == "pair") {
    const auto& fs = require(d, "functions");
    auto f = parse_function(fs.at(0)), g = parse_function(fs.at(1));
    auto df = f.complement_of_Dk, dg = g.complement_of_Dk;
    seq = DenseOpenSequence{[df, dg](std::size_t n) {
      auto k = static_cast<unsigned>(n);
      return OpenR2::intersection({df(k), dg(k)});
    }};
  } else if (kind == "common") {
    seq = common_complements(parse_function_sequence(require(d, "functions")));
  } else if (kind == "dense") {
    seq = dense_avoiding(parse_function(require(d, "function")),
                         parse_dense_set(require(d, "dense_set")));
  } else if (kind == "height") {
    auto slices = parse_height_set(require(d, "height_set")).slice_at;
    seq = DenseOpenSequence{[slices](std::size_t n) {
      return OpenR2::complement_of_points(slices(static_cast<unsigned>(n)));
    }};
  } else if (kind == "witness-producer") {
    seq = dk_complements(parse_function(require(d, "function")));
  } else {
    throw MalformedInstance("unknown fed-sequence kind \"" + kind + "\"");
  }
  return avoid ? avoid_rationals(seq) : seq;
}

}  // namespace baire::cli
