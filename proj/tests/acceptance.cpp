// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>

#include "baire/cli.hpp"
#include "baire/errors.hpp"
#include "oracles.hpp"

using namespace baire;
using namespace baire::cli;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::string note;
  void fail(const std::string& why) {
    if (ok) note = why;
    ok = false;
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Runs fn, enforcing a wall-clock limit on it.
Outcome timed(double limit, const std::function<void(Outcome&)>& fn, double& elapsed) {
  Outcome o;
  auto t0 = Clock::now();
  try {
    fn(o);
  } catch (const std::exception& ex) {
    o.fail(std::string("exception: ") + ex.what());
  }
  elapsed = seconds_since(t0);
  if (elapsed >= limit) o.fail("took " + std::to_string(elapsed) + " s, limit " + std::to_string(limit));
  return o;
}

RunConfig config(const std::string& sub, const std::string& generator) {
  RunConfig c;
  c.subcommand = sub;
  c.instance = generator_instance(generator);
  c.instance_name = generator;
  return c;
}

std::size_t failed(const std::vector<Verdict>& vs) {
  std::size_t n = 0;
  for (const auto& v : vs) n += v.pass ? 0 : 1;
  return n;
}

// Runs a config, expects certification and an all-pass verify.
RunReport certified(const RunConfig& c, Outcome& o, const std::string& label) {
  RunReport r = run(c);
  if (r.status != kCertified) {
    o.fail(label + ": exit " + std::to_string(r.status) + " " + r.error);
    return r;
  }
  auto vs = verify(r.records);
  if (vs.empty() || failed(vs) > 0) o.fail(label + ": " + std::to_string(failed(vs)) + " verdicts fail");
  return r;
}

Rational rat(const json& j) { return parse_rational(j); }

// ---------------------------------------------------------------------------

void criterion1(Outcome& o, std::string& detail) {
  auto suite = builtin_suite();
  double worst = 0;
  for (std::size_t i = 0; i < 5; ++i) {
    const SuiteCase& sc = suite[i];
    auto t0 = Clock::now();
    RunReport r = certified(sc.config, o, sc.name);
    double secs = seconds_since(t0);
    worst = std::max(worst, secs);
    if (secs >= 5) o.fail(sc.name + " took " + std::to_string(secs) + " s");
    std::vector<json> stages;
    for (const auto& rec : r.records)
      if (rec["type"] == "stage") stages.push_back(rec);
    if (stages.size() != 32) o.fail(sc.name + ": " + std::to_string(stages.size()) + " stages");
    for (std::size_t n = 0; n < stages.size(); ++n) {
      Rational lo = rat(stages[n]["lo"]), hi = rat(stages[n]["hi"]);
      if (hi - lo > Rational::dyadic(static_cast<unsigned>(n))) o.fail(sc.name + ": wide stage");
      if (n > 0 && !(rat(stages[n - 1]["lo"]) <= lo && hi <= rat(stages[n - 1]["hi"])))
        o.fail(sc.name + ": stages not nested");
      // The midpoint of the last interval sits in every earlier witness ball.
      Rational mid = midpoint(rat(stages.back()["lo"]), rat(stages.back()["hi"]));
      if ((mid - rat(stages[n]["center"])).abs() >= rat(stages[n]["radius"]))
        o.fail(sc.name + ": final midpoint outside ball " + std::to_string(n));
    }
  }
  detail = "5 instances x 32 stages, slowest " + std::to_string(worst).substr(0, 5) + " s";
}

void criterion2(Outcome& o, std::string& detail) {
  EnrichedBaire1 h = make_h(dyadic_levels());
  auto f = exact_evaluator(h);
  std::mt19937_64 rng(2024);
  std::vector<Rational> samples;
  // Half dyadic (h > 0 there), half arbitrary rationals (mostly h = 0).
  while (samples.size() < 50) {
    unsigned k = std::uniform_int_distribution<unsigned>(1, 9)(rng);
    long odd = 2 * std::uniform_int_distribution<long>(0, (1L << (k - 1)) - 1)(rng) + 1;
    samples.emplace_back(BigInt(odd), BigInt(1) << k);
  }
  while (samples.size() < 100) samples.emplace_back(oracle::random_rational(rng, 1000));
  Rational worst(0);
  std::size_t positive = 0;
  for (const auto& q : samples) {
    Rational hq = h.eval_at_rational(q).approx(0);
    positive += hq.sign() > 0;
    Rational err = (brute_force_osc(f, q, 10, 20) - hq).abs();
    worst = max(worst, err);
    if (err > Rational::dyadic(10)) o.fail("osc mismatch at " + q.to_string());
  }
  detail = "100 samples (" + std::to_string(positive) + " with h > 0), max error " + worst.to_string();
}

void criterion3(Outcome& o, std::string& detail) {
  auto t = exact_evaluator(thomae());
  auto fractions = oracle::farey(64);
  Rational worst(0);
  for (const auto& x : fractions) {
    Rational q(x);
    Rational target(1, q.denominator().get_si());
    // Two grid refinements; both must sit within 2^-10 of 1/q.
    for (unsigned grid : {18u, 20u}) {
      Rational err = (brute_force_osc(t, q, 14, grid) - target).abs();
      worst = max(worst, err);
      if (err > Rational::dyadic(10)) o.fail("Thomae osc mismatch at " + q.to_string());
    }
  }
  detail = std::to_string(fractions.size()) + " fractions, max error " + worst.to_string();
}

void criterion4(Outcome& o, std::string& detail) {
  auto I = [](long a, long b, long c, long d) { return RationalInterval(Rational(a, b), Rational(c, d)); };
  std::vector<std::vector<RationalInterval>> instances = {
      {I(1, 4, 3, 4)},
      {I(0, 1, 1, 3), I(1, 2, 2, 3), I(5, 8, 7, 8)},
      {I(1, 10, 1, 5), I(1, 7, 2, 7), I(3, 5, 1, 1)},
  };
  std::size_t total_inside = 0, total_outside = 0;
  for (const auto& list : instances) {
    OpenR4 o4 = OpenR4::finite(list);
    OpenR4 back = r3_to_r4(r4_to_r3(o4));
    auto entries = back.prefix(20000);
    std::vector<Rational> inside, outside;
    for (const auto& i : list)
      for (const auto& e : {i.lo, i.hi})
        if (e.sign() >= 0 && e <= Rational(1) && !SetGeometry::intervals(list)->contains_point(e))
          outside.push_back(e);
    for (std::uint64_t n = 0; inside.size() < 100 || outside.size() < 100; ++n) {
      Rational q = canonical_rational(n);
      bool in = false;
      for (const auto& i : list) in = in || i.contains(q);
      (in ? inside : outside).push_back(q);
    }
    inside.resize(100);
    for (const auto& p : inside) {
      bool covered = false;
      for (const auto& e : entries) covered = covered || e.contains(p);
      if (!covered) o.fail("probe " + p.to_string() + " not re-covered");
    }
    for (const auto& p : outside)
      for (const auto& e : entries)
        if (e.contains(p)) o.fail("interval contains complement probe " + p.to_string());
    total_inside += inside.size();
    total_outside += outside.size();
  }
  detail = "3 instances, " + std::to_string(total_inside) + " inside probes covered, " +
           std::to_string(total_outside) + " complement probes avoided";
}

void criterion5(Outcome& o, std::string& detail) {
  RunConfig a = config("bct", "h-dyadic");
  a.mode = "via-continuity";
  a.depth = 16;
  auto t0 = Clock::now();
  RunReport ra = certified(a, o, "(a)->(b)->(a) h-dyadic");
  double sa = seconds_since(t0);
  std::size_t memberships = 0;
  for (const auto& rec : ra.records) memberships += rec["type"] == "membership";
  if (memberships < 16) o.fail("only " + std::to_string(memberships) + " membership certificates");

  RunConfig c = config("volterra", "thomae");
  c.mode = "force-irrational";
  c.depth = 16;
  t0 = Clock::now();
  RunReport rc = certified(c, o, "force-irrational thomae");
  double sc = seconds_since(t0);
  std::size_t seps = 0;
  for (const auto& rec : rc.records) seps += rec["type"] == "separation";
  if (seps == 0) o.fail("force-irrational answer carries no separation certificates");
  if (sa >= 10 || sc >= 10) o.fail("round trip over 10 s");
  detail = std::to_string(memberships) + " memberships, " + std::to_string(seps) + " separations re-verified";
}

void criterion6(Outcome& o, std::string& detail) {
  struct Stub {
    std::string label, sub, generator, oracle, mode;
  };
  std::vector<Stub> stubs = {
      {"point inside X_0", "bct", "h-dyadic", "point-in-x0", "via-continuity"},
      {"literal with osc 0 (pair)", "volterra", "constant-zero", "pair-literal-half", ""},
      {"literal with osc 0 (min-max)", "minmax-to-baire", "h-dyadic", "literal-half", ""},
      {"undeclared pair point", "volterra", "constant-zero", "pair-undeclared", ""},
      {"rational Volterra answer", "continuity-point", "thomae", "volterra-rational", "from-volterra"},
      {"widened trace (reduction)", "continuity-point", "thomae", "widened-trace", "baire"},
      {"widened trace (bare report)", "bct", "avoid-all-rationals", "widened-trace", ""},
  };
  std::size_t rejected = 0;
  for (const auto& s : stubs) {
    RunConfig c = config(s.sub, s.generator);
    c.oracle = s.oracle;
    c.mode = s.mode;
    RunReport r = run(c);
    bool rejected_here = r.status == kCertificateFailure ||
                         (r.status == kCertified && failed(verify(r.records)) > 0);
    if (!rejected_here) o.fail(s.label + " was not rejected (exit " + std::to_string(r.status) + ")");
    rejected += rejected_here;
  }
  detail = std::to_string(rejected) + "/" + std::to_string(stubs.size()) + " stubs rejected";
}

void criterion7(Outcome& o, std::string& detail) {
  std::set<std::string> a20;
  for (const auto& x : oracle::farey(20)) a20.insert(Rational(x).to_string());
  std::vector<std::string> approxes;
  for (const char* route : {"via-baire", "via-enumeration"}) {
    RunConfig c = config("strong-cantor", "height-denominator");
    c.route = route;
    c.depth = 20;
    auto t0 = Clock::now();
    RunReport r = certified(c, o, route);
    if (seconds_since(t0) >= 5) o.fail(std::string(route) + " over 5 s");
    std::set<std::string> covered;
    for (const auto& rec : r.records) {
      if (rec["type"] == "answer") approxes.push_back(rec["approx"]);
      if (rec["type"] != "separation" || rec["family"] != "height") continue;
      Rational t = rat(rec["target"]), a = rat(rec["approx"]);
      unsigned p = rec["precision"];
      if ((a - t).abs() <= Rational(2) * Rational::dyadic(p)) o.fail("weak separation");
      covered.insert(t.to_string());
    }
    if (covered != a20) o.fail(std::string(route) + ": separations do not cover A_20");
  }
  detail = "both routes separated from all " + std::to_string(a20.size()) + " elements of A_20";
}

void criterion8(Outcome& o, std::string& detail) {
  RunConfig c = config("omega-fin", "finite-indicator");
  c.mode = "bootheel";
  c.precision = 8;
  RunReport r = certified(c, o, "bootheel part 2");
  std::vector<Rational> located;
  for (const auto& rec : r.records)
    if (rec["type"] == "located") located.push_back(rat(rec["approx"]));
  if (located.size() != 2) {
    o.fail(std::to_string(located.size()) + " points located");
    return;
  }
  std::sort(located.begin(), located.end());
  Rational e1 = (located[0] - Rational(1, 3)).abs(), e2 = (located[1] - Rational(2, 3)).abs();
  if (e1 > Rational::dyadic(8) || e2 > Rational::dyadic(8)) o.fail("located points too far");
  detail = "2 points, errors " + e1.to_string() + " and " + e2.to_string();
}

// Random reals with a known value and a certified error profile.
struct Sample {
  ExactReal x;
  std::optional<Rational> value;
};

Sample random_real(std::mt19937_64& rng, int depth = 0) {
  std::uniform_int_distribution<int> pick(0, depth > 2 ? 3 : 6);
  mpq_class v = oracle::random_rational(rng, 4096) * 4 - 2;
  Rational r(v);
  std::uint64_t seed = rng();
  switch (pick(rng)) {
    case 0:
      return {ExactReal::from_rational(r), r};
    case 1:
      // Noise up to 2^{-(k+1)} with a per-k pseudo-random sign and size.
      return {ExactReal::from_approximation([r, seed](unsigned k) {
                std::mt19937_64 g(seed ^ (k * 0x9e3779b97f4a7c15ULL));
                long num = std::uniform_int_distribution<long>(-1000, 1000)(g);
                return r + Rational(num, 1000) * Rational::dyadic(k + 1);
              }),
              r};
    case 2:
      return {ExactReal::from_nested_intervals([r, seed](unsigned n) {
                std::mt19937_64 g(seed + n);
                long num = std::uniform_int_distribution<long>(1, 999)(g);
                Rational w = Rational::dyadic(n);
                Rational lo = r - w * Rational(num, 1000);
                return RationalInterval(lo, lo + w);
              }),
              r};
    case 3: {
      // sqrt(2) - 1 by bisection: no rational value.
      auto iv = [](unsigned n) {
        Rational lo(0), hi(1);
        for (unsigned i = 0; i < n; ++i) {
          Rational m = midpoint(lo, hi);
          ((m + Rational(1)) * (m + Rational(1)) < Rational(2) ? lo : hi) = m;
        }
        return RationalInterval(lo, hi);
      };
      return {ExactReal::from_nested_intervals(iv), std::nullopt};
    }
    default: {
      Sample a = random_real(rng, depth + 1), b = random_real(rng, depth + 1);
      auto both = [&](auto op, ExactReal e) -> Sample {
        if (a.value && b.value) return {e, op(*a.value, *b.value)};
        return {e, std::nullopt};
      };
      switch (rng() % 5) {
        case 0: return both([](auto p, auto q) { return p + q; }, add(a.x, b.x));
        case 1: return both([](auto p, auto q) { return p - q; }, sub(a.x, b.x));
        case 2: return both([](auto p, auto q) { return min(p, q); }, min(a.x, b.x));
        case 3: return both([](auto p, auto q) { return max(p, q); }, max(a.x, b.x));
        default: return both([](auto p, auto q) { return midpoint(p, q); }, midpoint(a.x, b.x));
      }
    }
  }
}

void criterion9(Outcome& o, std::string& detail) {
  std::mt19937_64 rng(99);
  std::size_t cauchy = 0, comparisons = 0, separations = 0;
  for (int i = 0; i < 10000; ++i) {
    Sample s = random_real(rng);
    unsigned k = static_cast<unsigned>(rng() % 40);
    unsigned j = static_cast<unsigned>(rng() % 20);
    Rational a = s.x.approx(k), b = s.x.approx(k + j);
    if ((a - b).abs() > Rational::dyadic(k)) o.fail("Cauchy bound broken");
    if (s.value && (a - *s.value).abs() > Rational::dyadic(k)) o.fail("approximant too far from value");
    ++cauchy;

    Sample t = random_real(rng);
    if (i % 2 == 0 && s.value) t = {ExactReal::from_rational(*s.value + Rational(static_cast<long>(rng() % 7) - 3) * Rational::dyadic(k)), std::nullopt};
    Comparison c = cmp_at_precision(s.x, t.x, k);
    ++comparisons;
    if (s.value && t.value) {
      Rational gap = *t.value - *s.value;
      if (c.less() && !(gap.sign() > 0)) o.fail("unsound Less");
      if (c.greater() && !(gap.sign() < 0)) o.fail("unsound Greater");
      if (c.indistinguishable() && gap.abs() > Rational::dyadic(k)) o.fail("incomplete comparison");
    } else {
      // Without exact values, check against deep approximants.
      Rational gap = t.x.approx(k + 60) - s.x.approx(k + 60);
      Rational tol = Rational::dyadic(k + 59);
      if (c.less() && gap < -tol) o.fail("unsound Less (deep)");
      if (c.greater() && gap > tol) o.fail("unsound Greater (deep)");
    }
    if (s.value && t.value && *s.value != *t.value) {
      unsigned m = separation_certificate(s.x, t.x, 200);
      ++separations;
      if ((s.x.approx(m) - t.x.approx(m)).abs() <= Rational::pow2(1 - static_cast<long>(m)))
        o.fail("separation certificate does not check");
    }
  }
  detail = std::to_string(cauchy) + " Cauchy, " + std::to_string(comparisons) + " comparison, " +
           std::to_string(separations) + " separation cases";
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit;
    void (*fn)(Outcome&, std::string&);
  };
  const Criterion criteria[] = {
      {1, "constructive BCT on 5 instances", 25, criterion1},
      {2, "h is its own oscillation", 10, criterion2},
      {3, "Thomae self-oscillation, denominators <= 64", 30, criterion3},
      {4, "R3 -> R4 round trip on finite instances", 5, criterion4},
      {5, "reduction round trips re-verify", 20, criterion5},
      {6, "adversarial oracles rejected", 60, criterion6},
      {7, "strong Cantor realiser, both routes, A_20", 10, criterion7},
      {8, "finite set recovered from oscillation data", 5, criterion8},
      {9, "exact-real randomized suites (10^4 cases)", 30, criterion9},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    std::string detail;
    double secs = 0;
    Outcome o = timed(c.limit, [&](Outcome& out) { c.fn(out, detail); }, secs);
    std::printf("%s criterion %d: %s [%.2fs] %s%s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, secs,
                o.ok ? detail.c_str() : o.note.c_str(), "");
    std::fflush(stdout);
    failures += !o.ok;
  }
  return failures == 0 ? 0 : 1;
}
