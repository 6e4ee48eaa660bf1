#include <chrono>
#include <future>

#include "baire/cli.hpp"

namespace baire::cli {

namespace {

SuiteCase make(std::string name, std::string sub, const std::string& generator, int expected,
               std::function<void(RunConfig&)> tweak = nullptr) {
  RunConfig c;
  c.subcommand = std::move(sub);
  c.instance = generator_instance(generator);
  c.instance_name = generator;
  if (tweak) tweak(c);
  return SuiteCase{std::move(name), std::move(c), expected};
}

json mixed_sequence() {
  return json::array({
      {{"kind", "r4"}, {"intervals", json::array({json::array({"0", "1/2"}), json::array({"1/2", "1"})})}},
      {{"kind", "complement-of-finite"}, {"points", json::array({"1/3", "2/3"})}},
      {{"kind", "generator"}, {"name", "thomae-dk"}, {"params", {{"k", 6}}}},
      {{"kind", "generator"}, {"name", "dyadic-complement"}, {"params", {{"n", 3}}}},
  });
}

}  // namespace

std::vector<SuiteCase> builtin_suite() {
  auto deep = [](RunConfig& c) { c.depth = 32; };
  std::vector<SuiteCase> s;
  s.push_back(make("bct avoid-all-rationals", "bct", "avoid-all-rationals", kCertified, deep));
  s.push_back(make("bct h-dyadic", "bct", "h-dyadic", kCertified, deep));
  s.push_back(make("bct thomae", "bct", "thomae", kCertified, deep));
  s.push_back(make("bct finite-indicator", "bct", "finite-indicator", kCertified, deep));
  s.push_back(make("bct mixed", "bct", "avoid-all-rationals", kCertified, [](RunConfig& c) {
    c.depth = 32;
    c.instance = {{"sequence", mixed_sequence()}};
    c.instance_name = "mixed";
  }));
  s.push_back(make("bct non-dense", "bct", "avoid-all-rationals", kBudgetExhausted, [](RunConfig& c) {
    c.budget = 100;
    c.instance = {{"sequence",
                   json::array({{{"kind", "r4"}, {"intervals", json::array({json::array({"1/4", "3/4"})})}},
                                {{"kind", "r4"}, {"intervals", json::array({json::array({"0", "1/8"})})}}})}};
    c.instance_name = "non-dense";
  }));
  s.push_back(make("bct widened-trace", "bct", "avoid-all-rationals", kCertified,
                   [](RunConfig& c) { c.oracle = "widened-trace"; }));
  s.back().expect_verify_failure = true;
  s.push_back(make("round trip (a)->(b)->(a)", "bct", "h-dyadic", kCertified,
                   [](RunConfig& c) { c.mode = "via-continuity"; }));
  s.push_back(make("point inside X_0", "bct", "h-dyadic", kCertificateFailure, [](RunConfig& c) {
    c.mode = "via-continuity";
    c.oracle = "point-in-x0";
  }));
  s.push_back(make("continuity-point thomae", "continuity-point", "thomae", kCertified));
  s.push_back(make("continuity-point bootheel", "continuity-point", "thomae", kCertified,
                   [](RunConfig& c) { c.mode = "bootheel"; }));
  s.push_back(make("continuity from volterra F{1/3,2/3}", "continuity-point", "finite-indicator",
                   kCertified, [](RunConfig& c) { c.mode = "from-volterra"; }));
  s.push_back(make("continuity from volterra thomae", "continuity-point", "thomae", kCertified,
                   [](RunConfig& c) {
                     c.mode = "from-volterra";
                     c.budget = 2000;
                   }));
  s.push_back(make("continuity from volterra, no hook", "continuity-point", "thomae", kMalformed,
                   [](RunConfig& c) {
                     c.mode = "from-volterra";
                     c.instance["function"] = {{"name", "thomae"}, {"drop_hooks", {"osc_zero_decision"}}};
                   }));
  s.push_back(make("volterra dovetail thomae", "volterra", "thomae", kCertified,
                   [](RunConfig& c) { c.mode = "dovetail"; }));
  s.push_back(make("volterra force-irrational thomae", "volterra", "thomae", kCertified,
                   [](RunConfig& c) { c.mode = "force-irrational"; }));
  s.push_back(make("volterra via pair F{1/3,2/3}", "volterra", "finite-indicator", kCertified,
                   [](RunConfig& c) { c.oracle = "pair"; }));
  s.push_back(make("pair literal 1/3", "volterra", "finite-indicator", kCertified,
                   [](RunConfig& c) { c.oracle = "pair-literal-third"; }));
  s.push_back(make("pair literal with osc 0", "volterra", "constant-zero", kCertificateFailure,
                   [](RunConfig& c) { c.oracle = "pair-literal-half"; }));
  s.push_back(make("pair undeclared", "volterra", "constant-zero", kCertificateFailure,
                   [](RunConfig& c) { c.oracle = "pair-undeclared"; }));
  s.push_back(make("pair thomae F{1/3}", "pair", "thomae", kCertified, [](RunConfig& c) {
    c.instance["functions"] = json::array({"thomae", {{"name", "finite-indicator"}, {"points", {"1/3"}}}});
  }));
  s.push_back(make("sequence dyadic indicators", "sequence", "thomae", kCertified, [](RunConfig& c) {
    c.instance["functions"] = {{"generator", "dyadic-indicators"}};
  }));
  s.push_back(make("minmax literal 1/3", "minmax-to-baire", "h-dyadic", kCertified,
                   [](RunConfig& c) { c.oracle = "literal-third"; }));
  s.push_back(make("minmax literal 1/2", "minmax-to-baire", "h-dyadic", kCertificateFailure,
                   [](RunConfig& c) { c.oracle = "literal-half"; }));
  s.push_back(make("minmax builtin", "minmax-to-baire", "h-dyadic", kCertified));
  s.push_back(make("countable-dense dyadics thomae", "countable-dense", "dyadics", kCertified,
                   [](RunConfig& c) { c.mode = "dovetail"; }));
  s.push_back(make("countable-dense dyadics zero", "countable-dense", "dyadics", kCertified,
                   [](RunConfig& c) {
                     c.mode = "avoidance";
                     c.depth = 32;
                     c.instance["function"] = "constant-zero";
                   }));
  s.push_back(make("strong-cantor via-baire", "strong-cantor", "height-denominator", kCertified,
                   [](RunConfig& c) { c.depth = 20; }));
  s.push_back(make("strong-cantor via-enumeration", "strong-cantor", "height-denominator",
                   kCertified, [](RunConfig& c) {
                     c.depth = 20;
                     c.route = "via-enumeration";
                   }));
  s.push_back(make("omega-fin", "omega-fin", "finite-indicator", kCertified));
  s.push_back(make("bootheel enumeration", "omega-fin", "finite-indicator", kCertified,
                   [](RunConfig& c) {
                     c.mode = "bootheel";
                     c.precision = 8;
                   }));
  for (const char* mode : {"r4-to-r2", "r4-to-r3", "r3-to-r4"})
    s.push_back(make(std::string("convert ") + mode, "convert", "finite-indicator", kCertified,
                     [mode](RunConfig& c) {
                       c.mode = mode;
                       c.depth = 8;
                       c.instance["set"] = {{"kind", "r4"},
                                            {"intervals", json::array({json::array({"0", "1/2"}),
                                                                       json::array({"1/4", "3/4"})})}};
                     }));
  s.push_back(make("enumerate-closed", "enumerate-closed", "finite-indicator", kCertified,
                   [](RunConfig& c) { c.precision = 8; }));
  return s;
}

std::vector<SuiteResult> run_suite(const std::vector<SuiteCase>& cases) {
  std::vector<std::future<SuiteResult>> jobs;
  for (const auto& sc : cases)
    jobs.push_back(std::async(std::launch::async, [sc] {
      auto t0 = std::chrono::steady_clock::now();
      RunReport report = run(sc.config);
      std::size_t verdicts = 0, failed = 0;
      if (report.status == kCertified) {
        auto vs = verify(report.records);
        verdicts = vs.size();
        for (const auto& v : vs) failed += v.pass ? 0 : 1;
      }
      double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      return SuiteResult{sc.name, report.status, sc.expected_status, verdicts, failed, secs,
                         report.error, sc.expect_verify_failure};
    }));
  std::vector<SuiteResult> out;
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

}  // namespace baire::cli
