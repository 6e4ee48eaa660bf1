#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

#include "baire/cli.hpp"
#include "baire/errors.hpp"

using namespace baire;
using namespace baire::cli;

namespace {

RunConfig config(const std::string& sub, const std::string& generator) {
  RunConfig c;
  c.subcommand = sub;
  c.instance = generator_instance(generator);
  c.instance_name = generator;
  return c;
}

bool all_pass(const std::vector<Verdict>& vs) {
  if (vs.empty()) return false;
  for (const auto& v : vs)
    if (!v.pass) return false;
  return true;
}

int shell(const std::string& cmd) {
  int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "baire-cli-test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("set parsing") {
  OpenR4 o = parse_set_r4(json::parse(R"({"kind":"r4","intervals":[["1/4","3/4"],["0","1/8"]]})"));
  CHECK(o.prefix(5).size() == 2);
  OpenR2 c = parse_set(json::parse(R"({"kind":"complement-of-finite","points":["1/2"]})"));
  CHECK(c.witness(Rational(1, 4), 0) == Rational(1, 4));
  OpenR2 g = parse_set(json::parse(R"({"kind":"generator","name":"thomae-dk","params":{"k":1}})"));
  CHECK(g.witness(Rational(1, 2), 10).is_zero());
  CHECK_THROWS_AS(parse_set(json::parse(R"({"kind":"r4","intervals":[["3/4","1/4"]]})")), MalformedInstance);
  CHECK_THROWS_AS(parse_set(json::parse(R"({"kind":"mystery"})")), MalformedInstance);
  CHECK_THROWS_AS(parse_rational(json(1.5)), MalformedInstance);
  auto comp = exact_complement(json::parse(R"({"kind":"complement-of-finite","points":["2/3","1/3"]})"));
  REQUIRE(comp);
  CHECK(comp->size() == 2);
  CHECK((*comp)[0].lo == Rational(1, 3));
}

TEST_CASE("every generator name expands") {
  for (const auto& name : generator_names()) CHECK_NOTHROW(generator_instance(name));
  CHECK_THROWS_AS(generator_instance("nope"), MalformedInstance);
}

TEST_CASE("bct report verifies and survives a round trip") {
  RunConfig c = config("bct", "h-dyadic");
  c.depth = 12;
  RunReport r = run(c);
  REQUIRE(r.status == kCertified);
  std::string text = write_records(r.records);
  auto back = read_records(text);
  CHECK(back == r.records);
  CHECK(all_pass(verify(back)));
  CHECK(render_human(r).find("certified") != std::string::npos);
}

TEST_CASE("verify rejects tampered stages and certificates") {
  RunConfig c = config("bct", "thomae");
  c.depth = 10;
  RunReport r = run(c);
  REQUIRE(r.status == kCertified);
  auto widened = r.records;
  for (auto& rec : widened)
    if (rec["type"] == "stage" && rec["stage"] == 4) rec["lo"] = "0";
  CHECK_FALSE(all_pass(verify(widened)));

  RunConfig v = config("volterra", "thomae");
  v.mode = "force-irrational";
  RunReport vr = run(v);
  REQUIRE(vr.status == kCertified);
  auto bad = vr.records;
  bool touched = false;
  for (auto& rec : bad)
    if (!touched && rec["type"] == "separation") {
      rec["precision"] = 1;
      touched = true;
    }
  REQUIRE(touched);
  CHECK_FALSE(all_pass(verify(bad)));
}

TEST_CASE("status codes from run") {
  RunConfig c = config("bct", "avoid-all-rationals");
  c.instance = json::parse(R"({"sequence":[{"kind":"r4","intervals":[["0","1/8"]]}]})");
  c.budget = 50;
  CHECK(run(c).status == kBudgetExhausted);
  RunConfig m = config("bct", "thomae");
  m.instance = json::parse(R"({"sequence":{"generator":"no-such"}})");
  CHECK(run(m).status == kMalformed);
  RunConfig u = config("frobnicate", "thomae");
  CHECK(run(u).status == kMalformed);
  RunConfig stub = config("bct", "h-dyadic");
  stub.mode = "via-continuity";
  stub.oracle = "point-in-x0";
  CHECK(run(stub).status == kCertificateFailure);
  RunConfig nohook = config("omega-fin", "finite-indicator");
  nohook.mode = "bootheel";
  nohook.bound = 2;
  nohook.instance["function"]["drop_hooks"] = {"geometry"};
  CHECK(run(nohook).status == kMalformed);
}

TEST_CASE("a failed run carries only the header and the error") {
  RunConfig c = config("minmax-to-baire", "h-dyadic");
  c.oracle = "literal-half";
  RunReport r = run(c);
  REQUIRE(r.status == kCertificateFailure);
  REQUIRE(r.records.size() == 2);
  CHECK(r.records[0]["type"] == "header");
  CHECK(r.records[1]["type"] == "error");
  CHECK_FALSE(r.error.empty());
}

TEST_CASE("runs are deterministic") {
  RunConfig c = config("strong-cantor", "height-denominator");
  c.depth = 8;
  CHECK(write_records(run(c).records) == write_records(run(c).records));
}

TEST_CASE("built-in suite") {
  auto results = run_suite(builtin_suite());
  CHECK(results.size() >= 30);
  for (const auto& r : results) {
    INFO(r.name << ": " << r.error);
    CHECK(r.ok());
  }
}

#ifdef BAIRE_BINARY
TEST_CASE("command line exit codes") {
  const std::string bin = BAIRE_BINARY;
  auto report = scratch("bct.jsonl");
  CHECK(shell(bin + " bct --generator thomae --depth 8 --format records --out " + report.string()) == 0);
  CHECK(shell(bin + " verify " + report.string() + " > /dev/null") == 0);

  std::ifstream in(report);
  std::string text((std::istreambuf_iterator<char>(in)), {});
  auto recs = read_records(text);
  for (auto& rec : recs)
    if (rec["type"] == "stage" && rec["stage"] == 3) rec["hi"] = "1";
  auto tampered = scratch("tampered.jsonl");
  std::ofstream(tampered) << write_records(recs);
  CHECK(shell(bin + " verify " + tampered.string() + " > /dev/null") == kCertificateFailure);

  auto missing = scratch("missing.json");
  std::filesystem::remove(missing);
  CHECK(shell(bin + " bct --instance " + missing.string() + " 2> /dev/null") == kMalformed);
  auto broken = scratch("broken.json");
  std::ofstream(broken) << R"({"sequence":[{"kind":"r4","intervals":[["1","x"]]}]})";
  CHECK(shell(bin + " bct --instance " + broken.string() + " > /dev/null 2>&1") == kMalformed);
  auto sparse = scratch("sparse.json");
  std::ofstream(sparse) << R"({"sequence":[{"kind":"r4","intervals":[["0","1/8"]]}]})";
  CHECK(shell(bin + " bct --budget 50 --instance " + sparse.string() + " > /dev/null 2>&1") ==
        kBudgetExhausted);
  CHECK(shell(bin + " volterra --generator constant-zero --oracle pair-undeclared > /dev/null 2>&1") ==
        kCertificateFailure);
  CHECK(shell("BAIRE_BUDGET=40 " + bin + " bct --instance " + sparse.string() + " > /dev/null 2>&1") ==
        kBudgetExhausted);
}
#endif
