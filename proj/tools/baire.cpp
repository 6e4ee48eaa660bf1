#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "baire/cli.hpp"

using namespace baire::cli;

namespace {

struct Options {
  std::string instance_path;
  std::string generator;
  std::string format = "human";
  std::string out;
  std::size_t bound = 0;
  RunConfig config;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(o.out);
    f << text;
  }
}

int run_command(Options& o, const std::string& name, bool has_bound) {
  RunConfig& c = o.config;
  c.subcommand = name;
  if (has_bound) c.bound = o.bound;
  try {
    if (!o.instance_path.empty()) {
      c.instance = json::parse(slurp(o.instance_path));
      c.instance_name = o.instance_path;
    } else if (!o.generator.empty()) {
      c.instance = generator_instance(o.generator);
      c.instance_name = o.generator;
    } else {
      std::cerr << "need --instance or --generator\n";
      return kMalformed;
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kMalformed;
  }
  RunReport report = run(c);
  emit(o, o.format == "records" ? write_records(report.records) : render_human(report));
  if (report.status != kCertified && o.format == "records") std::cerr << "error: " << report.error << "\n";
  return report.status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified Baire-category realisers and reductions"};
  app.require_subcommand(1);

  Options o;
  o.config.budget = default_budget();
  int status = 0;

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"bct", "Baire category realiser on a dense open sequence (--mode direct|via-continuity)"},
      {"continuity-point", "continuity point of an enriched function (--mode baire|bootheel|from-volterra)"},
      {"volterra", "rational discontinuity or irrational continuity point (--mode dovetail|force-irrational)"},
      {"pair", "common continuity point of two functions"},
      {"sequence", "common continuity point of a function sequence"},
      {"minmax-to-baire", "Baire point from a min-max oracle on h"},
      {"countable-dense", "Volterra answer relative to a countable dense set (--mode avoidance|dovetail)"},
      {"strong-cantor", "point outside a height-countable set (--route via-baire|via-enumeration)"},
      {"omega-fin", "enumerate a finite set (--mode bootheel recovers it from oscillation data)"},
      {"convert", "representation conversions (--mode r4-to-r2|r4-to-r3|r3-to-r4)"},
      {"enumerate-closed", "locate the points of a finite closed set"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--instance", o.instance_path, "instance JSON file");
    sub->add_option("--generator", o.generator, "named built-in instance");
    sub->add_option("--oracle", o.config.oracle, "builtin or an adversarial stub name");
    sub->add_option("--mode", o.config.mode);
    sub->add_option("--route", o.config.route);
    sub->add_option("--depth", o.config.depth)->check(CLI::PositiveNumber);
    sub->add_option("--precision", o.config.precision, "answer precision index k (2^-k)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--budget", o.config.budget, "search budget (default BAIRE_BUDGET or 100000)")
        ->check(CLI::PositiveNumber);
    auto* bound = sub->add_option("--bound", o.bound, "expected cardinality of the closed set");
    sub->add_option("--format", o.format)->check(CLI::IsMember({"human", "records"}));
    sub->add_option("--out", o.out, "write the report here");
    sub->callback([&o, &status, name = name, bound] { status = run_command(o, name, bound->count() > 0); });
  }

  std::string report_path;
  auto* verify_cmd = app.add_subcommand("verify", "re-check every certificate in a records report");
  verify_cmd->add_option("report", report_path, "report file (JSON lines)")->required();
  verify_cmd->callback([&] {
    try {
      auto verdicts = verify(read_records(slurp(report_path)));
      std::cout << render_verdicts(verdicts);
      bool ok = !verdicts.empty();
      for (const auto& v : verdicts) ok = ok && v.pass;
      status = ok ? kCertified : kCertificateFailure;
    } catch (const std::exception& ex) {
      std::cerr << "error: " << ex.what() << "\n";
      status = kMalformed;
    }
  });

  auto* suite_cmd = app.add_subcommand("suite", "run and verify the built-in corpus in parallel");
  suite_cmd->callback([&] {
    auto results = run_suite(builtin_suite());
    std::size_t good = 0;
    for (const auto& r : results) {
      good += r.ok();
      std::printf("%-4s %-42s exit %d (want %d)  %zu/%zu verdicts pass  %.3fs%s%s\n",
                  r.ok() ? "ok" : "BAD", r.name.c_str(), r.status, r.expected_status,
                  r.verdicts - r.failed_verdicts, r.verdicts, r.seconds,
                  r.error.empty() ? "" : "  ", r.error.c_str());
    }
    std::printf("%zu/%zu suite cases as expected\n", good, results.size());
    status = good == results.size() ? 0 : 1;
  });

  CLI11_PARSE(app, argc, argv);
  return status;
}
