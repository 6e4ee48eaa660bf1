#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "baire/functions.hpp"
#include "baire/open_sets.hpp"
#include "baire/realisers.hpp"
#include "baire/reductions.hpp"

namespace baire::cli {

using json = nlohmann::json;

enum ExitStatus : int {
  kCertified = 0,
  kInternal = 1,
  kBudgetExhausted = 2,
  kMalformed = 3,
  kCertificateFailure = 4,
};

// ---------------------------------------------------------------------------
// Instance files

Rational parse_rational(const json& j);
std::vector<Rational> parse_points(const json& j);
json rational_json(const Rational& q);

/// Expands a named generator into a full instance document.
json generator_instance(const std::string& name);
std::vector<std::string> generator_names();

/// Sets: {"kind":"r4",...}, {"kind":"complement-of-finite",...},
/// {"kind":"distance-to-finite",...} or {"kind":"generator","name":...}.
OpenR4 parse_set_r4(const json& j);
OpenR2 parse_set(const json& j);
/// The exact closed set [0,1] minus O when it is finite or a finite union of
/// closed intervals; nullopt otherwise.
std::optional<std::vector<ClosedComponent>> exact_complement(const json& j);

DenseOpenSequence parse_sequence(const json& j);
EnrichedBaire1 parse_function(const json& j);
FunctionSequence parse_function_sequence(const json& j);
ClosedNowhereDenseSeq parse_closed_sequence(const json& j);
HeightCountableSet parse_height_set(const json& j);
CountableDenseSet parse_dense_set(const json& j);

/// The dense open sequence a run fed to the Baire realiser, rebuilt from the
/// descriptor stored in its report.
DenseOpenSequence build_fed(const json& descriptor);

// ---------------------------------------------------------------------------
// Runs and reports

struct RunConfig {
  std::string subcommand;
  json instance = json::object();
  std::string instance_name;
  std::string oracle = "builtin";
  std::string mode;
  std::string route = "via-baire";
  unsigned depth = 16;
  unsigned precision = 32;
  std::size_t budget = 100000;
  std::optional<std::size_t> bound;
};

struct RunReport {
  std::vector<json> records;
  int status = kCertified;
  std::string error;
};

/// Default budget, overridable through BAIRE_BUDGET.
std::size_t default_budget();

RunReport run(const RunConfig& config);

struct Verdict {
  std::string check;
  bool pass;
  std::string detail;
};

/// Re-checks every certificate in a report from the instance stored in its
/// header, through set geometry rather than the witnesses that produced it.
std::vector<Verdict> verify(const std::vector<json>& records);

std::vector<json> read_records(const std::string& text);
std::string write_records(const std::vector<json>& records);
std::string render_human(const RunReport& report);
std::string render_verdicts(const std::vector<Verdict>& verdicts);

struct SuiteCase {
  std::string name;
  RunConfig config;
  int expected_status;
  bool expect_verify_failure = false;  // tampered output that verify must reject
};

struct SuiteResult {
  std::string name;
  int status;
  int expected_status;
  std::size_t verdicts;
  std::size_t failed_verdicts;
  double seconds;
  std::string error;
  bool expect_verify_failure = false;

  bool ok() const {
    return status == expected_status &&
           (expect_verify_failure ? failed_verdicts > 0 : failed_verdicts == 0);
  }
};

std::vector<SuiteCase> builtin_suite();
std::vector<SuiteResult> run_suite(const std::vector<SuiteCase>& cases);

}  // namespace baire::cli
