#pragma once

#include <stdexcept>
#include <string>

namespace baire {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A budgeted search ran out of steps. This means "nothing found so far",
// never "nothing exists".
class BudgetExhausted : public Error {
 public:
  explicit BudgetExhausted(const std::string& what)
      : Error("budget exhausted: " + what) {}
};

// An oracle answer (or a hand-edited report) failed re-certification.
class CertificateFailure : public Error {
 public:
  explicit CertificateFailure(const std::string& what)
      : Error("certificate failure: " + what) {}
};

class NeedsMembershipDecision : public Error {
 public:
  NeedsMembershipDecision()
      : Error("closed-set sequence has no membership decision hook") {}
};

class NeedsOscZeroDecision : public Error {
 public:
  NeedsOscZeroDecision()
      : Error("function has no osc-zero decision hook") {}
};

class DeltaHookUnavailable : public Error {
 public:
  DeltaHookUnavailable()
      : Error("no exact distance (R.3) view is available for this set") {}
};

class InjectivityViolation : public Error {
 public:
  explicit InjectivityViolation(const std::string& what)
      : Error("injectivity violation: " + what) {}
};

class MalformedInstance : public Error {
 public:
  explicit MalformedInstance(const std::string& what)
      : Error("malformed instance: " + what) {}
};

}  // namespace baire
