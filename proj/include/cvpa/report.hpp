#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace cvpa {

/// One failed instance of an identity: which axiom, at which basis tuple,
/// and the two sides rendered as exact rationals.
struct Violation {
  std::string module;
  std::string axiom;
  std::vector<std::string> tuple;
  std::string lhs;
  std::string rhs;

  auto operator<=>(const Violation&) const = default;
};

class CheckReport {
 public:
  bool passed() const { return violations_.empty(); }
  std::size_t size() const { return violations_.size(); }
  const std::vector<Violation>& violations() const { return violations_; }

  void add(Violation v) { violations_.push_back(std::move(v)); }
  void merge(const CheckReport& other);
  /// Canonical order, so merged parallel reports compare equal to serial ones.
  void sort();
  std::set<std::string> axioms() const;
  bool has_axiom(const std::string& axiom) const;

  /// Number of identity instances evaluated.
  std::size_t checked = 0;

  bool operator==(const CheckReport& other) const { return violations_ == other.violations_; }

 private:
  std::vector<Violation> violations_;
};

std::string format_report(const CheckReport& report, std::size_t limit = 20);

/// Thrown by constructions whose precondition is "passes the checker".
class AxiomError : public std::runtime_error {
 public:
  AxiomError(const std::string& what, CheckReport report)
      : std::runtime_error(what), report_(std::move(report)) {}
  const CheckReport& report() const { return report_; }

 private:
  CheckReport report_;
};

/// A truncated computation would need a degree above the configured cutoff.
class CutoffError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cvpa
