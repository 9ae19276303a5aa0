#pragma once

#include <string>
#include <vector>

#include "cvpa/courant.hpp"
#include "cvpa/parallel.hpp"

namespace cvpa {

/// One single-entry change of a structure constant: entry (i, j) of a
/// table (or column i of partial, or the unit) gains delta * basis[k].
/// Symmetric tables change (i, j) and (j, i) together.
struct Mutation {
  std::string table;
  std::string site;  // "bracket(x.del,dx) += -1/2*dx"
  bool detected = false;
  std::vector<std::string> axioms;  // violated axioms when detected
};

struct MutationSummary {
  std::vector<Mutation> mutations;
  std::size_t detected() const;
  /// Tables with at least one detected mutation.
  std::vector<std::string> tables_hit() const;
};

/// Every site of every table with deltas 1 and -1, and 2 and -1/2 as well
/// when that gives fewer than 40 mutations. Each mutant goes through
/// check_courant, check_compat and check_annihilation.
MutationSummary mutation_suite(const CourantAlgebroid& x, const Exec& exec = {});

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  double seconds = 0;
  double limit = 0;  // seconds
  std::string detail;
};

/// Time limits, in seconds, of criteria 1..7.
inline constexpr double kCriterionLimit[8] = {0, 1, 1, 10, 30, 5, 30, 30};

CriterionResult criterion_courant_suite(const Exec& exec = {});
CriterionResult criterion_bridge(const Exec& exec = {});
CriterionResult criterion_vertex_lie(const Exec& exec = {});
CriterionResult criterion_vpa(const Exec& exec = {});
CriterionResult criterion_ideal(const Exec& exec = {});
CriterionResult criterion_quotient_shape(const Exec& exec = {});
CriterionResult criterion_roundtrip(const Exec& exec = {});

/// Criteria 1..7 in order.
std::vector<CriterionResult> run_acceptance(const Exec& exec = {});

/// "criterion 3 PASS  vertex Lie certification  (0.41 s / 10 s)  detail"
std::string format_result(const CriterionResult& r);

}  // namespace cvpa
