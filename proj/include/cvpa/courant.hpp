#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cvpa/linear.hpp"
#include "cvpa/parallel.hpp"
#include "cvpa/report.hpp"
#include "cvpa/tca.hpp"

namespace cvpa {

struct UnitalCommAlgebra {
  SpaceRef space;
  BilinearMap mult;  // A x A -> A
  SparseVec unit;

  // spaces compare by content, not by pointer
  bool operator==(const UnitalCommAlgebra& o) const;
};

/// Courant algebroid over a unital commutative algebra, all by structure
/// constants. The anchor is stored curried: anchor(u, a) = pi(u)(a).
struct CourantAlgebroid {
  UnitalCommAlgebra algebra;
  SpaceRef module;
  BilinearMap action;   // A x B -> B
  BilinearMap bracket;  // B x B -> B
  BilinearMap anchor;   // B x A -> A
  BilinearMap pairing;  // B x B -> A, symmetric flag set
  LinearMap partial;    // A -> B

  const SpaceRef& a_space() const { return algebra.space; }
  const SpaceRef& b_space() const { return module; }

  /// Throws SpaceMismatch when a table is wired to the wrong spaces.
  void validate() const;

  bool operator==(const CourantAlgebroid& o) const;
};

/// Every axiom of the definition, the type invariants (A unital commutative
/// associative, B an A-module, pairing symmetric and A-bilinear, d a
/// derivation with pi o d = 0), the Leibniz identity, and the anchor being
/// an A-linear Leibniz homomorphism into derivations of A.
///
/// Enumeration runs over basis tuples; every identity is multilinear, so a
/// pass on basis tuples is a pass everywhere.
CheckReport check_courant(const CourantAlgebroid& x, const Exec& exec = {});

/// Consequences: [da, u] = 0, pi(da) = 0, d(pi(u)a) = [u, da].
CheckReport check_annihilation(const CourantAlgebroid& x, const Exec& exec = {});

/// Compatibility of an A-algebra and an A-action with a 1-truncated
/// conformal algebra on A + B:
///   (au)_0 a' = a(u_0 a'),  (au)_1 v = a(u_1 v) = u_1(av),
///   u_0(av) = a(u_0 v) + (u_0 a)v,  u_0(aa') = a(u_0 a') + (u_0 a)a',  u_0 e = 0.
CheckReport check_compat(const OneTruncatedConformalAlgebra& t, const UnitalCommAlgebra& algebra,
                         const BilinearMap& action, const Exec& exec = {});
CheckReport check_compat(const CourantAlgebroid& x, const Exec& exec = {});

/// Throws AxiomError when x fails check_courant.
OneTruncatedConformalAlgebra to_1tca(const CourantAlgebroid& x, const Exec& exec = {});
/// Throws AxiomError on a tca, compatibility or Courant failure.
CourantAlgebroid from_1tca(const OneTruncatedConformalAlgebra& t, const UnitalCommAlgebra& algebra,
                           const BilinearMap& action, const Exec& exec = {});

/// Names accepted by example(): "trivial(d)", "quadratic_lie(sl2)",
/// "exact(m)" for 1 <= m <= 4, and "heisenberg".
CourantAlgebroid example(std::string_view name);
std::vector<std::string> example_names();

CourantAlgebroid trivial_example(std::size_t d);
CourantAlgebroid sl2_example();
CourantAlgebroid exact_example(int m);
CourantAlgebroid heisenberg_example();

}  // namespace cvpa
