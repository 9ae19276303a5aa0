#pragma once

#include "cvpa/linear.hpp"
#include "cvpa/parallel.hpp"
#include "cvpa/report.hpp"

namespace cvpa {

/// A 1-truncated conformal algebra C0 + C1.
///
/// Only the four products that can be nonzero by degree are stored:
/// u_0 a, a_0 u, u_0 v and u_1 v (u, v in C1, a in C0). Every other
/// i-product lands in negative degree and is zero.
struct OneTruncatedConformalAlgebra {
  SpaceRef c0;
  SpaceRef c1;
  LinearMap partial;    // C0 -> C1
  BilinearMap p0_10;    // C1 x C0 -> C0, u_0 a
  BilinearMap p0_01;    // C0 x C1 -> C0, a_0 u
  BilinearMap p0_11;    // C1 x C1 -> C1, u_0 v
  BilinearMap p1_11;    // C1 x C1 -> C0, u_1 v

  /// All-zero structure on the given spaces.
  static OneTruncatedConformalAlgebra zero(SpaceRef c0, SpaceRef c1);
  /// Throws SpaceMismatch when a table is wired to the wrong spaces.
  void validate() const;

  bool operator==(const OneTruncatedConformalAlgebra& o) const;
};

/// An element of C0 + C1 as a pair of coefficient lists.
struct TcaElement {
  SparseVec c0;
  SparseVec c1;

  bool is_zero() const { return c0.empty() && c1.empty(); }
  bool operator==(const TcaElement&) const = default;
};

/// Generic i-product on C0 + C1 (i = 0, 1); zero for other degrees.
TcaElement tca_product(const OneTruncatedConformalAlgebra& t, int i, const TcaElement& x, const TcaElement& y);

CheckReport check_derivation(const OneTruncatedConformalAlgebra& t, const Exec& exec = {});
CheckReport check_commutativity(const OneTruncatedConformalAlgebra& t, const Exec& exec = {});
CheckReport check_associativity(const OneTruncatedConformalAlgebra& t, const Exec& exec = {});
/// Union of the three axiom groups.
CheckReport check_tca(const OneTruncatedConformalAlgebra& t, const Exec& exec = {});

/// The Leibniz-algebra reformulation: C1 a Leibniz algebra under u_0 v,
/// C0 a C1-module, d a module map, dC0 annihilating C0 + C1, the pairing a
/// module map, plus the four closing identities. Checked directly, not via
/// the three axiom groups, so the two can be compared.
CheckReport check_leibniz_form(const OneTruncatedConformalAlgebra& t, const Exec& exec = {});

}  // namespace cvpa
