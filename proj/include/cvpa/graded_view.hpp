#pragma once

#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "cvpa/courant.hpp"
#include "cvpa/quotient.hpp"

namespace cvpa {

/// An N-graded vertex Poisson algebra truncated at degree `top`, given by
/// structure constants degree by degree.
struct GradedVpaView {
  std::vector<SpaceRef> spaces;                              // degree 0..top
  std::vector<LinearMap> d;                                  // d[p]: degree p -> p + 1, p < top
  std::map<std::tuple<int, int, int>, BilinearMap> prod;     // (n, p, q): p x q -> p + q - n - 1
  std::map<std::pair<int, int>, BilinearMap> mult;           // (p, q): p x q -> p + q
  SparseVec unit;                                            // in degree 0

  int top() const { return static_cast<int>(spaces.size()) - 1; }
  const BilinearMap* find_prod(int n, int p, int q) const;
  const BilinearMap* find_mult(int p, int q) const;

  bool operator==(const GradedVpaView& o) const;
};

/// Degree 0..top of the quotient. Degree 0 and 1 reuse the spaces of A and
/// B; higher degrees are spanned by the normal-form monomials.
GradedVpaView build_view(const QuotientSB& q, int top = 2, const Exec& exec = {});

/// Shape only: every space present, every map wired to the degrees its key
/// says, and the unit living in degree 0. Axiom "grading", one violation per map.
CheckReport check_view_grading(const GradedVpaView& v);

/// Shape plus the identities visible inside the truncation: the degree-0
/// algebra is unital commutative associative, the products are derivations
/// of the commutative product, D is a derivation with [D, u_n] = -n u_(n-1),
/// and (au)_0 a' = a(u_0 a').
CheckReport check_view(const GradedVpaView& v, const Exec& exec = {});

/// A = degree 0, B = degree 1, bracket u_0 v, pairing u_1 v, anchor u_0 a,
/// action a u, partial d on degree 0. Throws AxiomError when the shape or
/// the degree-0 algebra is wrong; the Courant axioms are not checked here.
CourantAlgebroid extract_courant(const GradedVpaView& v);

}  // namespace cvpa
