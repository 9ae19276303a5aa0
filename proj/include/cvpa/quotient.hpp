#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "cvpa/courant.hpp"
#include "cvpa/symmetric.hpp"

namespace cvpa {

/// Normal form in S(C)_B: a degree-0 part in A plus monomials built only
/// from D^n b generators.
struct SBElement {
  SparseVec a_part;
  boost::container::flat_map<Monomial, Scalar> monomials;

  bool is_zero() const { return a_part.empty() && monomials.empty(); }
  void add_monomial(const Monomial& m, const Scalar& c);
  bool operator==(const SBElement&) const = default;
};

/// Which A-factor/B-factor pair a rewrite step fuses first.
enum class RewriteOrder { leftmost, rightmost };

/// The quotient S(C)/I_B of the symmetric algebra by the ideal generated by
/// e - 1, a a' - (aa') and a b - (ab), computed by rewriting to normal form.
class QuotientSB {
 public:
  /// Builds the whole tower X -> 1TCA -> C -> S(C) at the given cutoff.
  QuotientSB(const CourantAlgebroid& x, int cutoff, const Exec& exec = {});
  QuotientSB(std::shared_ptr<const SymmetricAlgebra> sc, UnitalCommAlgebra algebra, BilinearMap action,
             const Exec& exec = {});

  const SymmetricAlgebra& sc() const { return *sc_; }
  const VertexLieC& vlie() const { return sc_->vlie(); }
  const UnitalCommAlgebra& algebra() const { return algebra_; }
  const BilinearMap& action() const { return action_; }
  int cutoff() const { return sc_->cutoff(); }

  /// Rewrite rules, applied until no A-factor is left:
  ///   1 -> e; drop a unit factor; a a' -> (aa'); a b -> (ab);
  ///   a D^n b -> D^n(ab) - sum_(i=1..n) C(n, i) D^(i-1)(da) D^(n-i)(b).
  /// Every step removes one A-factor, so at most (number of A-factors)
  /// steps apply along any branch.
  SBElement rewrite(const SCElement& u, RewriteOrder order = RewriteOrder::leftmost) const;
  /// rewrite, then elimination against the relations among B-monomials
  /// that I_B forces in each degree. Canonical: equal cosets give equal
  /// results.
  SBElement reduce(const SCElement& u, RewriteOrder order = RewriteOrder::leftmost) const;
  /// Rank of the relations among B-monomials in degree d.
  std::size_t relation_rank(int d) const;
  /// Canonical representative in S(C).
  SCElement lift(const SBElement& u) const;

  SBElement from_a(const SparseVec& a) const;
  SBElement from_b(const SparseVec& b) const;
  /// Reads a degree-0 normal form as a vector of A.
  SparseVec as_a(const SBElement& u) const;
  /// Reads a degree-1 normal form as a vector of B.
  SparseVec as_b(const SBElement& u) const;

  SBElement multiply(const SBElement& u, const SBElement& v) const;
  SBElement d(const SBElement& u) const;
  SBElement product(int n, const SBElement& u, const SBElement& v) const;

  std::vector<SCElement> e0() const;
  std::vector<SCElement> e1() const;

  std::string render(const SBElement& u) const;
  int degree(const SBElement& u) const;

 private:
  std::shared_ptr<const SymmetricAlgebra> sc_;
  UnitalCommAlgebra algebra_;
  BilinearMap action_;
  std::size_t unit_index_ = 0;
  bool unit_is_basis_ = false;
  // pivot monomial -> homogeneous relation with that leading monomial, pivot coefficient 1
  std::map<Monomial, SCElement> relations_;

  void complete(const Exec& exec);
};

/// reduce(u_n g) = 0 and reduce(D g) = 0 for every generator u of A + B,
/// every ideal generator g and every n in range.
CheckReport check_ideal_stability(const QuotientSB& q, const Exec& exec = {});

/// Random elements of S(C): sums of one to four monomials with up to
/// max_factors factors, small rational coefficients, degree <= cutoff.
std::vector<SCElement> random_corpus(const SymmetricAlgebra& s, std::size_t count, std::uint64_t seed,
                                     int max_factors = 4);

/// Leftmost and rightmost rewriting agree, reduce is idempotent, and
/// reduction preserves degree, on every element of the corpus.
CheckReport check_reduction(const QuotientSB& q, const std::vector<SCElement>& corpus, const Exec& exec = {});

/// B-monomials of degree d >= 1 that are their own normal form, in order.
/// Together they form a basis of degree d of the quotient.
std::vector<Monomial> normal_monomials(const QuotientSB& q, int d);

/// Ranks of the reductions of all spanning monomials of degree d.
std::size_t quotient_dimension(const QuotientSB& q, int d);

/// Courant algebroid on degree 1 over the algebra in degree 0, read off the
/// quotient: bracket u_0 v, pairing u_1 v, anchor u_0 a, action a u, d = D.
CourantAlgebroid extract_degree01(const QuotientSB& q);

struct RoundtripResult {
  CheckReport report;
  std::string summary;  // "A: 1/1 tables equal; B: 4/4 tables equal; module: 1/1 tables equal"
  CourantAlgebroid extracted;
};

/// X -> S(C)_B -> degree 0/1 -> X', comparing every table of X' with X and
/// checking the dimensions of degrees 0 and 1 of the quotient.
RoundtripResult roundtrip(const CourantAlgebroid& x, int cutoff, const Exec& exec = {});
CheckReport roundtrip_check(const CourantAlgebroid& x, int cutoff, const Exec& exec = {});

}  // namespace cvpa
