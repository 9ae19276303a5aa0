#pragma once

#include <memory>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include <boost/container/flat_map.hpp>
#include <boost/container/small_vector.hpp>

#include "cvpa/vlie.hpp"

namespace cvpa {

/// Multiset of generators of C, kept sorted. Empty is the unit 1.
using Monomial = boost::container::small_vector<GenId, 7>;

struct SCElement {
  boost::container::flat_map<Monomial, Scalar> terms;

  static SCElement unit() { return monomial({}); }
  static SCElement monomial(Monomial m, Scalar c = 1);
  static SCElement from_c(const CElement& c);

  bool is_zero() const { return terms.empty(); }
  void add(const Monomial& m, const Scalar& c);
  void add_scaled(const SCElement& o, const Scalar& c);
  SCElement scaled(const Scalar& c) const;
  SCElement& operator+=(const SCElement& o) {
    add_scaled(o, 1);
    return *this;
  }
  SCElement& operator-=(const SCElement& o) {
    add_scaled(o, -1);
    return *this;
  }
  friend SCElement operator+(SCElement a, const SCElement& b) { return a += b; }
  friend SCElement operator-(SCElement a, const SCElement& b) { return a -= b; }
  bool operator==(const SCElement&) const = default;
};

/// The symmetric algebra S(C) truncated at the cutoff of C, with the
/// derivation D and the n-products extended from C.
class SymmetricAlgebra {
 public:
  explicit SymmetricAlgebra(std::shared_ptr<const VertexLieC> c);

  const VertexLieC& vlie() const { return *c_; }
  int cutoff() const { return c_->cutoff(); }
  int degree(const Monomial& m) const;
  /// Degree of a homogeneous element; -1 for zero. Throws if inhomogeneous.
  int degree(const SCElement& u) const;
  std::string render(const SCElement& u) const;
  std::string render(const Monomial& m) const;

  SCElement multiply(const SCElement& u, const SCElement& v) const;
  SCElement d(const SCElement& u) const;
  /// u_n v. A single generator acts as a derivation through the products of
  /// C; a longer monomial u acts on each generator h of v through
  /// u_n h = sum_(j >= n) (-1)^(j+1) D^(j-n)/(j-n)! (h_j u).
  SCElement product(int n, const SCElement& u, const SCElement& v) const;
  /// g_n h evaluated through the second rule even though g is a generator.
  SCElement product_skew(int n, GenId g, GenId h) const;

  /// Monomials with at most max_factors factors and degree <= cutoff,
  /// including the unit.
  std::vector<Monomial> spanning_monomials(int max_factors = 3) const;

 private:
  SCElement gen_act(int n, GenId g, const Monomial& v) const;
  SCElement mono_act(int n, const Monomial& u, const Monomial& v) const;
  SCElement mono_on_gen(int n, const Monomial& u, GenId h) const;
  SCElement times(const SCElement& u, const Monomial& m) const;

  struct KeyHash {
    std::size_t operator()(const Monomial& k) const;
  };
  struct Memo {
    std::shared_mutex lock;
    std::unordered_map<Monomial, SCElement, KeyHash> on_gen;
  };

  std::shared_ptr<const VertexLieC> c_;
  std::shared_ptr<Memo> memo_ = std::make_shared<Memo>();
};

/// Vertex Poisson axioms on the spanning monomials: the derivation law for
/// n-products and for D, (hp), (hs), (ha), [D, u_n] = -n u_(n-1), grading,
/// unit annihilation, and agreement of the two evaluation rules on pairs
/// of generators.
///
/// The derivation law is checked with the first factor a generator, and
/// (ha) with the last argument a generator: both sides are derivations in
/// that slot once the derivation law holds, so general monomials follow.
CheckReport check_vpa(const SymmetricAlgebra& s, const Exec& exec = {});

}  // namespace cvpa
