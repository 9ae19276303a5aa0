#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cvpa/linear.hpp"
#include "cvpa/parallel.hpp"
#include "cvpa/report.hpp"
#include "cvpa/tca.hpp"

namespace cvpa {

/// Index of a normal-form basis element of C: either a basis vector a of C0
/// (degree 0) or D^n b for a basis vector b of C1 (degree n + 1).
using GenId = std::uint32_t;

/// Element of C = C[D](C0 + C1) / (d - D)C[D]C0 in normal form. No D^k a
/// with k >= 1 ever appears: it is stored as D^(k-1)(da).
struct CElement {
  SparseVec terms;  // over GenId

  bool is_zero() const { return terms.empty(); }
  CElement scaled(const Scalar& c) const { return CElement{terms.scaled(c)}; }
  CElement& operator+=(const CElement& o) {
    terms += o.terms;
    return *this;
  }
  CElement& operator-=(const CElement& o) {
    terms -= o.terms;
    return *this;
  }
  friend CElement operator+(CElement a, const CElement& b) { return a += b; }
  friend CElement operator-(CElement a, const CElement& b) { return a -= b; }
  bool operator==(const CElement&) const = default;
};

/// The vertex Lie algebra built from a 1-truncated conformal algebra,
/// truncated at a degree cutoff. All i-products between generators are
/// tabulated at construction from the closed forms; anything whose degree
/// would pass the cutoff raises CutoffError.
class VertexLieC {
 public:
  explicit VertexLieC(OneTruncatedConformalAlgebra tca, int cutoff = 4);

  const OneTruncatedConformalAlgebra& tca() const { return tca_; }
  int cutoff() const { return cutoff_; }
  std::size_t dim_a() const { return dim_a_; }
  std::size_t dim_b() const { return dim_b_; }
  std::size_t num_generators() const { return dim_a_ + static_cast<std::size_t>(cutoff_) * dim_b_; }

  GenId a_gen(std::size_t i) const { return static_cast<GenId>(i); }
  GenId b_gen(int shift, std::size_t j) const;
  bool is_a(GenId g) const { return g < dim_a_; }
  int shift(GenId g) const { return is_a(g) ? 0 : static_cast<int>((g - dim_a_) / dim_b_); }
  std::size_t base_index(GenId g) const { return is_a(g) ? g : (g - dim_a_) % dim_b_; }
  int degree(GenId g) const { return is_a(g) ? 0 : shift(g) + 1; }
  std::string label(GenId g) const;
  std::string render(const CElement& c) const;

  std::vector<GenId> generators_of_degree(int d) const;
  std::size_t dim_degree(int d) const { return generators_of_degree(d).size(); }

  CElement from_a(const SparseVec& a) const;
  CElement from_b(int shift, const SparseVec& b) const;
  /// D^k applied to an element of C0 (k = 0 keeps it in degree 0).
  CElement d_power_of_a(int k, const SparseVec& a) const;
  CElement gen(GenId g) const { return CElement{SparseVec::basis(g)}; }
  Vector a_part(const CElement& c) const;
  Vector b_part(const CElement& c, int n) const;

  /// Translation operator D.
  CElement d_op(const CElement& c) const;
  CElement d_gen(GenId g) const;

  /// u_i v. Bilinear extension of the generator table.
  CElement product(int i, const CElement& u, const CElement& v) const;
  CElement product(int i, GenId g, const CElement& v) const;
  const CElement& gen_product(int i, GenId g, GenId h) const;
  /// Largest i with g_i h possibly nonzero; negative when none.
  int max_index(GenId g, GenId h) const { return degree(g) + degree(h) - 1; }

  /// (D^u_shift u)_i (D^v_shift v) for u, v basis vectors of C0 + C1
  /// (index < dim_a is C0, otherwise C1), computed by expanding
  /// Sing(e^{xD} (-d/dx)^m Y(v, -x) D^n u) as a truncated Laurent
  /// polynomial. Shares nothing with the closed forms except the 1-truncated
  /// conformal algebra tables.
  CElement sing_oracle(std::size_t u, int u_shift, std::size_t v, int v_shift, int i) const;

 private:
  CElement closed_form(int i, GenId g, GenId h) const;
  CElement base_product(int k, std::size_t base_u, bool u_is_a, GenId h) const;

  OneTruncatedConformalAlgebra tca_;
  int cutoff_;
  std::size_t dim_a_;
  std::size_t dim_b_;
  int max_i_;
  SpaceRef gen_space_;
  std::vector<CElement> table_;
  std::vector<char> in_range_;
};

/// (hp), (hs) and (ha) on every triple of normal-form basis elements whose
/// evaluation stays within the cutoff, plus [D, u_i] = -i u_(i-1) and the
/// grading of every product.
CheckReport check_vertex_lie(const VertexLieC& c, const Exec& exec = {});

/// Closed-form products against sing_oracle for every pair of basis
/// elements D^n u, D^m v and every index in range.
CheckReport check_oracle_agreement(const VertexLieC& c, const Exec& exec = {});

}  // namespace cvpa
