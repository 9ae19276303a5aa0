#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace cvpa {

/// Exact rational number.
///
/// Values whose reduced numerator and denominator fit in 64 bits are kept
/// inline; anything larger is promoted to a shared GMP rational. The two
/// representations never overlap, so equality is structural.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long long value) : num_(value) {}  // NOLINT(google-explicit-constructor)
  Scalar(int value) : num_(value) {}        // NOLINT(google-explicit-constructor)
  Scalar(long long num, long long den);
  explicit Scalar(const mpq_class& value);

  static Scalar parse(std::string_view text);

  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_integer() const;
  int sign() const;
  std::string str() const;
  mpq_class to_mpq() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& rhs);
  Scalar& operator-=(const Scalar& rhs);
  Scalar& operator*=(const Scalar& rhs);
  Scalar& operator/=(const Scalar& rhs);

  friend Scalar operator+(Scalar lhs, const Scalar& rhs) { return lhs += rhs; }
  friend Scalar operator-(Scalar lhs, const Scalar& rhs) { return lhs -= rhs; }
  friend Scalar operator*(Scalar lhs, const Scalar& rhs) { return lhs *= rhs; }
  friend Scalar operator/(Scalar lhs, const Scalar& rhs) { return lhs /= rhs; }
  friend bool operator==(const Scalar& lhs, const Scalar& rhs);
  friend std::strong_ordering operator<=>(const Scalar& lhs, const Scalar& rhs);

 private:
  void assign_wide(__int128 num, __int128 den);
  void assign_big(mpq_class value);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::shared_ptr<const mpq_class> big_;
};

std::string to_string(const Scalar& s);
Scalar factorial(int n);
Scalar binomial(int n, int k);
/// n! / (n-k)!, zero when k > n.
Scalar falling_factorial(int n, int k);

class SpaceMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A finite-dimensional space over Q with an ordered list of basis labels.
struct BasedSpace {
  std::string name;
  std::vector<std::string> basis;

  std::size_t dim() const { return basis.size(); }
  std::optional<std::size_t> index_of(std::string_view label) const;
  bool operator==(const BasedSpace&) const = default;
};

using SpaceRef = std::shared_ptr<const BasedSpace>;

/// Throws std::invalid_argument on duplicate labels.
SpaceRef make_space(std::string name, std::vector<std::string> basis);
bool same_space(const SpaceRef& a, const SpaceRef& b);

/// Sparse coefficient list, sorted by index, zero-free.
class SparseVec {
 public:
  using Entry = std::pair<std::uint32_t, Scalar>;

  SparseVec() = default;
  static SparseVec basis(std::uint32_t index, Scalar coeff = 1);
  static SparseVec from_entries(std::vector<Entry> entries);

  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  Scalar at(std::uint32_t index) const;

  void add_term(std::uint32_t index, const Scalar& coeff);
  void add_scaled(const SparseVec& other, const Scalar& coeff);
  SparseVec scaled(const Scalar& coeff) const;

  SparseVec& operator+=(const SparseVec& rhs) {
    add_scaled(rhs, 1);
    return *this;
  }
  SparseVec& operator-=(const SparseVec& rhs) {
    add_scaled(rhs, -1);
    return *this;
  }
  friend SparseVec operator+(SparseVec a, const SparseVec& b) { return a += b; }
  friend SparseVec operator-(SparseVec a, const SparseVec& b) { return a -= b; }
  bool operator==(const SparseVec&) const = default;

 private:
  std::vector<Entry> entries_;
};

/// Renders "2*x - 1/3*y", or "0" for the empty vector.
std::string render(const SparseVec& v, const BasedSpace& space);

class Vector {
 public:
  Vector() = default;
  explicit Vector(SpaceRef space, SparseVec coeffs = {});
  static Vector basis(SpaceRef space, std::size_t index);

  const SpaceRef& space() const { return space_; }
  const SparseVec& coeffs() const { return coeffs_; }
  Scalar operator[](std::size_t index) const { return coeffs_.at(static_cast<std::uint32_t>(index)); }
  bool is_zero() const { return coeffs_.empty(); }
  std::string str() const;

  friend bool operator==(const Vector& a, const Vector& b);

 private:
  SpaceRef space_;
  SparseVec coeffs_;
};

Vector vec_combine(const std::vector<std::pair<Scalar, Vector>>& terms);

class LinearMap {
 public:
  LinearMap() = default;
  LinearMap(SpaceRef domain, SpaceRef codomain);

  const SpaceRef& domain() const { return domain_; }
  const SpaceRef& codomain() const { return codomain_; }
  const SparseVec& column(std::size_t i) const { return columns_.at(i); }
  void set_column(std::size_t i, SparseVec value);
  SparseVec apply(const SparseVec& v) const;

  friend bool operator==(const LinearMap& a, const LinearMap& b);

 private:
  SpaceRef domain_;
  SpaceRef codomain_;
  std::vector<SparseVec> columns_;
};

Vector map_apply(const LinearMap& m, const Vector& v);

enum class Symmetry { none, symmetric, antisymmetric };

class BilinearMap {
 public:
  BilinearMap() = default;
  BilinearMap(SpaceRef left, SpaceRef right, SpaceRef codomain, Symmetry flag = Symmetry::none);

  const SpaceRef& left() const { return left_; }
  const SpaceRef& right() const { return right_; }
  const SpaceRef& codomain() const { return codomain_; }
  Symmetry symmetry() const { return symmetry_; }
  void set_symmetry(Symmetry s) { symmetry_ = s; }

  const SparseVec& at(std::size_t i, std::size_t j) const { return table_[i * right_->dim() + j]; }
  void set(std::size_t i, std::size_t j, SparseVec value);
  SparseVec apply(const SparseVec& u, const SparseVec& v) const;
  /// Lists (i, j) pairs that break the declared symmetry flag.
  std::vector<std::pair<std::size_t, std::size_t>> symmetry_violations() const;

  friend bool operator==(const BilinearMap& a, const BilinearMap& b);

 private:
  SpaceRef left_;
  SpaceRef right_;
  SpaceRef codomain_;
  Symmetry symmetry_ = Symmetry::none;
  std::vector<SparseVec> table_;
};

Vector bilin_apply(const BilinearMap& b, const Vector& u, const Vector& v);

/// Rank by exact Gaussian elimination.
std::size_t rank(std::vector<SparseVec> rows);

}  // namespace cvpa
