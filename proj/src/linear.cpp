#include "cvpa/linear.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>

namespace cvpa {

namespace {

constexpr __int128 kMax = std::numeric_limits<std::int64_t>::max();

__int128 abs128(__int128 v) { return v < 0 ? -v : v; }

__int128 gcd128(__int128 a, __int128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits(__int128 v) { return v <= kMax && v >= -kMax; }

mpz_class to_mpz(__int128 v) {
  bool neg = v < 0;
  unsigned __int128 mag = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
  mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(mag >> 64)));
  mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(mag)));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

}  // namespace

Scalar::Scalar(long long num, long long den) {
  if (den == 0) throw std::domain_error("zero denominator");
  assign_wide(num, den);
}

Scalar::Scalar(const mpq_class& value) {
  mpq_class v = value;
  v.canonicalize();
  assign_big(std::move(v));
}

Scalar Scalar::parse(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  std::size_t slash = s.find('/');
  auto digits = [&](std::size_t from, std::size_t to) {
    if (from >= to) return false;
    return std::all_of(s.begin() + static_cast<long>(from), s.begin() + static_cast<long>(to),
                       [](char c) { return c >= '0' && c <= '9'; });
  };
  if (slash == std::string::npos) {
    if (!digits(start, s.size())) throw std::invalid_argument("malformed rational '" + s + "'");
  } else {
    if (!digits(start, slash) || !digits(slash + 1, s.size()))
      throw std::invalid_argument("malformed rational '" + s + "'");
  }
  if (s[0] == '+') s.erase(0, 1);
  mpq_class q;
  if (slash == std::string::npos) {
    q = mpq_class(mpz_class(s));
  } else {
    std::size_t sl = s.find('/');
    mpz_class n(s.substr(0, sl));
    mpz_class d(s.substr(sl + 1));
    if (d == 0) throw std::domain_error("zero denominator in '" + std::string(text) + "'");
    q = mpq_class(n, d);
  }
  return Scalar(q);
}

void Scalar::assign_wide(__int128 num, __int128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  __int128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (num == 0) den = 1;
  if (fits(num) && fits(den)) {
    num_ = static_cast<std::int64_t>(num);
    den_ = static_cast<std::int64_t>(den);
    big_.reset();
    return;
  }
  mpq_class q(to_mpz(num), to_mpz(den));
  q.canonicalize();
  assign_big(std::move(q));
}

void Scalar::assign_big(mpq_class value) {
  const mpz_class& n = value.get_num();
  const mpz_class& d = value.get_den();
  if (n.fits_slong_p() && d.fits_slong_p() && n.get_si() != std::numeric_limits<long>::min()) {
    num_ = n.get_si();
    den_ = d.get_si();
    big_.reset();
    return;
  }
  num_ = 0;
  den_ = 1;
  big_ = std::make_shared<const mpq_class>(std::move(value));
}

mpq_class Scalar::to_mpq() const {
  if (big_) return *big_;
  return mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
}

bool Scalar::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

int Scalar::sign() const {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

std::string Scalar::str() const {
  if (big_) return big_->get_str();
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Scalar Scalar::operator-() const {
  Scalar r;
  if (big_) {
    r.assign_big(-*big_);
  } else {
    r.num_ = -num_;
    r.den_ = den_;
  }
  return r;
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
  if (!big_ && !rhs.big_) {
    if (den_ == 1 && rhs.den_ == 1) {
      __int128 s = static_cast<__int128>(num_) + rhs.num_;
      if (fits(s)) {
        num_ = static_cast<std::int64_t>(s);
        return *this;
      }
    }
    assign_wide(static_cast<__int128>(num_) * rhs.den_ + static_cast<__int128>(rhs.num_) * den_,
                static_cast<__int128>(den_) * rhs.den_);
    return *this;
  }
  assign_big(to_mpq() + rhs.to_mpq());
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) { return *this += -rhs; }

Scalar& Scalar::operator*=(const Scalar& rhs) {
  if (!big_ && !rhs.big_) {
    if (num_ == 0 || rhs.num_ == 0) {
      num_ = 0;
      den_ = 1;
      return *this;
    }
    if (den_ == 1 && rhs.den_ == 1) {
      __int128 p = static_cast<__int128>(num_) * rhs.num_;
      if (fits(p)) {
        num_ = static_cast<std::int64_t>(p);
        return *this;
      }
    }
    assign_wide(static_cast<__int128>(num_) * rhs.num_, static_cast<__int128>(den_) * rhs.den_);
    return *this;
  }
  assign_big(to_mpq() * rhs.to_mpq());
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) {
  if (rhs.is_zero()) throw std::domain_error("division by zero");
  if (!big_ && !rhs.big_) {
    assign_wide(static_cast<__int128>(num_) * rhs.den_, static_cast<__int128>(den_) * rhs.num_);
    return *this;
  }
  assign_big(to_mpq() / rhs.to_mpq());
  return *this;
}

bool operator==(const Scalar& lhs, const Scalar& rhs) {
  if (!lhs.big_ && !rhs.big_) return lhs.num_ == rhs.num_ && lhs.den_ == rhs.den_;
  if (lhs.big_ && rhs.big_) return *lhs.big_ == *rhs.big_;
  return false;
}

std::strong_ordering operator<=>(const Scalar& lhs, const Scalar& rhs) {
  if (!lhs.big_ && !rhs.big_) {
    __int128 l = static_cast<__int128>(lhs.num_) * rhs.den_;
    __int128 r = static_cast<__int128>(rhs.num_) * lhs.den_;
    return l <=> r;
  }
  int c = cmp(lhs.to_mpq(), rhs.to_mpq());
  return c <=> 0;
}

std::string to_string(const Scalar& s) { return s.str(); }

Scalar factorial(int n) {
  Scalar r = 1;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

Scalar falling_factorial(int n, int k) {
  if (k < 0 || k > n) return 0;
  Scalar r = 1;
  for (int t = 0; t < k; ++t) r *= (n - t);
  return r;
}

Scalar binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  return falling_factorial(n, k) / factorial(k);
}

std::optional<std::size_t> BasedSpace::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (basis[i] == label) return i;
  return std::nullopt;
}

SpaceRef make_space(std::string name, std::vector<std::string> basis) {
  std::set<std::string> seen;
  for (const auto& l : basis)
    if (!seen.insert(l).second) throw std::invalid_argument("duplicate basis label '" + l + "' in space " + name);
  return std::make_shared<const BasedSpace>(BasedSpace{std::move(name), std::move(basis)});
}

bool same_space(const SpaceRef& a, const SpaceRef& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

SparseVec SparseVec::basis(std::uint32_t index, Scalar coeff) {
  SparseVec v;
  if (!coeff.is_zero()) v.entries_.emplace_back(index, std::move(coeff));
  return v;
}

SparseVec SparseVec::from_entries(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
  SparseVec v;
  for (auto& [i, c] : entries) {
    if (!v.entries_.empty() && v.entries_.back().first == i) {
      v.entries_.back().second += c;
      if (v.entries_.back().second.is_zero()) v.entries_.pop_back();
    } else if (!c.is_zero()) {
      v.entries_.emplace_back(i, std::move(c));
    }
  }
  return v;
}

Scalar SparseVec::at(std::uint32_t index) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                             [](const Entry& e, std::uint32_t i) { return e.first < i; });
  if (it != entries_.end() && it->first == index) return it->second;
  return 0;
}

void SparseVec::add_term(std::uint32_t index, const Scalar& coeff) {
  if (coeff.is_zero()) return;
  auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                             [](const Entry& e, std::uint32_t i) { return e.first < i; });
  if (it != entries_.end() && it->first == index) {
    it->second += coeff;
    if (it->second.is_zero()) entries_.erase(it);
  } else {
    entries_.insert(it, Entry{index, coeff});
  }
}

void SparseVec::add_scaled(const SparseVec& other, const Scalar& coeff) {
  if (coeff.is_zero() || other.empty()) return;
  std::vector<Entry> out;
  out.reserve(entries_.size() + other.entries_.size());
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() || b != other.entries_.end()) {
    if (b == other.entries_.end() || (a != entries_.end() && a->first < b->first)) {
      out.push_back(std::move(*a++));
    } else if (a == entries_.end() || b->first < a->first) {
      out.emplace_back(b->first, b->second * coeff);
      ++b;
    } else {
      Scalar s = a->second + b->second * coeff;
      if (!s.is_zero()) out.emplace_back(a->first, std::move(s));
      ++a;
      ++b;
    }
  }
  entries_ = std::move(out);
}

SparseVec SparseVec::scaled(const Scalar& coeff) const {
  SparseVec r;
  if (coeff.is_zero()) return r;
  r.entries_.reserve(entries_.size());
  for (const auto& [i, c] : entries_) r.entries_.emplace_back(i, c * coeff);
  return r;
}

std::string render(const SparseVec& v, const BasedSpace& space) {
  if (v.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [i, c] : v.entries()) {
    const std::string& label = i < space.dim() ? space.basis[i] : "#" + std::to_string(i);
    Scalar mag = c.sign() < 0 ? -c : c;
    if (first) {
      if (c.sign() < 0) out += "-";
    } else {
      out += c.sign() < 0 ? " - " : " + ";
    }
    if (mag != Scalar(1)) out += mag.str() + "*";
    out += label;
    first = false;
  }
  return out;
}

Vector::Vector(SpaceRef space, SparseVec coeffs) : space_(std::move(space)), coeffs_(std::move(coeffs)) {
  if (!coeffs_.empty() && coeffs_.entries().back().first >= space_->dim())
    throw std::out_of_range("coefficient index outside space " + space_->name);
}

Vector Vector::basis(SpaceRef space, std::size_t index) {
  return Vector(std::move(space), SparseVec::basis(static_cast<std::uint32_t>(index)));
}

std::string Vector::str() const { return render(coeffs_, *space_); }

bool operator==(const Vector& a, const Vector& b) {
  return same_space(a.space_, b.space_) && a.coeffs_ == b.coeffs_;
}

Vector vec_combine(const std::vector<std::pair<Scalar, Vector>>& terms) {
  if (terms.empty()) throw std::invalid_argument("vec_combine needs at least one term");
  SpaceRef space = terms.front().second.space();
  SparseVec acc;
  for (const auto& [c, v] : terms) {
    if (!same_space(space, v.space())) throw SpaceMismatch("vec_combine: vectors live in different spaces");
    acc.add_scaled(v.coeffs(), c);
  }
  return Vector(space, std::move(acc));
}

LinearMap::LinearMap(SpaceRef domain, SpaceRef codomain)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), columns_(domain_->dim()) {}

void LinearMap::set_column(std::size_t i, SparseVec value) {
  if (!value.empty() && value.entries().back().first >= codomain_->dim())
    throw std::out_of_range("column entry outside codomain " + codomain_->name);
  columns_.at(i) = std::move(value);
}

SparseVec LinearMap::apply(const SparseVec& v) const {
  SparseVec out;
  for (const auto& [i, c] : v.entries()) out.add_scaled(columns_.at(i), c);
  return out;
}

bool operator==(const LinearMap& a, const LinearMap& b) {
  return same_space(a.domain_, b.domain_) && same_space(a.codomain_, b.codomain_) && a.columns_ == b.columns_;
}

Vector map_apply(const LinearMap& m, const Vector& v) {
  if (!same_space(m.domain(), v.space())) throw SpaceMismatch("map_apply: vector is not in the map's domain");
  return Vector(m.codomain(), m.apply(v.coeffs()));
}

BilinearMap::BilinearMap(SpaceRef left, SpaceRef right, SpaceRef codomain, Symmetry flag)
    : left_(std::move(left)),
      right_(std::move(right)),
      codomain_(std::move(codomain)),
      symmetry_(flag),
      table_(left_->dim() * right_->dim()) {}

void BilinearMap::set(std::size_t i, std::size_t j, SparseVec value) {
  if (i >= left_->dim() || j >= right_->dim()) throw std::out_of_range("bilinear table index out of range");
  if (!value.empty() && value.entries().back().first >= codomain_->dim())
    throw std::out_of_range("table entry outside codomain " + codomain_->name);
  table_[i * right_->dim() + j] = std::move(value);
}

SparseVec BilinearMap::apply(const SparseVec& u, const SparseVec& v) const {
  SparseVec out;
  for (const auto& [i, a] : u.entries())
    for (const auto& [j, b] : v.entries()) out.add_scaled(at(i, j), a * b);
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> BilinearMap::symmetry_violations() const {
  std::vector<std::pair<std::size_t, std::size_t>> bad;
  if (symmetry_ == Symmetry::none) return bad;
  std::size_t n = left_->dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < right_->dim(); ++j) {
      if (j >= n) continue;
      const SparseVec& a = at(i, j);
      const SparseVec& b = at(j, i);
      bool ok = symmetry_ == Symmetry::symmetric ? a == b : a == b.scaled(-1);
      if (!ok) bad.emplace_back(i, j);
    }
  return bad;
}

bool operator==(const BilinearMap& a, const BilinearMap& b) {
  return same_space(a.left_, b.left_) && same_space(a.right_, b.right_) && same_space(a.codomain_, b.codomain_) &&
         a.table_ == b.table_;
}

Vector bilin_apply(const BilinearMap& b, const Vector& u, const Vector& v) {
  if (!same_space(b.left(), u.space()) || !same_space(b.right(), v.space()))
    throw SpaceMismatch("bilin_apply: argument spaces do not match the table");
  return Vector(b.codomain(), b.apply(u.coeffs(), v.coeffs()));
}

std::size_t rank(std::vector<SparseVec> rows) {
  // pivot column -> reduced row with leading coefficient 1 at that column
  std::map<std::uint32_t, SparseVec> pivots;
  for (auto& row : rows) {
    SparseVec r = std::move(row);
    while (!r.empty()) {
      std::uint32_t lead = r.entries().front().first;
      auto it = pivots.find(lead);
      if (it == pivots.end()) {
        Scalar c = r.entries().front().second;
        pivots.emplace(lead, r.scaled(Scalar(1) / c));
        break;
      }
      r.add_scaled(it->second, -r.entries().front().second);
    }
  }
  return pivots.size();
}

}  // namespace cvpa
