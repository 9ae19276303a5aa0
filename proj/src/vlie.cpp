#include "cvpa/vlie.hpp"

#include <map>
#include <stdexcept>

namespace cvpa {

namespace {

constexpr const char* kModule = "vlie";

std::string d_label(int n, const std::string& base) {
  if (n == 0) return base;
  if (n == 1) return "D(" + base + ")";
  return "D^" + std::to_string(n) + "(" + base + ")";
}

Scalar sign_of(int n) { return (n % 2 == 0) ? Scalar(1) : Scalar(-1); }

}  // namespace

VertexLieC::VertexLieC(OneTruncatedConformalAlgebra tca, int cutoff)
    : tca_(std::move(tca)), cutoff_(cutoff), dim_a_(tca_.c0->dim()), dim_b_(tca_.c1->dim()) {
  if (cutoff_ < 1) throw std::invalid_argument("vertex Lie cutoff must be at least 1");
  tca_.validate();
  max_i_ = 2 * cutoff_ - 1;
  const std::size_t n = num_generators();
  std::vector<std::string> labels;
  labels.reserve(n);
  for (GenId g = 0; g < n; ++g) labels.push_back(label(g));
  gen_space_ = make_space("C", std::move(labels));

  table_.assign(static_cast<std::size_t>(max_i_ + 1) * n * n, CElement{});
  in_range_.assign(table_.size(), 0);
  for (int i = 0; i <= max_i_; ++i)
    for (GenId g = 0; g < n; ++g)
      for (GenId h = 0; h < n; ++h) {
        if (i > max_index(g, h)) continue;
        const std::size_t slot = (static_cast<std::size_t>(i) * n + g) * n + h;
        if (degree(g) + degree(h) - i - 1 > cutoff_) continue;
        in_range_[slot] = 1;
        table_[slot] = closed_form(i, g, h);
      }
}

GenId VertexLieC::b_gen(int shift, std::size_t j) const {
  if (shift < 0 || j >= dim_b_) throw std::out_of_range("b_gen index");
  if (shift + 1 > cutoff_) throw CutoffError("D^" + std::to_string(shift) + " of a C1 vector passes the cutoff");
  return static_cast<GenId>(dim_a_ + static_cast<std::size_t>(shift) * dim_b_ + j);
}

std::string VertexLieC::label(GenId g) const {
  if (is_a(g)) return tca_.c0->basis[g];
  return d_label(shift(g), tca_.c1->basis[base_index(g)]);
}

std::string VertexLieC::render(const CElement& c) const { return cvpa::render(c.terms, *gen_space_); }

std::vector<GenId> VertexLieC::generators_of_degree(int d) const {
  std::vector<GenId> out;
  if (d == 0) {
    for (std::size_t i = 0; i < dim_a_; ++i) out.push_back(a_gen(i));
  } else if (d >= 1 && d <= cutoff_) {
    for (std::size_t j = 0; j < dim_b_; ++j) out.push_back(b_gen(d - 1, j));
  }
  return out;
}

CElement VertexLieC::from_a(const SparseVec& a) const { return CElement{a}; }

CElement VertexLieC::from_b(int shift, const SparseVec& b) const {
  if (b.empty()) return {};
  if (shift + 1 > cutoff_) throw CutoffError("D^" + std::to_string(shift) + " of a C1 vector passes the cutoff");
  const auto offset = static_cast<std::uint32_t>(dim_a_ + static_cast<std::size_t>(shift) * dim_b_);
  std::vector<SparseVec::Entry> e;
  e.reserve(b.size());
  for (const auto& [j, c] : b.entries()) e.emplace_back(offset + j, c);
  return CElement{SparseVec::from_entries(std::move(e))};
}

CElement VertexLieC::d_power_of_a(int k, const SparseVec& a) const {
  if (k == 0) return from_a(a);
  return from_b(k - 1, tca_.partial.apply(a));
}

Vector VertexLieC::a_part(const CElement& c) const {
  std::vector<SparseVec::Entry> e;
  for (const auto& [g, x] : c.terms.entries())
    if (is_a(g)) e.emplace_back(g, x);
  return Vector(tca_.c0, SparseVec::from_entries(std::move(e)));
}

Vector VertexLieC::b_part(const CElement& c, int n) const {
  std::vector<SparseVec::Entry> e;
  for (const auto& [g, x] : c.terms.entries())
    if (!is_a(g) && shift(g) == n) e.emplace_back(static_cast<std::uint32_t>(base_index(g)), x);
  return Vector(tca_.c1, SparseVec::from_entries(std::move(e)));
}

CElement VertexLieC::d_gen(GenId g) const {
  if (degree(g) + 1 > cutoff_) throw CutoffError("D(" + label(g) + ") passes the cutoff");
  if (is_a(g)) return from_b(0, tca_.partial.column(g));
  return gen(b_gen(shift(g) + 1, base_index(g)));
}

CElement VertexLieC::d_op(const CElement& c) const {
  CElement out;
  for (const auto& [g, x] : c.terms.entries()) out.terms.add_scaled(d_gen(g).terms, x);
  return out;
}

const CElement& VertexLieC::gen_product(int i, GenId g, GenId h) const {
  static const CElement zero;
  if (i < 0) throw std::invalid_argument("negative product index");
  if (i > max_index(g, h)) return zero;
  const std::size_t n = num_generators();
  const std::size_t slot = (static_cast<std::size_t>(i) * n + g) * n + h;
  if (!in_range_[slot])
    throw CutoffError(label(g) + "_" + std::to_string(i) + " " + label(h) + " passes the cutoff");
  return table_[slot];
}

CElement VertexLieC::product(int i, GenId g, const CElement& v) const {
  CElement out;
  for (const auto& [h, y] : v.terms.entries()) out.terms.add_scaled(gen_product(i, g, h).terms, y);
  return out;
}

CElement VertexLieC::product(int i, const CElement& u, const CElement& v) const {
  CElement out;
  for (const auto& [g, x] : u.terms.entries())
    for (const auto& [h, y] : v.terms.entries()) out.terms.add_scaled(gen_product(i, g, h).terms, x * y);
  return out;
}

CElement VertexLieC::closed_form(int i, GenId g, GenId h) const {
  if (is_a(g)) return base_product(i, g, true, h);
  const int n = shift(g);
  if (i < n) return {};
  // (D^n u)_i = (-1)^n i!/(i-n)! u_(i-n)
  return base_product(i - n, base_index(g), false, h).scaled(sign_of(n) * falling_factorial(i, n));
}

CElement VertexLieC::base_product(int k, std::size_t u, bool u_is_a, GenId h) const {
  const SparseVec eu = SparseVec::basis(static_cast<std::uint32_t>(u));
  if (is_a(h)) {
    if (u_is_a || k != 0) return {};
    return from_a(tca_.p0_10.apply(eu, SparseVec::basis(h)));
  }
  const int m = shift(h);
  const SparseVec eb = SparseVec::basis(static_cast<std::uint32_t>(base_index(h)));
  if (u_is_a) {
    if (k > m) return {};
    return d_power_of_a(m - k, tca_.p0_01.apply(eu, eb)).scaled(falling_factorial(m, k));
  }
  CElement out;
  if (k <= m) out += from_b(m - k, tca_.p0_11.apply(eu, eb)).scaled(falling_factorial(m, k));
  if (k >= 1 && k <= m + 1)
    out += d_power_of_a(m - k + 1, tca_.p1_11.apply(eu, eb)).scaled(Scalar(k) * falling_factorial(m, k - 1));
  return out;
}

namespace {

/// Unbounded element of C[D](C0 + C1): (shift, base) -> coefficient, where
/// base < dim C0 is in C0. Kept normalized: no shifted C0 terms.
class FreeElem {
 public:
  FreeElem(const OneTruncatedConformalAlgebra& t) : t_(&t), na_(t.c0->dim()) {}

  void add(int shift, std::size_t base, const Scalar& c) {
    if (c.is_zero()) return;
    if (base < na_ && shift > 0) {
      for (const auto& [j, x] : t_->partial.column(base).entries()) add(shift - 1, na_ + j, c * x);
      return;
    }
    auto [it, fresh] = terms_.try_emplace({shift, base}, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  void add_c0(int shift, const SparseVec& v, const Scalar& c) {
    for (const auto& [j, x] : v.entries()) add(shift, j, c * x);
  }
  void add_c1(int shift, const SparseVec& v, const Scalar& c) {
    for (const auto& [j, x] : v.entries()) add(shift, na_ + j, c * x);
  }
  void add_shifted(const FreeElem& o, int k, const Scalar& c) {
    for (const auto& [key, x] : o.terms_) add(key.first + k, key.second, c * x);
  }
  bool empty() const { return terms_.empty(); }
  const std::map<std::pair<int, std::size_t>, Scalar>& terms() const { return terms_; }

 private:
  const OneTruncatedConformalAlgebra* t_;
  std::size_t na_;
  std::map<std::pair<int, std::size_t>, Scalar> terms_;
};

/// Laurent polynomial in x with FreeElem coefficients: exponent -> coefficient.
using Laurent = std::map<int, FreeElem>;

FreeElem& coef(Laurent& f, int p, const OneTruncatedConformalAlgebra& t) {
  return f.try_emplace(p, FreeElem(t)).first->second;
}

}  // namespace

CElement VertexLieC::sing_oracle(std::size_t u, int u_shift, std::size_t v, int v_shift, int i) const {
  const std::size_t na = dim_a_;
  if (u >= na + dim_b_ || v >= na + dim_b_ || u_shift < 0 || v_shift < 0 || i < 0)
    throw std::invalid_argument("sing_oracle arguments out of range");
  const OneTruncatedConformalAlgebra& t = tca_;

  // Y(v, x)u from the two products of the 1-truncated structure.
  auto as_tca = [&](std::size_t k) {
    TcaElement e;
    if (k < na)
      e.c0 = SparseVec::basis(static_cast<std::uint32_t>(k));
    else
      e.c1 = SparseVec::basis(static_cast<std::uint32_t>(k - na));
    return e;
  };
  Laurent base;
  for (int k = 0; k <= 1; ++k) {
    TcaElement p = tca_product(t, k, as_tca(v), as_tca(u));
    if (p.is_zero()) continue;
    FreeElem& c = coef(base, -k - 1, t);
    c.add_c0(0, p.c0, 1);
    c.add_c1(0, p.c1, 1);
  }

  // Y(v, x)D^n u = (D - d/dx)^n Y(v, x)u.
  Laurent inner;
  for (int k = 0; k <= u_shift; ++k) {
    Laurent f = base;
    for (int s = 0; s < u_shift - k; ++s) {
      Laurent g;
      for (const auto& [p, c] : f) coef(g, p - 1, t).add_shifted(c, 0, Scalar(p));
      f = std::move(g);
    }
    const Scalar w = binomial(u_shift, k) * sign_of(u_shift - k);
    for (const auto& [p, c] : f) coef(inner, p, t).add_shifted(c, k, w);
  }

  // x -> -x, then (-d/dx)^m.
  Laurent h;
  for (const auto& [p, c] : inner) coef(h, p, t).add_shifted(c, 0, sign_of(-p));
  for (int s = 0; s < v_shift; ++s) {
    Laurent g;
    for (const auto& [p, c] : h) coef(g, p - 1, t).add_shifted(c, 0, Scalar(-p));
    h = std::move(g);
  }

  // Coefficient of x^(-i-1) in Sing(e^{xD} h).
  FreeElem result(t);
  for (const auto& [p, c] : h) {
    const int k = -i - 1 - p;
    if (k < 0) continue;
    result.add_shifted(c, k, Scalar(1) / factorial(k));
  }

  CElement out;
  for (const auto& [key, x] : result.terms()) {
    const auto [s, b] = key;
    if (b < na)
      out.terms.add_term(static_cast<std::uint32_t>(b), x);
    else
      out += from_b(s, SparseVec::basis(static_cast<std::uint32_t>(b - na), x));
  }
  return out;
}

namespace {

void expect(CheckReport& r, const VertexLieC& c, const char* axiom, std::vector<std::string> tuple,
            const CElement& lhs, const CElement& rhs) {
  ++r.checked;
  if (lhs == rhs) return;
  r.add(Violation{kModule, axiom, std::move(tuple), c.render(lhs), c.render(rhs)});
}

std::string idx(const char* name, int n) { return std::string(name) + "=" + std::to_string(n); }

}  // namespace

CheckReport check_vertex_lie(const VertexLieC& c, const Exec& exec) {
  const int cut = c.cutoff();
  const auto n = static_cast<GenId>(c.num_generators());

  CheckReport out = collect(n, exec, [&](std::size_t gi, CheckReport& r) {
    const auto g = static_cast<GenId>(gi);
    const int dg = c.degree(g);
    const CElement eg = c.gen(g);
    const std::string lg = c.label(g);
    for (GenId h = 0; h < n; ++h) {
      const int dh = c.degree(h);
      const CElement eh = c.gen(h);
      const std::string lh = c.label(h);

      // (hp) (Dg)_k h = -k g_(k-1) h
      if (dg + 1 <= cut) {
        const CElement dgc = c.d_gen(g);
        for (int k = std::max(0, dg + dh - cut); k <= dg + dh; ++k) {
          CElement rhs = k == 0 ? CElement{} : c.product(k - 1, eg, eh).scaled(-k);
          expect(r, c, "hp", {lg, lh, idx("n", k)}, c.product(k, dgc, eh), rhs);
        }
      }

      // (hs) g_k h = sum_j (-1)^(k+j+1) / j! D^j (h_(k+j) g)
      for (int k = std::max(0, dg + dh - 1 - cut); k <= dg + dh - 1; ++k) {
        CElement rhs;
        for (int j = 0; k + j <= dg + dh - 1; ++j) {
          CElement term = c.product(k + j, h, eg);
          for (int s = 0; s < j; ++s) term = c.d_op(term);
          rhs += term.scaled(sign_of(k + j + 1) / factorial(j));
        }
        expect(r, c, "hs", {lg, lh, idx("n", k)}, c.gen_product(k, g, h), rhs);
      }

      // grading of every product in range
      for (int k = std::max(0, dg + dh - 1 - cut); k <= dg + dh - 1; ++k) {
        const CElement& p = c.gen_product(k, g, h);
        CElement off;
        for (const auto& [w, x] : p.terms.entries())
          if (c.degree(w) != dg + dh - k - 1) off.terms.add_term(w, x);
        expect(r, c, "grading", {lg, lh, idx("n", k)}, off, {});
      }

      // [D, g_k] h = -k g_(k-1) h
      if (dh + 1 <= cut) {
        const CElement dh_c = c.d_gen(h);
        for (int k = std::max(0, dg + dh - cut); k <= dg + dh; ++k) {
          CElement lhs = c.d_op(c.gen_product(k, g, h)) - c.product(k, g, dh_c);
          CElement rhs = k == 0 ? CElement{} : c.gen_product(k - 1, g, h).scaled(-k);
          expect(r, c, "d_commutator", {lg, lh, idx("n", k)}, lhs, rhs);
        }
      }

      // (ha) g_m h_n k - h_n g_m k = sum_i C(m, i) (g_i h)_(m+n-i) k
      if (dg + dh - 1 > cut) continue;
      for (GenId k = 0; k < n; ++k) {
        const int dk = c.degree(k);
        const int total = dg + dh + dk;
        const std::string lk = c.label(k);
        for (int bn = std::max(0, dh + dk - 1 - cut); bn <= total - 2; ++bn) {
          const CElement hk = c.gen_product(bn, h, k);
          for (int m = std::max(0, dg + dk - 1 - cut); m + bn <= total - 2; ++m) {
            if (total - m - bn - 2 > cut) continue;
            CElement lhs = c.product(m, g, hk) - c.product(bn, h, c.gen_product(m, g, k));
            CElement rhs;
            for (int i = 0; i <= m && i <= dg + dh - 1; ++i)
              rhs += c.product(m + bn - i, c.gen_product(i, g, h), c.gen(k)).scaled(binomial(m, i));
            expect(r, c, "ha", {lg, lh, lk, idx("m", m), idx("n", bn)}, lhs, rhs);
          }
        }
      }
    }
  });

  for (int d = 0; d <= cut; ++d) {
    ++out.checked;
    const std::size_t want = d == 0 ? c.dim_a() : c.dim_b();
    if (c.dim_degree(d) != want)
      out.add(Violation{kModule, "dims", {idx("degree", d)}, std::to_string(c.dim_degree(d)), std::to_string(want)});
  }
  out.sort();
  return out;
}

CheckReport check_oracle_agreement(const VertexLieC& c, const Exec& exec) {
  const int cut = c.cutoff();
  const std::size_t na = c.dim_a();
  const std::size_t nbase = na + c.dim_b();
  const OneTruncatedConformalAlgebra& t = c.tca();
  auto base_degree = [&](std::size_t b, int s) { return b < na ? s : s + 1; };
  auto base_label = [&](std::size_t b, int s) {
    return d_label(s, b < na ? t.c0->basis[b] : t.c1->basis[b - na]);
  };
  auto element = [&](std::size_t b, int s) {
    CElement e = b < na ? c.gen(c.a_gen(b)) : c.gen(c.b_gen(0, b - na));
    for (int k = 0; k < s; ++k) e = c.d_op(e);
    return e;
  };

  return collect(nbase, exec, [&](std::size_t u, CheckReport& r) {
    for (int su = 0; base_degree(u, su) <= cut; ++su) {
      const int du = base_degree(u, su);
      const CElement eu = element(u, su);
      for (std::size_t v = 0; v < nbase; ++v)
        for (int sv = 0; base_degree(v, sv) <= cut; ++sv) {
          const int dv = base_degree(v, sv);
          const CElement ev = element(v, sv);
          for (int i = std::max(0, du + dv - 1 - cut); i <= du + dv - 1; ++i)
            expect(r, c, "oracle", {base_label(u, su), base_label(v, sv), idx("n", i)}, c.product(i, eu, ev),
                   c.sing_oracle(u, su, v, sv, i));
        }
    }
  });
}

}  // namespace cvpa
