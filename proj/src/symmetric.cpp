#include "cvpa/symmetric.hpp"

#include <algorithm>
#include <mutex>
#include <unordered_map>
#include <stdexcept>

namespace cvpa {

namespace {

constexpr const char* kModule = "vpa";

Monomial merged(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Monomial without(const Monomial& m, std::size_t k) {
  Monomial out;
  out.reserve(m.size() - 1);
  for (std::size_t i = 0; i < m.size(); ++i)
    if (i != k) out.push_back(m[i]);
  return out;
}

Monomial inserted(const Monomial& m, GenId g) {
  Monomial out = m;
  out.insert(std::upper_bound(out.begin(), out.end(), g), g);
  return out;
}

Scalar sign_of(int n) { return (n % 2 == 0) ? Scalar(1) : Scalar(-1); }

[[noreturn]] void cutoff_error(const char* what, int degree, int cutoff) {
  throw CutoffError(std::string(what) + " lands in degree " + std::to_string(degree) + " above the cutoff " +
                    std::to_string(cutoff));
}

}  // namespace

SCElement SCElement::monomial(Monomial m, Scalar c) {
  SCElement out;
  std::sort(m.begin(), m.end());
  out.add(m, c);
  return out;
}

SCElement SCElement::from_c(const CElement& c) {
  SCElement out;
  for (const auto& [g, x] : c.terms.entries()) out.add({g}, x);
  return out;
}

void SCElement::add(const Monomial& m, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms.try_emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }
}

void SCElement::add_scaled(const SCElement& o, const Scalar& c) {
  if (c.is_zero()) return;
  for (const auto& [m, x] : o.terms) add(m, x * c);
}

SCElement SCElement::scaled(const Scalar& c) const {
  SCElement out;
  if (c.is_zero()) return out;
  for (const auto& [m, x] : terms) out.terms.emplace(m, x * c);
  return out;
}

SymmetricAlgebra::SymmetricAlgebra(std::shared_ptr<const VertexLieC> c) : c_(std::move(c)) {
  if (!c_) throw std::invalid_argument("symmetric algebra needs a vertex Lie algebra");
}

int SymmetricAlgebra::degree(const Monomial& m) const {
  int d = 0;
  for (GenId g : m) d += c_->degree(g);
  return d;
}

int SymmetricAlgebra::degree(const SCElement& u) const {
  int d = -1;
  for (const auto& [m, x] : u.terms) {
    int dm = degree(m);
    if (d >= 0 && dm != d) throw std::invalid_argument("element of S(C) is not homogeneous");
    d = dm;
  }
  return d;
}

std::string SymmetricAlgebra::render(const Monomial& m) const {
  if (m.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) out += "*";
    out += c_->label(m[i]);
  }
  return out;
}

std::string SymmetricAlgebra::render(const SCElement& u) const {
  if (u.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : u.terms) {
    Scalar mag = c.sign() < 0 ? -c : c;
    if (first)
      out += c.sign() < 0 ? "-" : "";
    else
      out += c.sign() < 0 ? " - " : " + ";
    if (mag != Scalar(1)) out += mag.str() + "*";
    out += render(m);
    first = false;
  }
  return out;
}

SCElement SymmetricAlgebra::times(const SCElement& u, const Monomial& m) const {
  SCElement out;
  const int dm = degree(m);
  for (const auto& [a, x] : u.terms) {
    if (degree(a) + dm > cutoff()) cutoff_error("product", degree(a) + dm, cutoff());
    out.add(merged(a, m), x);
  }
  return out;
}

SCElement SymmetricAlgebra::multiply(const SCElement& u, const SCElement& v) const {
  SCElement out;
  for (const auto& [b, y] : v.terms) out.add_scaled(times(u, b), y);
  return out;
}

SCElement SymmetricAlgebra::d(const SCElement& u) const {
  SCElement out;
  for (const auto& [m, x] : u.terms) {
    if (m.empty()) continue;
    if (degree(m) + 1 > cutoff()) cutoff_error("D", degree(m) + 1, cutoff());
    for (std::size_t k = 0; k < m.size(); ++k) {
      const Monomial rest = without(m, k);
      const CElement dg = c_->d_gen(m[k]);
      for (const auto& [w, c] : dg.terms.entries()) out.add(inserted(rest, w), x * c);
    }
  }
  return out;
}

SCElement SymmetricAlgebra::gen_act(int n, GenId g, const Monomial& v) const {
  SCElement out;
  if (v.empty()) return out;
  const int target = c_->degree(g) + degree(v) - n - 1;
  if (target < 0) return out;
  if (target > cutoff()) cutoff_error("n-product", target, cutoff());
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k > 0 && v[k] == v[k - 1]) continue;
    const auto mult = static_cast<long long>(std::count(v.begin(), v.end(), v[k]));
    const CElement& p = c_->gen_product(n, g, v[k]);
    if (p.is_zero()) continue;
    const Monomial rest = without(v, k);
    for (const auto& [w, c] : p.terms.entries()) out.add(inserted(rest, w), c * Scalar(mult));
  }
  return out;
}

std::size_t SymmetricAlgebra::KeyHash::operator()(const Monomial& k) const {
  std::size_t h = k.size();
  for (GenId g : k) h ^= g + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

SCElement SymmetricAlgebra::mono_on_gen(int n, const Monomial& u, GenId h) const {
  SCElement out;
  if (u.empty()) return out;
  // key: n, h, then the factors of u
  Monomial key;
  key.reserve(u.size() + 2);
  key.push_back(static_cast<GenId>(n));
  key.push_back(h);
  key.insert(key.end(), u.begin(), u.end());
  {
    std::shared_lock read(memo_->lock);
    auto it = memo_->on_gen.find(key);
    if (it != memo_->on_gen.end()) return it->second;
  }
  const int du = degree(u);
  const int top = du + c_->degree(h) - 1;
  if (top - n < 0) return out;
  if (top - n > cutoff()) cutoff_error("n-product", top - n, cutoff());
  for (int j = n; j <= top; ++j) {
    SCElement term = gen_act(j, h, u);
    for (int s = 0; s < j - n; ++s) term = d(term);
    out.add_scaled(term, sign_of(j + 1) / factorial(j - n));
  }
  std::unique_lock write(memo_->lock);
  memo_->on_gen.emplace(std::move(key), out);
  return out;
}

SCElement SymmetricAlgebra::mono_act(int n, const Monomial& u, const Monomial& v) const {
  SCElement out;
  if (u.empty() || v.empty()) return out;
  if (u.size() == 1) return gen_act(n, u.front(), v);
  const int target = degree(u) + degree(v) - n - 1;
  if (target < 0) return out;
  if (target > cutoff()) cutoff_error("n-product", target, cutoff());
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k > 0 && v[k] == v[k - 1]) continue;
    const auto mult = static_cast<long long>(std::count(v.begin(), v.end(), v[k]));
    SCElement p = mono_on_gen(n, u, v[k]);
    if (p.is_zero()) continue;
    out.add_scaled(times(p, without(v, k)), Scalar(mult));
  }
  return out;
}

SCElement SymmetricAlgebra::product(int n, const SCElement& u, const SCElement& v) const {
  if (n < 0) throw std::invalid_argument("negative product index");
  SCElement out;
  for (const auto& [a, x] : u.terms)
    for (const auto& [b, y] : v.terms) out.add_scaled(mono_act(n, a, b), x * y);
  return out;
}

SCElement SymmetricAlgebra::product_skew(int n, GenId g, GenId h) const { return mono_on_gen(n, {g}, h); }

std::vector<Monomial> SymmetricAlgebra::spanning_monomials(int max_factors) const {
  std::vector<Monomial> out;
  const auto ngen = static_cast<GenId>(c_->num_generators());
  Monomial cur;
  auto rec = [&](auto&& self, GenId from, int deg) -> void {
    out.push_back(cur);
    if (static_cast<int>(cur.size()) == max_factors) return;
    for (GenId g = from; g < ngen; ++g) {
      const int dg = c_->degree(g);
      if (deg + dg > cutoff()) continue;
      cur.push_back(g);
      self(self, g, deg + dg);
      cur.pop_back();
    }
  };
  rec(rec, 0, 0);
  return out;
}

namespace {

void expect(CheckReport& r, const SymmetricAlgebra& s, const char* axiom, std::vector<std::string> tuple,
            const SCElement& lhs, const SCElement& rhs) {
  ++r.checked;
  if (lhs == rhs) return;
  r.add(Violation{kModule, axiom, std::move(tuple), s.render(lhs), s.render(rhs)});
}

template <class Tuple>
void expect_lazy(CheckReport& r, const SymmetricAlgebra& s, const char* axiom, const SCElement& lhs,
                 const SCElement& rhs, Tuple&& tuple) {
  ++r.checked;
  if (lhs == rhs) return;
  r.add(Violation{kModule, axiom, tuple(), s.render(lhs), s.render(rhs)});
}

std::string idx(const char* name, int n) { return std::string(name) + "=" + std::to_string(n); }

struct MonomialHash {
  std::size_t operator()(const Monomial& k) const {
    std::size_t h = k.size();
    for (GenId g : k) h ^= g + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

/// x_n y through a per-call-site memo keyed by (n, tag, monomial of y).
SCElement cached_product(const SymmetricAlgebra& s, std::unordered_map<Monomial, SCElement, MonomialHash>& memo,
                         int n, GenId tag, const SCElement& x, const SCElement& y) {
  SCElement out;
  for (const auto& [m, c] : y.terms) {
    Monomial key;
    key.push_back(static_cast<GenId>(n));
    key.push_back(tag);
    key.insert(key.end(), m.begin(), m.end());
    auto it = memo.find(key);
    if (it == memo.end()) it = memo.emplace(std::move(key), s.product(n, x, SCElement::monomial(m))).first;
    out.add_scaled(it->second, c);
  }
  return out;
}

/// s_n g for every spanning monomial s, generator g and n in range.
struct GenTable {
  std::size_t ngen;
  int width;
  std::vector<SCElement> cells;
  const SCElement& at(std::size_t si, GenId g, int n) const {
    static const SCElement zero;
    if (n < 0 || n >= width) return zero;
    return cells[(si * ngen + g) * static_cast<std::size_t>(width) + static_cast<std::size_t>(n)];
  }
};

}  // namespace

CheckReport check_vpa(const SymmetricAlgebra& s, const Exec& exec) {
  const VertexLieC& c = s.vlie();
  const int cut = s.cutoff();
  const std::vector<Monomial> span = s.spanning_monomials(3);
  std::vector<int> deg(span.size());
  std::vector<SCElement> elem(span.size());
  std::vector<std::string> lab(span.size());
  for (std::size_t i = 0; i < span.size(); ++i) {
    deg[i] = s.degree(span[i]);
    elem[i] = SCElement::monomial(span[i]);
    lab[i] = s.render(span[i]);
  }
  const auto ngen = static_cast<GenId>(c.num_generators());
  const SCElement one = SCElement::unit();

  GenTable gen_table{ngen, 2 * cut + 1, {}};
  gen_table.cells.resize(span.size() * ngen * static_cast<std::size_t>(gen_table.width));
  collect(span.size(), exec, [&](std::size_t si, CheckReport&) {
    for (GenId g = 0; g < ngen; ++g) {
      const int top = deg[si] + c.degree(g) - 1;
      for (int n = std::max(0, top - cut); n <= top && n < gen_table.width; ++n)
        gen_table.cells[(si * ngen + g) * static_cast<std::size_t>(gen_table.width) + static_cast<std::size_t>(n)] =
            s.product(n, elem[si], SCElement::monomial({g}));
    }
  });

  auto grading = [&](CheckReport& r, std::vector<std::string> tuple, const SCElement& x, int want) {
    SCElement off;
    for (const auto& [m, k] : x.terms)
      if (s.degree(m) != want) off.add(m, k);
    expect(r, s, "grading", std::move(tuple), off, {});
  };

  CheckReport out = collect(span.size(), exec, [&](std::size_t ui, CheckReport& r) {
    const SCElement& u = elem[ui];
    const int du = deg[ui];
    const std::string& lu = lab[ui];

    // unit annihilation and D(1) = 0
    for (int n = 0; n <= du; ++n) {
      expect(r, s, "unit", {lu, "1", idx("n", n)}, s.product(n, u, one), {});
      expect(r, s, "unit", {"1", lu, idx("n", n)}, s.product(n, one, u), {});
    }
    if (ui == 0) expect(r, s, "unit", {"D", "1"}, s.d(one), {});
    if (du + 1 <= cut) grading(r, {"D", lu}, s.d(u), du + 1);

    const SCElement du_elem = du + 1 <= cut ? s.d(u) : SCElement{};
    for (std::size_t vi = 0; vi < span.size(); ++vi) {
      const SCElement& v = elem[vi];
      const int dv = deg[vi];
      const std::string& lv = lab[vi];

      // D is a derivation of the product
      if (du + dv + 1 <= cut)
        expect(r, s, "d_leibniz", {lu, lv}, s.d(s.multiply(u, v)),
               s.multiply(du_elem, v) + s.multiply(u, s.d(v)));

      for (int n = std::max(0, du + dv - 1 - cut); n <= du + dv - 1; ++n) {
        const SCElement uv = s.product(n, u, v);
        grading(r, {lu, lv, idx("n", n)}, uv, du + dv - n - 1);
        // (hs)
        SCElement rhs;
        for (int i = 0; n + i <= du + dv - 1; ++i) {
          SCElement term = s.product(n + i, v, u);
          for (int k = 0; k < i; ++k) term = s.d(term);
          rhs.add_scaled(term, sign_of(n + i + 1) / factorial(i));
        }
        expect(r, s, "hs", {lu, lv, idx("n", n)}, uv, rhs);
      }

      // (hp)
      if (du + 1 <= cut)
        for (int n = std::max(0, du + dv - cut); n <= du + dv; ++n) {
          SCElement rhs = n == 0 ? SCElement{} : s.product(n - 1, u, v).scaled(-n);
          expect(r, s, "hp", {lu, lv, idx("n", n)}, s.product(n, du_elem, v), rhs);
        }

      // [D, u_n] = -n u_(n-1)
      if (dv + 1 <= cut)
        for (int n = std::max(0, du + dv - cut); n <= du + dv; ++n) {
          SCElement lhs = s.d(s.product(n, u, v)) - s.product(n, u, s.d(v));
          SCElement rhs = n == 0 ? SCElement{} : s.product(n - 1, u, v).scaled(-n);
          expect(r, s, "d_commutator", {lu, lv, idx("n", n)}, lhs, rhs);
        }
    }

    // derivation law u_n(g w) = (u_n g) w + g (u_n w), splitting each
    // spanning monomial of two or more factors as g w
    for (std::size_t mi = 0; mi < span.size(); ++mi) {
      const Monomial& whole = span[mi];
      if (whole.size() < 2) continue;
      const GenId g = whole.front();
      const SCElement eg = SCElement::monomial({g});
      const SCElement w = SCElement::monomial(Monomial(whole.begin() + 1, whole.end()));
      const int dm = deg[mi];
      for (int n = std::max(0, du + dm - 1 - cut); n <= du + dm - 1; ++n) {
        SCElement lhs = s.product(n, u, elem[mi]);
        SCElement rhs = s.multiply(s.product(n, u, eg), w) + s.multiply(eg, s.product(n, u, w));
        expect(r, s, "hd", {lu, c.label(g), s.render(w), idx("n", n)}, lhs, rhs);
      }
    }

    // (ha) u_m v_n g - v_n u_m g = sum_i C(m, i) (u_i v)_(m+n-i) g
    std::unordered_map<Monomial, SCElement, MonomialHash> u_on, v_on;
    for (std::size_t vi = 0; vi < span.size(); ++vi) {
      const int dv = deg[vi];
      if (du + dv - 1 > cut) continue;
      const SCElement& v = elem[vi];
      std::vector<SCElement> uv;
      for (int i = 0; i <= du + dv - 1; ++i) uv.push_back(s.product(i, u, v));
      for (GenId g = 0; g < ngen; ++g) {
        const int dg = c.degree(g);
        const int total = du + dv + dg;
        const SCElement eg = SCElement::monomial({g});
        // (u_i v)_k g for every i, k in range
        std::vector<std::vector<SCElement>> uvg(uv.size());
        for (std::size_t i = 0; i < uv.size(); ++i) {
          const int top = du + dv - static_cast<int>(i) - 1 + dg - 1;
          for (int k = 0; k <= top; ++k)
            uvg[i].push_back(top - k > cut ? SCElement{} : s.product(k, uv[i], eg));
        }
        for (int n = std::max(0, dv + dg - 1 - cut); n <= total - 2; ++n) {
          const SCElement& vg = gen_table.at(vi, g, n);
          for (int m = std::max(0, du + dg - 1 - cut); m + n <= total - 2; ++m) {
            if (total - m - n - 2 > cut) continue;
            SCElement lhs = cached_product(s, u_on, m, 0, u, vg) -
                            cached_product(s, v_on, n, static_cast<GenId>(vi), v, gen_table.at(ui, g, m));
            SCElement rhs;
            for (int i = 0; i <= m && i < static_cast<int>(uv.size()); ++i) {
              const auto& row = uvg[static_cast<std::size_t>(i)];
              const auto k = static_cast<std::size_t>(m + n - i);
              if (k < row.size()) rhs.add_scaled(row[k], binomial(m, i));
            }
            expect_lazy(r, s, "ha", lhs, rhs, [&] {
              return std::vector<std::string>{lu, lab[vi], c.label(g), idx("m", m), idx("n", n)};
            });
          }
        }
      }
    }
  });

  // the two evaluation rules agree on pairs of generators
  CheckReport rules = collect(ngen, exec, [&](std::size_t gi, CheckReport& r) {
    const auto g = static_cast<GenId>(gi);
    const SCElement eg = SCElement::monomial({g});
    for (GenId h = 0; h < ngen; ++h) {
      const int top = c.degree(g) + c.degree(h) - 1;
      for (int n = std::max(0, top - cut); n <= top; ++n)
        expect(r, s, "unique", {c.label(g), c.label(h), idx("n", n)}, s.product(n, eg, SCElement::monomial({h})),
               s.product_skew(n, g, h));
    }
  });
  out.merge(rules);
  out.sort();
  return out;
}

}  // namespace cvpa
