#include "cvpa/tca.hpp"

namespace cvpa {

bool OneTruncatedConformalAlgebra::operator==(const OneTruncatedConformalAlgebra& o) const {
  return same_space(c0, o.c0) && same_space(c1, o.c1) && partial == o.partial && p0_10 == o.p0_10 &&
         p0_01 == o.p0_01 && p0_11 == o.p0_11 && p1_11 == o.p1_11;
}

namespace {

constexpr const char* kModule = "tca";

std::string render(const OneTruncatedConformalAlgebra& t, const TcaElement& x) {
  if (x.is_zero()) return "0";
  if (x.c1.empty()) return cvpa::render(x.c0, *t.c0);
  if (x.c0.empty()) return cvpa::render(x.c1, *t.c1);
  return cvpa::render(x.c0, *t.c0) + " + " + cvpa::render(x.c1, *t.c1);
}

TcaElement in_c0(SparseVec v) { return TcaElement{std::move(v), {}}; }
TcaElement in_c1(SparseVec v) { return TcaElement{{}, std::move(v)}; }

TcaElement add(TcaElement a, const TcaElement& b, const Scalar& c = 1) {
  a.c0.add_scaled(b.c0, c);
  a.c1.add_scaled(b.c1, c);
  return a;
}

/// Basis of C0 + C1 listed C0 first.
struct Basis {
  const OneTruncatedConformalAlgebra& t;
  std::size_t size() const { return t.c0->dim() + t.c1->dim(); }
  TcaElement at(std::size_t k) const {
    auto n0 = t.c0->dim();
    if (k < n0) return in_c0(SparseVec::basis(static_cast<std::uint32_t>(k)));
    return in_c1(SparseVec::basis(static_cast<std::uint32_t>(k - n0)));
  }
  std::string label(std::size_t k) const {
    auto n0 = t.c0->dim();
    return k < n0 ? t.c0->basis[k] : t.c1->basis[k - n0];
  }
};

void expect(CheckReport& r, const OneTruncatedConformalAlgebra& t, const char* axiom, std::vector<std::string> tuple,
            const TcaElement& lhs, const TcaElement& rhs) {
  ++r.checked;
  if (lhs == rhs) return;
  r.add(Violation{kModule, axiom, std::move(tuple), render(t, lhs), render(t, rhs)});
}

}  // namespace

OneTruncatedConformalAlgebra OneTruncatedConformalAlgebra::zero(SpaceRef c0, SpaceRef c1) {
  OneTruncatedConformalAlgebra t;
  t.c0 = c0;
  t.c1 = c1;
  t.partial = LinearMap(c0, c1);
  t.p0_10 = BilinearMap(c1, c0, c0);
  t.p0_01 = BilinearMap(c0, c1, c0);
  t.p0_11 = BilinearMap(c1, c1, c1);
  t.p1_11 = BilinearMap(c1, c1, c0, Symmetry::symmetric);
  return t;
}

void OneTruncatedConformalAlgebra::validate() const {
  auto need = [](bool ok, const char* what) {
    if (!ok) throw SpaceMismatch(std::string("1tca: ") + what + " is wired to the wrong spaces");
  };
  need(same_space(partial.domain(), c0) && same_space(partial.codomain(), c1), "partial");
  need(same_space(p0_10.left(), c1) && same_space(p0_10.right(), c0) && same_space(p0_10.codomain(), c0), "p0_10");
  need(same_space(p0_01.left(), c0) && same_space(p0_01.right(), c1) && same_space(p0_01.codomain(), c0), "p0_01");
  need(same_space(p0_11.left(), c1) && same_space(p0_11.right(), c1) && same_space(p0_11.codomain(), c1), "p0_11");
  need(same_space(p1_11.left(), c1) && same_space(p1_11.right(), c1) && same_space(p1_11.codomain(), c0), "p1_11");
}

TcaElement tca_product(const OneTruncatedConformalAlgebra& t, int i, const TcaElement& x, const TcaElement& y) {
  TcaElement out;
  if (i == 0) {
    out.c0 = t.p0_10.apply(x.c1, y.c0);
    out.c0.add_scaled(t.p0_01.apply(x.c0, y.c1), 1);
    out.c1 = t.p0_11.apply(x.c1, y.c1);
  } else if (i == 1) {
    out.c0 = t.p1_11.apply(x.c1, y.c1);
  }
  return out;
}

CheckReport check_derivation(const OneTruncatedConformalAlgebra& t, const Exec& exec) {
  t.validate();
  const auto n0 = t.c0->dim();
  const auto n1 = t.c1->dim();
  return collect(n0, exec, [&](std::size_t a, CheckReport& r) {
    const auto ai = static_cast<std::uint32_t>(a);
    const SparseVec da = t.partial.column(a);
    const std::string la = t.c0->basis[a];
    for (std::uint32_t u = 0; u < n1; ++u) {
      const std::string lu = t.c1->basis[u];
      SparseVec ev = SparseVec::basis(u);
      expect(r, t, "der_d0", {la, lu}, in_c1(t.p0_11.apply(da, ev)), {});
      expect(r, t, "der_d1", {la, lu}, in_c0(t.p1_11.apply(da, ev)),
             in_c0(t.p0_01.apply(SparseVec::basis(ai), ev).scaled(-1)));
      SparseVec ua = t.p0_10.apply(ev, SparseVec::basis(ai));
      expect(r, t, "der_du", {lu, la}, in_c1(t.partial.apply(ua)), in_c1(t.p0_11.apply(ev, da)));
    }
    for (std::uint32_t b = 0; b < n0; ++b)
      expect(r, t, "der_d0", {la, t.c0->basis[b]}, in_c0(t.p0_10.apply(da, SparseVec::basis(b))), {});
  });
}

CheckReport check_commutativity(const OneTruncatedConformalAlgebra& t, const Exec& exec) {
  t.validate();
  const auto n0 = t.c0->dim();
  const auto n1 = t.c1->dim();
  return collect(n1, exec, [&](std::size_t ui, CheckReport& r) {
    const auto u = static_cast<std::uint32_t>(ui);
    const SparseVec eu = SparseVec::basis(u);
    const std::string lu = t.c1->basis[u];
    for (std::uint32_t a = 0; a < n0; ++a) {
      SparseVec ea = SparseVec::basis(a);
      expect(r, t, "com_ua", {lu, t.c0->basis[a]}, in_c0(t.p0_10.apply(eu, ea)),
             in_c0(t.p0_01.apply(ea, eu).scaled(-1)));
    }
    for (std::uint32_t v = 0; v < n1; ++v) {
      SparseVec ev = SparseVec::basis(v);
      const std::string lv = t.c1->basis[v];
      SparseVec rhs = t.p0_11.apply(ev, eu).scaled(-1);
      rhs.add_scaled(t.partial.apply(t.p1_11.apply(ev, eu)), 1);
      expect(r, t, "com_uv", {lu, lv}, in_c1(t.p0_11.apply(eu, ev)), in_c1(rhs));
      expect(r, t, "com_sym", {lu, lv}, in_c0(t.p1_11.apply(eu, ev)), in_c0(t.p1_11.apply(ev, eu)));
    }
  });
}

CheckReport check_associativity(const OneTruncatedConformalAlgebra& t, const Exec& exec) {
  t.validate();
  Basis basis{t};
  const std::size_t n = basis.size();
  return collect(n, exec, [&](std::size_t ai, CheckReport& r) {
    TcaElement alpha = basis.at(ai);
    for (std::size_t bi = 0; bi < n; ++bi) {
      TcaElement beta = basis.at(bi);
      TcaElement alpha_beta = tca_product(t, 0, alpha, beta);
      for (std::size_t gi = 0; gi < n; ++gi) {
        TcaElement gamma = basis.at(gi);
        TcaElement alpha_gamma = tca_product(t, 0, alpha, gamma);
        for (int i = 0; i <= 1; ++i) {
          TcaElement lhs = tca_product(t, 0, alpha, tca_product(t, i, beta, gamma));
          TcaElement rhs = add(tca_product(t, i, beta, alpha_gamma), tca_product(t, i, alpha_beta, gamma));
          expect(r, t, i == 0 ? "assoc_i0" : "assoc_i1", {basis.label(ai), basis.label(bi), basis.label(gi)}, lhs,
                 rhs);
        }
      }
    }
  });
}

CheckReport check_tca(const OneTruncatedConformalAlgebra& t, const Exec& exec) {
  CheckReport r = check_derivation(t, exec);
  r.merge(check_commutativity(t, exec));
  r.merge(check_associativity(t, exec));
  r.sort();
  return r;
}

CheckReport check_leibniz_form(const OneTruncatedConformalAlgebra& t, const Exec& exec) {
  t.validate();
  const auto n0 = t.c0->dim();
  const auto n1 = t.c1->dim();
  auto br = [&](const SparseVec& u, const SparseVec& v) { return t.p0_11.apply(u, v); };
  auto act = [&](const SparseVec& u, const SparseVec& a) { return t.p0_10.apply(u, a); };
  auto pair = [&](const SparseVec& u, const SparseVec& v) { return t.p1_11.apply(u, v); };

  CheckReport out = collect(n1, exec, [&](std::size_t ui, CheckReport& r) {
    const auto u = static_cast<std::uint32_t>(ui);
    const SparseVec eu = SparseVec::basis(u);
    const std::string lu = t.c1->basis[u];
    for (std::uint32_t v = 0; v < n1; ++v) {
      const SparseVec ev = SparseVec::basis(v);
      const std::string lv = t.c1->basis[v];
      const SparseVec uv = br(eu, ev);
      for (std::uint32_t w = 0; w < n1; ++w) {
        const SparseVec ew = SparseVec::basis(w);
        const std::string lw = t.c1->basis[w];
        expect(r, t, "leibniz", {lu, lv, lw}, in_c1(br(eu, br(ev, ew))),
               in_c1(br(uv, ew) + br(ev, br(eu, ew))));
        expect(r, t, "pairing_module", {lu, lv, lw}, in_c0(act(eu, pair(ev, ew))),
               in_c0(pair(uv, ew) + pair(ev, br(eu, ew))));
      }
      for (std::uint32_t a = 0; a < n0; ++a) {
        const SparseVec ea = SparseVec::basis(a);
        expect(r, t, "module", {lu, lv, t.c0->basis[a]}, in_c0(act(eu, act(ev, ea))),
               in_c0(act(uv, ea) + act(ev, act(eu, ea))));
      }
      expect(r, t, "bracket_sym", {lu, lv}, in_c1(uv + br(ev, eu)), in_c1(t.partial.apply(pair(eu, ev))));
      expect(r, t, "pairing_sym", {lu, lv}, in_c0(pair(eu, ev)), in_c0(pair(ev, eu)));
    }
    for (std::uint32_t a = 0; a < n0; ++a) {
      const SparseVec ea = SparseVec::basis(a);
      const std::string la = t.c0->basis[a];
      const SparseVec da = t.partial.column(a);
      const SparseVec minus_au = t.p0_01.apply(ea, eu).scaled(-1);
      expect(r, t, "d_module", {lu, la}, in_c1(t.partial.apply(act(eu, ea))), in_c1(br(eu, da)));
      expect(r, t, "anti", {lu, la}, in_c0(act(eu, ea)), in_c0(minus_au));
      expect(r, t, "pairing_d", {la, lu}, in_c0(pair(da, eu)), in_c0(minus_au));
      expect(r, t, "annihilate", {la, lu}, in_c1(br(da, eu)), {});
    }
  });
  // dC0 annihilates C0 as well
  CheckReport ann = collect(n0, exec, [&](std::size_t a, CheckReport& r) {
    const SparseVec da = t.partial.column(a);
    for (std::uint32_t b = 0; b < n0; ++b)
      expect(r, t, "annihilate", {t.c0->basis[a], t.c0->basis[b]}, in_c0(act(da, SparseVec::basis(b))), {});
  });
  out.merge(ann);
  out.sort();
  return out;
}

}  // namespace cvpa
