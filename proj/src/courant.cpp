#include "cvpa/courant.hpp"

namespace cvpa {

bool UnitalCommAlgebra::operator==(const UnitalCommAlgebra& o) const {
  return same_space(space, o.space) && mult == o.mult && unit == o.unit;
}

bool CourantAlgebroid::operator==(const CourantAlgebroid& o) const {
  return algebra == o.algebra && same_space(module, o.module) && action == o.action && bracket == o.bracket &&
         anchor == o.anchor && pairing == o.pairing && partial == o.partial;
}

namespace {

constexpr const char* kModule = "courant";

/// Basis-indexed accessors for the structure maps of a Courant algebroid.
struct Ops {
  const CourantAlgebroid& x;

  static SparseVec e(std::uint32_t i) { return SparseVec::basis(i); }
  SparseVec mul(const SparseVec& a, const SparseVec& b) const { return x.algebra.mult.apply(a, b); }
  SparseVec act(const SparseVec& a, const SparseVec& u) const { return x.action.apply(a, u); }
  SparseVec br(const SparseVec& u, const SparseVec& v) const { return x.bracket.apply(u, v); }
  SparseVec anc(const SparseVec& u, const SparseVec& a) const { return x.anchor.apply(u, a); }
  SparseVec pair(const SparseVec& u, const SparseVec& v) const { return x.pairing.apply(u, v); }
  SparseVec d(const SparseVec& a) const { return x.partial.apply(a); }
  const std::string& la(std::uint32_t i) const { return x.algebra.space->basis[i]; }
  const std::string& lb(std::uint32_t i) const { return x.module->basis[i]; }
};

void expect(CheckReport& r, const BasedSpace& space, const char* axiom, std::vector<std::string> tuple,
            const SparseVec& lhs, const SparseVec& rhs, const char* module = kModule) {
  ++r.checked;
  if (lhs == rhs) return;
  r.add(Violation{module, axiom, std::move(tuple), render(lhs, space), render(rhs, space)});
}

}  // namespace

void CourantAlgebroid::validate() const {
  const SpaceRef& a = algebra.space;
  const SpaceRef& b = module;
  auto need = [](bool ok, const char* what) {
    if (!ok) throw SpaceMismatch(std::string("courant: ") + what + " is wired to the wrong spaces");
  };
  need(same_space(algebra.mult.left(), a) && same_space(algebra.mult.right(), a) &&
           same_space(algebra.mult.codomain(), a),
       "mult");
  need(same_space(action.left(), a) && same_space(action.right(), b) && same_space(action.codomain(), b), "action");
  need(same_space(bracket.left(), b) && same_space(bracket.right(), b) && same_space(bracket.codomain(), b),
       "bracket");
  need(same_space(anchor.left(), b) && same_space(anchor.right(), a) && same_space(anchor.codomain(), a), "anchor");
  need(same_space(pairing.left(), b) && same_space(pairing.right(), b) && same_space(pairing.codomain(), a),
       "pairing");
  need(same_space(partial.domain(), a) && same_space(partial.codomain(), b), "partial");
  if (!algebra.unit.empty() && algebra.unit.entries().back().first >= a->dim())
    throw SpaceMismatch("courant: unit lies outside A");
}

CheckReport check_courant(const CourantAlgebroid& x, const Exec& exec) {
  x.validate();
  Ops o{x};
  const auto na = static_cast<std::uint32_t>(x.a_space()->dim());
  const auto nb = static_cast<std::uint32_t>(x.b_space()->dim());
  const BasedSpace& sa = *x.a_space();
  const BasedSpace& sb = *x.b_space();
  const SparseVec& unit = x.algebra.unit;

  // A-only laws and the laws indexed by one A element first.
  CheckReport out = collect(na, exec, [&](std::size_t ai, CheckReport& r) {
    const auto a = static_cast<std::uint32_t>(ai);
    const SparseVec ea = Ops::e(a);
    expect(r, sa, "a_unit", {o.la(a)}, o.mul(unit, ea), ea);
    for (std::uint32_t b = 0; b < na; ++b) {
      const SparseVec eb = Ops::e(b);
      const SparseVec ab = o.mul(ea, eb);
      expect(r, sa, "a_comm", {o.la(a), o.la(b)}, ab, o.mul(eb, ea));
      for (std::uint32_t c = 0; c < na; ++c) {
        const SparseVec ec = Ops::e(c);
        expect(r, sa, "a_assoc", {o.la(a), o.la(b), o.la(c)}, o.mul(ab, ec), o.mul(ea, o.mul(eb, ec)));
      }
      expect(r, sb, "d_derivation", {o.la(a), o.la(b)}, o.d(ab), o.act(ea, o.d(eb)) + o.act(eb, o.d(ea)));
      expect(r, sa, "anchor_d", {o.la(a), o.la(b)}, o.anc(o.d(ea), eb), {});
      for (std::uint32_t u = 0; u < nb; ++u) {
        const SparseVec eu = Ops::e(u);
        expect(r, sb, "module", {o.la(a), o.la(b), o.lb(u)}, o.act(ab, eu), o.act(ea, o.act(eb, eu)));
      }
    }
  });

  CheckReport bpart = collect(nb, exec, [&](std::size_t ui, CheckReport& r) {
    const auto u = static_cast<std::uint32_t>(ui);
    const SparseVec eu = Ops::e(u);
    expect(r, sb, "module_unit", {o.lb(u)}, o.act(unit, eu), eu);
    for (std::uint32_t v = 0; v < nb; ++v) {
      const SparseVec ev = Ops::e(v);
      const SparseVec uv = o.br(eu, ev);
      const SparseVec puv = o.pair(eu, ev);
      expect(r, sa, "pairing_sym", {o.lb(u), o.lb(v)}, puv, o.pair(ev, eu));
      expect(r, sb, "c5", {o.lb(u), o.lb(v)}, uv + o.br(ev, eu), o.d(puv));
      for (std::uint32_t w = 0; w < nb; ++w) {
        const SparseVec ew = Ops::e(w);
        const std::vector<std::string> t{o.lb(u), o.lb(v), o.lb(w)};
        expect(r, sb, "leibniz", t, o.br(eu, o.br(ev, ew)), o.br(uv, ew) + o.br(ev, o.br(eu, ew)));
        expect(r, sa, "c2", t, o.pair(uv, ew) + o.pair(ev, o.br(eu, ew)), o.anc(eu, o.pair(ev, ew)));
      }
      for (std::uint32_t a = 0; a < na; ++a) {
        const SparseVec ea = Ops::e(a);
        const std::vector<std::string> t{o.lb(u), o.la(a), o.lb(v)};
        // pi([u,v]) = [pi(u), pi(v)] on A
        expect(r, sa, "anchor_hom", {o.lb(u), o.lb(v), o.la(a)}, o.anc(uv, ea),
               o.anc(eu, o.anc(ev, ea)) - o.anc(ev, o.anc(eu, ea)));
        expect(r, sb, "c1", t, o.br(eu, o.act(ea, ev)), o.act(ea, uv) + o.act(o.anc(eu, ea), ev));
        expect(r, sa, "pairing_alin", {o.la(a), o.lb(u), o.lb(v)}, o.pair(o.act(ea, eu), ev), o.mul(ea, puv));
      }
    }
    for (std::uint32_t a = 0; a < na; ++a) {
      const SparseVec ea = Ops::e(a);
      const SparseVec da = o.d(ea);
      const SparseVec ua = o.anc(eu, ea);
      expect(r, sb, "c3", {o.lb(u), o.la(a)}, o.br(eu, da), o.d(ua));
      expect(r, sa, "c4", {o.lb(u), o.la(a)}, o.pair(eu, da), ua);
      for (std::uint32_t b = 0; b < na; ++b) {
        const SparseVec eb = Ops::e(b);
        expect(r, sa, "anchor_alin", {o.la(a), o.lb(u), o.la(b)}, o.anc(o.act(ea, eu), eb),
               o.mul(ea, o.anc(eu, eb)));
        expect(r, sa, "anchor_der", {o.lb(u), o.la(a), o.la(b)}, o.anc(eu, o.mul(ea, eb)),
               o.mul(ea, o.anc(eu, eb)) + o.mul(ua, eb));
      }
    }
  });
  out.merge(bpart);
  out.sort();
  return out;
}

CheckReport check_annihilation(const CourantAlgebroid& x, const Exec& exec) {
  x.validate();
  Ops o{x};
  const auto na = static_cast<std::uint32_t>(x.a_space()->dim());
  const auto nb = static_cast<std::uint32_t>(x.b_space()->dim());
  return collect(na, exec, [&](std::size_t ai, CheckReport& r) {
    const auto a = static_cast<std::uint32_t>(ai);
    const SparseVec da = o.d(Ops::e(a));
    for (std::uint32_t u = 0; u < nb; ++u) {
      const SparseVec eu = Ops::e(u);
      expect(r, *x.b_space(), "ann_bracket", {o.la(a), o.lb(u)}, o.br(da, eu), {});
      expect(r, *x.b_space(), "ann_module_hom", {o.lb(u), o.la(a)}, o.d(o.anc(eu, Ops::e(a))), o.br(eu, da));
    }
    for (std::uint32_t b = 0; b < na; ++b)
      expect(r, *x.a_space(), "ann_anchor", {o.la(a), o.la(b)}, o.anc(da, Ops::e(b)), {});
  });
}

CheckReport check_compat(const OneTruncatedConformalAlgebra& t, const UnitalCommAlgebra& algebra,
                         const BilinearMap& action, const Exec& exec) {
  t.validate();
  if (!same_space(algebra.space, t.c0) || !same_space(action.left(), t.c0) || !same_space(action.right(), t.c1) ||
      !same_space(action.codomain(), t.c1))
    throw SpaceMismatch("check_compat: algebra and action must act on C0 and C1");
  const auto na = static_cast<std::uint32_t>(t.c0->dim());
  const auto nb = static_cast<std::uint32_t>(t.c1->dim());
  const BasedSpace& sa = *t.c0;
  const BasedSpace& sb = *t.c1;
  auto mul = [&](const SparseVec& a, const SparseVec& b) { return algebra.mult.apply(a, b); };
  auto act = [&](const SparseVec& a, const SparseVec& u) { return action.apply(a, u); };
  return collect(nb, exec, [&](std::size_t ui, CheckReport& r) {
    const auto u = static_cast<std::uint32_t>(ui);
    const SparseVec eu = SparseVec::basis(u);
    const std::string& lu = sb.basis[u];
    expect(r, sa, "unit_kill", {lu}, t.p0_10.apply(eu, algebra.unit), {}, "compat");
    for (std::uint32_t a = 0; a < na; ++a) {
      const SparseVec ea = SparseVec::basis(a);
      const std::string& la = sa.basis[a];
      const SparseVec au = act(ea, eu);
      const SparseVec ua = t.p0_10.apply(eu, ea);
      for (std::uint32_t b = 0; b < na; ++b) {
        const SparseVec eb = SparseVec::basis(b);
        expect(r, sa, "dera1", {la, lu, sa.basis[b]}, t.p0_10.apply(au, eb), mul(ea, t.p0_10.apply(eu, eb)),
               "compat");
        expect(r, sa, "dec", {lu, la, sa.basis[b]}, t.p0_10.apply(eu, mul(ea, eb)),
               mul(ea, t.p0_10.apply(eu, eb)) + mul(ua, eb), "compat");
      }
      for (std::uint32_t v = 0; v < nb; ++v) {
        const SparseVec ev = SparseVec::basis(v);
        const std::string& lv = sb.basis[v];
        const SparseVec a_uv = mul(ea, t.p1_11.apply(eu, ev));
        expect(r, sa, "syma_left", {la, lu, lv}, t.p1_11.apply(au, ev), a_uv, "compat");
        expect(r, sa, "syma_right", {lu, la, lv}, t.p1_11.apply(eu, act(ea, ev)), a_uv, "compat");
        expect(r, sb, "dera2", {lu, la, lv}, t.p0_11.apply(eu, act(ea, ev)),
               act(ea, t.p0_11.apply(eu, ev)) + act(ua, ev), "compat");
      }
    }
  });
}

namespace {

OneTruncatedConformalAlgebra dictionary(const CourantAlgebroid& x) {
  auto t = OneTruncatedConformalAlgebra::zero(x.a_space(), x.b_space());
  t.partial = x.partial;
  t.p0_10 = x.anchor;
  t.p0_11 = x.bracket;
  t.p1_11 = x.pairing;
  const std::size_t na = x.a_space()->dim();
  const std::size_t nb = x.b_space()->dim();
  for (std::size_t a = 0; a < na; ++a)
    for (std::size_t u = 0; u < nb; ++u) t.p0_01.set(a, u, x.anchor.at(u, a).scaled(-1));
  return t;
}

}  // namespace

CheckReport check_compat(const CourantAlgebroid& x, const Exec& exec) {
  x.validate();
  return check_compat(dictionary(x), x.algebra, x.action, exec);
}

OneTruncatedConformalAlgebra to_1tca(const CourantAlgebroid& x, const Exec& exec) {
  CheckReport r = check_courant(x, exec);
  if (!r.passed()) throw AxiomError("to_1tca: input is not a Courant algebroid", std::move(r));
  return dictionary(x);
}

CourantAlgebroid from_1tca(const OneTruncatedConformalAlgebra& t, const UnitalCommAlgebra& algebra,
                           const BilinearMap& action, const Exec& exec) {
  CheckReport r = check_tca(t, exec);
  if (!r.passed()) throw AxiomError("from_1tca: input is not a 1-truncated conformal algebra", std::move(r));
  r = check_compat(t, algebra, action, exec);
  if (!r.passed()) throw AxiomError("from_1tca: algebra and action are not compatible", std::move(r));
  CourantAlgebroid x;
  x.algebra = algebra;
  x.module = t.c1;
  x.action = action;
  x.bracket = t.p0_11;
  x.anchor = t.p0_10;
  x.pairing = t.p1_11;
  x.pairing.set_symmetry(Symmetry::symmetric);
  x.partial = t.partial;
  r = check_courant(x, exec);
  if (!r.passed()) throw AxiomError("from_1tca: result fails the Courant axioms", std::move(r));
  return x;
}

}  // namespace cvpa
