#include <charconv>
#include <stdexcept>

#include "cvpa/courant.hpp"

namespace cvpa {

namespace {

/// A = Q e, unit e, with B a free module on the given labels.
CourantAlgebroid over_scalars(std::vector<std::string> b_labels) {
  SpaceRef a = make_space("A", {"e"});
  SpaceRef b = make_space("B", std::move(b_labels));
  CourantAlgebroid x;
  x.algebra.space = a;
  x.algebra.mult = BilinearMap(a, a, a, Symmetry::symmetric);
  x.algebra.mult.set(0, 0, SparseVec::basis(0));
  x.algebra.unit = SparseVec::basis(0);
  x.module = b;
  x.action = BilinearMap(a, b, b);
  for (std::size_t u = 0; u < b->dim(); ++u) x.action.set(0, u, SparseVec::basis(static_cast<std::uint32_t>(u)));
  x.bracket = BilinearMap(b, b, b);
  x.anchor = BilinearMap(b, a, a);
  x.pairing = BilinearMap(b, b, a, Symmetry::symmetric);
  x.partial = LinearMap(a, b);
  return x;
}

/// Truncated polynomial arithmetic in Q[x]/(x^m): dense coefficient lists.
using Poly = std::vector<Scalar>;

Poly poly_mul(const Poly& f, const Poly& g, std::size_t keep) {
  Poly out(keep);
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = 0; j < g.size() && i + j < keep; ++j) out[i + j] += f[i] * g[j];
  return out;
}

Poly poly_deriv(const Poly& f, std::size_t keep) {
  Poly out(keep);
  for (std::size_t i = 1; i < f.size() && i - 1 < keep; ++i) out[i - 1] = f[i] * static_cast<long long>(i);
  return out;
}

Poly poly_sub(Poly f, const Poly& g) {
  for (std::size_t i = 0; i < f.size() && i < g.size(); ++i) f[i] -= g[i];
  return f;
}

Poly poly_add(Poly f, const Poly& g) {
  for (std::size_t i = 0; i < f.size() && i < g.size(); ++i) f[i] += g[i];
  return f;
}

Poly monomial(std::size_t k, std::size_t size) {
  Poly p(size);
  if (k < size) p[k] = 1;
  return p;
}

SparseVec sparse(const Poly& p, std::uint32_t offset = 0, std::size_t from = 0) {
  std::vector<SparseVec::Entry> e;
  for (std::size_t i = from; i < p.size(); ++i)
    if (!p[i].is_zero()) e.emplace_back(offset + static_cast<std::uint32_t>(i - from), p[i]);
  return SparseVec::from_entries(std::move(e));
}

std::string power_label(const char* var, std::size_t k) {
  if (k == 0) return "e";
  if (k == 1) return var;
  return std::string(var) + "^" + std::to_string(k);
}

int parse_arg(std::string_view name, std::string_view prefix) {
  std::string_view body = name.substr(prefix.size(), name.size() - prefix.size() - 1);
  int value = 0;
  auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), value);
  if (ec != std::errc() || ptr != body.data() + body.size())
    throw std::invalid_argument("bad example argument in '" + std::string(name) + "'");
  return value;
}

}  // namespace

CourantAlgebroid trivial_example(std::size_t d) {
  std::vector<std::string> labels;
  for (std::size_t i = 1; i <= d; ++i) labels.push_back("b" + std::to_string(i));
  return over_scalars(std::move(labels));
}

CourantAlgebroid sl2_example() {
  CourantAlgebroid x = over_scalars({"E", "F", "H"});
  const std::uint32_t E = 0, F = 1, H = 2;
  auto set_anti = [&](std::uint32_t i, std::uint32_t j, SparseVec v) {
    x.bracket.set(j, i, v.scaled(-1));
    x.bracket.set(i, j, std::move(v));
  };
  set_anti(H, E, SparseVec::basis(E, 2));
  set_anti(H, F, SparseVec::basis(F, -2));
  set_anti(E, F, SparseVec::basis(H));
  x.bracket.set_symmetry(Symmetry::antisymmetric);
  // Killing form tr(ad u ad v)
  x.pairing.set(E, F, SparseVec::basis(0, 4));
  x.pairing.set(F, E, SparseVec::basis(0, 4));
  x.pairing.set(H, H, SparseVec::basis(0, 8));
  return x;
}

CourantAlgebroid heisenberg_example() {
  CourantAlgebroid x = over_scalars({"beta"});
  x.pairing.set(0, 0, SparseVec::basis(0));
  return x;
}

// A = Q[x]/(x^m), B = Der(A) + Omega^1(A) with the Dorfman bracket
// [X + w, Y + h] = [X, Y] + L_X h - i_Y dw. In one variable dw = 0 and
// L_X(q dx) = d(f q) for X = f d/dx. Der(A) has basis x^k d/dx, 1 <= k < m;
// Omega^1(A) = A dx / (x^(m-1) dx) has basis x^k dx, 0 <= k < m - 1.
CourantAlgebroid exact_example(int m) {
  if (m < 1 || m > 4) throw std::invalid_argument("exact(m) needs 1 <= m <= 4");
  const auto n = static_cast<std::size_t>(m);
  const std::size_t nder = n - 1;
  const std::size_t nform = n - 1;

  std::vector<std::string> a_labels;
  for (std::size_t k = 0; k < n; ++k) a_labels.push_back(power_label("x", k));
  std::vector<std::string> b_labels;
  for (std::size_t k = 1; k < n; ++k) b_labels.push_back(power_label("x", k) + ".del");
  for (std::size_t k = 0; k + 1 < n; ++k) b_labels.push_back(k == 0 ? "dx" : power_label("x", k) + ".dx");

  SpaceRef a = make_space("A", a_labels);
  SpaceRef b = make_space("B", b_labels);

  // Element of B as (vector field coefficient f, form coefficient q).
  struct Field {
    Poly f;
    Poly q;
  };
  auto basis_b = [&](std::size_t u) {
    if (u < nder) return Field{monomial(u + 1, n), Poly(nform)};
    return Field{Poly(n), monomial(u - nder, nform)};
  };
  auto to_sparse = [&](const Field& v) {
    SparseVec s = sparse(v.f, 0, 1);  // f has no constant term
    s.add_scaled(sparse(v.q, static_cast<std::uint32_t>(nder)), 1);
    return s;
  };

  CourantAlgebroid x;
  x.algebra.space = a;
  x.algebra.mult = BilinearMap(a, a, a, Symmetry::symmetric);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) x.algebra.mult.set(i, j, sparse(poly_mul(monomial(i, n), monomial(j, n), n)));
  x.algebra.unit = SparseVec::basis(0);
  x.module = b;
  x.action = BilinearMap(a, b, b);
  x.bracket = BilinearMap(b, b, b);
  x.anchor = BilinearMap(b, a, a);
  x.pairing = BilinearMap(b, b, a, Symmetry::symmetric);
  x.partial = LinearMap(a, b);

  const std::size_t nb = b->dim();
  for (std::size_t i = 0; i < n; ++i) {
    Poly ai = monomial(i, n);
    for (std::size_t u = 0; u < nb; ++u) {
      Field v = basis_b(u);
      x.action.set(i, u, to_sparse(Field{poly_mul(ai, v.f, n), poly_mul(ai, v.q, nform)}));
      x.anchor.set(u, i, sparse(poly_mul(v.f, poly_deriv(ai, n), n)));
    }
    x.partial.set_column(i, to_sparse(Field{Poly(n), poly_deriv(ai, nform)}));
  }
  for (std::size_t u = 0; u < nb; ++u) {
    Field X = basis_b(u);
    for (std::size_t v = 0; v < nb; ++v) {
      Field Y = basis_b(v);
      Poly vf = poly_sub(poly_mul(X.f, poly_deriv(Y.f, n), n), poly_mul(Y.f, poly_deriv(X.f, n), n));
      Poly form = poly_deriv(poly_mul(X.f, Y.q, n), nform);
      x.bracket.set(u, v, to_sparse(Field{vf, form}));
      x.pairing.set(u, v, sparse(poly_add(poly_mul(X.f, Y.q, n), poly_mul(Y.f, X.q, n))));
    }
  }
  return x;
}

CourantAlgebroid example(std::string_view name) {
  auto has = [&](std::string_view prefix) {
    return name.size() > prefix.size() + 1 && name.substr(0, prefix.size()) == prefix && name.back() == ')';
  };
  if (name == "quadratic_lie(sl2)" || name == "sl2") return sl2_example();
  if (name == "heisenberg") return heisenberg_example();
  if (has("trivial(")) {
    int d = parse_arg(name, "trivial(");
    if (d < 0 || d > 16) throw std::invalid_argument("trivial(d) needs 0 <= d <= 16");
    return trivial_example(static_cast<std::size_t>(d));
  }
  if (has("exact(")) return exact_example(parse_arg(name, "exact("));
  throw std::invalid_argument("unknown example '" + std::string(name) + "'");
}

std::vector<std::string> example_names() {
  return {"trivial(1)", "trivial(2)", "trivial(3)", "quadratic_lie(sl2)", "exact(2)", "exact(3)", "heisenberg"};
}

}  // namespace cvpa
