#include "cvpa/graded_view.hpp"

#include <optional>
#include <stdexcept>

namespace cvpa {

namespace {

constexpr const char* kModule = "view";

std::string prod_name(int n, int p, int q) {
  return "prod(" + std::to_string(n) + "," + std::to_string(p) + "," + std::to_string(q) + ")";
}

std::string mult_name(int p, int q) { return "mult(" + std::to_string(p) + "," + std::to_string(q) + ")"; }

std::string wiring(const SpaceRef& l, const SpaceRef& r, const SpaceRef& c) {
  auto name = [](const SpaceRef& s) { return s ? s->name : std::string("?"); };
  return name(l) + " x " + name(r) + " -> " + name(c);
}

// Degree-0..top coordinates of the quotient.
struct Coordinates {
  const QuotientSB& q;
  std::vector<std::vector<Monomial>> basis;  // degree >= 1
  std::vector<std::map<Monomial, std::uint32_t>> index;

  SBElement element(int d, std::size_t i) const {
    if (d == 0) return q.from_a(SparseVec::basis(static_cast<std::uint32_t>(i)));
    SBElement out;
    out.add_monomial(basis[static_cast<std::size_t>(d)][i], 1);
    return out;
  }

  SparseVec coords(int d, const SBElement& u) const {
    if (d == 0) return q.as_a(u);
    if (!u.a_part.empty()) throw std::logic_error("element of degree " + std::to_string(d) + " has a degree-0 part");
    SparseVec out;
    const auto& idx = index[static_cast<std::size_t>(d)];
    for (const auto& [m, x] : u.monomials) {
      auto it = idx.find(m);
      if (it == idx.end()) throw std::logic_error("monomial " + q.sc().render(m) + " is not a basis monomial");
      out.add_term(it->second, x);
    }
    return out;
  }
};

}  // namespace

bool GradedVpaView::operator==(const GradedVpaView& o) const {
  if (spaces.size() != o.spaces.size()) return false;
  for (std::size_t d = 0; d < spaces.size(); ++d)
    if (!same_space(spaces[d], o.spaces[d])) return false;
  return d == o.d && prod == o.prod && mult == o.mult && unit == o.unit;
}

const BilinearMap* GradedVpaView::find_prod(int n, int p, int q) const {
  auto it = prod.find({n, p, q});
  return it == prod.end() ? nullptr : &it->second;
}

const BilinearMap* GradedVpaView::find_mult(int p, int q) const {
  auto it = mult.find({p, q});
  return it == mult.end() ? nullptr : &it->second;
}

GradedVpaView build_view(const QuotientSB& q, int top, const Exec& exec) {
  if (top < 1) throw std::invalid_argument("graded view needs degrees 0 and 1");
  if (top > q.cutoff()) throw CutoffError("graded view degree " + std::to_string(top) + " exceeds the cutoff");
  GradedVpaView v;
  Coordinates co{q, {}, {}};
  co.basis.resize(static_cast<std::size_t>(top) + 1);
  co.index.resize(static_cast<std::size_t>(top) + 1);
  v.spaces.push_back(q.algebra().space);
  v.spaces.push_back(q.vlie().tca().c1);
  for (int d = 1; d <= top; ++d) {
    auto& b = co.basis[static_cast<std::size_t>(d)];
    b = normal_monomials(q, d);
    for (std::size_t i = 0; i < b.size(); ++i) co.index[static_cast<std::size_t>(d)].emplace(b[i], i);
    if (d >= 2) {
      std::vector<std::string> labels;
      for (const Monomial& m : b) labels.push_back(q.sc().render(m));
      v.spaces.push_back(make_space("S" + std::to_string(d), std::move(labels)));
    }
  }
  if (co.basis[1].size() != v.spaces[1]->dim())
    throw std::logic_error("degree 1 of the quotient does not match B");
  v.unit = q.as_a(q.reduce(SCElement::unit()));

  struct Job {
    BilinearMap* table;
    int n, p, q;  // n < 0: commutative product
    std::size_t row;
  };
  for (int p = 0; p < top; ++p) v.d.emplace_back(v.spaces[static_cast<std::size_t>(p)], v.spaces[static_cast<std::size_t>(p) + 1]);
  for (int p = 0; p <= top; ++p)
    for (int r = 0; r <= top; ++r) {
      const auto sp = v.spaces[static_cast<std::size_t>(p)];
      const auto sr = v.spaces[static_cast<std::size_t>(r)];
      if (p + r <= top)
        v.mult.emplace(std::pair{p, r}, BilinearMap(sp, sr, v.spaces[static_cast<std::size_t>(p + r)]));
      for (int n = 0; n <= p + r - 1; ++n) {
        const int t = p + r - n - 1;
        if (t > top) continue;
        v.prod.emplace(std::tuple{n, p, r}, BilinearMap(sp, sr, v.spaces[static_cast<std::size_t>(t)]));
      }
    }
  v.mult.at({0, 0}).set_symmetry(Symmetry::symmetric);
  v.prod.at({1, 1, 1}).set_symmetry(Symmetry::symmetric);

  std::vector<Job> jobs;
  for (auto& [key, table] : v.mult)
    for (std::size_t i = 0; i < table.left()->dim(); ++i) jobs.push_back({&table, -1, key.first, key.second, i});
  for (auto& [key, table] : v.prod)
    for (std::size_t i = 0; i < table.left()->dim(); ++i)
      jobs.push_back({&table, std::get<0>(key), std::get<1>(key), std::get<2>(key), i});

  const long n_jobs = static_cast<long>(jobs.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic) num_threads(exec.resolved())
  for (long k = 0; k < n_jobs; ++k) {
    try {
      const Job& job = jobs[static_cast<std::size_t>(k)];
      const SBElement x = co.element(job.p, job.row);
      const int t = job.n < 0 ? job.p + job.q : job.p + job.q - job.n - 1;
      for (std::size_t j = 0; j < job.table->right()->dim(); ++j) {
        const SBElement y = co.element(job.q, j);
        const SBElement r = job.n < 0 ? q.multiply(x, y) : q.product(job.n, x, y);
        job.table->set(job.row, j, co.coords(t, r));
      }
    } catch (...) {
#pragma omp critical(cvpa_view_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  for (int p = 0; p < top; ++p)
    for (std::size_t i = 0; i < v.spaces[static_cast<std::size_t>(p)]->dim(); ++i)
      v.d[static_cast<std::size_t>(p)].set_column(i, co.coords(p + 1, q.d(co.element(p, i))));
  return v;
}

CheckReport check_view_grading(const GradedVpaView& v) {
  CheckReport r;
  const int top = v.top();
  auto space = [&](int d) -> SpaceRef {
    return d >= 0 && d <= top ? v.spaces[static_cast<std::size_t>(d)] : nullptr;
  };
  ++r.checked;
  if (top < 1) {
    r.add(Violation{kModule, "grading", {"spaces"}, std::to_string(v.spaces.size()) + " degrees", "at least 2"});
    return r;
  }
  for (int d = 0; d <= top; ++d) {
    ++r.checked;
    if (!space(d)) r.add(Violation{kModule, "grading", {"space(" + std::to_string(d) + ")"}, "missing", "a space"});
  }
  ++r.checked;
  if (v.d.size() != static_cast<std::size_t>(top))
    r.add(Violation{kModule, "grading", {"d"}, std::to_string(v.d.size()) + " maps", std::to_string(top) + " maps"});
  for (std::size_t p = 0; p < v.d.size() && p < static_cast<std::size_t>(top); ++p) {
    ++r.checked;
    const LinearMap& m = v.d[p];
    if (!same_space(m.domain(), space(static_cast<int>(p))) || !same_space(m.codomain(), space(static_cast<int>(p) + 1)))
      r.add(Violation{kModule, "grading", {"d(" + std::to_string(p) + ")"},
                      (m.domain() ? m.domain()->name : "?") + " -> " + (m.codomain() ? m.codomain()->name : "?"),
                      space(static_cast<int>(p))->name + " -> " + space(static_cast<int>(p) + 1)->name});
  }
  for (int p = 0; p <= top; ++p)
    for (int q = 0; q <= top; ++q) {
      if (p + q <= top) {
        ++r.checked;
        const BilinearMap* m = v.find_mult(p, q);
        const std::string want = wiring(space(p), space(q), space(p + q));
        if (!m)
          r.add(Violation{kModule, "grading", {mult_name(p, q)}, "missing", want});
        else if (!same_space(m->left(), space(p)) || !same_space(m->right(), space(q)) ||
                 !same_space(m->codomain(), space(p + q)))
          r.add(Violation{kModule, "grading", {mult_name(p, q)}, wiring(m->left(), m->right(), m->codomain()), want});
      }
      for (int n = 0; n <= p + q - 1; ++n) {
        const int t = p + q - n - 1;
        if (t > top) continue;
        ++r.checked;
        const BilinearMap* m = v.find_prod(n, p, q);
        const std::string want = wiring(space(p), space(q), space(t));
        if (!m)
          r.add(Violation{kModule, "grading", {prod_name(n, p, q)}, "missing", want});
        else if (!same_space(m->left(), space(p)) || !same_space(m->right(), space(q)) ||
                 !same_space(m->codomain(), space(t)))
          r.add(Violation{kModule, "grading", {prod_name(n, p, q)}, wiring(m->left(), m->right(), m->codomain()),
                          want});
      }
    }
  for (const auto& [key, m] : v.mult) {
    const auto [p, q] = key;
    if (p < 0 || q < 0 || p + q > top)
      r.add(Violation{kModule, "grading", {mult_name(p, q)}, "present", "no such degree"});
  }
  for (const auto& [key, m] : v.prod) {
    const auto [n, p, q] = key;
    if (n < 0 || p < 0 || q < 0 || n > p + q - 1 || p + q - n - 1 > top)
      r.add(Violation{kModule, "grading", {prod_name(n, p, q)}, "present", "no such degree"});
  }
  ++r.checked;
  for (const auto& [k, x] : v.unit.entries())
    if (k >= space(0)->dim()) {
      r.add(Violation{kModule, "grading", {"unit"}, "index " + std::to_string(k), "degree 0"});
      break;
    }
  r.sort();
  return r;
}

namespace {

// Evaluation inside the truncation. nullopt: the result would land above top.
class Eval {
 public:
  explicit Eval(const GradedVpaView& v) : v_(v), top_(v.top()) {}

  int top() const { return top_; }
  std::size_t dim(int d) const { return v_.spaces[static_cast<std::size_t>(d)]->dim(); }
  const BasedSpace& space(int d) const { return *v_.spaces[static_cast<std::size_t>(d)]; }

  std::optional<SparseVec> mult(int p, int q, const SparseVec& x, const SparseVec& y) const {
    if (p + q > top_) return std::nullopt;
    return v_.find_mult(p, q)->apply(x, y);
  }
  std::optional<SparseVec> prod(int n, int p, int q, const SparseVec& x, const SparseVec& y) const {
    if (n < 0) return std::nullopt;
    const int t = p + q - n - 1;
    if (t < 0) return SparseVec{};
    if (t > top_) return std::nullopt;
    return v_.find_prod(n, p, q)->apply(x, y);
  }
  std::optional<SparseVec> d(int p, const SparseVec& x) const {
    if (p + 1 > top_) return std::nullopt;
    return v_.d[static_cast<std::size_t>(p)].apply(x);
  }

 private:
  const GradedVpaView& v_;
  int top_;
};

std::string label(const Eval& e, int d, std::size_t i) { return e.space(d).basis[i]; }

void expect(CheckReport& r, const Eval& e, const char* axiom, std::vector<std::string> tuple, int degree,
            const SparseVec& lhs, const SparseVec& rhs) {
  ++r.checked;
  if (lhs == rhs) return;
  r.add(Violation{kModule, axiom, std::move(tuple), render(lhs, e.space(degree)), render(rhs, e.space(degree))});
}

// Degree-0 algebra: unit, commutativity, associativity.
void check_degree0(CheckReport& r, const Eval& e, const SparseVec& unit, std::size_t i) {
  const auto a = SparseVec::basis(static_cast<std::uint32_t>(i));
  expect(r, e, "unit", {label(e, 0, i)}, 0, *e.mult(0, 0, unit, a), a);
  for (std::size_t j = 0; j < e.dim(0); ++j) {
    const auto b = SparseVec::basis(static_cast<std::uint32_t>(j));
    expect(r, e, "comm", {label(e, 0, i), label(e, 0, j)}, 0, *e.mult(0, 0, a, b), *e.mult(0, 0, b, a));
    for (std::size_t k = 0; k < e.dim(0); ++k) {
      const auto c = SparseVec::basis(static_cast<std::uint32_t>(k));
      expect(r, e, "assoc", {label(e, 0, i), label(e, 0, j), label(e, 0, k)}, 0,
             *e.mult(0, 0, *e.mult(0, 0, a, b), c), *e.mult(0, 0, a, *e.mult(0, 0, b, c)));
    }
  }
}

}  // namespace

CheckReport check_view(const GradedVpaView& v, const Exec& exec) {
  CheckReport shape = check_view_grading(v);
  if (!shape.passed()) return shape;
  const Eval e(v);
  const int top = e.top();
  std::vector<std::pair<int, std::size_t>> firsts;
  for (int p = 0; p <= top; ++p)
    for (std::size_t i = 0; i < e.dim(p); ++i) firsts.emplace_back(p, i);

  CheckReport out = collect(firsts.size(), exec, [&](std::size_t f, CheckReport& r) {
    const auto [p, i] = firsts[f];
    const auto u = SparseVec::basis(static_cast<std::uint32_t>(i));
    const std::string lu = label(e, p, i);
    if (p == 0) check_degree0(r, e, v.unit, i);
    if (p > 0) expect(r, e, "unit", {lu}, p, *e.mult(0, p, v.unit, u), u);

    for (int q = 0; q <= top; ++q)
      for (std::size_t j = 0; j < e.dim(q); ++j) {
        const auto w = SparseVec::basis(static_cast<std::uint32_t>(j));
        const std::string lw = label(e, q, j);
        if (auto uw = e.mult(p, q, u, w)) {
          expect(r, e, "comm", {lu, lw}, p + q, *uw, *e.mult(q, p, w, u));
          // D(uw) = (Du)w + u(Dw)
          if (auto duw = e.d(p + q, *uw))
            expect(r, e, "d_leibniz", {lu, lw}, p + q + 1, *duw,
                   *e.mult(p + 1, q, *e.d(p, u), w) + *e.mult(p, q + 1, u, *e.d(q, w)));
        }
        const auto du = e.d(p, u);
        const auto dw = e.d(q, w);
        for (int n = 0; n <= p + q; ++n) {
          const std::string ln = "n=" + std::to_string(n);
          const int t = p + q - n - 1;
          // (Du)_n w = -n u_(n-1) w
          if (du)
            if (auto lhs = e.prod(n, p + 1, q, *du, w))
              if (auto rhs = n == 0 ? std::optional<SparseVec>(SparseVec{}) : e.prod(n - 1, p, q, u, w))
                expect(r, e, "d_comm", {lu, lw, ln}, p + q - n, *lhs, rhs->scaled(-n));
          // D(u_n w) = (Du)_n w + u_n(Dw)
          if (t >= 0 && t + 1 <= top && du && dw) {
            const SparseVec lhs = *e.d(t, *e.prod(n, p, q, u, w));
            const auto a1 = e.prod(n, p + 1, q, *du, w);
            const auto a2 = e.prod(n, p, q + 1, u, *dw);
            if (a1 && a2) expect(r, e, "d_product", {lu, lw, ln}, t + 1, lhs, *a1 + *a2);
          }
        }
        // u_n (w x) = (u_n w) x + w (u_n x)
        for (int s = 0; q + s <= top; ++s)
          for (std::size_t k = 0; k < e.dim(s); ++k) {
            const auto x = SparseVec::basis(static_cast<std::uint32_t>(k));
            const SparseVec wx = *e.mult(q, s, w, x);
            for (int n = 0; n <= p + q + s - 1; ++n) {
              const int t = p + q + s - n - 1;
              if (t > top) continue;
              auto lhs = e.prod(n, p, q + s, u, wx);
              auto uw = e.prod(n, p, q, u, w);
              auto ux = e.prod(n, p, s, u, x);
              if (!lhs || !uw || !ux) continue;
              const int tw = p + q - n - 1;
              const int tx = p + s - n - 1;
              SparseVec rhs;
              if (tw >= 0) rhs += *e.mult(tw, s, *uw, x);
              if (tx >= 0) rhs += *e.mult(q, tx, w, *ux);
              expect(r, e, "hd", {lu, lw, label(e, s, k), "n=" + std::to_string(n)}, t, *lhs, rhs);
            }
          }
      }

    // (au)_0 a' = a(u_0 a')
    if (p == 1)
      for (std::size_t j = 0; j < e.dim(0); ++j)
        for (std::size_t k = 0; k < e.dim(0); ++k) {
          const auto a = SparseVec::basis(static_cast<std::uint32_t>(j));
          const auto a2 = SparseVec::basis(static_cast<std::uint32_t>(k));
          expect(r, e, "dera1", {label(e, 0, j), lu, label(e, 0, k)}, 0, *e.prod(0, 1, 0, *e.mult(0, 1, a, u), a2),
                 *e.mult(0, 0, a, *e.prod(0, 1, 0, u, a2)));
        }
  });
  out.merge(shape);
  out.sort();
  return out;
}

CourantAlgebroid extract_courant(const GradedVpaView& v) {
  CheckReport pre = check_view_grading(v);
  if (pre.passed()) {
    const Eval e(v);
    for (std::size_t i = 0; i < e.dim(0); ++i) check_degree0(pre, e, v.unit, i);
  }
  if (!pre.passed()) throw AxiomError("graded view is not a graded commutative algebra", pre);

  CourantAlgebroid x;
  x.algebra.space = v.spaces[0];
  x.algebra.mult = *v.find_mult(0, 0);
  x.algebra.mult.set_symmetry(Symmetry::symmetric);
  x.algebra.unit = v.unit;
  x.module = v.spaces[1];
  x.action = *v.find_mult(0, 1);
  x.bracket = *v.find_prod(0, 1, 1);
  x.anchor = *v.find_prod(0, 1, 0);
  x.pairing = *v.find_prod(1, 1, 1);
  x.pairing.set_symmetry(Symmetry::symmetric);
  x.partial = v.d[0];
  return x;
}

}  // namespace cvpa
