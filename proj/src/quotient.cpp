#include "cvpa/quotient.hpp"

#include <map>
#include <random>
#include <stdexcept>

namespace cvpa {

namespace {

constexpr const char* kModule = "quotient";
constexpr std::size_t kStepBound = 50'000'000;

Monomial drop(const Monomial& m, std::size_t i) {
  Monomial out;
  for (std::size_t k = 0; k < m.size(); ++k)
    if (k != i) out.push_back(m[k]);
  return out;
}

Monomial drop2(const Monomial& m, std::size_t i, std::size_t j) {
  Monomial out;
  for (std::size_t k = 0; k < m.size(); ++k)
    if (k != i && k != j) out.push_back(m[k]);
  return out;
}

Monomial with(Monomial m, std::initializer_list<GenId> gens) {
  for (GenId g : gens) m.insert(std::upper_bound(m.begin(), m.end(), g), g);
  return m;
}

}  // namespace

void SBElement::add_monomial(const Monomial& m, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = monomials.try_emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) monomials.erase(it);
  }
}

QuotientSB::QuotientSB(const CourantAlgebroid& x, int cutoff, const Exec& exec)
    : QuotientSB(std::make_shared<const SymmetricAlgebra>(
                     std::make_shared<const VertexLieC>(to_1tca(x, exec), cutoff)),
                 x.algebra, x.action, exec) {}

QuotientSB::QuotientSB(std::shared_ptr<const SymmetricAlgebra> sc, UnitalCommAlgebra algebra, BilinearMap action,
                       const Exec& exec)
    : sc_(std::move(sc)), algebra_(std::move(algebra)), action_(std::move(action)) {
  const auto& t = sc_->vlie().tca();
  if (!same_space(algebra_.space, t.c0) || !same_space(action_.left(), t.c0) || !same_space(action_.right(), t.c1) ||
      !same_space(action_.codomain(), t.c1))
    throw SpaceMismatch("quotient: algebra and action must live on C0 and C1");
  const auto& u = algebra_.unit.entries();
  if (u.size() == 1 && u.front().second == Scalar(1)) {
    unit_is_basis_ = true;
    unit_index_ = u.front().first;
  }
  complete(exec);
}

SBElement QuotientSB::rewrite(const SCElement& u, RewriteOrder order) const {
  const VertexLieC& c = vlie();
  const LinearMap& partial = c.tca().partial;
  const bool left = order == RewriteOrder::leftmost;
  SBElement out;
  SCElement work = u;
  std::size_t steps = 0;
  while (!work.is_zero()) {
    if (++steps > kStepBound) throw std::logic_error("rewriting exceeded its step bound");
    auto first = work.terms.begin();
    const Monomial m = first->first;
    const Scalar coeff = first->second;
    work.terms.erase(first);

    // A-factors sit before every B-factor in the sorted monomial
    std::size_t na = 0;
    while (na < m.size() && c.is_a(m[na])) ++na;
    if (na == 0) {
      if (m.empty())
        out.a_part.add_scaled(algebra_.unit, coeff);
      else
        out.add_monomial(m, coeff);
      continue;
    }
    if (na == 1 && m.size() == 1) {
      out.a_part.add_term(m[0], coeff);
      continue;
    }

    // drop a unit factor
    if (unit_is_basis_) {
      std::size_t hit = m.size();
      for (std::size_t k = 0; k < na; ++k)
        if (m[k] == unit_index_ && (hit == m.size() || !left)) hit = k;
      if (hit < m.size()) {
        work.add(drop(m, hit), coeff);
        continue;
      }
    }

    // fuse two A-factors
    if (na >= 2) {
      const std::size_t i = left ? 0 : na - 2;
      const SparseVec prod = algebra_.mult.at(m[i], m[i + 1]);
      const Monomial rest = drop2(m, i, i + 1);
      for (const auto& [k, x] : prod.entries()) work.add(with(rest, {k}), coeff * x);
      continue;
    }

    // one A-factor a against a B-factor D^n b
    const GenId a = m[0];
    const std::size_t bi = left ? 1 : m.size() - 1;
    const int n = c.shift(m[bi]);
    const std::size_t b = c.base_index(m[bi]);
    const Monomial rest = drop2(m, 0, bi);
    for (const auto& [k, x] : action_.at(a, b).entries()) work.add(with(rest, {c.b_gen(n, k)}), coeff * x);
    const SparseVec& da = partial.column(a);
    for (int i = 1; i <= n; ++i) {
      const Scalar w = coeff * binomial(n, i);
      for (const auto& [k, x] : da.entries()) work.add(with(rest, {c.b_gen(i - 1, k), c.b_gen(n - i, b)}), -(w * x));
    }
  }
  return out;
}

namespace {

// Subtracts relations from the largest pivot downwards; each step only
// introduces smaller monomials.
void eliminate(SCElement& v, const std::map<Monomial, SCElement>& rows) {
  auto& t = v.terms;
  auto it = t.end();
  while (it != t.begin()) {
    --it;
    auto row = rows.find(it->first);
    if (row == rows.end()) continue;
    const Monomial key = it->first;
    v.add_scaled(row->second, -it->second);
    it = t.lower_bound(key);
  }
}

void b_monomials(const VertexLieC& c, int max_degree, std::size_t from, Monomial& cur, int deg,
                 std::vector<Monomial>& out) {
  out.push_back(cur);
  for (std::size_t g = from; g < c.num_generators(); ++g) {
    const auto id = static_cast<GenId>(g);
    if (c.is_a(id) || deg + c.degree(id) > max_degree) continue;
    cur.push_back(id);
    b_monomials(c, max_degree, g, cur, deg + c.degree(id), out);
    cur.pop_back();
  }
}

}  // namespace

// Relations among normal forms: rewrite(s w D^k g) for g in E0 + E1, w a
// B-monomial and s either 1 or an A basis vector. Fusing A-factors first
// makes rewrite(a1...aj w D^k g) a combination of these, so together they
// span rewrite(I_B) degree by degree.
void QuotientSB::complete(const Exec& exec) {
  const VertexLieC& c = vlie();
  const int cut = cutoff();
  std::vector<std::pair<SCElement, int>> seeds;
  for (auto& g : e0()) seeds.emplace_back(std::move(g), 0);
  for (auto& g : e1()) seeds.emplace_back(std::move(g), 1);
  const std::size_t n_gen = seeds.size();
  for (std::size_t i = 0; i < n_gen; ++i) {
    SCElement g = seeds[i].first;
    for (int deg = seeds[i].second + 1; deg <= cut; ++deg) {
      g = sc_->d(g);
      seeds.emplace_back(g, deg);
    }
  }
  std::vector<Monomial> words;
  Monomial cur;
  b_monomials(c, cut, 0, cur, 0, words);

  struct Task {
    std::size_t seed, word;
    int prefix;  // -1 for none
  };
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < seeds.size(); ++i)
    for (std::size_t w = 0; w < words.size(); ++w) {
      if (seeds[i].second + sc_->degree(words[w]) > cut) continue;
      for (int p = -1; p < static_cast<int>(c.dim_a()); ++p) tasks.push_back({i, w, p});
    }

  std::vector<SCElement> rel(tasks.size());
  const long n = static_cast<long>(tasks.size());
#pragma omp parallel for schedule(dynamic, 16) num_threads(exec.resolved())
  for (long t = 0; t < n; ++t) {
    const Task& task = tasks[static_cast<std::size_t>(t)];
    Monomial m = words[task.word];
    if (task.prefix >= 0) m = with(m, {static_cast<GenId>(task.prefix)});
    rel[static_cast<std::size_t>(t)] = lift(rewrite(sc_->multiply(SCElement::monomial(m), seeds[task.seed].first)));
  }

  for (SCElement& v : rel) {
    eliminate(v, relations_);
    if (v.is_zero()) continue;
    auto lead = std::prev(v.terms.end());
    const Monomial key = lead->first;
    const Scalar inv = Scalar(1) / lead->second;
    v = v.scaled(inv);
    relations_.emplace(key, std::move(v));
  }
}

SBElement QuotientSB::reduce(const SCElement& u, RewriteOrder order) const {
  SBElement r = rewrite(u, order);
  if (relations_.empty()) return r;
  SCElement v = lift(r);
  eliminate(v, relations_);
  SBElement out;
  for (const auto& [m, x] : v.terms) {
    if (m.size() == 1 && vlie().is_a(m[0]))
      out.a_part.add_term(m[0], x);
    else
      out.add_monomial(m, x);
  }
  return out;
}

std::size_t QuotientSB::relation_rank(int d) const {
  std::size_t n = 0;
  for (const auto& [m, row] : relations_)
    if (sc_->degree(m) == d) ++n;
  return n;
}

SCElement QuotientSB::lift(const SBElement& u) const {
  SCElement out;
  for (const auto& [k, x] : u.a_part.entries()) out.add({k}, x);
  for (const auto& [m, x] : u.monomials) out.add(m, x);
  return out;
}

SBElement QuotientSB::from_a(const SparseVec& a) const {
  SBElement out;
  out.a_part = a;
  return out;
}

SBElement QuotientSB::from_b(const SparseVec& b) const {
  SBElement out;
  for (const auto& [k, x] : b.entries()) out.add_monomial({vlie().b_gen(0, k)}, x);
  return out;
}

SparseVec QuotientSB::as_a(const SBElement& u) const {
  if (!u.monomials.empty()) throw std::logic_error("quotient element " + render(u) + " is not of degree 0");
  return u.a_part;
}

SparseVec QuotientSB::as_b(const SBElement& u) const {
  if (!u.a_part.empty()) throw std::logic_error("quotient element " + render(u) + " is not of degree 1");
  SparseVec out;
  for (const auto& [m, x] : u.monomials) {
    if (m.size() != 1 || vlie().degree(m[0]) != 1)
      throw std::logic_error("quotient element " + render(u) + " is not of degree 1");
    out.add_term(static_cast<std::uint32_t>(vlie().base_index(m[0])), x);
  }
  return out;
}

SBElement QuotientSB::multiply(const SBElement& u, const SBElement& v) const {
  return reduce(sc_->multiply(lift(u), lift(v)));
}

SBElement QuotientSB::d(const SBElement& u) const { return reduce(sc_->d(lift(u))); }

SBElement QuotientSB::product(int n, const SBElement& u, const SBElement& v) const {
  return reduce(sc_->product(n, lift(u), lift(v)));
}

std::vector<SCElement> QuotientSB::e0() const {
  std::vector<SCElement> out;
  SCElement unit = SCElement::unit().scaled(-1);
  for (const auto& [k, x] : algebra_.unit.entries()) unit.add({k}, x);
  out.push_back(unit);
  const std::size_t na = algebra_.space->dim();
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = i; j < na; ++j) {
      SCElement g = SCElement::monomial({static_cast<GenId>(i), static_cast<GenId>(j)});
      for (const auto& [k, x] : algebra_.mult.at(i, j).entries()) g.add({k}, -x);
      out.push_back(std::move(g));
    }
  return out;
}

std::vector<SCElement> QuotientSB::e1() const {
  std::vector<SCElement> out;
  const VertexLieC& c = vlie();
  for (std::size_t i = 0; i < c.dim_a(); ++i)
    for (std::size_t j = 0; j < c.dim_b(); ++j) {
      SCElement g = SCElement::monomial({static_cast<GenId>(i), c.b_gen(0, j)});
      for (const auto& [k, x] : action_.at(i, j).entries()) g.add({c.b_gen(0, k)}, -x);
      out.push_back(std::move(g));
    }
  return out;
}

std::string QuotientSB::render(const SBElement& u) const {
  if (u.is_zero()) return "0";
  std::string out = u.a_part.empty() ? "" : cvpa::render(u.a_part, *algebra_.space);
  for (const auto& [m, x] : u.monomials) {
    Scalar mag = x.sign() < 0 ? -x : x;
    if (out.empty())
      out += x.sign() < 0 ? "-" : "";
    else
      out += x.sign() < 0 ? " - " : " + ";
    if (mag != Scalar(1)) out += mag.str() + "*";
    out += sc_->render(m);
  }
  return out;
}

int QuotientSB::degree(const SBElement& u) const {
  int d = u.a_part.empty() ? -1 : 0;
  for (const auto& [m, x] : u.monomials) {
    const int dm = sc_->degree(m);
    if (d >= 0 && dm != d) throw std::invalid_argument("quotient element is not homogeneous");
    d = dm;
  }
  return d;
}

namespace {

void expect_zero(CheckReport& r, const QuotientSB& q, const char* axiom, std::vector<std::string> tuple,
                 const SBElement& value) {
  ++r.checked;
  if (value.is_zero()) return;
  r.add(Violation{kModule, axiom, std::move(tuple), q.render(value), "0"});
}

}  // namespace

CheckReport check_ideal_stability(const QuotientSB& q, const Exec& exec) {
  const VertexLieC& c = q.vlie();
  const SymmetricAlgebra& s = q.sc();
  const int cut = q.cutoff();
  std::vector<SCElement> gens = q.e0();
  const std::size_t n0 = gens.size();
  for (auto& g : q.e1()) gens.push_back(std::move(g));

  std::vector<GenId> base;
  for (std::size_t i = 0; i < c.dim_a(); ++i) base.push_back(c.a_gen(i));
  for (std::size_t j = 0; j < c.dim_b(); ++j) base.push_back(c.b_gen(0, j));

  return collect(gens.size(), exec, [&](std::size_t gi, CheckReport& r) {
    const SCElement& g = gens[gi];
    const int dg = gi < n0 ? 0 : 1;
    const std::string lg = (gi < n0 ? "E0[" : "E1[") + std::to_string(gi < n0 ? gi : gi - n0) + "]: " + s.render(g);
    if (dg + 1 <= cut) expect_zero(r, q, "ideal_d", {"D", lg}, q.reduce(s.d(g)));
    for (GenId u : base) {
      const int du = c.degree(u);
      const SCElement eu = SCElement::monomial({u});
      for (int n = std::max(0, du + dg - 1 - cut); n <= du + dg - 1; ++n)
        expect_zero(r, q, "ideal_product", {c.label(u), lg, "n=" + std::to_string(n)},
                    q.reduce(s.product(n, eu, g)));
    }
  });
}

std::vector<SCElement> random_corpus(const SymmetricAlgebra& s, std::size_t count, std::uint64_t seed,
                                     int max_factors) {
  std::mt19937_64 rng(seed);
  const auto ngen = static_cast<GenId>(s.vlie().num_generators());
  std::uniform_int_distribution<GenId> pick_gen(0, ngen - 1);
  std::uniform_int_distribution<int> pick_len(0, max_factors);
  std::uniform_int_distribution<int> pick_terms(1, 4);
  std::uniform_int_distribution<int> pick_num(-3, 3);
  std::uniform_int_distribution<int> pick_den(1, 3);
  std::vector<SCElement> out;
  out.reserve(count);
  while (out.size() < count) {
    SCElement u;
    const int terms = pick_terms(rng);
    for (int t = 0; t < terms; ++t) {
      Monomial m;
      const int len = pick_len(rng);
      for (int k = 0; k < len; ++k) m.push_back(pick_gen(rng));
      std::sort(m.begin(), m.end());
      if (s.degree(m) > s.cutoff()) continue;
      int num = pick_num(rng);
      if (num == 0) num = 1;
      u.add(m, Scalar(num, pick_den(rng)));
    }
    if (!u.is_zero()) out.push_back(std::move(u));
  }
  return out;
}

CheckReport check_reduction(const QuotientSB& q, const std::vector<SCElement>& corpus, const Exec& exec) {
  const SymmetricAlgebra& s = q.sc();
  return collect(corpus.size(), exec, [&](std::size_t i, CheckReport& r) {
    const SCElement& u = corpus[i];
    const std::string tag = "corpus[" + std::to_string(i) + "]: " + s.render(u);
    const SBElement left = q.reduce(u, RewriteOrder::leftmost);
    const SBElement right = q.reduce(u, RewriteOrder::rightmost);
    ++r.checked;
    if (left != right) r.add(Violation{kModule, "confluence", {tag}, q.render(left), q.render(right)});
    const SBElement again = q.reduce(q.lift(left));
    ++r.checked;
    if (again != left) r.add(Violation{kModule, "idempotent", {tag}, q.render(again), q.render(left)});

    std::map<int, SCElement> parts;
    for (const auto& [m, x] : u.terms) parts[s.degree(m)].add(m, x);
    for (const auto& [d, part] : parts) {
      const SBElement red = q.reduce(part);
      SBElement off;
      if (d != 0) off.a_part = red.a_part;
      for (const auto& [m, x] : red.monomials)
        if (s.degree(m) != d) off.add_monomial(m, x);
      ++r.checked;
      if (!off.is_zero())
        r.add(Violation{kModule, "degree", {tag, "degree=" + std::to_string(d)}, q.render(off), "0"});
    }
  });
}

std::vector<Monomial> normal_monomials(const QuotientSB& q, int d) {
  std::vector<Monomial> all, out;
  Monomial cur;
  b_monomials(q.vlie(), d, 0, cur, 0, all);
  for (const Monomial& m : all) {
    if (m.empty() || q.sc().degree(m) != d) continue;
    const SBElement r = q.reduce(SCElement::monomial(m));
    if (r.a_part.empty() && r.monomials.size() == 1 && r.monomials.begin()->first == m) out.push_back(m);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t quotient_dimension(const QuotientSB& q, int d) {
  const SymmetricAlgebra& s = q.sc();
  const std::size_t na = q.vlie().dim_a();
  std::map<Monomial, std::uint32_t> index;
  std::vector<SparseVec> rows;
  for (const Monomial& m : s.spanning_monomials(3)) {
    if (s.degree(m) != d) continue;
    const SBElement red = q.reduce(SCElement::monomial(m));
    SparseVec row = red.a_part;
    for (const auto& [mono, x] : red.monomials) {
      auto [it, fresh] = index.try_emplace(mono, static_cast<std::uint32_t>(na + index.size()));
      row.add_term(it->second, x);
    }
    rows.push_back(std::move(row));
  }
  return rank(std::move(rows));
}

CourantAlgebroid extract_degree01(const QuotientSB& q) {
  const OneTruncatedConformalAlgebra& t = q.vlie().tca();
  const SpaceRef& a = t.c0;
  const SpaceRef& b = t.c1;
  const std::size_t na = a->dim();
  const std::size_t nb = b->dim();
  auto ea = [&](std::size_t i) { return q.from_a(SparseVec::basis(static_cast<std::uint32_t>(i))); };
  auto eb = [&](std::size_t i) { return q.from_b(SparseVec::basis(static_cast<std::uint32_t>(i))); };

  CourantAlgebroid x;
  x.algebra.space = a;
  x.algebra.mult = BilinearMap(a, a, a, Symmetry::symmetric);
  x.algebra.unit = q.as_a(q.reduce(SCElement::unit()));
  x.module = b;
  x.action = BilinearMap(a, b, b);
  x.bracket = BilinearMap(b, b, b);
  x.anchor = BilinearMap(b, a, a);
  x.pairing = BilinearMap(b, b, a, Symmetry::symmetric);
  x.partial = LinearMap(a, b);
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < na; ++j) x.algebra.mult.set(i, j, q.as_a(q.multiply(ea(i), ea(j))));
    for (std::size_t u = 0; u < nb; ++u) {
      x.action.set(i, u, q.as_b(q.multiply(ea(i), eb(u))));
      x.anchor.set(u, i, q.as_a(q.product(0, eb(u), ea(i))));
    }
    x.partial.set_column(i, q.as_b(q.d(ea(i))));
  }
  for (std::size_t u = 0; u < nb; ++u)
    for (std::size_t v = 0; v < nb; ++v) {
      x.bracket.set(u, v, q.as_b(q.product(0, eb(u), eb(v))));
      x.pairing.set(u, v, q.as_a(q.product(1, eb(u), eb(v))));
    }
  return x;
}

namespace {

bool compare_table(CheckReport& r, const char* name, const BilinearMap& got, const BilinearMap& want) {
  bool equal = true;
  for (std::size_t i = 0; i < want.left()->dim(); ++i)
    for (std::size_t j = 0; j < want.right()->dim(); ++j) {
      ++r.checked;
      if (got.at(i, j) == want.at(i, j)) continue;
      equal = false;
      r.add(Violation{"roundtrip", name, {want.left()->basis[i], want.right()->basis[j]},
                      render(got.at(i, j), *want.codomain()), render(want.at(i, j), *want.codomain())});
    }
  return equal;
}

bool compare_map(CheckReport& r, const char* name, const LinearMap& got, const LinearMap& want) {
  bool equal = true;
  for (std::size_t i = 0; i < want.domain()->dim(); ++i) {
    ++r.checked;
    if (got.column(i) == want.column(i)) continue;
    equal = false;
    r.add(Violation{"roundtrip", name, {want.domain()->basis[i]}, render(got.column(i), *want.codomain()),
                    render(want.column(i), *want.codomain())});
  }
  return equal;
}

}  // namespace

RoundtripResult roundtrip(const CourantAlgebroid& x, int cutoff, const Exec& exec) {
  RoundtripResult out;
  CheckReport& r = out.report;
  QuotientSB q(x, cutoff, exec);
  out.extracted = extract_degree01(q);
  const CourantAlgebroid& y = out.extracted;

  const int a_ok = compare_table(r, "mult", y.algebra.mult, x.algebra.mult) ? 1 : 0;
  ++r.checked;
  if (y.algebra.unit != x.algebra.unit)
    r.add(Violation{"roundtrip", "unit", {}, render(y.algebra.unit, *x.a_space()),
                    render(x.algebra.unit, *x.a_space())});
  int b_ok = 0;
  b_ok += compare_table(r, "bracket", y.bracket, x.bracket) ? 1 : 0;
  b_ok += compare_table(r, "anchor", y.anchor, x.anchor) ? 1 : 0;
  b_ok += compare_table(r, "pairing", y.pairing, x.pairing) ? 1 : 0;
  b_ok += compare_map(r, "partial", y.partial, x.partial) ? 1 : 0;
  const int m_ok = compare_table(r, "action", y.action, x.action) ? 1 : 0;

  for (int d = 0; d <= 1; ++d) {
    const std::size_t want = d == 0 ? x.a_space()->dim() : x.b_space()->dim();
    const std::size_t got = quotient_dimension(q, d);
    ++r.checked;
    if (got != want)
      r.add(Violation{"roundtrip", d == 0 ? "dim0" : "dim1", {"degree=" + std::to_string(d)}, std::to_string(got),
                      std::to_string(want)});
  }
  r.merge(check_courant(y, exec));
  r.sort();
  out.summary = "A: " + std::to_string(a_ok) + "/1 tables equal; B: " + std::to_string(b_ok) +
                "/4 tables equal; module: " + std::to_string(m_ok) + "/1 tables equal";
  return out;
}

CheckReport roundtrip_check(const CourantAlgebroid& x, int cutoff, const Exec& exec) {
  return roundtrip(x, cutoff, exec).report;
}

}  // namespace cvpa
