#include "cvpa/acceptance.hpp"

#include <chrono>
#include <functional>
#include <set>
#include <sstream>

#include "cvpa/graded_view.hpp"
#include "cvpa/quotient.hpp"
#include "cvpa/symmetric.hpp"
#include "cvpa/tca.hpp"
#include "cvpa/vlie.hpp"

namespace cvpa {

std::size_t MutationSummary::detected() const {
  std::size_t n = 0;
  for (const auto& m : mutations) n += m.detected ? 1 : 0;
  return n;
}

std::vector<std::string> MutationSummary::tables_hit() const {
  std::set<std::string> hit;
  for (const auto& m : mutations)
    if (m.detected) hit.insert(m.table);
  return {hit.begin(), hit.end()};
}

namespace {

struct Site {
  std::string table;
  std::size_t i, j, k;
};

template <class X>
auto& table_of(X& x, const std::string& t) {
  if (t == "mult") return x.algebra.mult;
  if (t == "action") return x.action;
  if (t == "bracket") return x.bracket;
  if (t == "anchor") return x.anchor;
  return x.pairing;
}

std::string describe(const CourantAlgebroid& x, const Site& s, const Scalar& delta) {
  const SparseVec dv = SparseVec::basis(static_cast<std::uint32_t>(s.k), delta);
  if (s.table == "unit") return "unit += " + render(dv, *x.a_space());
  if (s.table == "partial")
    return "partial(" + x.a_space()->basis[s.i] + ") += " + render(dv, *x.b_space());
  const BilinearMap& m = table_of(x, s.table);
  return s.table + "(" + m.left()->basis[s.i] + "," + m.right()->basis[s.j] + ") += " + render(dv, *m.codomain());
}

CourantAlgebroid mutate(const CourantAlgebroid& x, const Site& s, const Scalar& delta) {
  CourantAlgebroid y = x;
  const SparseVec dv = SparseVec::basis(static_cast<std::uint32_t>(s.k), delta);
  if (s.table == "unit") {
    y.algebra.unit += dv;
  } else if (s.table == "partial") {
    y.partial.set_column(s.i, y.partial.column(s.i) + dv);
  } else {
    BilinearMap& m = table_of(y, s.table);
    m.set(s.i, s.j, m.at(s.i, s.j) + dv);
    if (m.symmetry() == Symmetry::symmetric && s.i != s.j) m.set(s.j, s.i, m.at(s.j, s.i) + dv);
  }
  return y;
}

CheckReport full_check(const CourantAlgebroid& x, const Exec& exec) {
  CheckReport r = check_courant(x, exec);
  r.merge(check_compat(x, exec));
  r.merge(check_annihilation(x, exec));
  r.sort();
  return r;
}

bool all_zero(const BilinearMap& m) {
  for (std::size_t i = 0; i < m.left()->dim(); ++i)
    for (std::size_t j = 0; j < m.right()->dim(); ++j)
      if (!m.at(i, j).empty()) return false;
  return true;
}

bool all_zero(const LinearMap& m) {
  for (std::size_t i = 0; i < m.domain()->dim(); ++i)
    if (!m.column(i).empty()) return false;
  return true;
}

// With bracket, anchor and d all zero, every axiom that mentions the
// pairing reads 0 = 0, so any symmetric pairing gives a Courant algebroid.
bool pairing_is_free(const CourantAlgebroid& x) {
  return all_zero(x.bracket) && all_zero(x.anchor) && all_zero(x.partial);
}

bool is_fault(const CourantAlgebroid& x, const Mutation& m) { return !(m.table == "pairing" && pairing_is_free(x)); }

using Clock = std::chrono::steady_clock;

CriterionResult timed(int id, std::string title, const std::function<bool(std::string&)>& body) {
  CriterionResult r;
  r.id = id;
  r.title = std::move(title);
  r.limit = kCriterionLimit[id];
  const auto t0 = Clock::now();
  bool ok = false;
  try {
    ok = body(r.detail);
  } catch (const std::exception& e) {
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  r.passed = ok && r.seconds < r.limit;
  if (ok && !r.passed) r.detail += "; over the time limit";
  return r;
}

std::string first_violation(const std::string& example, const CheckReport& r) {
  if (r.passed()) return {};
  const Violation& v = r.violations().front();
  std::string t;
  for (const auto& s : v.tuple) t += (t.empty() ? "" : ", ") + s;
  return example + ": [" + v.module + "] " + v.axiom + " at (" + t + "): " + v.lhs + " != " + v.rhs;
}

bool is_exact_or_lie(const std::string& name) { return name.rfind("exact", 0) == 0 || name.rfind("quadratic", 0) == 0; }

}  // namespace

MutationSummary mutation_suite(const CourantAlgebroid& x, const Exec& exec) {
  std::vector<Site> sites;
  for (const char* t : {"mult", "action", "bracket", "anchor", "pairing"}) {
    const BilinearMap& m = table_of(x, t);
    for (std::size_t i = 0; i < m.left()->dim(); ++i)
      for (std::size_t j = 0; j < m.right()->dim(); ++j) {
        if (m.symmetry() == Symmetry::symmetric && j < i) continue;
        for (std::size_t k = 0; k < m.codomain()->dim(); ++k) sites.push_back({t, i, j, k});
      }
  }
  for (std::size_t i = 0; i < x.a_space()->dim(); ++i)
    for (std::size_t k = 0; k < x.b_space()->dim(); ++k) sites.push_back({"partial", i, 0, k});
  for (std::size_t k = 0; k < x.a_space()->dim(); ++k) sites.push_back({"unit", 0, 0, k});

  std::vector<Scalar> deltas{Scalar(1), Scalar(-1)};
  if (sites.size() * 2 < 40) {
    deltas.push_back(Scalar(2));
    deltas.push_back(Scalar(-1, 2));
  }
  MutationSummary out;
  for (const Site& s : sites)
    for (const Scalar& d : deltas) {
      Mutation m{s.table, describe(x, s, d), false, {}};
      const CheckReport r = full_check(mutate(x, s, d), exec);
      m.detected = !r.passed();
      for (const auto& a : r.axioms()) m.axioms.push_back(a);
      out.mutations.push_back(std::move(m));
    }
  return out;
}

CriterionResult criterion_courant_suite(const Exec& exec) {
  return timed(1, "Courant axiom suite", [&](std::string& detail) {
    std::size_t faults = 0, valid = 0;
    for (const auto& name : example_names()) {
      const CourantAlgebroid x = example(name);
      const CheckReport base = full_check(x, exec);
      if (!base.passed()) {
        detail = first_violation(name, base);
        return false;
      }
      const MutationSummary s = mutation_suite(x, exec);
      std::size_t ex_faults = 0;
      for (const auto& m : s.mutations) {
        if (!is_fault(x, m)) {
          ++valid;
          if (m.detected) {
            detail = name + ": valid mutant rejected: " + m.site;
            return false;
          }
          continue;
        }
        ++ex_faults;
        if (!m.detected) {
          detail = name + ": undetected mutation " + m.site;
          return false;
        }
      }
      if (ex_faults < 20) {
        detail = name + ": only " + std::to_string(ex_faults) + " faulty mutants";
        return false;
      }
      faults += ex_faults;
    }
    detail = std::to_string(example_names().size()) + " examples pass; " + std::to_string(faults) + "/" +
             std::to_string(faults) + " mutations detected; " + std::to_string(valid) +
             " pairing mutants with zero bracket, anchor and d are valid and pass";
    return true;
  });
}

CriterionResult criterion_bridge(const Exec& exec) {
  return timed(2, "bridge equivalence", [&](std::string& detail) {
    for (const auto& name : example_names()) {
      const CourantAlgebroid x = example(name);
      const OneTruncatedConformalAlgebra t = to_1tca(x, exec);
      CheckReport r = check_tca(t, exec);
      r.merge(check_leibniz_form(t, exec));
      if (!r.passed()) {
        detail = first_violation(name, r);
        return false;
      }
      if (!(from_1tca(t, x.algebra, x.action, exec) == x)) {
        detail = name + ": from_1tca(to_1tca(X)) differs from X";
        return false;
      }
    }
    detail = "to_1tca passes the tca checks and from_1tca inverts it on " + std::to_string(example_names().size()) +
             " examples";
    return true;
  });
}

CriterionResult criterion_vertex_lie(const Exec& exec) {
  return timed(3, "vertex Lie certification, cutoff 4", [&](std::string& detail) {
    std::size_t checked = 0;
    for (const auto& name : example_names()) {
      const VertexLieC c(to_1tca(example(name), exec), 4);
      CheckReport r = check_vertex_lie(c, exec);
      r.merge(check_oracle_agreement(c, exec));
      if (!r.passed()) {
        detail = first_violation(name, r);
        return false;
      }
      checked += r.checked;
    }
    detail = std::to_string(checked) + " identities, including oracle agreement";
    return true;
  });
}

CriterionResult criterion_vpa(const Exec& exec) {
  return timed(4, "vertex Poisson certification", [&](std::string& detail) {
    std::size_t checked = 0;
    std::string cut;
    for (const auto& name : example_names()) {
      const int cutoff = is_exact_or_lie(name) ? 3 : 4;
      const SymmetricAlgebra s(std::make_shared<const VertexLieC>(to_1tca(example(name), exec), cutoff));
      const CheckReport r = check_vpa(s, exec);
      if (!r.passed()) {
        detail = first_violation(name, r);
        return false;
      }
      checked += r.checked;
      cut += (cut.empty() ? "" : ", ") + name + "@" + std::to_string(cutoff);
    }
    detail = std::to_string(checked) + " identities (" + cut + ")";
    return true;
  });
}

CriterionResult criterion_ideal(const Exec& exec) {
  return timed(5, "ideal stability, cutoff 3", [&](std::string& detail) {
    std::size_t checked = 0;
    for (const auto& name : example_names()) {
      const QuotientSB q(example(name), 3, exec);
      const CheckReport r = check_ideal_stability(q, exec);
      if (!r.passed()) {
        detail = first_violation(name, r);
        return false;
      }
      checked += r.checked;
    }
    detail = std::to_string(checked) + " reductions vanish";
    return true;
  });
}

CriterionResult criterion_quotient_shape(const Exec& exec) {
  return timed(6, "quotient shape, cutoff 3", [&](std::string& detail) {
    std::size_t checked = 0;
    for (const auto& name : example_names()) {
      const CourantAlgebroid x = example(name);
      const QuotientSB q(x, 3, exec);
      const std::size_t d0 = quotient_dimension(q, 0), d1 = quotient_dimension(q, 1);
      if (d0 != x.a_space()->dim() || d1 != x.b_space()->dim()) {
        detail = name + ": dims " + std::to_string(d0) + "/" + std::to_string(d1) + ", expected " +
                 std::to_string(x.a_space()->dim()) + "/" + std::to_string(x.b_space()->dim());
        return false;
      }
      const CheckReport r = check_reduction(q, random_corpus(q.sc(), 500, 42), exec);
      if (!r.passed()) {
        detail = first_violation(name, r);
        return false;
      }
      checked += r.checked;
    }
    detail = "dimensions of degrees 0 and 1 match; " + std::to_string(checked) + " corpus identities";
    return true;
  });
}

CriterionResult criterion_roundtrip(const Exec& exec) {
  return timed(7, "round trip, cutoff 3", [&](std::string& detail) {
    for (const auto& name : example_names()) {
      const CourantAlgebroid x = example(name);
      const RoundtripResult rt = roundtrip(x, 3, exec);
      if (!rt.report.passed()) {
        detail = first_violation(name, rt.report) + " (" + rt.summary + ")";
        return false;
      }
      const QuotientSB q(x, 3, exec);
      const GradedVpaView v = build_view(q, 2, exec);
      const CheckReport vr = check_view(v, exec);
      if (!vr.passed()) {
        detail = first_violation(name, vr);
        return false;
      }
      const CourantAlgebroid y = extract_courant(v);
      if (!(y == x)) {
        detail = name + ": extract_courant differs from the input";
        return false;
      }
      const CheckReport cr = check_courant(y, exec);
      if (!cr.passed()) {
        detail = first_violation(name, cr);
        return false;
      }
    }
    detail = "A: 1/1, B: 4/4, module: 1/1 tables equal on every example; graded view extracts the input";
    return true;
  });
}

std::vector<CriterionResult> run_acceptance(const Exec& exec) {
  return {criterion_courant_suite(exec), criterion_bridge(exec),         criterion_vertex_lie(exec),
          criterion_vpa(exec),           criterion_ideal(exec),          criterion_quotient_shape(exec),
          criterion_roundtrip(exec)};
}

std::string format_result(const CriterionResult& r) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(2);
  out << "criterion " << r.id << " " << (r.passed ? "PASS" : "FAIL") << "  " << r.title << "  (" << r.seconds
      << " s / " << static_cast<int>(r.limit) << " s)  " << r.detail;
  return out.str();
}

}  // namespace cvpa
