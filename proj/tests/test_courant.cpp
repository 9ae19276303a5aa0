#include <gtest/gtest.h>

#include "cvpa/courant.hpp"

using namespace cvpa;

namespace {

// trace(ad_u ad_v), straight from the bracket table
Scalar killing(const CourantAlgebroid& x, std::size_t u, std::size_t v) {
  const std::size_t n = x.module->dim();
  Scalar tr = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const SparseVec w = x.bracket.at(v, k);
    const SparseVec uw = x.bracket.apply(SparseVec::basis(u), w);
    tr += uw.at(static_cast<std::uint32_t>(k));
  }
  return tr;
}

std::size_t idx(const SpaceRef& s, const std::string& label) { return s->index_of(label).value(); }

}  // namespace

TEST(Examples, AllPassTheAxioms) {
  for (const auto& name : example_names()) {
    const CourantAlgebroid x = example(name);
    EXPECT_NO_THROW(x.validate()) << name;
    const CheckReport r = check_courant(x);
    EXPECT_TRUE(r.passed()) << name << "\n" << format_report(r);
    EXPECT_GT(r.checked, 0u) << name;
    EXPECT_TRUE(check_annihilation(x).passed()) << name;
    EXPECT_TRUE(check_compat(x).passed()) << name;
  }
}

TEST(Examples, Sl2PairingIsTheKillingForm) {
  const CourantAlgebroid x = sl2_example();
  const std::size_t e = idx(x.a_space(), "e");
  for (std::size_t u = 0; u < 3; ++u)
    for (std::size_t v = 0; v < 3; ++v) {
      SparseVec want;
      want.add_term(static_cast<std::uint32_t>(e), killing(x, u, v));
      EXPECT_EQ(x.pairing.at(u, v), want) << u << "," << v;
    }
  const SpaceRef& b = x.b_space();
  EXPECT_EQ(killing(x, idx(b, "E"), idx(b, "F")), Scalar(4));
  EXPECT_EQ(killing(x, idx(b, "H"), idx(b, "H")), Scalar(8));
}

TEST(Examples, ExactTwoByHand) {
  const CourantAlgebroid x = exact_example(2);
  const SpaceRef& a = x.a_space();
  const SpaceRef& b = x.b_space();
  ASSERT_EQ(a->basis, (std::vector<std::string>{"e", "x"}));
  ASSERT_EQ(b->basis, (std::vector<std::string>{"x.del", "dx"}));
  const auto xi = static_cast<std::uint32_t>(idx(a, "x"));
  const auto xd = idx(b, "x.del");
  const auto dx = static_cast<std::uint32_t>(idx(b, "dx"));
  EXPECT_EQ(x.bracket.at(xd, dx), SparseVec::basis(dx));
  // [dx, x.del] = -[x.del, dx] + d<x.del, dx> = 0
  EXPECT_TRUE(x.bracket.at(dx, xd).empty());
  EXPECT_EQ(x.anchor.at(xd, xi), SparseVec::basis(xi));
  EXPECT_TRUE(x.anchor.at(dx, xi).empty());
  EXPECT_EQ(x.pairing.at(xd, dx), SparseVec::basis(xi));
  EXPECT_TRUE(x.pairing.at(xd, xd).empty());
  EXPECT_EQ(x.partial.column(xi), SparseVec::basis(dx));
  // x^2 = 0 in the truncation
  EXPECT_TRUE(x.algebra.mult.at(xi, xi).empty());
}

TEST(Examples, ExactThreeSpaces) {
  const CourantAlgebroid x = exact_example(3);
  EXPECT_EQ(x.a_space()->basis, (std::vector<std::string>{"e", "x", "x^2"}));
  EXPECT_EQ(x.b_space()->basis, (std::vector<std::string>{"x.del", "x^2.del", "dx", "x.dx"}));
}

TEST(Examples, UnknownName) {
  EXPECT_THROW(example("exact(9)"), std::invalid_argument);
  EXPECT_THROW(example("nope"), std::invalid_argument);
}

TEST(Checker, BracketMutantFails) {
  CourantAlgebroid x = sl2_example();
  const SpaceRef& b = x.b_space();
  const std::size_t e = idx(b, "E"), f = idx(b, "F");
  SparseVec v = x.bracket.at(e, f);
  v.add_term(static_cast<std::uint32_t>(e), 1);
  x.bracket.set(e, f, v);
  x.bracket.set(f, e, v.scaled(-1));
  const CheckReport r = check_courant(x);
  EXPECT_FALSE(r.passed());
  EXPECT_THROW(to_1tca(x), AxiomError);
}

TEST(Checker, PairingMutantBreaksInvariance) {
  CourantAlgebroid x = sl2_example();
  const SpaceRef& b = x.b_space();
  const std::size_t h = idx(b, "H");
  x.pairing.set(h, h, SparseVec::basis(0, 9));
  const CheckReport r = check_courant(x);
  EXPECT_FALSE(r.passed());
  for (const auto& v : r.violations()) EXPECT_FALSE(v.lhs == v.rhs);
}

TEST(Checker, AnchorMutantOnExact) {
  CourantAlgebroid x = exact_example(2);
  const std::size_t dx = idx(x.b_space(), "dx");
  x.anchor.set(dx, idx(x.a_space(), "x"), SparseVec::basis(0));
  EXPECT_FALSE(check_courant(x).passed());
}

TEST(Checker, SerialAndParallelAgree) {
  CourantAlgebroid x = exact_example(3);
  x.bracket.set(0, 1, SparseVec::basis(2, Scalar(1, 3)));
  const CheckReport s = check_courant(x, Exec::serial());
  const CheckReport p = check_courant(x, Exec{4});
  EXPECT_FALSE(s.passed());
  EXPECT_EQ(s, p);
  EXPECT_EQ(s.checked, p.checked);
}

TEST(Checker, WrongWiringThrows) {
  CourantAlgebroid x = sl2_example();
  x.pairing = BilinearMap(x.b_space(), x.b_space(), x.b_space(), Symmetry::symmetric);
  EXPECT_THROW(x.validate(), SpaceMismatch);
}
