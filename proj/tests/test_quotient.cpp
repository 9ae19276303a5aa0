#include <gtest/gtest.h>

#include "cvpa/quotient.hpp"

using namespace cvpa;

TEST(Quotient, ExactTwoReductions) {
  const QuotientSB q(exact_example(2), 3);
  const VertexLieC& c = q.vlie();
  const GenId x = c.a_gen(1);
  const GenId dx = c.b_gen(0, 1);
  const GenId ddx = c.b_gen(1, 1);
  SBElement want;
  want.add_monomial({dx, dx}, -1);
  EXPECT_EQ(q.reduce(SCElement::monomial({x, ddx})), want);
  EXPECT_TRUE(q.reduce(SCElement::monomial({dx, dx, dx})).is_zero());
  // e is the unit, x e = x
  EXPECT_EQ(q.reduce(SCElement::monomial({c.a_gen(0), x})), q.from_a(SparseVec::basis(1)));
  EXPECT_EQ(q.reduce(SCElement::unit()), q.from_a(SparseVec::basis(0)));
}

TEST(Quotient, RelationRanks) {
  const QuotientSB q2(exact_example(2), 3);
  const QuotientSB q3(exact_example(3), 3);
  const std::vector<std::size_t> r2{0, 0, 0, 3}, r3{0, 0, 4, 23};
  for (int d = 0; d <= 3; ++d) {
    EXPECT_EQ(q2.relation_rank(d), r2[d]) << d;
    EXPECT_EQ(q3.relation_rank(d), r3[d]) << d;
  }
  const QuotientSB h(heisenberg_example(), 3);
  for (int d = 0; d <= 3; ++d) EXPECT_EQ(h.relation_rank(d), 0u);
}

TEST(Quotient, HeisenbergProducts) {
  const QuotientSB q(heisenberg_example(), 3);
  const SBElement b = q.from_b(SparseVec::basis(0));
  const SBElement e = q.from_a(SparseVec::basis(0));
  const SBElement db = q.d(b);
  EXPECT_EQ(q.product(1, b, b), e);
  EXPECT_EQ(q.as_a(q.product(2, db, b)), SparseVec::basis(0, -2));
  EXPECT_EQ(q.as_a(q.product(2, b, db)), SparseVec::basis(0, 2));
  EXPECT_EQ(q.degree(q.multiply(b, db)), 3);
  EXPECT_THROW(q.as_a(b), std::logic_error);
  EXPECT_THROW(q.as_b(e), std::logic_error);
}

TEST(Quotient, IdealIsStable) {
  for (const auto& name : example_names()) {
    const QuotientSB q(example(name), 3);
    const CheckReport r = check_ideal_stability(q);
    EXPECT_TRUE(r.passed()) << name << "\n" << format_report(r);
  }
}

TEST(Quotient, ReductionIsCanonical) {
  for (const char* name : {"exact(3)", "quadratic_lie(sl2)", "heisenberg"}) {
    const QuotientSB q(example(name), 3);
    const auto corpus = random_corpus(q.sc(), 200, 7);
    EXPECT_EQ(corpus.size(), 200u);
    const CheckReport r = check_reduction(q, corpus);
    EXPECT_TRUE(r.passed()) << name << "\n" << format_report(r);
  }
}

TEST(Quotient, LowDegreesAreAAndB) {
  for (const auto& name : example_names()) {
    const CourantAlgebroid x = example(name);
    const QuotientSB q(x, 3);
    EXPECT_EQ(quotient_dimension(q, 0), x.a_space()->dim()) << name;
    EXPECT_EQ(quotient_dimension(q, 1), x.b_space()->dim()) << name;
    EXPECT_EQ(normal_monomials(q, 1).size(), x.b_space()->dim()) << name;
  }
}

TEST(Quotient, RoundTrip) {
  const RoundtripResult rt = roundtrip(sl2_example(), 3);
  EXPECT_TRUE(rt.report.passed());
  EXPECT_EQ(rt.summary, "A: 1/1 tables equal; B: 4/4 tables equal; module: 1/1 tables equal");
  EXPECT_EQ(rt.extracted, sl2_example());
  for (const auto& name : example_names()) EXPECT_TRUE(roundtrip_check(example(name), 3).passed()) << name;
}

TEST(Quotient, SerialAndParallelAgree) {
  const QuotientSB a(exact_example(3), 3, Exec::serial());
  const QuotientSB b(exact_example(3), 3, Exec{4});
  for (int d = 0; d <= 3; ++d) EXPECT_EQ(a.relation_rank(d), b.relation_rank(d));
  const auto corpus = random_corpus(a.sc(), 100, 3);
  for (const auto& u : corpus) EXPECT_EQ(a.reduce(u), b.reduce(u));
  EXPECT_EQ(check_ideal_stability(a, Exec::serial()), check_ideal_stability(a, Exec{4}));
}
