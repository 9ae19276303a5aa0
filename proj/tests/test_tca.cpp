#include <gtest/gtest.h>

#include "cvpa/courant.hpp"
#include "cvpa/tca.hpp"

using namespace cvpa;

TEST(Bridge, ExactTwoProducts) {
  const CourantAlgebroid x = exact_example(2);
  const OneTruncatedConformalAlgebra t = to_1tca(x);
  // C0 = {e, x}, C1 = {x.del, dx}
  const TcaElement xdel{{}, SparseVec::basis(0)};
  const TcaElement dx{{}, SparseVec::basis(1)};
  const TcaElement xa{SparseVec::basis(1), {}};
  EXPECT_EQ(tca_product(t, 1, xdel, dx), (TcaElement{SparseVec::basis(1), {}}));
  EXPECT_EQ(tca_product(t, 0, xdel, dx), (TcaElement{{}, SparseVec::basis(1)}));
  EXPECT_EQ(tca_product(t, 0, xdel, xa), (TcaElement{SparseVec::basis(1), {}}));
  EXPECT_EQ(tca_product(t, 0, xa, xdel), (TcaElement{SparseVec::basis(1, -1), {}}));
  EXPECT_TRUE(tca_product(t, 2, xdel, dx).is_zero());
  // u_0 v + v_0 u = d(u_1 v)
  const SparseVec total = tca_product(t, 0, xdel, dx).c1 + tca_product(t, 0, dx, xdel).c1;
  EXPECT_EQ(total, t.partial.apply(tca_product(t, 1, xdel, dx).c0));
}

TEST(Bridge, RoundTripsEveryExample) {
  for (const auto& name : example_names()) {
    const CourantAlgebroid x = example(name);
    const OneTruncatedConformalAlgebra t = to_1tca(x);
    EXPECT_TRUE(check_tca(t).passed()) << name;
    EXPECT_TRUE(check_leibniz_form(t).passed()) << name;
    EXPECT_EQ(from_1tca(t, x.algebra, x.action), x) << name;
  }
}

TEST(Bridge, BothFormsRejectTheSameMutant) {
  OneTruncatedConformalAlgebra t = to_1tca(sl2_example());
  t.p1_11.set(2, 2, SparseVec::basis(0, 7));
  EXPECT_FALSE(check_tca(t).passed());
  EXPECT_FALSE(check_leibniz_form(t).passed());
  const CourantAlgebroid x = sl2_example();
  EXPECT_THROW(from_1tca(t, x.algebra, x.action), AxiomError);
}

TEST(Bridge, ZeroStructureIsValid) {
  const auto t = OneTruncatedConformalAlgebra::zero(make_space("C0", {"a", "b"}), make_space("C1", {"u"}));
  EXPECT_NO_THROW(t.validate());
  EXPECT_TRUE(check_tca(t).passed());
  EXPECT_TRUE(check_leibniz_form(t).passed());
}

TEST(Bridge, SerialAndParallelAgree) {
  OneTruncatedConformalAlgebra t = to_1tca(exact_example(3));
  t.p0_11.set(1, 0, SparseVec::basis(3, 2));
  EXPECT_EQ(check_tca(t, Exec::serial()), check_tca(t, Exec{4}));
  EXPECT_EQ(check_leibniz_form(t, Exec::serial()), check_leibniz_form(t, Exec{4}));
}
