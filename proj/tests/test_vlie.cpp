#include <gtest/gtest.h>

#include "cvpa/courant.hpp"
#include "cvpa/vlie.hpp"

using namespace cvpa;

namespace {

VertexLieC make(const CourantAlgebroid& x, int cutoff) { return VertexLieC(to_1tca(x), cutoff); }

}  // namespace

TEST(VertexLie, GeneratorLayout) {
  const VertexLieC c = make(exact_example(2), 3);
  EXPECT_EQ(c.num_generators(), 2u + 3u * 2u);
  EXPECT_EQ(c.b_gen(0, 0), 2u);
  EXPECT_EQ(c.b_gen(2, 1), 2u + 2u * 2u + 1u);
  EXPECT_EQ(c.degree(c.b_gen(2, 1)), 3);
  EXPECT_EQ(c.dim_degree(0), 2u);
  EXPECT_EQ(c.dim_degree(1), 2u);
  EXPECT_EQ(c.dim_degree(3), 2u);
}

TEST(VertexLie, HeisenbergValues) {
  const VertexLieC c = make(heisenberg_example(), 4);
  const GenId beta = c.b_gen(0, 0);
  const GenId dbeta = c.b_gen(1, 0);
  const CElement e = c.gen(c.a_gen(0));
  EXPECT_EQ(c.product(1, c.gen(beta), c.gen(beta)), e);
  EXPECT_TRUE(c.product(0, c.gen(beta), c.gen(beta)).is_zero());
  EXPECT_EQ(c.product(2, c.gen(dbeta), c.gen(beta)), e.scaled(-2));
  EXPECT_EQ(c.product(2, c.gen(beta), c.gen(dbeta)), e.scaled(2));
  EXPECT_EQ(c.product(1, c.gen(dbeta), c.gen(beta)), CElement{});
  // [D, beta_1] beta = -beta_0 beta
  EXPECT_EQ(c.d_op(c.gen(beta)), c.gen(dbeta));
}

TEST(VertexLie, DOfAIsPartial) {
  const VertexLieC c = make(exact_example(2), 3);
  // D x = dx, which is generator b(0, 1)
  EXPECT_EQ(c.d_gen(c.a_gen(1)), c.gen(c.b_gen(0, 1)));
  EXPECT_TRUE(c.d_gen(c.a_gen(0)).is_zero());
}

TEST(VertexLie, AxiomsAndOracle) {
  for (const auto& name : example_names()) {
    const VertexLieC c = make(example(name), 3);
    EXPECT_TRUE(check_vertex_lie(c).passed()) << name;
    EXPECT_TRUE(check_oracle_agreement(c).passed()) << name;
  }
}

TEST(VertexLie, OracleMatchesClosedFormOnShifts) {
  const VertexLieC c = make(sl2_example(), 4);
  // u, v index A + B; E, F are 1, 2
  for (int m = 0; m < 2; ++m)
    for (int n = 0; n < 2; ++n)
      for (int i = 0; i <= m + n + 1; ++i)
        EXPECT_EQ(c.sing_oracle(1, m, 2, n, i), c.product(i, c.gen(c.b_gen(m, 0)), c.gen(c.b_gen(n, 1))))
            << m << " " << n << " " << i;
}

TEST(VertexLie, CutoffIsEnforced) {
  const VertexLieC c = make(heisenberg_example(), 2);
  EXPECT_THROW(c.b_gen(2, 0), CutoffError);
  EXPECT_THROW(c.d_gen(c.b_gen(1, 0)), CutoffError);
}

TEST(VertexLie, SerialAndParallelAgree) {
  const VertexLieC c = make(exact_example(3), 3);
  EXPECT_EQ(check_vertex_lie(c, Exec::serial()), check_vertex_lie(c, Exec{4}));
  EXPECT_EQ(check_oracle_agreement(c, Exec::serial()), check_oracle_agreement(c, Exec{4}));
}
