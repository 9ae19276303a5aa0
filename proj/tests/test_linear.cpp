#include <gtest/gtest.h>

#include "cvpa/linear.hpp"

using namespace cvpa;

TEST(Scalar, ArithmeticIsExact) {
  EXPECT_EQ(Scalar(1, 2) + Scalar(1, 3), Scalar(5, 6));
  EXPECT_EQ(Scalar(2, 4), Scalar(1, 2));
  EXPECT_EQ(Scalar(-3, -6), Scalar(1, 2));
  EXPECT_EQ(Scalar(1, 3) * Scalar(3), Scalar(1));
  EXPECT_EQ(Scalar(1) / Scalar(-4), Scalar(-1, 4));
  EXPECT_EQ(Scalar(7, 3).str(), "7/3");
  EXPECT_EQ(Scalar(-2).str(), "-2");
}

TEST(Scalar, PromotesPastSixtyFourBits) {
  const Scalar big = Scalar(1LL << 62) * Scalar(1LL << 62);
  const mpq_class want = mpq_class(mpz_class(1) << 124);
  EXPECT_EQ(big.to_mpq(), want);
  EXPECT_EQ(big / Scalar(1LL << 62), Scalar(1LL << 62));
  EXPECT_EQ((big - big).str(), "0");
}

TEST(Scalar, Parse) {
  EXPECT_EQ(Scalar::parse("-3/4"), Scalar(-3, 4));
  EXPECT_EQ(Scalar::parse("12"), Scalar(12));
  EXPECT_THROW(Scalar::parse("1/0"), std::domain_error);
  EXPECT_THROW(Scalar::parse("1.5"), std::invalid_argument);
  EXPECT_THROW(Scalar::parse(""), std::invalid_argument);
}

TEST(Combinatorics, SmallValues) {
  EXPECT_EQ(factorial(5), Scalar(120));
  EXPECT_EQ(binomial(6, 2), Scalar(15));
  EXPECT_EQ(binomial(3, 5), Scalar(0));
  EXPECT_EQ(falling_factorial(5, 2), Scalar(20));
}

TEST(SparseVec, KeepsSortedZeroFreeEntries) {
  SparseVec v;
  v.add_term(3, 2);
  v.add_term(1, 1);
  v.add_term(3, -2);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v.entries().front().first, 1u);
  EXPECT_TRUE((v - v).empty());
}

TEST(Spaces, RenderAndMismatch) {
  const SpaceRef s = make_space("V", {"a", "b"});
  SparseVec v = SparseVec::basis(0, Scalar(-1, 2));
  v.add_term(1, 1);
  EXPECT_EQ(render(v, *s), "-1/2*a + b");
  EXPECT_THROW(make_space("W", {"a", "a"}), std::invalid_argument);
  const SpaceRef t = make_space("V", {"a", "b"});
  EXPECT_TRUE(same_space(s, t));
  EXPECT_FALSE(same_space(s, make_space("U", {"a", "b"})));
  EXPECT_THROW(map_apply(LinearMap(s, s), Vector::basis(make_space("U", {"a"}), 0)), SpaceMismatch);
}

TEST(Rank, ExactGaussianElimination) {
  // rows (1,2,3), (2,4,6), (0,1,1): rank 2
  std::vector<SparseVec> rows(3);
  for (int j = 0; j < 3; ++j) {
    rows[0].add_term(j, j + 1);
    rows[1].add_term(j, 2 * (j + 1));
  }
  rows[2].add_term(1, 1);
  rows[2].add_term(2, 1);
  EXPECT_EQ(rank(rows), 2u);
  EXPECT_EQ(rank({}), 0u);
}

TEST(BilinearMap, SymmetryViolations) {
  const SpaceRef s = make_space("V", {"a", "b"});
  BilinearMap m(s, s, s, Symmetry::symmetric);
  m.set(0, 1, SparseVec::basis(0));
  ASSERT_EQ(m.symmetry_violations().size(), 1u);
  m.set(1, 0, SparseVec::basis(0));
  EXPECT_TRUE(m.symmetry_violations().empty());
  EXPECT_EQ(m.apply(SparseVec::basis(0), SparseVec::basis(1)), SparseVec::basis(0));
}
