#include <gtest/gtest.h>

#include "cvpa/courant.hpp"
#include "cvpa/symmetric.hpp"

using namespace cvpa;

namespace {

std::shared_ptr<const VertexLieC> vlie(const CourantAlgebroid& x, int cutoff) {
  return std::make_shared<const VertexLieC>(to_1tca(x), cutoff);
}

}  // namespace

TEST(Symmetric, HeisenbergProducts) {
  const SymmetricAlgebra s(vlie(heisenberg_example(), 3));
  const GenId e = s.vlie().a_gen(0);
  const GenId b = s.vlie().b_gen(0, 0);
  const SCElement bb = SCElement::monomial({b, b});
  EXPECT_EQ(s.degree(bb), 2);
  // beta_1 (beta beta) = 2 e beta
  EXPECT_EQ(s.product(1, SCElement::monomial({b}), bb), SCElement::monomial({e, b}, 2));
  // D(beta beta) = 2 beta Dbeta
  EXPECT_EQ(s.d(bb), SCElement::monomial({b, s.vlie().b_gen(1, 0)}, 2));
  EXPECT_EQ(s.multiply(SCElement::unit(), bb), bb);
  EXPECT_TRUE(s.product(0, SCElement::unit(), bb).is_zero());
}

TEST(Symmetric, MonomialsAreSorted) {
  const SymmetricAlgebra s(vlie(heisenberg_example(), 3));
  const GenId e = s.vlie().a_gen(0);
  const GenId b = s.vlie().b_gen(0, 0);
  EXPECT_EQ(s.multiply(SCElement::monomial({b}), SCElement::monomial({e})), SCElement::monomial({e, b}));
}

TEST(Symmetric, VpaAxiomsHold) {
  for (const char* name : {"heisenberg", "quadratic_lie(sl2)", "exact(2)", "trivial(1)"}) {
    const SymmetricAlgebra s(vlie(example(name), 3));
    const CheckReport r = check_vpa(s);
    EXPECT_TRUE(r.passed()) << name << "\n" << format_report(r);
    EXPECT_GT(r.checked, 0u);
  }
}

TEST(Symmetric, SerialAndParallelAgree) {
  const SymmetricAlgebra s(vlie(exact_example(2), 3));
  const CheckReport a = check_vpa(s, Exec::serial());
  const CheckReport b = check_vpa(s, Exec{4});
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.checked, b.checked);
}
