#include <gtest/gtest.h>

#include <algorithm>

#include "cvpa/graded_view.hpp"

using namespace cvpa;

namespace {

bool mentions(const CheckReport& r, const std::string& axiom, const std::string& tuple0) {
  return std::any_of(r.violations().begin(), r.violations().end(), [&](const Violation& v) {
    return v.axiom == axiom && !v.tuple.empty() && v.tuple.front() == tuple0;
  });
}

}  // namespace

TEST(GradedView, Dimensions) {
  const GradedVpaView v3 = build_view(QuotientSB(exact_example(3), 3), 3);
  std::vector<std::size_t> dims;
  for (const auto& s : v3.spaces) dims.push_back(s->dim());
  EXPECT_EQ(dims, (std::vector<std::size_t>{3, 4, 10, 17}));
  const GradedVpaView s3 = build_view(QuotientSB(sl2_example(), 3), 3);
  dims.clear();
  for (const auto& s : s3.spaces) dims.push_back(s->dim());
  EXPECT_EQ(dims, (std::vector<std::size_t>{1, 3, 9, 22}));
  EXPECT_EQ(s3.spaces[2]->name, "S2");
}

TEST(GradedView, ExtractionRecoversTheInput) {
  for (const auto& name : example_names()) {
    const CourantAlgebroid x = example(name);
    const GradedVpaView v = build_view(QuotientSB(x, 3), 2);
    EXPECT_TRUE(check_view_grading(v).passed()) << name;
    const CheckReport r = check_view(v);
    EXPECT_TRUE(r.passed()) << name << "\n" << format_report(r);
    EXPECT_EQ(extract_courant(v), x) << name;
  }
}

TEST(GradedView, AnchorMutationIsCaught) {
  for (const auto& name : example_names()) {
    GradedVpaView v = build_view(QuotientSB(example(name), 3), 2);
    if (v.spaces[1]->dim() == 0) continue;
    BilinearMap& anchor = v.prod.at({0, 1, 0});
    const std::size_t e = v.unit.entries().front().first;
    anchor.set(0, e, anchor.at(0, e) + SparseVec::basis(static_cast<std::uint32_t>(e)));
    EXPECT_TRUE(check_view(v).has_axiom("hd")) << name;
    const CourantAlgebroid x = extract_courant(v);
    EXPECT_TRUE(check_courant(x).has_axiom("c1")) << name;
  }
}

TEST(GradedView, MissingProductIsAShapeError) {
  GradedVpaView v = build_view(QuotientSB(heisenberg_example(), 3), 2);
  v.prod.erase({0, 1, 1});
  const CheckReport r = check_view_grading(v);
  EXPECT_TRUE(mentions(r, "grading", "prod(0,1,1)")) << format_report(r);
  EXPECT_THROW(extract_courant(v), AxiomError);
}

TEST(GradedView, MiswiredProductIsAShapeError) {
  GradedVpaView v = build_view(QuotientSB(heisenberg_example(), 3), 2);
  const auto& s = v.spaces;
  v.mult.at({0, 1}) = BilinearMap(s[0], s[1], s[2]);
  EXPECT_TRUE(mentions(check_view_grading(v), "grading", "mult(0,1)"));
}

TEST(GradedView, SerialAndParallelAgree) {
  const QuotientSB q(exact_example(3), 3);
  const GradedVpaView a = build_view(q, 3, Exec::serial());
  const GradedVpaView b = build_view(q, 3, Exec{4});
  EXPECT_EQ(a, b);
  EXPECT_EQ(check_view(a, Exec::serial()), check_view(a, Exec{4}));
}
