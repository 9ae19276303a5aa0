#include <gtest/gtest.h>

#include <filesystem>

#include "cvpa/format.hpp"

using namespace cvpa;

namespace {

std::string fixture(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

const char* kHeader = "SPACE A : e\nSPACE B : u\n";
const char* kTail =
    "STRUCTURE courant\n  A = A\n  B = B\n  mult = mult\n  unit = e\n  action = action\n"
    "  bracket = 0\n  anchor = 0\n  pairing = 0\n  partial = 0\nEND\n";

std::string with_body(const std::string& body) {
  return std::string(kHeader) + body + kTail;
}

const std::string kGoodBody =
    "PRODUCT mult A A -> A symmetric\n  (e,e) -> e\nEND\nPRODUCT action A B -> B\n  (e,u) -> u\nEND\n";

}  // namespace

TEST(Format, EveryFixtureIsAFixpoint) {
  int seen = 0;
  for (const auto& entry : std::filesystem::directory_iterator(FIXTURE_DIR)) {
    if (entry.path().extension() != ".cvpa") continue;
    ++seen;
    const StructureFile f = parse_file(entry.path().string());
    const std::string once = print(f);
    const std::string twice = print(parse(once, "again"));
    EXPECT_EQ(once, twice) << entry.path();
  }
  EXPECT_GE(seen, 10);
}

TEST(Format, FixturesMatchTheBuiltInExamples) {
  EXPECT_EQ(to_courant(parse_file(fixture("sl2.cvpa"))), sl2_example());
  EXPECT_EQ(to_courant(parse_file(fixture("exact3.cvpa"))), exact_example(3));
  EXPECT_EQ(to_courant(parse_file(fixture("heisenberg.cvpa"))), heisenberg_example());
  const StructureFile t = parse_file(fixture("sl2_1tca.cvpa"));
  EXPECT_EQ(to_tca(t), to_1tca(sl2_example()));
  ASSERT_TRUE(tca_extras(t).has_value());
}

TEST(Format, CourantObjectsSurviveText) {
  for (const auto& name : example_names()) {
    const CourantAlgebroid x = example(name);
    EXPECT_EQ(to_courant(parse(print(courant_file(x)))), x) << name;
    const OneTruncatedConformalAlgebra t = to_1tca(x);
    EXPECT_EQ(to_tca(parse(print(tca_file(t)))), t) << name;
  }
}

TEST(Format, ViewSurvivesText) {
  const GradedVpaView v = to_view(parse_file(fixture("heisenberg_view.cvpa")));
  EXPECT_EQ(v.top(), 2);
  EXPECT_EQ(to_view(parse(print(view_file(v)))), v);
  EXPECT_EQ(extract_courant(v), heisenberg_example());
}

TEST(Format, MinimalFileWithZeroModule) {
  const CourantAlgebroid x = to_courant(parse_file(fixture("minimal.cvpa")));
  EXPECT_EQ(x.b_space()->dim(), 0u);
  EXPECT_TRUE(check_courant(x).passed());
}

TEST(Format, BrokenFixtureFailsOnlyC5) {
  const CheckReport r = check_courant(to_courant(parse_file(fixture("broken_c5.cvpa"))));
  ASSERT_FALSE(r.passed());
  EXPECT_EQ(r.axioms(), std::set<std::string>{"c5"});
  EXPECT_EQ(r.violations().front().lhs, "2*y");
  EXPECT_EQ(r.violations().front().rhs, "0");
}

TEST(Format, ZeroDenominatorIsPositioned) {
  const std::string text = "SPACE A : e\nPRODUCT mult A A -> A\n(e,e) -> 1/0*e\nEND\n";
  try {
    parse(text, "bad.cvpa");
    FAIL() << "no error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.source(), "bad.cvpa");
    EXPECT_EQ(e.line(), 3);
    EXPECT_EQ(e.column(), 10);
    EXPECT_NE(e.message().find("zero denominator"), std::string::npos) << e.message();
    EXPECT_EQ(std::string(e.what()).rfind("bad.cvpa:3:10: ", 0), 0u) << e.what();
  }
}

TEST(Format, UnknownLabel) {
  try {
    parse("SPACE A : e\nMAP m A -> A\n  (q) -> e\nEND\n", "t");
    FAIL() << "no error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_GT(e.column(), 0);
  }
}

TEST(Format, UndefinedReference) {
  std::string text = with_body(kGoodBody);
  text.replace(text.find("bracket = 0"), 11, "bracket = nothere");
  try {
    to_courant(parse(text, "u.cvpa"));
    FAIL() << "no error";
  } catch (const ParseError& e) {
    EXPECT_NE(e.message().find("undefined product 'nothere'"), std::string::npos) << e.message();
    EXPECT_GT(e.line(), 0);
  }
}

TEST(Format, DimensionMismatch) {
  std::string text = with_body(kGoodBody);
  text.replace(text.find("bracket = 0"), 11, "bracket = mult");
  try {
    to_courant(parse(text, "m.cvpa"));
    FAIL() << "no error";
  } catch (const ParseError& e) {
    EXPECT_NE(e.message().find("dimension mismatch"), std::string::npos) << e.message();
  }
}

TEST(Format, MissingBinding) {
  std::string text = with_body(kGoodBody);
  text.erase(text.find("  partial = 0\n"), 14);
  EXPECT_THROW(to_courant(parse(text)), ParseError);
}

TEST(Format, SymmetricFlagFillsMirror) {
  const StructureFile f =
      parse("SPACE A : e x\nPRODUCT m A A -> A symmetric\n  (e,x) -> x\nEND\n");
  const BilinearMap* m = f.find_product("m");
  ASSERT_NE(m, nullptr);
  EXPECT_EQ(m->at(1, 0), SparseVec::basis(1));
}

TEST(Format, IndicesWorkAsKeys) {
  const StructureFile f = parse("SPACE A : e x\nMAP m A -> A\n  (1) -> 2*e - x\nEND\n");
  SparseVec want = SparseVec::basis(0, 2);
  want.add_term(1, -1);
  EXPECT_EQ(f.find_map("m")->column(1), want);
}

TEST(Format, MissingFile) {
  try {
    parse_file(fixture("does_not_exist.cvpa"));
    FAIL() << "no error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 0);
  }
}
