#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "lqi/error.hpp"
#include "lqi/parser.hpp"

using namespace lqi;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Parser, GoldenFile) {
  Program p = parse_program(read_file(std::string(LQI_TEST_DATA) + "/golden.lqi"));
  ASSERT_EQ(p.qualifiers.size(), 2u);
  EXPECT_EQ(to_string(p.qualifiers[0]), "(v>=0)");
  EXPECT_EQ(to_string(p.qualifiers[1]), "(v<=0)");
  ASSERT_EQ(p.bindings.size(), 2u);
  EXPECT_EQ(p.bindings[0].name, "mul");
  EXPECT_EQ(to_string(p.bindings[0].term), "\\x. * x x");
  EXPECT_EQ(p.bindings[1].name, "neg");
  EXPECT_EQ(to_string(p.bindings[1].term), "\\x. - x");
}

TEST(Parser, SingleLineProgram) {
  Program p = parse_program("Qualifiers { v >= 0, v <= 0 } val mul = \\x . * x x  val neg = \\x. - x");
  EXPECT_EQ(p.qualifiers.size(), 2u);
  EXPECT_EQ(p.bindings.size(), 2u);
}

TEST(Parser, EmptyQualifiers) {
  Program p = parse_program("Qualifiers { } val id = \\x. x");
  EXPECT_TRUE(p.qualifiers.empty());
  ASSERT_EQ(p.bindings.size(), 1u);
  EXPECT_EQ(p.bindings[0].name, "id");
}

TEST(Parser, EmptyProgram) {
  Program p = parse_program("");
  EXPECT_TRUE(p.bindings.empty());
  EXPECT_TRUE(p.qualifiers.empty());
}

TEST(Parser, DanglingBodyIsSyntaxError) {
  try {
    parse_program("Qualifiers { v >= 0 } val bad = \\x.");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1);
    EXPECT_GT(e.column(), 30);
  }
}

TEST(Parser, ErrorPositionsCountLines) {
  try {
    parse_program("Qualifiers { v >= 0 }\nval a = 1\nval b = (+ 1");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
  }
}

TEST(Parser, DuplicateBindingRejected) {
  EXPECT_THROW(parse_program("val a = 1 val a = 2"), ParseError);
}

TEST(Parser, Qualifiers) {
  EXPECT_EQ(to_string(parse_qualifier("v >= 0")), "(v>=0)");
  EXPECT_EQ(to_string(parse_qualifier("y = 5")), "(y=5)");
  EXPECT_THROW(parse_qualifier("v + "), ParseError);
  EXPECT_THROW(parse_qualifier("v >= 0 && v <= 1"), ParseError);
  EXPECT_THROW(parse_program("Qualifiers { v + 1 } val a = 1"), ParseError);
}

TEST(Parser, BindersMadeUnique) {
  Program p = parse_program("val x = 1 val f = \\x. let x = x in x");
  const Term& lam = *p.bindings[1].term;
  ASSERT_EQ(lam.kind, Term::Kind::Lam);
  EXPECT_NE(lam.name, "x");
  ASSERT_EQ(lam.first->kind, Term::Kind::Let);
  EXPECT_NE(lam.first->name, lam.name);
  EXPECT_NE(lam.first->name, "x");
}

TEST(Parser, LaterBindingsSeeEarlierOnes) {
  Program p = parse_program("val a = 1 val b = + a a");
  EXPECT_EQ(free_vars(*p.bindings[1].term), (std::set<std::string>{"a"}));
}

TEST(Parser, PrimitivesAndLiterals) {
  EXPECT_EQ(to_string(parse_term("if (<= 1 2) true false")), "if (<= 1 2) true false");
  EXPECT_EQ(to_string(parse_term("- -3")), "- -3");
  EXPECT_EQ(to_string(parse_term("sub 4 1")), "sub 4 1");
  EXPECT_EQ(to_string(parse_term("neg 4")), "- 4");
  EXPECT_EQ(to_string(parse_term("fix (\\f. \\n. n)")), "fix (\\f. \\n. n)");
}

TEST(Parser, Comments) {
  Program p = parse_program("-- header\nQualifiers { v >= 0 } -- trailing\nval a = 1 -- one\n");
  EXPECT_EQ(p.bindings.size(), 1u);
}

TEST(Parser, RoundTrip) {
  for (const char* src : {"Qualifiers { v >= 0, v <= 0 }\nval mul = \\x. * x x\nval neg = \\x. - x\n",
                          "Qualifiers { y = 5 }\nval k = let a = 3 in \\b. + a b\n",
                          "val f = \\g. \\x. g (g x)\nval t = if (< 1 2) 3 -4\n"}) {
    Program p = parse_program(src);
    std::string printed = to_string(p);
    Program again = parse_program(printed);
    EXPECT_EQ(to_string(again), printed);
    ASSERT_EQ(again.bindings.size(), p.bindings.size());
    for (std::size_t i = 0; i < p.bindings.size(); ++i) {
      EXPECT_TRUE(terms_equal(*again.bindings[i].term, *p.bindings[i].term)) << printed;
    }
  }
}

TEST(Parser, Types) {
  LiquidType t = parse_type("(x: {v : int | v >= 0} -> {v : int | v <= 0}) /\\ (x: {v : int | v <= 0} -> {v : int | v >= 0})");
  EXPECT_EQ(t.size(), 2u);
  EXPECT_EQ(parse_type(to_string(t)), t);
  EXPECT_EQ(to_string(parse_type("{v : bool | v = true}")), "{v : bool | (v=true)}");
  EXPECT_THROW(parse_type("{v : int | v >= 0} /\\ {v : bool | true}"), ParseError);
}
