#include <gtest/gtest.h>

#include "lqi/anf.hpp"
#include "lqi/constants.hpp"
#include "lqi/error.hpp"
#include "lqi/parser.hpp"
#include "lqi/shapes.hpp"

using namespace lqi;

namespace {

std::string shape(const char* src, const ShapeEnv& env = {}) {
  return to_string(*w_infer(env, parse_term(src)));
}

}  // namespace

TEST(Shapes, Constants) {
  EXPECT_EQ(shape("3"), "int");
  EXPECT_EQ(shape("true"), "bool");
  EXPECT_EQ(shape("+"), "int -> int -> int");
  EXPECT_EQ(shape("<= 1"), "int -> bool");
  EXPECT_EQ(shape("- 1"), "int");
}

TEST(Shapes, Lambdas) {
  EXPECT_EQ(shape("\\x. * x x"), "int -> int");
  EXPECT_EQ(shape("\\x. \\y. if x y 0"), "bool -> int -> int");
  EXPECT_EQ(shape("(\\x. x) 3"), "int");
}

TEST(Shapes, LetGeneralization) {
  EXPECT_EQ(shape("let id = \\x. x in if (id true) (id 1) 0"), "int");
  EXPECT_THROW(shape("(\\id. if (id true) (id 1) 0) (\\x. x)"), ShapeError);
}

TEST(Shapes, Errors) {
  EXPECT_THROW(shape("+ true 1"), ShapeError);
  EXPECT_THROW(shape("\\x. x x"), ShapeError);
  EXPECT_THROW(shape("y"), ShapeError);
}

TEST(Shapes, ElaborationIsExplicit) {
  Elaboration e = elaborate({}, normalize(parse_term("let id = \\x. x in id 3")));
  EXPECT_EQ(to_string(*e.scheme.type), "int");
  ASSERT_EQ(e.term->kind, Term::Kind::Let);
  EXPECT_EQ(e.term->bound()->kind, Term::Kind::TyAbs);
  ShapeScheme s = shape_check({}, e.term);
  EXPECT_EQ(to_string(*s.type), "int");
}

TEST(Shapes, ResidualVariablesGeneralized) {
  Elaboration e = elaborate({}, parse_term("\\x. x"));
  EXPECT_EQ(e.scheme.quantified.size(), 1u);
  EXPECT_EQ(e.term->kind, Term::Kind::TyAbs);
  ShapeScheme s = shape_check({}, e.term);
  EXPECT_EQ(s.quantified.size(), 1u);
}

TEST(Shapes, LambdaAnnotations) {
  Elaboration e = elaborate({}, parse_term("\\x. - x"));
  ASSERT_EQ(e.term->kind, Term::Kind::Lam);
  ASSERT_TRUE(e.term->type);
  EXPECT_EQ(to_string(*e.term->type), "int");
}

TEST(Shapes, EnvironmentErasure) {
  Env env = Env{}.extended("f", Scheme{{}, parse_type("x: {v : int | v >= 0} -> {v : int | v <= 0}")});
  ShapeEnv se = shape_env(env);
  ASSERT_NE(se.lookup("f"), nullptr);
  EXPECT_EQ(to_string(*se.lookup("f")->type), "int -> int");
  EXPECT_EQ(shape("f 3", se), "int");
}

TEST(Shapes, ShapeCheckRejectsMismatch) {
  TermPtr bad = Term::lam("x", parse_term("+ x 1"), {}, SimpleType::bool_type());
  EXPECT_THROW(shape_check({}, bad), ShapeError);
}
