#include <gtest/gtest.h>

#include <random>

#include "helpers.hpp"
#include "lqi/embed.hpp"
#include "lqi/error.hpp"
#include "lqi/metatheory.hpp"
#include "lqi/parser.hpp"

using namespace lqi;
using lqi::test::ty;

namespace {

std::string emb(const char* text, BaseType nu = BaseType::Int) {
  return to_string(*embed_refinement(*parse_refinement(text), nu));
}

bool quantifier_free(const Formula& f) {
  for (const auto& k : f.kids) {
    if (!k || !quantifier_free(*k)) return false;
  }
  return true;
}

}  // namespace

TEST(Embed, Refinements) {
  EXPECT_EQ(emb("v >= 0"), "v >= 0");
  EXPECT_EQ(emb("true"), "true");
  EXPECT_EQ(emb("v = -x"), "v = -x");
  EXPECT_THROW(emb("v + 1"), EmbeddingError);
}

TEST(Embed, BooleanValueVariable) {
  Signature sig;
  collect_signature(*embed_refinement(*parse_refinement("v = true"), BaseType::Bool), sig);
  EXPECT_TRUE(sig.bool_vars.count("v"));
  EXPECT_FALSE(sig.int_vars.count("v"));
  EXPECT_EQ(emb("v = true", BaseType::Bool), "(v <=> true)");
}

TEST(Embed, Terms) {
  TermEmbedder te;
  EXPECT_EQ(to_string(*te.embed(*parse_term("5"))), "5");
  EXPECT_EQ(to_string(*te.embed(*parse_term("x"))), "x");
  EXPECT_EQ(to_string(*te.embed(*parse_term("f y"))), "app(f, y)");
  EXPECT_EQ(to_string(*te.embed(*parse_term("+ x 1"))), "(x + 1)");
  EXPECT_EQ(to_string(*te.embed(*parse_term("\\z. z"))), "lam0()");
  EXPECT_EQ(to_string(*te.embed(*parse_term("\\z. z"))), "lam1()");
}

TEST(Embed, Environment) {
  EXPECT_EQ(to_string(*embed_env(Env{})), "true");
  Env env = Env{}.extended("x", ty("{v : int | v >= 0}"));
  EXPECT_EQ(to_string(*embed_env(env)), "x >= 0");
  Env fenv = Env{}.extended("f", ty("x: {v : int | v >= 0} -> {v : int | v <= 0}"));
  EXPECT_EQ(to_string(*embed_env(fenv)), "true");
}

TEST(Embed, EnvironmentConcatenation) {
  Env a = Env{}.extended("x", ty("{v : int | v >= 0}"));
  Env ab = a.extended("y", ty("{v : int | v <= x} /\\ {v : int | v >= 1}"));
  Env b = Env{}.extended("y", ty("{v : int | v <= x} /\\ {v : int | v >= 1}"));
  FormulaPtr joined = Formula::conj({embed_env(a), embed_env(b)});
  EXPECT_EQ(to_string(*embed_env(ab)), to_string(*joined));
}

TEST(Embed, SubstitutionCommutes) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> val(-4, 4);
  ExprPtr n = parse_refinement("y + 2");
  for (int i = 0; i < 200; ++i) {
    ExprPtr e = random_refinement(rng, {"x", "y"}, 2);
    FormulaPtr lhs = embed_refinement(*substitute(e, "x", n));
    FormulaPtr rhs = embed_refinement(*e);
    ASSERT_TRUE(quantifier_free(*lhs));
    for (int j = 0; j < 10; ++j) {
      Model m;
      m.ints["y"] = val(rng);
      m.ints["v"] = val(rng);
      Model mx = m;
      mx.ints["x"] = m.ints["y"] + 2;
      EXPECT_EQ(evaluate(*lhs, m, true), evaluate(*rhs, mx, true)) << to_string(e);
    }
  }
}

TEST(Embed, Multiplication) {
  EmbedOptions linear;
  EmbedOptions nonlinear{true};
  ExprPtr e = parse_refinement("v = x * y");
  EXPECT_EQ(to_string(*embed_refinement(*e, BaseType::Int, linear)), "v = times(x, y)");
  EXPECT_EQ(to_string(*embed_refinement(*e, BaseType::Int, nonlinear)), "v = (x * y)");
  EXPECT_EQ(to_string(*embed_refinement(*parse_refinement("v = 3 * y"))), "v = (3 * y)");
}

TEST(Embed, SignatureArityClash) {
  Signature sig;
  FormulaPtr f = Formula::cmp(CmpOp::Eq, LTerm::app("g", {LTerm::var("x")}),
                              LTerm::app("g", {LTerm::var("x"), LTerm::var("y")}));
  EXPECT_THROW(collect_signature(*f, sig), EmbeddingError);
}
