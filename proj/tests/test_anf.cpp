#include <gtest/gtest.h>

#include <random>

#include "lqi/anf.hpp"
#include "lqi/eval.hpp"
#include "lqi/metatheory.hpp"
#include "lqi/parser.hpp"

using namespace lqi;

TEST(Anf, SquareFunction) {
  TermPtr m = normalize(parse_term("\\x. * x x"));
  EXPECT_EQ(to_string(m), "\\x. let t0 = * x in t0 x");
  EXPECT_TRUE(is_anf(*m));
}

TEST(Anf, AtomicTermsUnchanged) {
  for (const char* src : {"x", "3", "\\x. x", "- x", "+ 1 2"}) {
    TermPtr m = parse_term(src);
    TermPtr n = normalize(m);
    EXPECT_TRUE(is_anf(*n)) << src;
  }
  EXPECT_EQ(to_string(normalize(parse_term("- x"))), "- x");
}

TEST(Anf, NestedArgumentsNamed) {
  TermPtr m = normalize(parse_term("- (+ 1 2)"));
  EXPECT_TRUE(is_anf(*m));
  EXPECT_FALSE(is_anf(*parse_term("- (+ 1 2)")));
  EXPECT_FALSE(is_anf(*parse_term("(\\x. x) 3")));
}

TEST(Anf, IntermediateNamesAvoidExisting) {
  TermPtr m = normalize(parse_term("\\t0. * t0 t0"));
  EXPECT_EQ(to_string(m), "\\t0. let t1 = * t0 in t1 t0");
  TermPtr n = normalize(parse_term("* a a"), {"t0"});
  EXPECT_EQ(to_string(n), "let t1 = * a in t1 a");
}

TEST(Anf, LetsFlattened) {
  TermPtr m = normalize(parse_term("let a = (let b = 1 in + b b) in a"));
  EXPECT_TRUE(is_anf(*m));
  ASSERT_EQ(m->kind, Term::Kind::Let);
  EXPECT_EQ(m->name, "b");
}

TEST(Anf, Idempotent) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 100; ++i) {
    TermPtr n = normalize(random_term(rng, 6));
    EXPECT_TRUE(terms_equal(*normalize(n), *n)) << to_string(n);
  }
}

TEST(Anf, PreservesEvaluation) {
  std::mt19937_64 rng(11);
  int compared = 0;
  for (int i = 0; i < 300; ++i) {
    TermPtr m = random_term(rng, 6);
    TermPtr n = normalize(m);
    ASSERT_TRUE(is_anf(*n)) << to_string(n);
    EvalResult a = eval(m, 2000);
    EvalResult b = eval(n, 4000);
    if (a.kind != EvalResult::Kind::Value) continue;
    ASSERT_EQ(b.kind, EvalResult::Kind::Value) << to_string(m);
    EXPECT_TRUE(terms_equal(*a.term, *b.term)) << to_string(m) << " vs " << to_string(n);
    ++compared;
  }
  EXPECT_GT(compared, 200);
}
