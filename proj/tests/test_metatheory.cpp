#include <gtest/gtest.h>

#include <random>

#include "helpers.hpp"
#include "lqi/metatheory.hpp"
#include "lqi/parser.hpp"
#include "lqi/shapes.hpp"

using namespace lqi;
using lqi::test::qualifiers;
using lqi::test::ty;

namespace {

class MetaTest : public ::testing::Test {
 protected:
  InferOptions opts{qualifiers({"v >= 0", "v <= 0"})};
  ValidityEngine engine;
  Subtyping sub{engine};
};

}  // namespace

TEST_F(MetaTest, RecheckExamples) {
  TermPtr neg = parse_term("\\x. - x");
  EXPECT_TRUE(recheck(sub, Env{}, neg,
                      parse_scheme("(x: {v : int | v >= 0} -> {v : int | v <= 0}) /\\ (x: {v : int | v <= 0} -> {v : int | v >= 0})"),
                      opts));
  EXPECT_TRUE(recheck(sub, Env{}, neg, parse_scheme("x: {v : int | v >= 0} -> {v : int | v <= 0}"), opts));
  std::string why;
  EXPECT_FALSE(recheck(sub, Env{}, parse_term("5"), parse_scheme("{v : int | v = 6}"), opts, &why));
}

TEST_F(MetaTest, RecheckRejectsIllFormedAndUntyped) {
  std::string why;
  EXPECT_FALSE(recheck(sub, Env{}, parse_term("5"), parse_scheme("{v : int | y = 5}"), opts, &why));
  EXPECT_FALSE(recheck(sub, Env{}, parse_term("+ true 1"), parse_scheme("{v : int | true}"), opts, &why));
  EXPECT_FALSE(why.empty());
}

TEST_F(MetaTest, TrialExamples) {
  TrialReport a = subject_reduction_trial(sub, parse_term("(\\x. - x) 3"), opts, 100);
  EXPECT_EQ(a.kind, TrialReport::Kind::Ok) << a.message;
  EXPECT_GE(a.steps, 2u);
  TrialReport v = subject_reduction_trial(sub, parse_term("7"), opts, 100);
  EXPECT_EQ(v.kind, TrialReport::Kind::Ok);
  EXPECT_EQ(v.steps, 0u);
  TrialReport l = subject_reduction_trial(sub, parse_term("let x = 2 in + x x"), opts, 100);
  EXPECT_EQ(l.kind, TrialReport::Kind::Ok) << l.message;
  EXPECT_GE(l.steps, 1u);
  TrialReport u = subject_reduction_trial(sub, parse_term("+ true 1"), opts, 100);
  EXPECT_EQ(u.kind, TrialReport::Kind::Untyped);
}

TEST(Oracle, Examples) {
  Env env = Env{}.extended("x", ty("{v : int | v >= 0}"));
  EXPECT_EQ(semantic_implication_oracle(env, parse_refinement("v = -x"), parse_refinement("v <= 0"),
                                        BaseType::Int, 4),
            true);
  EXPECT_EQ(semantic_implication_oracle(Env{}, Expr::top(), parse_refinement("v >= 0"), BaseType::Int, 4),
            false);
  ExprPtr e = parse_refinement("v <= x && v >= 1");
  EXPECT_EQ(semantic_implication_oracle(env, e, e, BaseType::Int, 3), true);
  EXPECT_EQ(semantic_implication_oracle(Env{}, parse_refinement("v = true"), parse_refinement("v = true"),
                                        BaseType::Bool, 4),
            true);
  EXPECT_EQ(semantic_implication_oracle(Env{}, Expr::top(), parse_refinement("v = true"), BaseType::Bool, 4),
            false);
}

TEST(Oracle, NonBaseVariableInapplicable) {
  Env env = Env{}.extended("f", ty("x: {v : int | true} -> {v : int | true}"));
  EXPECT_FALSE(semantic_implication_oracle(env, parse_refinement("v = f"), Expr::top(), BaseType::Int, 4));
  EXPECT_FALSE(semantic_implication_oracle(Env{}, parse_refinement("v = z"), Expr::top(), BaseType::Int, 4));
}

TEST(Generator, ClosedAndShaped) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    TermPtr m = random_term(rng, 6);
    EXPECT_TRUE(free_vars(*m).empty()) << to_string(m);
    EXPECT_EQ(to_string(*w_infer({}, m)), "int") << to_string(m);
  }
}

TEST(Generator, RefinementsAreLinear) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 100; ++i) {
    ExprPtr e = random_refinement(rng, {"a"}, 2);
    EXPECT_TRUE(wf_check(Env{}.extended("a", ty("{v : int | true}")), LiquidType::base(BaseType::Int, e)));
  }
}

TEST(Harness, SmallRun) {
  ValidityEngine engine;
  MetatheoryOptions o;
  o.trials = 40;
  o.qualifiers = qualifiers({"v >= 0", "v <= 0"});
  o.threads = 2;
  MetatheoryReport r = check_metatheory(engine, o);
  EXPECT_EQ(r.trials, 40u);
  EXPECT_TRUE(r.ok()) << (r.failures.empty() ? "" : r.failures.front());
  EXPECT_GT(r.steps, 0u);
  EXPECT_GT(r.oracle_queries, 0u);
}

TEST(Harness, Deterministic) {
  MetatheoryOptions o;
  o.trials = 20;
  o.qualifiers = qualifiers({"v >= 0", "v <= 0"});
  ValidityEngine e1, e2;
  MetatheoryReport a = check_metatheory(e1, o);
  o.threads = 3;
  MetatheoryReport b = check_metatheory(e2, o);
  EXPECT_EQ(a.steps, b.steps);
  EXPECT_EQ(a.attempts, b.attempts);
}

TEST(Harness, OracleAgreement) {
  OracleAgreement r = oracle_agreement(100, 4, 3, test::external_solver());
  EXPECT_EQ(r.queries, 100u);
  EXPECT_EQ(r.oracle_violations, 0u);
  EXPECT_EQ(r.external_disagreements, 0u) << (r.failures.empty() ? "" : r.failures.front());
}
