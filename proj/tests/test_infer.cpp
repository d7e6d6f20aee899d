#include <gtest/gtest.h>

#include <random>

#include "helpers.hpp"
#include "lqi/error.hpp"
#include "lqi/infer.hpp"
#include "lqi/metatheory.hpp"
#include "lqi/parser.hpp"
#include "lqi/shapes.hpp"

using namespace lqi;
using lqi::test::arm_set;
using lqi::test::qualifiers;
using lqi::test::ty;

namespace {

const std::vector<std::string> kFourArms{
    "x: {v : int | v >= 0} -> {v : int | v >= 0}",
    "x: {v : int | v >= 0} -> {v : int | v <= 0}",
    "x: {v : int | v <= 0} -> {v : int | v >= 0}",
    "x: {v : int | v <= 0} -> {v : int | v <= 0}",
};

std::vector<std::string> nine_arms() {
  std::vector<std::string> out = kFourArms;
  for (const char* s : {"x: {v : int | v >= 0} -> {v : int | y = 5}",
                        "x: {v : int | v <= 0} -> {v : int | y = 5}",
                        "x: {v : int | y = 5} -> {v : int | v >= 0}",
                        "x: {v : int | y = 5} -> {v : int | v <= 0}",
                        "x: {v : int | y = 5} -> {v : int | y = 5}"}) {
    out.push_back(s);
  }
  return out;
}

SimpleTypePtr int_to_int() {
  return SimpleType::arrow("x", SimpleType::int_type(), SimpleType::int_type());
}

class InferTest : public ::testing::Test {
 protected:
  Scheme infer(const char* src, const std::vector<std::string>& qs = {"v >= 0", "v <= 0"},
               const Env& env = {}) {
    Inferrer inf(sub, InferOptions{qualifiers(qs)});
    return inf.infer_surface(env, parse_term(src));
  }

  ValidityEngine engine;
  Subtyping sub{engine};
};

}  // namespace

TEST(Fresh, Counts) {
  std::vector<std::string> pool{"v >= 0", "v <= 0", "y = 5"};
  for (std::size_t n = 1; n <= 3; ++n) {
    std::vector<std::string> qs(pool.begin(), pool.begin() + static_cast<long>(n));
    LiquidType t = fresh(*int_to_int(), qualifiers(qs));
    EXPECT_EQ(t.size(), n * n);
    EXPECT_EQ(fresh_count(*int_to_int(), qualifiers(qs)), n * n);
  }
}

TEST(Fresh, Listings) {
  EXPECT_EQ(arm_set(fresh(*int_to_int(), qualifiers({"v >= 0", "v <= 0"}))), arm_set(kFourArms));
  EXPECT_EQ(arm_set(fresh(*int_to_int(), qualifiers({"v >= 0", "v <= 0", "y = 5"}))), arm_set(nine_arms()));
}

TEST(Fresh, TopWhenNothingFits) {
  EXPECT_EQ(fresh(*SimpleType::int_type(), {}), ty("{v : int | true}"));
  EXPECT_EQ(fresh(*SimpleType::bool_type(), qualifiers({"v >= 0"})), ty("{v : bool | true}"));
  EXPECT_EQ(fresh(*SimpleType::var("a"), qualifiers({"v >= 0"})), ty("'a"));
}

TEST(Fresh, Cap) {
  SimpleTypePtr t = SimpleType::arrow("x", SimpleType::int_type(), int_to_int());
  EXPECT_EQ(fresh_count(*t, qualifiers({"v >= 0", "v <= 0"})), 8u);
  try {
    fresh(*t, qualifiers({"v >= 0", "v <= 0"}), 7);
    FAIL() << "expected cap error";
  } catch (const ArmCapExceeded& e) {
    EXPECT_EQ(e.cap(), 7u);
  }
}

TEST_F(InferTest, Goldens) {
  EXPECT_EQ(arm_set(infer("\\x. - x").body),
            arm_set({"x: {v : int | v >= 0} -> {v : int | v <= 0}", "x: {v : int | v <= 0} -> {v : int | v >= 0}"}));
  EXPECT_EQ(arm_set(infer("\\x. * x x").body),
            arm_set({"x: {v : int | v >= 0} -> {v : int | v >= 0}", "x: {v : int | v <= 0} -> {v : int | v >= 0}"}));
}

TEST_F(InferTest, Literals) {
  EXPECT_EQ(infer("5").body, ty("{v : int | v = 5}"));
  EXPECT_EQ(infer("true").body, ty("{v : bool | v = true}"));
}

TEST_F(InferTest, LambdaTrace) {
  Inferrer inf(sub, InferOptions{qualifiers({"v >= 0", "v <= 0", "y = 5"})});
  std::vector<LambdaTrace> traces;
  inf.set_trace([&](const LambdaTrace& t) { traces.push_back(t); });
  Scheme s = inf.infer_surface(Env{}, parse_term("\\x. - x"));
  ASSERT_EQ(traces.size(), 1u);
  EXPECT_EQ(traces[0].template_arms.size(), 9u);
  EXPECT_EQ(traces[0].wf_arms.size(), 4u);
  EXPECT_EQ(traces[0].final_arms.size(), 2u);
  EXPECT_EQ(arm_set(LiquidType::make(traces[0].wf_arms)), arm_set(kFourArms));
  EXPECT_EQ(arm_set(s.body),
            arm_set({"x: {v : int | v >= 0} -> {v : int | v <= 0}", "x: {v : int | v <= 0} -> {v : int | v >= 0}"}));
}

TEST_F(InferTest, YInScopeKeepsItsArms) {
  Env env = Env{}.extended("y", ty("{v : int | v = 5}"));
  Scheme s = infer("\\x. - x", {"v >= 0", "v <= 0", "y = 5"}, env);
  EXPECT_TRUE(arm_set(s.body).count(ty("x: {v : int | y = 5} -> {v : int | y = 5}").arms()[0].key));
}

TEST_F(InferTest, ApplyResult) {
  Inferrer inf(sub, InferOptions{qualifiers({"v >= 0", "v <= 0"})});
  LiquidType neg = ty("(x: {v : int | v >= 0} -> {v : int | v <= 0}) /\\ (x: {v : int | v <= 0} -> {v : int | v >= 0})");
  LiquidType r = inf.apply_result(Env{}, neg, ty("{v : int | v = 3}"), *Term::int_lit(3));
  EXPECT_EQ(r, ty("{v : int | v <= 0}"));
  LiquidType id = ty("x: {v : int | true} -> {v : int | v = x}");
  EXPECT_EQ(inf.apply_result(Env{}, id, ty("{v : int | v = 3}"), *Term::int_lit(3)), ty("{v : int | v = 3}"));
  LiquidType pos = ty("x: {v : int | v >= 1} -> {v : int | v >= 0}");
  EXPECT_THROW(inf.apply_result(Env{}, pos, ty("{v : int | v = -3}"), *Term::int_lit(-3)), InferenceFailure);
}

TEST_F(InferTest, Applications) {
  EXPECT_EQ(infer("- 3").body, ty("{v : int | v = -3}"));
  EXPECT_EQ(infer("let f = \\x. - x in f 4").body, ty("{v : int | v <= 0}"));
  // The ANF let around a curried application draws its type from the qualifiers.
  EXPECT_EQ(infer("+ 1 2").body, ty("{v : int | v >= 0}"));
}

TEST_F(InferTest, Polymorphism) {
  Scheme id = infer("\\x. x");
  EXPECT_EQ(id.quantified.size(), 1u);
  EXPECT_EQ(id.body.arms()[0].kind, Arm::Kind::Fun);
  Scheme use = infer("let id = \\x. x in id 3");
  EXPECT_TRUE(use.is_mono());
  EXPECT_TRUE(sub.is_subtype(Env{}, use.body, ty("{v : int | v >= 0}")));
}

TEST_F(InferTest, Recursion) {
  Scheme s = infer("fix (\\f. \\n. (if (<= n 0) (\\u. 0) (\\u. + n (f (sub n 1)))) 0)");
  EXPECT_EQ(to_string(*shape_of(s)), "int -> int");
}

TEST_F(InferTest, UnboundVariable) {
  EXPECT_THROW(infer("z"), ShapeError);
}

TEST_F(InferTest, CapPropagates) {
  Inferrer inf(sub, InferOptions{qualifiers({"v >= 0", "v <= 0"}), 3});
  EXPECT_THROW(inf.infer_surface(Env{}, parse_term("\\x. - x")), ArmCapExceeded);
}

TEST_F(InferTest, Deterministic) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 20; ++i) {
    TermPtr m = random_term(rng, 5);
    ValidityEngine e2;
    Subtyping s2(e2);
    Inferrer a(sub, InferOptions{qualifiers({"v >= 0", "v <= 0"})});
    Inferrer b(s2, InferOptions{qualifiers({"v >= 0", "v <= 0"})});
    try {
      Scheme x = a.infer_surface(Env{}, m);
      Scheme y = b.infer_surface(Env{}, m);
      EXPECT_EQ(to_string(x), to_string(y));
    } catch (const InferenceFailure&) {
    }
  }
}

TEST_F(InferTest, ShapePreservation) {
  std::mt19937_64 rng(22);
  Inferrer inf(sub, InferOptions{qualifiers({"v >= 0", "v <= 0"})});
  int checked = 0;
  for (int i = 0; i < 60; ++i) {
    TermPtr m = random_term(rng, 6);
    try {
      Scheme s = inf.infer_surface(Env{}, m);
      EXPECT_TRUE(same_shape(*shape_of(s), *w_infer({}, m))) << to_string(m);
      EXPECT_TRUE(well_founded(s.body, *shape_of(s)));
      ++checked;
    } catch (const InferenceFailure&) {
    }
  }
  EXPECT_GT(checked, 40);
}

TEST_F(InferTest, CorpusUnderBothBackends) {
  std::string cmd = test::external_solver();
  if (cmd.empty()) GTEST_SKIP() << "no external solver";
  EngineOptions o;
  o.backend = Backend::External;
  o.smt_cmd = cmd;
  ValidityEngine ext(o);
  Subtyping esub(ext);
  for (const char* src : {"\\x. - x", "\\x. * x x", "let f = \\x. - x in f 4", "\\x. \\y. + x y"}) {
    Inferrer a(sub, InferOptions{qualifiers({"v >= 0", "v <= 0"})});
    Inferrer b(esub, InferOptions{qualifiers({"v >= 0", "v <= 0"})});
    std::set<std::string> builtin = arm_set(a.infer_surface(Env{}, parse_term(src)).body);
    std::set<std::string> external = arm_set(b.infer_surface(Env{}, parse_term(src)).body);
    EXPECT_EQ(builtin, external) << src;
  }
}

TEST_F(InferTest, MoreQualifiersKeepWellFormedArms) {
  std::set<std::string> small = arm_set(infer("\\x. - x", {"v >= 0", "v <= 0"}).body);
  std::set<std::string> large = arm_set(infer("\\x. - x", {"v >= 0", "v <= 0", "v = 0"}).body);
  for (const auto& k : small) EXPECT_TRUE(large.count(k)) << k;
}
