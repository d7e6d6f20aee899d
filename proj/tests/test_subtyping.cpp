#include <gtest/gtest.h>

#include <random>

#include "helpers.hpp"
#include "lqi/error.hpp"
#include "lqi/metatheory.hpp"
#include "lqi/subtyping.hpp"

using namespace lqi;
using lqi::test::q;
using lqi::test::ty;

namespace {

const char* kGe = "{v : int | v >= 0}";
const char* kLe = "{v : int | v <= 0}";

Env x_nonneg() { return Env{}.extended("x", ty(kGe)); }

class SubtypingTest : public ::testing::Test {
 protected:
  ValidityEngine engine;
  Subtyping sub{engine};
};

}  // namespace

TEST(WellFormed, Examples) {
  EXPECT_FALSE(wf_check(Env{}, ty("x: {v : int | v >= 0} -> {v : int | y = 5}")));
  EXPECT_TRUE(wf_check(Env{}, ty("x: {v : int | v >= 0} -> {v : int | v <= 0}")));
  EXPECT_TRUE(wf_check(Env{}, ty("'a")));
  EXPECT_TRUE(wf_check(x_nonneg(), ty("x: {v : int | v >= 0} -> {v : int | v <= x}")));
  EXPECT_TRUE(wf_check(Env{}, ty("x: {v : int | v >= 0} -> {v : int | v <= x}")));
  EXPECT_TRUE(wf_check(Env{}.extended("y", ty(kGe)), ty("{v : int | y = 5}")));
}

TEST(WellFormed, SortsAndScope) {
  EXPECT_FALSE(wf_check(Env{}, ty("{v : bool | v >= 0}")));
  EXPECT_FALSE(wf_check(Env{}.extended("f", ty("x: {v : int | true} -> {v : int | true}")),
                        ty("{v : int | v = f}")));
  EXPECT_FALSE(wf_check(Env{}, ty("x: {v : bool | true} -> {v : int | v = x}")));
  EXPECT_FALSE(wf_check(Env{}, ty("x: {v : int | z = 1} -> {v : int | true}")));
}

TEST(WellFormed, Schemes) {
  Scheme s = parse_scheme("forall 'a. x: 'a -> 'a");
  EXPECT_TRUE(wf_check(Env{}, s));
}

TEST(Constraints, SimplifyWellFormedIntersection) {
  auto parts = simplify(Constraint::well_formed(Env{}, ty("{v : int | v >= 0} /\\ {v : int | v <= 0}")));
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_EQ(parts[0].kind, Constraint::Kind::WellFormed);
  EXPECT_EQ(parts[0].lhs.size(), 1u);
  auto atomic = simplify(Constraint::well_formed(Env{}, ty("{v : int | true}")));
  ASSERT_EQ(atomic.size(), 1u);
  EXPECT_EQ(atomic[0].lhs, ty("{v : int | true}"));
}

TEST(Constraints, SimplifyFunction) {
  auto parts = simplify(Constraint::subtype(Env{}, ty("x: {v : int | v >= 0} -> {v : int | v <= 0}"),
                                            ty("x: {v : int | v = 1} -> {v : int | v <= x}")));
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_EQ(parts[0].lhs, ty("{v : int | v = 1}"));
  EXPECT_EQ(*parts[0].rhs, ty(kGe));
  EXPECT_TRUE(parts[1].env.contains("x"));
  EXPECT_EQ(parts[1].lhs, ty(kLe));
  EXPECT_EQ(*parts[1].rhs, ty("{v : int | v <= x}"));
}

TEST(Constraints, SimplifyShapeMismatch) {
  EXPECT_THROW(simplify(Constraint::subtype(Env{}, ty(kGe), ty("{v : bool | true}"))), IllFoundedType);
}

TEST(Constraints, BaseQuery) {
  ValidityQuery a = base_subtype_query(x_nonneg(), {parse_refinement("v = x")}, {Expr::top()}, BaseType::Int);
  EXPECT_EQ(to_string(a), "(x >= 0 && v = x) => true");
  ValidityQuery b = base_subtype_query(Env{}, {q("v >= 0"), q("v <= 0")}, {q("v = 0")}, BaseType::Int);
  EXPECT_EQ(to_string(b), "(v >= 0 && v <= 0) => v = 0");
  EXPECT_TRUE(builtin_decide(b).valid());
  ValidityQuery c = base_subtype_query(Env{}, {Expr::top()}, {Expr::top()}, BaseType::Int);
  EXPECT_EQ(to_string(c), "true => true");
}

TEST_F(SubtypingTest, BaseExamples) {
  EXPECT_TRUE(sub.is_subtype(x_nonneg(), ty("{v : int | v = -x}"), ty(kLe)));
  EXPECT_FALSE(sub.is_subtype(Env{}, ty("{v : int | v = -x}"), ty(kLe)));
  EXPECT_TRUE(sub.is_subtype(Env{}, ty("{v : int | v >= 0} /\\ {v : int | v <= 0}"), ty("{v : int | v = 0}")));
}

TEST_F(SubtypingTest, Elimination) {
  LiquidType a = ty("x: {v : int | v >= 0} -> {v : int | v >= 0}");
  LiquidType b = ty("x: {v : int | v <= 0} -> {v : int | v >= 0}");
  EXPECT_TRUE(sub.is_subtype(Env{}, intersect(a, b), a));
  EXPECT_TRUE(sub.is_subtype(Env{}, intersect(a, b), b));
}

TEST_F(SubtypingTest, ArmSelection) {
  LiquidType mul = ty("(x: {v : int | v >= 0} -> {v : int | v >= 0}) /\\ (x: {v : int | v <= 0} -> {v : int | v >= 0})");
  EXPECT_TRUE(sub.is_subtype(Env{}, mul, ty("x: {v : int | v = 0} -> {v : int | v >= 0}")));
  EXPECT_FALSE(sub.is_subtype(Env{}, mul, ty("x: {v : int | true} -> {v : int | v >= 0}")));
}

TEST_F(SubtypingTest, IntersectingCodomains) {
  LiquidType f = ty("(x: {v : int | v >= 0} -> {v : int | v >= 0}) /\\ (x: {v : int | v <= 0} -> {v : int | v <= 0})");
  EXPECT_TRUE(sub.is_subtype(Env{}, f, ty("x: {v : int | v = 0} -> {v : int | v = 0}")));
}

TEST_F(SubtypingTest, DependentCodomain) {
  LiquidType neg = ty("y: {v : int | true} -> {v : int | v = -y}");
  EXPECT_TRUE(sub.is_subtype(Env{}, neg, ty("x: {v : int | v >= 0} -> {v : int | v <= 0}")));
  EXPECT_TRUE(sub.is_subtype(Env{}, neg, ty("z: {v : int | v >= 0} -> {v : int | v <= -z + 0}")));
  EXPECT_FALSE(sub.is_subtype(Env{}, neg, ty("x: {v : int | v >= 0} -> {v : int | v >= 0}")));
}

TEST_F(SubtypingTest, Contravariance) {
  LiquidType wide = ty("x: {v : int | true} -> {v : int | v >= 0}");
  LiquidType narrow = ty("x: {v : int | v >= 0} -> {v : int | v >= 0}");
  EXPECT_TRUE(sub.is_subtype(Env{}, wide, narrow));
  EXPECT_FALSE(sub.is_subtype(Env{}, narrow, wide));
}

TEST_F(SubtypingTest, TypeVariablesAndSchemes) {
  EXPECT_TRUE(sub.is_subtype(Env{}, ty("'a"), ty("'a")));
  Scheme a = parse_scheme("forall 'a 'b. f: (x: 'a -> 'b) -> x: 'a -> 'b");
  Scheme b = parse_scheme("forall 'c 'd. f: (x: 'c -> 'd) -> x: 'c -> 'd");
  EXPECT_TRUE(sub.is_subtype(Env{}, a, b));
}

TEST_F(SubtypingTest, ObserverAndLog) {
  std::vector<std::string> lines;
  Subtyping logged(engine, [&](const std::string& s) { lines.push_back(s); });
  std::size_t seen = 0;
  logged.set_observer([&](const Env&, const std::vector<ExprPtr>&, const std::vector<ExprPtr>&, BaseType,
                          const Verdict& v) {
    ++seen;
    EXPECT_TRUE(v.valid());
  });
  EXPECT_TRUE(logged.is_subtype(x_nonneg(), ty("{v : int | v = -x}"), ty(kLe)));
  EXPECT_EQ(seen, 1u);
  ASSERT_FALSE(lines.empty());
  EXPECT_NE(lines.back().find("sub"), std::string::npos);
  EXPECT_TRUE(logged.well_formed(Env{}, ty(kGe)));
  EXPECT_NE(lines.back().find("wf"), std::string::npos);
}

TEST_F(SubtypingTest, Laws) {
  std::mt19937_64 rng(5);
  Env env = Env{}.extended("p", ty(kGe));
  for (int i = 0; i < 200; ++i) {
    SimpleTypePtr shape = random_shape(rng, 2);
    LiquidType a = random_type(rng, *shape, {"p"}, 2);
    LiquidType b = random_type(rng, *shape, {"p"}, 2);
    LiquidType c = random_type(rng, *shape, {"p"}, 2);
    EXPECT_TRUE(sub.is_subtype(env, a, a)) << to_string(a);
    EXPECT_TRUE(sub.is_subtype(env, intersect(a, b), b)) << to_string(a) << " " << to_string(b);
    EXPECT_EQ(sub.is_subtype(env, c, intersect(a, b)), sub.is_subtype(env, c, a) && sub.is_subtype(env, c, b));
    if (sub.is_subtype(env, a, b) && sub.is_subtype(env, b, c)) {
      EXPECT_TRUE(sub.is_subtype(env, a, c)) << to_string(a) << " " << to_string(b) << " " << to_string(c);
    }
  }
}

TEST_F(SubtypingTest, AlgebraReport) {
  AlgebraReport r = intersection_algebra(engine, 200, 9);
  EXPECT_EQ(r.types, 200u);
  EXPECT_TRUE(r.ok()) << r.failures.front();
}
