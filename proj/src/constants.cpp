#include "lqi/constants.hpp"

#include <array>

#include "lqi/error.hpp"

namespace lqi {

namespace {

ExprPtr v() { return Expr::nu(); }
ExprPtr var(const char* n) { return Expr::var(n); }
ExprPtr zero() { return Expr::int_lit(0); }

LiquidType int_ref(ExprPtr e) { return LiquidType::base(BaseType::Int, std::move(e)); }
LiquidType int_top() { return int_ref(Expr::top()); }
LiquidType nonneg() { return int_ref(Expr::cmp(CmpOp::Ge, v(), zero())); }
LiquidType nonpos() { return int_ref(Expr::cmp(CmpOp::Le, v(), zero())); }

LiquidType fun(const char* binder, LiquidType dom, LiquidType cod) {
  return LiquidType::single(Arm::fun(binder, std::move(dom), std::move(cod)));
}

LiquidType equals(ExprPtr e) { return int_ref(Expr::cmp(CmpOp::Eq, v(), std::move(e))); }

LiquidType binary_int(ExprPtr result) {
  return fun("x", int_top(), fun("y", int_top(), equals(std::move(result))));
}

LiquidType comparison(CmpOp op) {
  ExprPtr result = Expr::cmp(CmpOp::Eq, v(), Expr::cmp(op, var("x"), var("y")));
  return fun("x", int_top(), fun("y", int_top(), LiquidType::base(BaseType::Bool, result)));
}

LiquidType mul_type() {
  std::vector<Arm> arms = binary_int(Expr::arith(ArithOp::Mul, var("x"), var("y"))).arms();
  auto sign = [](LiquidType a, LiquidType b, LiquidType r) {
    return fun("x", std::move(a), fun("y", std::move(b), std::move(r))).arms().front();
  };
  arms.push_back(sign(nonneg(), nonneg(), nonneg()));
  arms.push_back(sign(nonpos(), nonpos(), nonneg()));
  arms.push_back(sign(nonneg(), nonpos(), nonpos()));
  arms.push_back(sign(nonpos(), nonneg(), nonpos()));
  return LiquidType::make(std::move(arms));
}

Scheme build(Prim p) {
  switch (p) {
    case Prim::Neg: return Scheme::mono(fun("y", int_top(), equals(Expr::neg(var("y")))));
    case Prim::Add: return Scheme::mono(binary_int(Expr::arith(ArithOp::Add, var("x"), var("y"))));
    case Prim::Sub: return Scheme::mono(binary_int(Expr::arith(ArithOp::Sub, var("x"), var("y"))));
    case Prim::Mul: return Scheme::mono(mul_type());
    case Prim::Le: return Scheme::mono(comparison(CmpOp::Le));
    case Prim::Ge: return Scheme::mono(comparison(CmpOp::Ge));
    case Prim::Lt: return Scheme::mono(comparison(CmpOp::Lt));
    case Prim::Gt: return Scheme::mono(comparison(CmpOp::Gt));
    case Prim::Eq: return Scheme::mono(comparison(CmpOp::Eq));
    case Prim::Ite: {
      LiquidType a = LiquidType::single(Arm::tyvar("a"));
      return Scheme{{"a"},
                    fun("b", LiquidType::base(BaseType::Bool, Expr::top()),
                        fun("t", a, fun("e", a, a)))};
    }
    case Prim::Fix: {
      LiquidType a = LiquidType::single(Arm::tyvar("a"));
      return Scheme{{"a"}, fun("f", fun("z", a, a), a)};
    }
  }
  throw Error("unknown primitive");
}

}  // namespace

Scheme prim_type(Prim p) {
  static const std::array<Scheme, 11> table = [] {
    std::array<Scheme, 11> t{build(Prim::Neg), build(Prim::Add), build(Prim::Sub),
                             build(Prim::Mul), build(Prim::Le),  build(Prim::Ge),
                             build(Prim::Lt),  build(Prim::Gt),  build(Prim::Eq),
                             build(Prim::Ite), build(Prim::Fix)};
    return t;
  }();
  return table[static_cast<std::size_t>(p)];
}

Scheme constant_type(const Constant& c) {
  switch (c.kind) {
    case Constant::Kind::Int:
      return Scheme::mono(int_ref(Expr::cmp(CmpOp::Eq, v(), Expr::int_lit(c.value))));
    case Constant::Kind::Bool:
      return Scheme::mono(LiquidType::base(
          BaseType::Bool, Expr::cmp(CmpOp::Eq, v(), Expr::bool_lit(c.value != 0))));
    case Constant::Kind::Prim:
      if (c.is_partial()) throw Error("partially applied constant has no table entry");
      return prim_type(c.prim);
  }
  throw Error("unknown constant");
}

}  // namespace lqi
