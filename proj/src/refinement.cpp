#include "lqi/refinement.hpp"

namespace lqi {

std::string_view to_string(BaseType b) { return b == BaseType::Int ? "int" : "bool"; }

std::string_view to_string(CmpOp op) {
  switch (op) {
    case CmpOp::Eq: return "=";
    case CmpOp::Le: return "<=";
    case CmpOp::Ge: return ">=";
    case CmpOp::Lt: return "<";
    case CmpOp::Gt: return ">";
  }
  return "?";
}

namespace {

ExprPtr make(Expr::Kind kind, std::int64_t value, std::string name, ArithOp aop, CmpOp cop,
             ExprPtr lhs, ExprPtr rhs) {
  return std::make_shared<const Expr>(kind, value, std::move(name), aop, cop, std::move(lhs),
                                      std::move(rhs));
}

const char* arith_symbol(ArithOp op) {
  switch (op) {
    case ArithOp::Add: return "+";
    case ArithOp::Sub: return "-";
    case ArithOp::Mul: return "*";
  }
  return "?";
}

}  // namespace

ExprPtr Expr::int_lit(std::int64_t value) {
  return make(Kind::IntLit, value, {}, ArithOp::Add, CmpOp::Eq, nullptr, nullptr);
}

ExprPtr Expr::bool_lit(bool value) {
  static const ExprPtr t = make(Kind::BoolLit, 1, {}, ArithOp::Add, CmpOp::Eq, nullptr, nullptr);
  static const ExprPtr f = make(Kind::BoolLit, 0, {}, ArithOp::Add, CmpOp::Eq, nullptr, nullptr);
  return value ? t : f;
}

ExprPtr Expr::var(std::string name) {
  return make(Kind::Var, 0, std::move(name), ArithOp::Add, CmpOp::Eq, nullptr, nullptr);
}

ExprPtr Expr::nu() {
  static const ExprPtr n = make(Kind::Nu, 0, "v", ArithOp::Add, CmpOp::Eq, nullptr, nullptr);
  return n;
}

ExprPtr Expr::neg(ExprPtr operand) {
  if (operand->kind() == Kind::IntLit && operand->int_value() != INT64_MIN) {
    return int_lit(-operand->int_value());
  }
  return make(Kind::Neg, 0, {}, ArithOp::Add, CmpOp::Eq, std::move(operand), nullptr);
}

ExprPtr Expr::arith(ArithOp op, ExprPtr lhs, ExprPtr rhs) {
  return make(Kind::Arith, 0, {}, op, CmpOp::Eq, std::move(lhs), std::move(rhs));
}

ExprPtr Expr::cmp(CmpOp op, ExprPtr lhs, ExprPtr rhs) {
  return make(Kind::Cmp, 0, {}, ArithOp::Add, op, std::move(lhs), std::move(rhs));
}

ExprPtr Expr::conj(ExprPtr lhs, ExprPtr rhs) {
  return make(Kind::And, 0, {}, ArithOp::Add, CmpOp::Eq, std::move(lhs), std::move(rhs));
}

bool operator==(const Expr& a, const Expr& b) {
  if (&a == &b) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Expr::Kind::IntLit:
    case Expr::Kind::BoolLit: return a.int_value() == b.int_value();
    case Expr::Kind::Var: return a.name() == b.name();
    case Expr::Kind::Nu: return true;
    case Expr::Kind::Neg: return *a.operand() == *b.operand();
    case Expr::Kind::Arith:
      return a.arith_op() == b.arith_op() && *a.lhs() == *b.lhs() && *a.rhs() == *b.rhs();
    case Expr::Kind::Cmp:
      return a.cmp_op() == b.cmp_op() && *a.lhs() == *b.lhs() && *a.rhs() == *b.rhs();
    case Expr::Kind::And: return *a.lhs() == *b.lhs() && *a.rhs() == *b.rhs();
  }
  return false;
}

std::string to_string(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::IntLit: return std::to_string(e.int_value());
    case Expr::Kind::BoolLit: return e.bool_value() ? "true" : "false";
    case Expr::Kind::Var: return e.name();
    case Expr::Kind::Nu: return "v";
    case Expr::Kind::Neg: {
      const Expr& o = *e.operand();
      if (o.kind() == Expr::Kind::Var || o.kind() == Expr::Kind::Nu) return "-" + to_string(o);
      if (o.kind() == Expr::Kind::Arith) return "-" + to_string(o);
      return "-(" + to_string(o) + ")";
    }
    case Expr::Kind::Arith: {
      std::string rhs = to_string(*e.rhs());
      // Keeps "a--3" from appearing, which would lex as a comment.
      if (e.rhs()->kind() == Expr::Kind::IntLit && e.rhs()->int_value() < 0) rhs = "(" + rhs + ")";
      if (e.rhs()->kind() == Expr::Kind::Neg) rhs = "(" + rhs + ")";
      return "(" + to_string(*e.lhs()) + arith_symbol(e.arith_op()) + rhs + ")";
    }
    case Expr::Kind::Cmp:
      return "(" + to_string(*e.lhs()) + std::string(to_string(e.cmp_op())) + to_string(*e.rhs()) +
             ")";
    case Expr::Kind::And: return "(" + to_string(*e.lhs()) + " && " + to_string(*e.rhs()) + ")";
  }
  return "?";
}

namespace {

void collect_vars(const Expr& e, std::set<std::string>& out) {
  switch (e.kind()) {
    case Expr::Kind::Var: out.insert(e.name()); break;
    case Expr::Kind::Neg: collect_vars(*e.operand(), out); break;
    case Expr::Kind::Arith:
    case Expr::Kind::Cmp:
    case Expr::Kind::And:
      collect_vars(*e.lhs(), out);
      collect_vars(*e.rhs(), out);
      break;
    default: break;
  }
}

template <class Leaf>
ExprPtr rebuild(const ExprPtr& e, const Leaf& leaf) {
  switch (e->kind()) {
    case Expr::Kind::Var:
    case Expr::Kind::Nu: return leaf(e);
    case Expr::Kind::Neg: {
      auto o = rebuild(e->operand(), leaf);
      return o == e->operand() ? e : Expr::neg(o);
    }
    case Expr::Kind::Arith:
    case Expr::Kind::Cmp:
    case Expr::Kind::And: {
      auto l = rebuild(e->lhs(), leaf);
      auto r = rebuild(e->rhs(), leaf);
      if (l == e->lhs() && r == e->rhs()) return e;
      if (e->kind() == Expr::Kind::Arith) return Expr::arith(e->arith_op(), l, r);
      if (e->kind() == Expr::Kind::Cmp) return Expr::cmp(e->cmp_op(), l, r);
      return Expr::conj(l, r);
    }
    default: return e;
  }
}

}  // namespace

std::set<std::string> free_vars(const Expr& e) {
  std::set<std::string> out;
  collect_vars(e, out);
  return out;
}

bool mentions_nu(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Nu: return true;
    case Expr::Kind::Neg: return mentions_nu(*e.operand());
    case Expr::Kind::Arith:
    case Expr::Kind::Cmp:
    case Expr::Kind::And: return mentions_nu(*e.lhs()) || mentions_nu(*e.rhs());
    default: return false;
  }
}

ExprPtr substitute(const ExprPtr& e, const std::string& var, const ExprPtr& replacement) {
  return rebuild(e, [&](const ExprPtr& leaf) {
    return leaf->kind() == Expr::Kind::Var && leaf->name() == var ? replacement : leaf;
  });
}

ExprPtr substitute_nu(const ExprPtr& e, const ExprPtr& replacement) {
  return rebuild(e, [&](const ExprPtr& leaf) {
    return leaf->kind() == Expr::Kind::Nu ? replacement : leaf;
  });
}

std::optional<BaseType> type_of(const Expr& e, BaseType nu_type, const VarTypeLookup& lookup) {
  auto both = [&](BaseType want) {
    auto l = type_of(*e.lhs(), nu_type, lookup);
    auto r = type_of(*e.rhs(), nu_type, lookup);
    return l == want && r == want;
  };
  switch (e.kind()) {
    case Expr::Kind::IntLit: return BaseType::Int;
    case Expr::Kind::BoolLit: return BaseType::Bool;
    case Expr::Kind::Var: return lookup(e.name());
    case Expr::Kind::Nu: return nu_type;
    case Expr::Kind::Neg:
      if (type_of(*e.operand(), nu_type, lookup) == BaseType::Int) return BaseType::Int;
      return std::nullopt;
    case Expr::Kind::Arith:
      if (both(BaseType::Int)) return BaseType::Int;
      return std::nullopt;
    case Expr::Kind::Cmp: {
      if (e.cmp_op() == CmpOp::Eq) {
        auto l = type_of(*e.lhs(), nu_type, lookup);
        auto r = type_of(*e.rhs(), nu_type, lookup);
        if (l && l == r) return BaseType::Bool;
        return std::nullopt;
      }
      if (both(BaseType::Int)) return BaseType::Bool;
      return std::nullopt;
    }
    case Expr::Kind::And:
      if (both(BaseType::Bool)) return BaseType::Bool;
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace lqi
