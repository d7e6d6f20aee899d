#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>

namespace lqi {

enum class BaseType { Int, Bool };

std::string_view to_string(BaseType b);

enum class CmpOp { Eq, Le, Ge, Lt, Gt };
enum class ArithOp { Add, Sub, Mul };

std::string_view to_string(CmpOp op);

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Refinement expression: linear integer arithmetic and comparisons over
/// program variables and the value variable, plus boolean literals and
/// conjunction. The top refinement is the literal `true`.
class Expr {
 public:
  enum class Kind { IntLit, BoolLit, Var, Nu, Neg, Arith, Cmp, And };

  static ExprPtr int_lit(std::int64_t value);
  static ExprPtr bool_lit(bool value);
  static ExprPtr top() { return bool_lit(true); }
  static ExprPtr var(std::string name);
  static ExprPtr nu();
  // Folds negation of an integer literal into the literal.
  static ExprPtr neg(ExprPtr operand);
  static ExprPtr arith(ArithOp op, ExprPtr lhs, ExprPtr rhs);
  static ExprPtr cmp(CmpOp op, ExprPtr lhs, ExprPtr rhs);
  static ExprPtr conj(ExprPtr lhs, ExprPtr rhs);

  Kind kind() const { return kind_; }
  std::int64_t int_value() const { return int_value_; }
  bool bool_value() const { return int_value_ != 0; }
  const std::string& name() const { return name_; }
  ArithOp arith_op() const { return arith_op_; }
  CmpOp cmp_op() const { return cmp_op_; }
  const ExprPtr& lhs() const { return lhs_; }
  const ExprPtr& rhs() const { return rhs_; }
  const ExprPtr& operand() const { return lhs_; }

  bool is_top() const { return kind_ == Kind::BoolLit && int_value_ != 0; }

  Expr(Kind kind, std::int64_t value, std::string name, ArithOp aop, CmpOp cop, ExprPtr lhs,
       ExprPtr rhs)
      : kind_(kind),
        int_value_(value),
        name_(std::move(name)),
        arith_op_(aop),
        cmp_op_(cop),
        lhs_(std::move(lhs)),
        rhs_(std::move(rhs)) {}

 private:
  Kind kind_;
  std::int64_t int_value_;
  std::string name_;
  ArithOp arith_op_;
  CmpOp cmp_op_;
  ExprPtr lhs_;
  ExprPtr rhs_;
};

bool operator==(const Expr& a, const Expr& b);

// Surface spelling; the value variable prints as `v`.
std::string to_string(const Expr& e);
inline std::string to_string(const ExprPtr& e) { return to_string(*e); }

// Program variables occurring in `e` (the value variable excluded).
std::set<std::string> free_vars(const Expr& e);
bool mentions_nu(const Expr& e);

ExprPtr substitute(const ExprPtr& e, const std::string& var, const ExprPtr& replacement);
ExprPtr substitute_nu(const ExprPtr& e, const ExprPtr& replacement);

using VarTypeLookup = std::function<std::optional<BaseType>(const std::string&)>;

/// Base type of `e` with the value variable at `nu_type`; nullopt when `e`
/// is ill-typed or mentions a variable `lookup` does not know.
std::optional<BaseType> type_of(const Expr& e, BaseType nu_type, const VarTypeLookup& lookup);

}  // namespace lqi
