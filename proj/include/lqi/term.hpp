#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lqi/types.hpp"

namespace lqi {

enum class Prim { Neg, Add, Sub, Mul, Le, Ge, Lt, Gt, Eq, Ite, Fix };

int prim_arity(Prim p);
std::string_view prim_name(Prim p);
// Surface token for the primitive, e.g. "+" for add.
std::string_view prim_spelling(Prim p);
std::optional<Prim> prim_from_spelling(std::string_view s);

struct Term;
using TermPtr = std::shared_ptr<const Term>;

/// Constant: integer or boolean literal, or a primitive. A primitive that
/// has consumed fewer values than its arity keeps them in `args`; such
/// partial applications only arise during evaluation.
struct Constant {
  enum class Kind { Int, Bool, Prim };

  Kind kind = Kind::Int;
  std::int64_t value = 0;
  lqi::Prim prim = lqi::Prim::Neg;
  std::vector<TermPtr> args;

  static Constant int_lit(std::int64_t v) { return {Kind::Int, v, lqi::Prim::Neg, {}}; }
  static Constant bool_lit(bool b) { return {Kind::Bool, b ? 1 : 0, lqi::Prim::Neg, {}}; }
  static Constant primitive(lqi::Prim p) { return {Kind::Prim, 0, p, {}}; }

  bool is_partial() const { return !args.empty(); }
};

std::string to_string(const Constant& c);

struct SourcePos {
  int line = 0;
  int column = 0;
};

struct Term {
  enum class Kind { Var, Const, Lam, App, Let, TyAbs, TyInst };

  Kind kind;
  std::string name;  // variable, binder or type variable
  Constant constant;
  SimpleTypePtr type;  // TyInst argument, or Lam binder annotation
  TermPtr first;       // Lam/TyAbs/TyInst body, App function, Let bound term
  TermPtr second;      // App argument, Let body
  SourcePos pos;

  static TermPtr var(std::string name, SourcePos pos = {});
  static TermPtr constant_(Constant c, SourcePos pos = {});
  static TermPtr int_lit(std::int64_t v, SourcePos pos = {});
  static TermPtr bool_lit(bool b, SourcePos pos = {});
  static TermPtr prim(Prim p, SourcePos pos = {});
  static TermPtr lam(std::string binder, TermPtr body, SourcePos pos = {},
                     SimpleTypePtr annotation = nullptr);
  static TermPtr app(TermPtr fun, TermPtr arg, SourcePos pos = {});
  static TermPtr let(std::string binder, TermPtr bound, TermPtr body, SourcePos pos = {});
  static TermPtr tyabs(std::string tyvar, TermPtr body, SourcePos pos = {});
  static TermPtr tyinst(SimpleTypePtr type, TermPtr body, SourcePos pos = {});

  // Accessors by role.
  const TermPtr& body() const { return kind == Kind::Let ? second : first; }
  const TermPtr& fun() const { return first; }
  const TermPtr& arg() const { return second; }
  const TermPtr& bound() const { return first; }
};

TermPtr app_spine(TermPtr head, const std::vector<TermPtr>& args);

bool is_value(const Term& t);
// Variables, constants and type instantiations of them.
bool is_atomic(const Term& t);

std::set<std::string> free_vars(const Term& t);
// Every variable and binder name occurring in `t`.
std::set<std::string> all_names(const Term& t);

// Capture-avoiding [value/x]m.
TermPtr subst_term(const TermPtr& value, const std::string& x, const TermPtr& m);

TermPtr erase_types(const TermPtr& t);
// Partial-application constants rebuilt as application spines.
TermPtr expand_partials(const TermPtr& t);

bool terms_equal(const Term& a, const Term& b);

std::string to_string(const Term& t);
inline std::string to_string(const TermPtr& t) { return to_string(*t); }

// First of base1, base2, ... not in `avoid`; valid as a surface identifier.
std::string fresh_term_name(const std::string& base, const std::set<std::string>& avoid);

/// Renames binders so no binder shadows a name in `scope` or an enclosing
/// binder, and none is spelled `v`.
TermPtr rename_binders(const TermPtr& t, const std::set<std::string>& scope = {});

using ValueSubst = std::vector<std::pair<std::string, TermPtr>>;

// Refinement expression denoted by a base value or variable.
std::optional<ExprPtr> value_expr(const Term& t);

// Applies rho inside refinements; function values leave the type unchanged.
Scheme subst_type(const ValueSubst& rho, const Scheme& s);
ValueSubst compose(const ValueSubst& first, const ValueSubst& second);

}  // namespace lqi
