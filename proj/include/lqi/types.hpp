#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "lqi/refinement.hpp"

namespace lqi {

struct SimpleType;
using SimpleTypePtr = std::shared_ptr<const SimpleType>;

/// ML type used as the shape of a liquid type. Arrows carry the binder
/// name of their domain so refined instances can mention it.
struct SimpleType {
  enum class Kind { Base, Var, Arrow };

  Kind kind;
  BaseType base = BaseType::Int;
  std::string name;  // type variable name, or arrow binder
  SimpleTypePtr dom;
  SimpleTypePtr cod;

  static SimpleTypePtr base_type(BaseType b);
  static SimpleTypePtr int_type() { return base_type(BaseType::Int); }
  static SimpleTypePtr bool_type() { return base_type(BaseType::Bool); }
  static SimpleTypePtr var(std::string name);
  static SimpleTypePtr arrow(std::string binder, SimpleTypePtr dom, SimpleTypePtr cod);
};

// Structural equality ignoring arrow binders.
bool same_shape(const SimpleType& a, const SimpleType& b);
std::string to_string(const SimpleType& t);
inline std::string to_string(const SimpleTypePtr& t) { return to_string(*t); }
std::set<std::string> type_vars(const SimpleType& t);
SimpleTypePtr subst_tyvar(const SimpleTypePtr& t, const std::string& alpha,
                          const SimpleTypePtr& replacement);
// Number of base (refinable) positions.
std::size_t base_positions(const SimpleType& t);

class LiquidType;
using LiquidTypePtr = std::shared_ptr<const LiquidType>;

struct Arm {
  enum class Kind { Base, Fun, TyVar };

  Kind kind;
  BaseType base = BaseType::Int;
  ExprPtr refinement;
  std::string name;  // binder of a Fun arm, or the type variable
  LiquidTypePtr dom;
  LiquidTypePtr cod;
  SimpleTypePtr shape;
  std::string key;  // printed form; orders arms

  static Arm base_arm(BaseType b, ExprPtr refinement);
  static Arm fun(std::string binder, LiquidType dom, LiquidType cod);
  static Arm tyvar(std::string name);
};

/// Non-empty intersection of arms sharing one shape, kept canonical:
/// flattened, sorted by printed form, deduplicated. A base arm refined by
/// `true` is dropped next to other arms. Function arms of one
/// intersection share a single binder name.
class LiquidType {
 public:
  // Throws IllFoundedType on an empty list or differing shapes.
  static LiquidType make(std::vector<Arm> arms);
  static LiquidType single(Arm arm) { return make({std::move(arm)}); }
  static LiquidType base(BaseType b, ExprPtr refinement) {
    return single(Arm::base_arm(b, std::move(refinement)));
  }

  const std::vector<Arm>& arms() const { return arms_; }
  std::size_t size() const { return arms_.size(); }
  const SimpleTypePtr& shape() const { return arms_.front().shape; }

  friend bool operator==(const LiquidType& a, const LiquidType& b);

 private:
  explicit LiquidType(std::vector<Arm> arms) : arms_(std::move(arms)) {}
  std::vector<Arm> arms_;
};

struct Scheme {
  std::vector<std::string> quantified;
  LiquidType body;

  static Scheme mono(LiquidType body) { return Scheme{{}, std::move(body)}; }
  bool is_mono() const { return quantified.empty(); }
  friend bool operator==(const Scheme& a, const Scheme& b) {
    return a.quantified == b.quantified && a.body == b.body;
  }
};

std::string to_string(const Arm& arm);
std::string to_string(const LiquidType& t);
std::string to_string(const Scheme& s);
std::string tyvar_spelling(const std::string& name);

SimpleTypePtr shape_of(const LiquidType& t);
// Monomorphic shape of the body.
SimpleTypePtr shape_of(const Scheme& s);

LiquidType intersect(const LiquidType& a, const LiquidType& b);
bool well_founded(const LiquidType& t, const SimpleType& shape);

// Program variables free in refinements (function binders excluded).
std::set<std::string> free_vars(const LiquidType& t);
std::set<std::string> free_vars(const Arm& arm);

// Capture-avoiding substitution of `replacement` for `var` in refinements.
LiquidType subst_value(const LiquidType& t, const std::string& var, const ExprPtr& replacement);
Scheme subst_value(const Scheme& s, const std::string& var, const ExprPtr& replacement);

// Replaces type-variable arms named alpha by the arms of `replacement`.
LiquidType subst_tyvar(const LiquidType& t, const std::string& alpha,
                       const LiquidType& replacement);

// Every base position refined by `true`.
LiquidType top_skeleton(const SimpleType& t);

// Codomain of a Fun arm with its binder renamed to `name`.
LiquidType codomain_at(const Arm& arm, const std::string& name);

// First of `base`, `base'1`, `base'2`, ... not in `avoid`.
std::string fresh_name(const std::string& base, const std::set<std::string>& avoid);

}  // namespace lqi
