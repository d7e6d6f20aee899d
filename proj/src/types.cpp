#include "lqi/types.hpp"

#include <algorithm>

#include "lqi/error.hpp"

namespace lqi {

SimpleTypePtr SimpleType::base_type(BaseType b) {
  static const SimpleTypePtr i =
      std::make_shared<const SimpleType>(SimpleType{Kind::Base, BaseType::Int, {}, nullptr, nullptr});
  static const SimpleTypePtr o = std::make_shared<const SimpleType>(
      SimpleType{Kind::Base, BaseType::Bool, {}, nullptr, nullptr});
  return b == BaseType::Int ? i : o;
}

SimpleTypePtr SimpleType::var(std::string name) {
  return std::make_shared<const SimpleType>(
      SimpleType{Kind::Var, BaseType::Int, std::move(name), nullptr, nullptr});
}

SimpleTypePtr SimpleType::arrow(std::string binder, SimpleTypePtr dom, SimpleTypePtr cod) {
  return std::make_shared<const SimpleType>(
      SimpleType{Kind::Arrow, BaseType::Int, std::move(binder), std::move(dom), std::move(cod)});
}

bool same_shape(const SimpleType& a, const SimpleType& b) {
  if (&a == &b) return true;
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case SimpleType::Kind::Base: return a.base == b.base;
    case SimpleType::Kind::Var: return a.name == b.name;
    case SimpleType::Kind::Arrow: return same_shape(*a.dom, *b.dom) && same_shape(*a.cod, *b.cod);
  }
  return false;
}

std::string tyvar_spelling(const std::string& name) { return "'" + name; }

std::string to_string(const SimpleType& t) {
  switch (t.kind) {
    case SimpleType::Kind::Base: return std::string(to_string(t.base));
    case SimpleType::Kind::Var: return tyvar_spelling(t.name);
    case SimpleType::Kind::Arrow: {
      std::string dom = to_string(*t.dom);
      if (t.dom->kind == SimpleType::Kind::Arrow) dom = "(" + dom + ")";
      return dom + " -> " + to_string(*t.cod);
    }
  }
  return "?";
}

namespace {

void collect_type_vars(const SimpleType& t, std::set<std::string>& out) {
  switch (t.kind) {
    case SimpleType::Kind::Base: break;
    case SimpleType::Kind::Var: out.insert(t.name); break;
    case SimpleType::Kind::Arrow:
      collect_type_vars(*t.dom, out);
      collect_type_vars(*t.cod, out);
      break;
  }
}

}  // namespace

std::set<std::string> type_vars(const SimpleType& t) {
  std::set<std::string> out;
  collect_type_vars(t, out);
  return out;
}

SimpleTypePtr subst_tyvar(const SimpleTypePtr& t, const std::string& alpha,
                          const SimpleTypePtr& replacement) {
  switch (t->kind) {
    case SimpleType::Kind::Base: return t;
    case SimpleType::Kind::Var: return t->name == alpha ? replacement : t;
    case SimpleType::Kind::Arrow: {
      auto d = subst_tyvar(t->dom, alpha, replacement);
      auto c = subst_tyvar(t->cod, alpha, replacement);
      if (d == t->dom && c == t->cod) return t;
      return SimpleType::arrow(t->name, d, c);
    }
  }
  return t;
}

std::size_t base_positions(const SimpleType& t) {
  switch (t.kind) {
    case SimpleType::Kind::Base: return 1;
    case SimpleType::Kind::Var: return 0;
    case SimpleType::Kind::Arrow: return base_positions(*t.dom) + base_positions(*t.cod);
  }
  return 0;
}

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  if (!avoid.count(base)) return base;
  for (std::size_t k = 1;; ++k) {
    std::string candidate = base + "'" + std::to_string(k);
    if (!avoid.count(candidate)) return candidate;
  }
}

namespace {

std::string paren_type(const LiquidType& t, bool paren_single_fun) {
  std::string s = to_string(t);
  bool single = t.size() == 1;
  bool fun = t.arms().front().kind == Arm::Kind::Fun;
  if (!single || (fun && paren_single_fun)) return "(" + s + ")";
  return s;
}

}  // namespace

std::string to_string(const Arm& arm) { return arm.key; }

std::string to_string(const LiquidType& t) {
  if (t.size() == 1) return t.arms().front().key;
  std::string out;
  for (const Arm& a : t.arms()) {
    if (!out.empty()) out += " /\\ ";
    out += a.kind == Arm::Kind::Fun ? "(" + a.key + ")" : a.key;
  }
  return out;
}

std::string to_string(const Scheme& s) {
  if (s.quantified.empty()) return to_string(s.body);
  std::string out = "forall";
  for (const auto& q : s.quantified) out += " " + tyvar_spelling(q);
  return out + ". " + to_string(s.body);
}

Arm Arm::base_arm(BaseType b, ExprPtr refinement) {
  Arm a{Kind::Base, b, std::move(refinement), {}, nullptr, nullptr, SimpleType::base_type(b), {}};
  a.key = "{v : " + std::string(to_string(b)) + " | " + to_string(*a.refinement) + "}";
  return a;
}

Arm Arm::tyvar(std::string name) {
  Arm a{Kind::TyVar, BaseType::Int, nullptr, std::move(name), nullptr, nullptr, nullptr, {}};
  a.shape = SimpleType::var(a.name);
  a.key = tyvar_spelling(a.name);
  return a;
}

Arm Arm::fun(std::string binder, LiquidType dom, LiquidType cod) {
  Arm a{Kind::Fun, BaseType::Int, nullptr, std::move(binder), nullptr, nullptr, nullptr, {}};
  a.shape = SimpleType::arrow(a.name, dom.shape(), cod.shape());
  a.key = a.name + ": " + paren_type(dom, true) + " -> " + paren_type(cod, false);
  a.dom = std::make_shared<const LiquidType>(std::move(dom));
  a.cod = std::make_shared<const LiquidType>(std::move(cod));
  return a;
}

bool operator==(const LiquidType& a, const LiquidType& b) {
  if (a.arms_.size() != b.arms_.size()) return false;
  for (std::size_t i = 0; i < a.arms_.size(); ++i) {
    if (a.arms_[i].key != b.arms_[i].key) return false;
  }
  return true;
}

namespace {

void collect_free(const LiquidType& t, std::set<std::string>& out);

void collect_free(const Arm& arm, std::set<std::string>& out) {
  switch (arm.kind) {
    case Arm::Kind::Base: {
      auto fv = free_vars(*arm.refinement);
      out.insert(fv.begin(), fv.end());
      break;
    }
    case Arm::Kind::TyVar: break;
    case Arm::Kind::Fun: {
      collect_free(*arm.dom, out);
      std::set<std::string> inner;
      collect_free(*arm.cod, inner);
      inner.erase(arm.name);
      out.insert(inner.begin(), inner.end());
      break;
    }
  }
}

void collect_free(const LiquidType& t, std::set<std::string>& out) {
  for (const Arm& a : t.arms()) collect_free(a, out);
}

// A binder name `n` may be given to every function arm when it is not free in any arm.
std::string unified_binder(const std::vector<Arm>& arms) {
  std::set<std::string> binders;
  std::set<std::string> fv;
  for (const Arm& a : arms) {
    binders.insert(a.name);
    collect_free(a, fv);
  }
  if (binders.size() == 1) return *binders.begin();
  return fresh_name("x", fv);
}

}  // namespace

std::set<std::string> free_vars(const LiquidType& t) {
  std::set<std::string> out;
  collect_free(t, out);
  return out;
}

std::set<std::string> free_vars(const Arm& arm) {
  std::set<std::string> out;
  collect_free(arm, out);
  return out;
}

LiquidType codomain_at(const Arm& arm, const std::string& name) {
  if (arm.name == name) return *arm.cod;
  return subst_value(*arm.cod, arm.name, Expr::var(name));
}

LiquidType LiquidType::make(std::vector<Arm> arms) {
  if (arms.empty()) throw IllFoundedType("empty intersection");
  for (std::size_t i = 1; i < arms.size(); ++i) {
    if (arms[i].kind != arms[0].kind || !same_shape(*arms[i].shape, *arms[0].shape)) {
      throw IllFoundedType("intersection of " + to_string(*arms[0].shape) + " and " +
                           to_string(*arms[i].shape));
    }
  }
  if (arms[0].kind == Arm::Kind::Fun && arms.size() > 1) {
    std::string binder = unified_binder(arms);
    for (Arm& a : arms) {
      if (a.name != binder) a = Arm::fun(binder, *a.dom, codomain_at(a, binder));
    }
  }
  if (arms[0].kind == Arm::Kind::Base) {
    auto top = [](const Arm& a) { return a.refinement->is_top(); };
    if (!std::all_of(arms.begin(), arms.end(), top)) {
      arms.erase(std::remove_if(arms.begin(), arms.end(), top), arms.end());
    }
  }
  std::sort(arms.begin(), arms.end(), [](const Arm& a, const Arm& b) { return a.key < b.key; });
  arms.erase(std::unique(arms.begin(), arms.end(),
                         [](const Arm& a, const Arm& b) { return a.key == b.key; }),
             arms.end());
  return LiquidType(std::move(arms));
}

SimpleTypePtr shape_of(const LiquidType& t) { return t.shape(); }
SimpleTypePtr shape_of(const Scheme& s) { return s.body.shape(); }

LiquidType intersect(const LiquidType& a, const LiquidType& b) {
  std::vector<Arm> arms = a.arms();
  arms.insert(arms.end(), b.arms().begin(), b.arms().end());
  return LiquidType::make(std::move(arms));
}

namespace {

bool arm_well_founded(const Arm& arm, const SimpleType& t) {
  switch (arm.kind) {
    case Arm::Kind::Base: return t.kind == SimpleType::Kind::Base && t.base == arm.base;
    case Arm::Kind::TyVar: return t.kind == SimpleType::Kind::Var && t.name == arm.name;
    case Arm::Kind::Fun:
      return t.kind == SimpleType::Kind::Arrow && well_founded(*arm.dom, *t.dom) &&
             well_founded(*arm.cod, *t.cod);
  }
  return false;
}

}  // namespace

bool well_founded(const LiquidType& t, const SimpleType& shape) {
  return std::all_of(t.arms().begin(), t.arms().end(),
                     [&](const Arm& a) { return arm_well_founded(a, shape); });
}

LiquidType subst_value(const LiquidType& t, const std::string& var, const ExprPtr& replacement) {
  std::set<std::string> repl_fv = free_vars(*replacement);
  std::vector<Arm> out;
  out.reserve(t.size());
  bool changed = false;
  for (const Arm& a : t.arms()) {
    switch (a.kind) {
      case Arm::Kind::Base: {
        auto r = substitute(a.refinement, var, replacement);
        changed |= r != a.refinement;
        out.push_back(r == a.refinement ? a : Arm::base_arm(a.base, r));
        break;
      }
      case Arm::Kind::TyVar: out.push_back(a); break;
      case Arm::Kind::Fun: {
        LiquidType dom = subst_value(*a.dom, var, replacement);
        if (a.name == var) {
          out.push_back(Arm::fun(a.name, dom, *a.cod));
          changed = true;
          break;
        }
        std::string binder = a.name;
        LiquidType cod = *a.cod;
        if (repl_fv.count(binder)) {
          std::set<std::string> avoid = free_vars(cod);
          avoid.insert(repl_fv.begin(), repl_fv.end());
          avoid.insert(var);
          binder = fresh_name(a.name, avoid);
          cod = subst_value(cod, a.name, Expr::var(binder));
        }
        out.push_back(Arm::fun(binder, dom, subst_value(cod, var, replacement)));
        changed = true;
        break;
      }
    }
  }
  if (!changed) return t;
  return LiquidType::make(std::move(out));
}

Scheme subst_value(const Scheme& s, const std::string& var, const ExprPtr& replacement) {
  return Scheme{s.quantified, subst_value(s.body, var, replacement)};
}

LiquidType subst_tyvar(const LiquidType& t, const std::string& alpha,
                       const LiquidType& replacement) {
  std::vector<Arm> out;
  bool changed = false;
  std::set<std::string> repl_fv;
  bool repl_fv_ready = false;
  for (const Arm& a : t.arms()) {
    switch (a.kind) {
      case Arm::Kind::Base: out.push_back(a); break;
      case Arm::Kind::TyVar:
        if (a.name == alpha) {
          out.insert(out.end(), replacement.arms().begin(), replacement.arms().end());
          changed = true;
        } else {
          out.push_back(a);
        }
        break;
      case Arm::Kind::Fun: {
        if (!repl_fv_ready) {
          repl_fv = free_vars(replacement);
          repl_fv_ready = true;
        }
        std::string binder = a.name;
        LiquidType cod = *a.cod;
        if (repl_fv.count(binder)) {
          std::set<std::string> avoid = free_vars(cod);
          avoid.insert(repl_fv.begin(), repl_fv.end());
          binder = fresh_name(a.name, avoid);
          cod = subst_value(cod, a.name, Expr::var(binder));
        }
        out.push_back(Arm::fun(binder, subst_tyvar(*a.dom, alpha, replacement),
                               subst_tyvar(cod, alpha, replacement)));
        changed = true;
        break;
      }
    }
  }
  if (!changed) return t;
  return LiquidType::make(std::move(out));
}

LiquidType top_skeleton(const SimpleType& t) {
  switch (t.kind) {
    case SimpleType::Kind::Base: return LiquidType::base(t.base, Expr::top());
    case SimpleType::Kind::Var: return LiquidType::single(Arm::tyvar(t.name));
    case SimpleType::Kind::Arrow:
      return LiquidType::single(Arm::fun(t.name, top_skeleton(*t.dom), top_skeleton(*t.cod)));
  }
  throw IllFoundedType("unknown shape");
}

}  // namespace lqi
