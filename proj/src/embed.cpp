#include "lqi/embed.hpp"

#include <map>

#include "lqi/error.hpp"

namespace lqi {

namespace {

bool is_constant(const LTerm& t) {
  switch (t.kind) {
    case LTerm::Kind::Const: return true;
    case LTerm::Kind::Neg: return is_constant(*t.args[0]);
    case LTerm::Kind::Add:
    case LTerm::Kind::Sub:
    case LTerm::Kind::Mul: return is_constant(*t.args[0]) && is_constant(*t.args[1]);
    default: return false;
  }
}

LTermPtr product(LTermPtr a, LTermPtr b, const EmbedOptions& opts) {
  if (opts.nonlinear || is_constant(*a) || is_constant(*b)) return LTerm::mul(a, b);
  return LTerm::app("times", {a, b});
}

struct Embedder {
  BaseType nu_type;
  const VarTypeLookup& lookup;
  const EmbedOptions& opts;

  std::optional<BaseType> sort(const Expr& e) const { return type_of(e, nu_type, lookup); }

  LTermPtr term(const Expr& e) const {
    switch (e.kind()) {
      case Expr::Kind::IntLit: return LTerm::constant(e.int_value());
      case Expr::Kind::Var: return LTerm::var(e.name());
      case Expr::Kind::Nu: return LTerm::var(kNuSymbol);
      case Expr::Kind::Neg: return LTerm::neg(term(*e.operand()));
      case Expr::Kind::Arith: {
        auto a = term(*e.lhs());
        auto b = term(*e.rhs());
        switch (e.arith_op()) {
          case ArithOp::Add: return LTerm::add(a, b);
          case ArithOp::Sub: return LTerm::sub(a, b);
          case ArithOp::Mul: return product(a, b, opts);
        }
        break;
      }
      default: break;
    }
    throw EmbeddingError("expected an integer expression, got " + to_string(e));
  }

  FormulaPtr formula(const Expr& e) const {
    switch (e.kind()) {
      case Expr::Kind::BoolLit: return e.bool_value() ? Formula::truth() : Formula::falsity();
      case Expr::Kind::Var:
        if (sort(e) == BaseType::Bool) return Formula::bool_var(e.name());
        break;
      case Expr::Kind::Nu:
        if (nu_type == BaseType::Bool) return Formula::bool_var(kNuSymbol);
        break;
      case Expr::Kind::And: return Formula::conj({formula(*e.lhs()), formula(*e.rhs())});
      case Expr::Kind::Cmp: {
        if (e.cmp_op() == CmpOp::Eq && sort(*e.lhs()) == BaseType::Bool) {
          return Formula::iff(formula(*e.lhs()), formula(*e.rhs()));
        }
        return Formula::cmp(e.cmp_op(), term(*e.lhs()), term(*e.rhs()));
      }
      default: break;
    }
    throw EmbeddingError("expected a boolean expression, got " + to_string(e));
  }
};

}  // namespace

FormulaPtr embed_refinement(const Expr& e, BaseType nu_type, const VarTypeLookup& lookup,
                            const EmbedOptions& opts) {
  return Embedder{nu_type, lookup, opts}.formula(e);
}

FormulaPtr embed_refinement(const Expr& e, BaseType nu_type, const EmbedOptions& opts) {
  VarTypeLookup ints = [](const std::string&) { return std::optional<BaseType>(BaseType::Int); };
  return embed_refinement(e, nu_type, ints, opts);
}

LTermPtr embed_int(const Expr& e, const VarTypeLookup& lookup, BaseType nu_type,
                   const EmbedOptions& opts) {
  return Embedder{nu_type, lookup, opts}.term(e);
}

LTermPtr TermEmbedder::embed(const Term& m) {
  switch (m.kind) {
    case Term::Kind::Var: return LTerm::var(m.name);
    case Term::Kind::Const:
      if (m.constant.kind == Constant::Kind::Int) return LTerm::constant(m.constant.value);
      if (m.constant.kind == Constant::Kind::Prim && m.constant.args.empty()) {
        return LTerm::app(std::string(prim_name(m.constant.prim)), {});
      }
      break;
    case Term::Kind::Lam: return LTerm::app("lam" + std::to_string(lambdas_++), {});
    case Term::Kind::TyAbs:
    case Term::Kind::TyInst: return embed(*m.first);
    case Term::Kind::App: {
      // Saturated arithmetic primitives map to arithmetic.
      if (m.first->kind == Term::Kind::App) {
        const Term& head = *m.first->first;
        if (head.kind == Term::Kind::Const && head.constant.kind == Constant::Kind::Prim) {
          LTermPtr a = embed(*m.first->second);
          LTermPtr b = embed(*m.second);
          switch (head.constant.prim) {
            case Prim::Add: return LTerm::add(a, b);
            case Prim::Sub: return LTerm::sub(a, b);
            case Prim::Mul: return product(a, b, opts_);
            default: break;
          }
        }
      }
      if (m.first->kind == Term::Kind::Const && m.first->constant.kind == Constant::Kind::Prim &&
          m.first->constant.prim == Prim::Neg) {
        return LTerm::neg(embed(*m.second));
      }
      LTermPtr f = embed(*m.first);
      LTermPtr a = embed(*m.second);
      return LTerm::app("app", {f, a});
    }
    default: break;
  }
  throw EmbeddingError("term has no integer embedding: " + to_string(m));
}

FormulaPtr embed_env(const Env& env, const EmbedOptions& opts) {
  auto bindings = env.bindings();
  // A binding shadowed later keeps its constraint under a private logic name.
  std::map<std::string, std::size_t> last;
  for (std::size_t i = 0; i < bindings.size(); ++i) last[bindings[i].first] = i;
  std::map<std::string, std::string> scope;
  std::map<std::string, BaseType> logic_types;
  VarTypeLookup lookup = [&](const std::string& y) -> std::optional<BaseType> {
    auto it = logic_types.find(y);
    return it == logic_types.end() ? BaseType::Int : it->second;
  };
  std::vector<FormulaPtr> parts;
  for (std::size_t i = 0; i < bindings.size(); ++i) {
    const auto& [name, scheme] = bindings[i];
    std::string logic = last[name] == i ? name : name + "'" + std::to_string(i);
    if (scheme.is_mono() && scheme.body.shape()->kind == SimpleType::Kind::Base) {
      BaseType base = scheme.body.shape()->base;
      logic_types[logic] = base;
      for (const Arm& arm : scheme.body.arms()) {
        ExprPtr e = arm.refinement;
        for (const auto& y : free_vars(*e)) {
          auto it = scope.find(y);
          if (it != scope.end() && it->second != y) e = substitute(e, y, Expr::var(it->second));
        }
        e = substitute_nu(e, Expr::var(logic));
        parts.push_back(embed_refinement(*e, base, lookup, opts));
      }
    }
    scope[name] = logic;
  }
  return Formula::conj(std::move(parts));
}

}  // namespace lqi
