#include "lqi/infer.hpp"

#include <limits>
#include <map>

#include "lqi/anf.hpp"
#include "lqi/constants.hpp"
#include "lqi/error.hpp"
#include "lqi/shapes.hpp"

namespace lqi {

namespace {

std::vector<ExprPtr> qualifiers_at(BaseType b, const std::vector<ExprPtr>& qualifiers) {
  VarTypeLookup lookup = [](const std::string&) -> std::optional<BaseType> { return BaseType::Int; };
  std::vector<ExprPtr> out;
  for (const auto& q : qualifiers) {
    if (type_of(*q, b, lookup) == BaseType::Bool) out.push_back(q);
  }
  if (out.empty()) out.push_back(Expr::top());
  return out;
}

std::vector<Arm> fresh_arms(const SimpleType& t, const std::vector<ExprPtr>& qualifiers) {
  switch (t.kind) {
    case SimpleType::Kind::Base: {
      std::vector<Arm> out;
      for (const auto& q : qualifiers_at(t.base, qualifiers)) out.push_back(Arm::base_arm(t.base, q));
      return out;
    }
    case SimpleType::Kind::Var: return {Arm::tyvar(t.name)};
    case SimpleType::Kind::Arrow: break;
  }
  std::string binder = t.name.empty() ? "x" : t.name;
  auto doms = fresh_arms(*t.dom, qualifiers);
  auto cods = fresh_arms(*t.cod, qualifiers);
  std::vector<Arm> out;
  out.reserve(doms.size() * cods.size());
  for (const auto& d : doms) {
    for (const auto& c : cods) out.push_back(Arm::fun(binder, LiquidType::single(d), LiquidType::single(c)));
  }
  return out;
}

std::size_t saturating_mul(std::size_t a, std::size_t b) {
  if (a != 0 && b > std::numeric_limits<std::size_t>::max() / a) {
    return std::numeric_limits<std::size_t>::max();
  }
  return a * b;
}

std::string describe(const Term& t) {
  std::string s = to_string(t);
  if (s.size() > 80) s = s.substr(0, 77) + "...";
  if (t.pos.line > 0) s = std::to_string(t.pos.line) + ":" + std::to_string(t.pos.column) + ": " + s;
  return s;
}

SimpleTypePtr shape_in(const Env& env, const TermPtr& m) {
  return shape_check(shape_env(env), m).type;
}

}  // namespace

std::size_t fresh_count(const SimpleType& t, const std::vector<ExprPtr>& qualifiers) {
  switch (t.kind) {
    case SimpleType::Kind::Base: return qualifiers_at(t.base, qualifiers).size();
    case SimpleType::Kind::Var: return 1;
    case SimpleType::Kind::Arrow: break;
  }
  return saturating_mul(fresh_count(*t.dom, qualifiers), fresh_count(*t.cod, qualifiers));
}

LiquidType fresh(const SimpleType& t, const std::vector<ExprPtr>& qualifiers, std::size_t max_arms) {
  std::size_t n = fresh_count(t, qualifiers);
  if (n > max_arms) {
    throw ArmCapExceeded("template for " + to_string(t) + " needs " +
                             (n == std::numeric_limits<std::size_t>::max() ? std::string("too many")
                                                                           : std::to_string(n)) +
                             " arms, above the cap of " + std::to_string(max_arms),
                         max_arms);
  }
  return LiquidType::make(fresh_arms(t, qualifiers));
}

TermPtr prepare(const Env& env, const TermPtr& surface) {
  std::set<std::string> scope = env.names();
  TermPtr renamed = rename_binders(surface, scope);
  TermPtr anf = normalize(renamed, scope);
  return elaborate(shape_env(env), anf).term;
}

std::vector<Arm> Inferrer::well_formed_arms(const Env& env, const LiquidType& t) {
  std::vector<Arm> out;
  for (const Arm& a : t.arms()) {
    if (sub_.well_formed(env, LiquidType::single(a))) out.push_back(a);
  }
  return out;
}

LiquidType Inferrer::mono(const Env& env, const TermPtr& m) {
  Scheme s = infer(env, m);
  if (!s.is_mono()) {
    throw InferenceFailure("polymorphic type " + to_string(s) + " where a monomorphic one is needed: " +
                           describe(*m));
  }
  return s.body;
}

LiquidType Inferrer::apply_result(const Env& env, const LiquidType& fun, const LiquidType& arg_type,
                                  const Term& arg) {
  if (fun.shape()->kind != SimpleType::Kind::Arrow) {
    throw InferenceFailure("applying a non-function of type " + to_string(fun));
  }
  std::optional<ExprPtr> value;
  if (arg_type.shape()->kind == SimpleType::Kind::Base) {
    value = value_expr(arg);
    if (!value) throw InferenceFailure("argument is not atomic: " + describe(arg));
  }
  std::vector<Arm> out;
  for (const Arm& a : fun.arms()) {
    if (!sub_.is_subtype(env, arg_type, *a.dom)) continue;
    LiquidType cod = value ? subst_value(*a.cod, a.name, *value) : *a.cod;
    out.insert(out.end(), cod.arms().begin(), cod.arms().end());
  }
  if (out.empty()) {
    throw InferenceFailure("no arm of " + to_string(fun) + " accepts the argument " + describe(arg) +
                           " of type " + to_string(arg_type));
  }
  return LiquidType::make(std::move(out));
}

LiquidType Inferrer::infer_lambda(const Env& env, const TermPtr& m) {
  SimpleTypePtr shape = shape_in(env, m);
  shape = SimpleType::arrow(m->name, shape->dom, shape->cod);
  LiquidType templ = fresh(*shape, opts_.qualifiers, opts_.max_arms);
  LambdaTrace trace{m->name, templ.arms(), well_formed_arms(env, templ), {}};

  std::map<std::string, std::vector<Arm>> by_domain;
  std::vector<std::string> order;
  for (const Arm& a : trace.wf_arms) {
    const std::string& key = to_string(*a.dom);
    if (!by_domain.count(key)) order.push_back(key);
    by_domain[key].push_back(a);
  }
  bool covered = !order.empty();
  for (const auto& key : order) {
    const auto& group = by_domain[key];
    const Arm& first = group.front();
    Env inner = env.extended(m->name, *first.dom);
    std::optional<LiquidType> body;
    try {
      body = mono(inner, m->first);
    } catch (const InferenceFailure&) {
      covered = false;
      continue;
    }
    bool any = false;
    for (const Arm& a : group) {
      if (sub_.is_subtype(inner, *body, *a.cod)) {
        trace.final_arms.push_back(a);
        any = true;
      }
    }
    covered = covered && any;
  }
  if (trace_) trace_(trace);
  if (covered) return LiquidType::make(trace.final_arms);
  // Some domain lost all its arms: add the top skeleton, provided the body
  // checks against it, so arguments outside the kept domains stay typable.
  LiquidType top = top_skeleton(*shape);
  const Arm& arm = top.arms().front();
  Env inner = env.extended(m->name, *arm.dom);
  bool top_ok = false;
  try {
    top_ok = sub_.is_subtype(inner, mono(inner, m->first), *arm.cod);
  } catch (const InferenceFailure&) {
    if (trace.final_arms.empty()) throw;
  }
  if (!top_ok) {
    if (trace.final_arms.empty()) {
      throw InferenceFailure("body does not check against " + to_string(top) + ": " + describe(*m));
    }
    return LiquidType::make(trace.final_arms);
  }
  std::vector<Arm> arms = trace.final_arms;
  arms.push_back(arm);
  return LiquidType::make(std::move(arms));
}

LiquidType Inferrer::infer_let(const Env& env, const TermPtr& m) {
  Scheme bound = infer(env, m->bound());
  Env inner = env.extended(m->name, bound);
  LiquidType body = mono(inner, m->body());
  SimpleTypePtr shape = shape_in(env, m);
  LiquidType templ = fresh(*shape, opts_.qualifiers, opts_.max_arms);
  bool arrow = shape->kind == SimpleType::Kind::Arrow;
  std::map<std::string, bool> domains;
  std::vector<Arm> kept;
  for (const Arm& a : well_formed_arms(env, templ)) {
    bool& any = domains[arrow ? to_string(*a.dom) : std::string()];
    if (sub_.is_subtype(inner, body, LiquidType::single(a))) {
      kept.push_back(a);
      any = true;
    }
  }
  bool covered = !domains.empty();
  for (const auto& [key, any] : domains) covered = covered && any;
  if (covered) return LiquidType::make(std::move(kept));
  LiquidType top = top_skeleton(*shape);
  if (!sub_.is_subtype(inner, body, top)) {
    if (!kept.empty()) return LiquidType::make(std::move(kept));
    throw InferenceFailure("let body type " + to_string(body) + " is not below " + to_string(top) + ": " +
                           describe(*m));
  }
  auto arms = top.arms();
  kept.insert(kept.end(), arms.begin(), arms.end());
  return LiquidType::make(std::move(kept));
}

Scheme Inferrer::infer(const Env& env, const TermPtr& m) {
  switch (m->kind) {
    case Term::Kind::Var: {
      const Scheme* s = env.lookup(m->name);
      if (!s) throw InferenceFailure("unbound variable " + describe(*m));
      if (s->is_mono() && s->body.shape()->kind == SimpleType::Kind::Base) {
        BaseType b = s->body.shape()->base;
        return Scheme::mono(LiquidType::base(b, Expr::cmp(CmpOp::Eq, Expr::nu(), Expr::var(m->name))));
      }
      return *s;
    }
    case Term::Kind::Const:
      if (m->constant.is_partial()) return infer(env, expand_partials(m));
      return constant_type(m->constant);
    case Term::Kind::Lam: return Scheme::mono(infer_lambda(env, m));
    case Term::Kind::App: {
      LiquidType fun = mono(env, m->fun());
      LiquidType arg = mono(env, m->arg());
      return Scheme::mono(apply_result(env, fun, arg, *m->arg()));
    }
    case Term::Kind::Let: return Scheme::mono(infer_let(env, m));
    case Term::Kind::TyAbs: {
      Scheme s = infer(env, m->first);
      s.quantified.insert(s.quantified.begin(), m->name);
      return s;
    }
    case Term::Kind::TyInst: {
      Scheme s = infer(env, m->first);
      if (s.is_mono()) {
        throw InferenceFailure("instantiating a monomorphic type " + to_string(s) + ": " + describe(*m));
      }
      LiquidType templ = fresh(*m->type, opts_.qualifiers, opts_.max_arms);
      std::vector<Arm> candidates = well_formed_arms(env, templ);
      auto top = top_skeleton(*m->type).arms();
      candidates.insert(candidates.end(), top.begin(), top.end());
      std::string alpha = s.quantified.front();
      s.quantified.erase(s.quantified.begin());
      std::vector<Arm> out;
      for (const Arm& c : candidates) {
        auto arms = subst_tyvar(s.body, alpha, LiquidType::single(c)).arms();
        out.insert(out.end(), arms.begin(), arms.end());
      }
      return Scheme{s.quantified, LiquidType::make(std::move(out))};
    }
  }
  throw InferenceFailure("unsupported term " + describe(*m));
}

}  // namespace lqi
