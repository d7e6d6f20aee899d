#include "lqi/subtyping.hpp"

#include <algorithm>

#include "lqi/error.hpp"

namespace lqi {

namespace {

bool arm_wf(const Env& env, const Arm& arm) {
  switch (arm.kind) {
    case Arm::Kind::Base: {
      VarTypeLookup lookup = [&](const std::string& y) { return env.base_type_of(y); };
      return type_of(*arm.refinement, arm.base, lookup) == BaseType::Bool;
    }
    case Arm::Kind::TyVar: return true;
    case Arm::Kind::Fun: {
      Arm a = enter_binder(env, arm);
      return wf_check(env, *a.dom) && wf_check(env.extended(a.name, *a.dom), *a.cod);
    }
  }
  return false;
}

}  // namespace

bool wf_check(const Env& env, const LiquidType& t) {
  return std::all_of(t.arms().begin(), t.arms().end(),
                     [&](const Arm& a) { return arm_wf(env, a); });
}

bool wf_check(const Env& env, const Scheme& s) { return wf_check(env, s.body); }

std::string to_string(const Constraint& c) {
  std::string env = to_string(c.env);
  if (c.kind == Constraint::Kind::WellFormed) return env + " |- " + to_string(c.lhs);
  return env + " |- " + to_string(c.lhs) + " <: " + to_string(*c.rhs);
}

std::vector<Constraint> simplify(const Constraint& c) {
  std::vector<Constraint> out;
  if (c.kind == Constraint::Kind::WellFormed) {
    for (const Arm& arm : c.lhs.arms()) {
      if (arm.kind != Arm::Kind::Fun) {
        out.push_back(Constraint::well_formed(c.env, LiquidType::single(arm)));
        continue;
      }
      Arm a = enter_binder(c.env, arm);
      auto d = simplify(Constraint::well_formed(c.env, *a.dom));
      auto r = simplify(Constraint::well_formed(c.env.extended(a.name, *a.dom), *a.cod));
      out.insert(out.end(), d.begin(), d.end());
      out.insert(out.end(), r.begin(), r.end());
    }
    return out;
  }
  const LiquidType& lhs = c.lhs;
  const LiquidType& rhs = *c.rhs;
  if (!same_shape(*lhs.shape(), *rhs.shape())) {
    throw IllFoundedType("subtyping between " + to_string(*lhs.shape()) + " and " +
                         to_string(*rhs.shape()));
  }
  if (lhs.shape()->kind != SimpleType::Kind::Arrow) return {c};
  for (const Arm& target : rhs.arms()) {
    if (lhs.size() > 1) {
      out.push_back(Constraint::subtype(c.env, lhs, LiquidType::single(target)));
      continue;
    }
    const Arm& source = lhs.arms().front();
    std::set<std::string> avoid = c.env.names();
    for (const auto& v : free_vars(lhs)) avoid.insert(v);
    for (const auto& v : free_vars(target)) avoid.insert(v);
    std::string z = c.env.contains(target.name) ? fresh_name(target.name, avoid) : target.name;
    if (z != target.name && avoid.count(z)) z = fresh_name(z, avoid);
    auto dom = simplify(Constraint::subtype(c.env, *target.dom, *source.dom));
    Env inner = c.env.extended(z, *target.dom);
    auto cod = simplify(Constraint::subtype(inner, codomain_at(source, z), codomain_at(target, z)));
    out.insert(out.end(), dom.begin(), dom.end());
    out.insert(out.end(), cod.begin(), cod.end());
  }
  return out;
}

ValidityQuery base_subtype_query(const Env& env, const std::vector<ExprPtr>& lhs,
                                 const std::vector<ExprPtr>& rhs, BaseType base,
                                 const EmbedOptions& opts) {
  VarTypeLookup lookup = [&](const std::string& y) -> std::optional<BaseType> {
    if (auto b = env.base_type_of(y)) return b;
    return BaseType::Int;
  };
  std::vector<FormulaPtr> hyp{embed_env(env, opts)};
  for (const auto& e : lhs) hyp.push_back(embed_refinement(*e, base, lookup, opts));
  std::vector<FormulaPtr> concl;
  for (const auto& e : rhs) concl.push_back(embed_refinement(*e, base, lookup, opts));
  return ValidityQuery{Formula::conj(hyp), Formula::conj(concl)};
}

bool Subtyping::well_formed(const Env& env, const LiquidType& t) {
  bool ok = wf_check(env, t);
  if (log_) log_("wf   " + to_string(env) + " |- " + to_string(t) + " : " + (ok ? "yes" : "no"));
  return ok;
}

bool Subtyping::is_subtype(const Env& env, const Scheme& a, const Scheme& b) {
  if (a.quantified.size() != b.quantified.size()) return false;
  LiquidType rhs = b.body;
  for (std::size_t i = 0; i < a.quantified.size(); ++i) {
    if (a.quantified[i] != b.quantified[i]) {
      rhs = subst_tyvar(rhs, b.quantified[i], LiquidType::single(Arm::tyvar(a.quantified[i])));
    }
  }
  return is_subtype(env, a.body, rhs);
}

bool Subtyping::is_subtype(const Env& env, const LiquidType& a, const LiquidType& b) {
  if (!same_shape(*a.shape(), *b.shape())) return false;
  switch (a.shape()->kind) {
    case SimpleType::Kind::Var: return true;
    case SimpleType::Kind::Base: {
      std::vector<ExprPtr> lhs, rhs;
      for (const Arm& arm : a.arms()) lhs.push_back(arm.refinement);
      for (const Arm& arm : b.arms()) rhs.push_back(arm.refinement);
      Verdict v;
      try {
        v = engine_.cached(base_subtype_query(env, lhs, rhs, a.shape()->base, embed_options()));
      } catch (const EmbeddingError& e) {
        v = Verdict::unknown(e.what());
      }
      if (observer_) observer_(env, lhs, rhs, a.shape()->base, v);
      if (log_) {
        log_("sub  " + to_string(env) + " |- " + to_string(a) + " <: " + to_string(b) + " : " +
             std::string(to_string(v.kind)));
      }
      return v.valid();
    }
    case SimpleType::Kind::Arrow: break;
  }
  std::set<std::string> avoid = env.names();
  for (const auto& v : free_vars(a)) avoid.insert(v);
  for (const auto& v : free_vars(b)) avoid.insert(v);
  for (const Arm& target : b.arms()) {
    std::vector<Arm> accepted;
    for (const Arm& source : a.arms()) {
      if (is_subtype(env, *target.dom, *source.dom)) accepted.push_back(source);
    }
    if (accepted.empty()) return false;
    std::string z = avoid.count(target.name) ? fresh_name(target.name, avoid) : target.name;
    std::vector<Arm> cods;
    for (const Arm& source : accepted) {
      auto arms = codomain_at(source, z).arms();
      cods.insert(cods.end(), arms.begin(), arms.end());
    }
    Env inner = env.extended(z, *target.dom);
    if (!is_subtype(inner, LiquidType::make(std::move(cods)), codomain_at(target, z))) return false;
  }
  return true;
}

}  // namespace lqi
