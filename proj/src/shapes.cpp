#include "lqi/shapes.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "lqi/constants.hpp"
#include "lqi/error.hpp"

namespace lqi {

std::string to_string(const ShapeScheme& s) {
  std::string out;
  if (!s.quantified.empty()) {
    out = "forall";
    for (const auto& q : s.quantified) out += " " + tyvar_spelling(q);
    out += ". ";
  }
  return out + to_string(*s.type);
}

ShapeEnv ShapeEnv::extended(std::string name, ShapeScheme s) const {
  ShapeEnv out = *this;
  out.bindings_.emplace_back(std::move(name), std::move(s));
  return out;
}

const ShapeScheme* ShapeEnv::lookup(const std::string& name) const {
  for (auto it = bindings_.rbegin(); it != bindings_.rend(); ++it) {
    if (it->first == name) return &it->second;
  }
  return nullptr;
}

ShapeScheme shape_scheme(const Scheme& s) { return ShapeScheme{s.quantified, shape_of(s)}; }

ShapeEnv shape_env(const Env& env) {
  ShapeEnv out;
  for (const auto& [name, scheme] : env.bindings()) out = out.extended(name, shape_scheme(scheme));
  return out;
}

namespace {

std::string where(const Term& t) {
  if (t.pos.line == 0) return "";
  return std::to_string(t.pos.line) + ":" + std::to_string(t.pos.column) + ": ";
}

bool is_meta(const SimpleType& t) {
  return t.kind == SimpleType::Kind::Var && !t.name.empty() && t.name[0] == '?';
}

class W {
 public:
  explicit W(const ShapeEnv& env) {
    for (const auto& [name, s] : env.bindings()) {
      env_.push_back({name, s});
      auto tv = type_vars(*s.type);
      rigid_.insert(tv.begin(), tv.end());
      rigid_.insert(s.quantified.begin(), s.quantified.end());
    }
  }

  Elaboration run(const TermPtr& m) {
    auto [type, term] = infer(m);
    SimpleTypePtr t = zonk(type);
    std::vector<std::string> qs;
    for (const auto& meta : metas_in_order(t)) {
      std::string name = fresh_rigid();
      bind(meta, SimpleType::var(name));
      qs.push_back(name);
    }
    TermPtr body = zonk_term(term);
    for (auto it = qs.rbegin(); it != qs.rend(); ++it) body = Term::tyabs(*it, body, m->pos);
    return Elaboration{body, ShapeScheme{qs, zonk(t)}};
  }

 private:
  struct Entry {
    std::string name;
    ShapeScheme scheme;
  };
  std::vector<Entry> env_;
  std::vector<SimpleTypePtr> binding_;
  std::set<std::string> rigid_;
  std::size_t rigid_counter_ = 0;

  SimpleTypePtr new_meta() {
    binding_.push_back(nullptr);
    return SimpleType::var("?" + std::to_string(binding_.size() - 1));
  }

  std::size_t meta_index(const SimpleType& t) const { return std::stoul(t.name.substr(1)); }

  void bind(const std::string& meta, SimpleTypePtr t) { binding_[std::stoul(meta.substr(1))] = t; }

  std::string fresh_rigid() {
    while (true) {
      std::string name = "a" + std::to_string(rigid_counter_++);
      if (rigid_.insert(name).second) return name;
    }
  }

  SimpleTypePtr resolve(SimpleTypePtr t) const {
    while (is_meta(*t) && binding_[meta_index(*t)]) t = binding_[meta_index(*t)];
    return t;
  }

  SimpleTypePtr zonk(const SimpleTypePtr& t) const {
    SimpleTypePtr r = resolve(t);
    if (r->kind != SimpleType::Kind::Arrow) return r;
    auto d = zonk(r->dom);
    auto c = zonk(r->cod);
    if (d == r->dom && c == r->cod) return r;
    return SimpleType::arrow(r->name, d, c);
  }

  bool occurs(const std::string& meta, const SimpleTypePtr& t) const {
    SimpleTypePtr r = resolve(t);
    if (r->kind == SimpleType::Kind::Var) return r->name == meta;
    if (r->kind == SimpleType::Kind::Arrow) return occurs(meta, r->dom) || occurs(meta, r->cod);
    return false;
  }

  void unify(const SimpleTypePtr& a0, const SimpleTypePtr& b0, const Term& at) {
    SimpleTypePtr a = resolve(a0);
    SimpleTypePtr b = resolve(b0);
    if (is_meta(*a) && is_meta(*b) && a->name == b->name) return;
    if (is_meta(*a) || is_meta(*b)) {
      if (!is_meta(*a)) std::swap(a, b);
      if (occurs(a->name, b)) {
        throw ShapeError(where(at) + "occurs check: cannot construct infinite type " +
                         to_string(*zonk(b)));
      }
      bind(a->name, b);
      return;
    }
    if (a->kind == b->kind) {
      switch (a->kind) {
        case SimpleType::Kind::Base:
          if (a->base == b->base) return;
          break;
        case SimpleType::Kind::Var:
          if (a->name == b->name) return;
          break;
        case SimpleType::Kind::Arrow:
          unify(a->dom, b->dom, at);
          unify(a->cod, b->cod, at);
          return;
      }
    }
    throw ShapeError(where(at) + "cannot unify " + to_string(*zonk(a)) + " with " +
                     to_string(*zonk(b)));
  }

  std::vector<std::string> metas_in_order(const SimpleTypePtr& t) const {
    std::vector<std::string> out;
    collect_metas(zonk(t), out);
    return out;
  }

  void collect_metas(const SimpleTypePtr& t, std::vector<std::string>& out) const {
    if (is_meta(*t)) {
      if (std::find(out.begin(), out.end(), t->name) == out.end()) out.push_back(t->name);
    } else if (t->kind == SimpleType::Kind::Arrow) {
      collect_metas(t->dom, out);
      collect_metas(t->cod, out);
    }
  }

  // Instantiates a scheme with fresh metas; returns the type and the metas.
  std::pair<SimpleTypePtr, std::vector<SimpleTypePtr>> instantiate(const ShapeScheme& s) {
    SimpleTypePtr t = s.type;
    std::vector<SimpleTypePtr> metas;
    for (const auto& q : s.quantified) {
      SimpleTypePtr m = new_meta();
      metas.push_back(m);
      t = subst_tyvar(t, q, m);
    }
    return {t, metas};
  }

  TermPtr with_instantiation(TermPtr t, const std::vector<SimpleTypePtr>& metas) {
    for (const auto& m : metas) t = Term::tyinst(m, t, t->pos);
    return t;
  }

  const Entry* lookup(const std::string& name) const {
    for (auto it = env_.rbegin(); it != env_.rend(); ++it) {
      if (it->name == name) return &*it;
    }
    return nullptr;
  }

  std::pair<SimpleTypePtr, TermPtr> infer(const TermPtr& m) {
    switch (m->kind) {
      case Term::Kind::Var: {
        const Entry* e = lookup(m->name);
        if (!e) throw ShapeError(where(*m) + "unbound variable '" + m->name + "'");
        auto [t, metas] = instantiate(e->scheme);
        return {t, with_instantiation(m, metas)};
      }
      case Term::Kind::Const: {
        if (m->constant.is_partial()) return infer(expand_partials(m));
        auto [t, metas] = instantiate(shape_scheme(constant_type(m->constant)));
        return {t, with_instantiation(m, metas)};
      }
      case Term::Kind::Lam: {
        SimpleTypePtr a = new_meta();
        env_.push_back({m->name, ShapeScheme{{}, a}});
        auto [b, body] = infer(m->first);
        env_.pop_back();
        return {SimpleType::arrow(m->name, a, b), Term::lam(m->name, body, m->pos, a)};
      }
      case Term::Kind::App: {
        auto [f, fun] = infer(m->first);
        auto [a, arg] = infer(m->second);
        SimpleTypePtr r = new_meta();
        unify(f, SimpleType::arrow("x", a, r), *m);
        return {r, Term::app(fun, arg, m->pos)};
      }
      case Term::Kind::Let: {
        auto [t, bound] = infer(m->first);
        std::set<std::string> env_metas;
        for (const auto& e : env_) {
          std::vector<std::string> ms;
          collect_metas(zonk(e.scheme.type), ms);
          env_metas.insert(ms.begin(), ms.end());
        }
        std::vector<std::string> qs;
        for (const auto& meta : metas_in_order(t)) {
          if (env_metas.count(meta)) continue;
          std::string name = fresh_rigid();
          bind(meta, SimpleType::var(name));
          qs.push_back(name);
        }
        for (auto it = qs.rbegin(); it != qs.rend(); ++it) bound = Term::tyabs(*it, bound, m->pos);
        env_.push_back({m->name, ShapeScheme{qs, zonk(t)}});
        auto [b, body] = infer(m->second);
        env_.pop_back();
        return {b, Term::let(m->name, bound, body, m->pos)};
      }
      case Term::Kind::TyAbs:
      case Term::Kind::TyInst: return infer(m->first);
    }
    throw ShapeError("unknown term");
  }

  // Leftover metas become rigid type variables.
  SimpleTypePtr finalize(const SimpleTypePtr& t) {
    SimpleTypePtr z = zonk(t);
    for (const auto& meta : metas_in_order(z)) bind(meta, SimpleType::var(fresh_rigid()));
    return zonk(z);
  }

  TermPtr zonk_term(const TermPtr& t) {
    switch (t->kind) {
      case Term::Kind::Var:
      case Term::Kind::Const: return t;
      case Term::Kind::Lam: return Term::lam(t->name, zonk_term(t->first), t->pos, finalize(t->type));
      case Term::Kind::App: return Term::app(zonk_term(t->first), zonk_term(t->second), t->pos);
      case Term::Kind::Let:
        return Term::let(t->name, zonk_term(t->first), zonk_term(t->second), t->pos);
      case Term::Kind::TyAbs: return Term::tyabs(t->name, zonk_term(t->first), t->pos);
      case Term::Kind::TyInst: return Term::tyinst(finalize(t->type), zonk_term(t->first), t->pos);
    }
    return t;
  }
};

}  // namespace

Elaboration elaborate(const ShapeEnv& env, const TermPtr& m) { return W(env).run(erase_types(m)); }

SimpleTypePtr w_infer(const ShapeEnv& env, const TermPtr& m) { return elaborate(env, m).scheme.type; }

ShapeScheme instantiate_first(const ShapeScheme& s, const SimpleTypePtr& t) {
  if (s.quantified.empty()) throw ShapeError("instantiation of a monomorphic type");
  ShapeScheme out{{s.quantified.begin() + 1, s.quantified.end()},
                  subst_tyvar(s.type, s.quantified.front(), t)};
  return out;
}

namespace {

ShapeScheme check(const ShapeEnv& env, const TermPtr& m) {
  auto mono = [&](const ShapeScheme& s, const char* what) {
    if (!s.quantified.empty()) {
      throw ShapeError(where(*m) + std::string(what) + " has polymorphic type " + to_string(s));
    }
    return s.type;
  };
  switch (m->kind) {
    case Term::Kind::Var: {
      const ShapeScheme* s = env.lookup(m->name);
      if (!s) throw ShapeError(where(*m) + "unbound variable '" + m->name + "'");
      return *s;
    }
    case Term::Kind::Const:
      if (m->constant.is_partial()) return check(env, expand_partials(m));
      return shape_scheme(constant_type(m->constant));
    case Term::Kind::Lam: {
      if (!m->type) throw ShapeError(where(*m) + "unannotated lambda binder '" + m->name + "'");
      auto body = mono(check(env.extended(m->name, ShapeScheme{{}, m->type}), m->first), "body");
      return ShapeScheme{{}, SimpleType::arrow(m->name, m->type, body)};
    }
    case Term::Kind::App: {
      auto f = mono(check(env, m->first), "function");
      auto a = mono(check(env, m->second), "argument");
      if (f->kind != SimpleType::Kind::Arrow || !same_shape(*f->dom, *a)) {
        throw ShapeError(where(*m) + "cannot apply " + to_string(*f) + " to " + to_string(*a));
      }
      return ShapeScheme{{}, f->cod};
    }
    case Term::Kind::Let: {
      auto bound = check(env, m->first);
      return check(env.extended(m->name, bound), m->second);
    }
    case Term::Kind::TyAbs: {
      auto body = check(env, m->first);
      body.quantified.insert(body.quantified.begin(), m->name);
      return body;
    }
    case Term::Kind::TyInst: return instantiate_first(check(env, m->first), m->type);
  }
  throw ShapeError("unknown term");
}

}  // namespace

ShapeScheme shape_check(const ShapeEnv& env, const TermPtr& m) { return check(env, m); }

}  // namespace lqi
