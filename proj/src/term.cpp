#include "lqi/term.hpp"

#include <array>
#include <cctype>

namespace lqi {

namespace {

struct PrimInfo {
  Prim prim;
  const char* name;
  const char* spelling;
  int arity;
};

constexpr std::array<PrimInfo, 11> kPrims{{
    {Prim::Neg, "neg", "-", 1},
    {Prim::Add, "add", "+", 2},
    {Prim::Sub, "sub", "sub", 2},
    {Prim::Mul, "mul", "*", 2},
    {Prim::Le, "le", "<=", 2},
    {Prim::Ge, "ge", ">=", 2},
    {Prim::Lt, "lt", "<", 2},
    {Prim::Gt, "gt", ">", 2},
    {Prim::Eq, "eq", "=", 2},
    {Prim::Ite, "ite", "if", 3},
    {Prim::Fix, "fix", "fix", 1},
}};

const PrimInfo& info(Prim p) { return kPrims[static_cast<std::size_t>(p)]; }

TermPtr make(Term t) { return std::make_shared<const Term>(std::move(t)); }

}  // namespace

int prim_arity(Prim p) { return info(p).arity; }
std::string_view prim_name(Prim p) { return info(p).name; }
std::string_view prim_spelling(Prim p) { return info(p).spelling; }

std::optional<Prim> prim_from_spelling(std::string_view s) {
  for (const auto& p : kPrims) {
    if (s == p.spelling || s == p.name) return p.prim;
  }
  return std::nullopt;
}

std::string to_string(const Constant& c) {
  switch (c.kind) {
    case Constant::Kind::Int: return std::to_string(c.value);
    case Constant::Kind::Bool: return c.value ? "true" : "false";
    case Constant::Kind::Prim: {
      std::string out(prim_spelling(c.prim));
      if (c.args.empty()) return out;
      out = "(" + out;
      for (const auto& a : c.args) out += " " + to_string(*a);
      return out + ")";
    }
  }
  return "?";
}

TermPtr Term::var(std::string name, SourcePos pos) {
  return make(Term{Kind::Var, std::move(name), {}, nullptr, nullptr, nullptr, pos});
}

TermPtr Term::constant_(Constant c, SourcePos pos) {
  return make(Term{Kind::Const, {}, std::move(c), nullptr, nullptr, nullptr, pos});
}

TermPtr Term::int_lit(std::int64_t v, SourcePos pos) { return constant_(Constant::int_lit(v), pos); }
TermPtr Term::bool_lit(bool b, SourcePos pos) { return constant_(Constant::bool_lit(b), pos); }
TermPtr Term::prim(Prim p, SourcePos pos) { return constant_(Constant::primitive(p), pos); }

TermPtr Term::lam(std::string binder, TermPtr body, SourcePos pos, SimpleTypePtr annotation) {
  return make(
      Term{Kind::Lam, std::move(binder), {}, std::move(annotation), std::move(body), nullptr, pos});
}

TermPtr Term::app(TermPtr fun, TermPtr arg, SourcePos pos) {
  return make(Term{Kind::App, {}, {}, nullptr, std::move(fun), std::move(arg), pos});
}

TermPtr Term::let(std::string binder, TermPtr bound, TermPtr body, SourcePos pos) {
  return make(
      Term{Kind::Let, std::move(binder), {}, nullptr, std::move(bound), std::move(body), pos});
}

TermPtr Term::tyabs(std::string tyvar, TermPtr body, SourcePos pos) {
  return make(Term{Kind::TyAbs, std::move(tyvar), {}, nullptr, std::move(body), nullptr, pos});
}

TermPtr Term::tyinst(SimpleTypePtr type, TermPtr body, SourcePos pos) {
  return make(Term{Kind::TyInst, {}, {}, std::move(type), std::move(body), nullptr, pos});
}

TermPtr app_spine(TermPtr head, const std::vector<TermPtr>& args) {
  for (const auto& a : args) head = Term::app(head, a, head->pos);
  return head;
}

bool is_value(const Term& t) { return t.kind == Term::Kind::Const || t.kind == Term::Kind::Lam; }

bool is_atomic(const Term& t) {
  switch (t.kind) {
    case Term::Kind::Var: return true;
    case Term::Kind::Const: return !t.constant.is_partial();
    case Term::Kind::TyInst: return is_atomic(*t.first);
    default: return false;
  }
}

namespace {

void collect_free(const Term& t, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (t.kind) {
    case Term::Kind::Var:
      if (!bound.count(t.name)) out.insert(t.name);
      break;
    case Term::Kind::Const:
      for (const auto& a : t.constant.args) collect_free(*a, bound, out);
      break;
    case Term::Kind::Lam: {
      bool fresh = bound.insert(t.name).second;
      collect_free(*t.first, bound, out);
      if (fresh) bound.erase(t.name);
      break;
    }
    case Term::Kind::App:
      collect_free(*t.first, bound, out);
      collect_free(*t.second, bound, out);
      break;
    case Term::Kind::Let: {
      collect_free(*t.first, bound, out);
      bool fresh = bound.insert(t.name).second;
      collect_free(*t.second, bound, out);
      if (fresh) bound.erase(t.name);
      break;
    }
    case Term::Kind::TyAbs:
    case Term::Kind::TyInst: collect_free(*t.first, bound, out); break;
  }
}

void collect_names(const Term& t, std::set<std::string>& out) {
  switch (t.kind) {
    case Term::Kind::Var: out.insert(t.name); break;
    case Term::Kind::Const:
      for (const auto& a : t.constant.args) collect_names(*a, out);
      break;
    case Term::Kind::Lam:
      out.insert(t.name);
      collect_names(*t.first, out);
      break;
    case Term::Kind::Let:
      out.insert(t.name);
      collect_names(*t.first, out);
      collect_names(*t.second, out);
      break;
    case Term::Kind::App:
      collect_names(*t.first, out);
      collect_names(*t.second, out);
      break;
    case Term::Kind::TyAbs:
    case Term::Kind::TyInst: collect_names(*t.first, out); break;
  }
}

}  // namespace

std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> bound, out;
  collect_free(t, bound, out);
  return out;
}

std::set<std::string> all_names(const Term& t) {
  std::set<std::string> out;
  collect_names(t, out);
  return out;
}

std::string fresh_term_name(const std::string& base, const std::set<std::string>& avoid) {
  std::string stem = base;
  while (!stem.empty() && std::isdigit(static_cast<unsigned char>(stem.back()))) stem.pop_back();
  if (stem.empty()) stem = "x";
  for (std::size_t k = 1;; ++k) {
    std::string candidate = stem + std::to_string(k);
    if (!avoid.count(candidate)) return candidate;
  }
}

namespace {

TermPtr subst_rec(const TermPtr& value, const std::set<std::string>& value_fv, const std::string& x,
                  const TermPtr& m) {
  switch (m->kind) {
    case Term::Kind::Var: return m->name == x ? value : m;
    case Term::Kind::Const: {
      if (m->constant.args.empty()) return m;
      Constant c = m->constant;
      for (auto& a : c.args) a = subst_rec(value, value_fv, x, a);
      return Term::constant_(std::move(c), m->pos);
    }
    case Term::Kind::Lam: {
      if (m->name == x) return m;
      std::string binder = m->name;
      TermPtr body = m->first;
      if (value_fv.count(binder)) {
        std::set<std::string> avoid = all_names(*body);
        avoid.insert(value_fv.begin(), value_fv.end());
        avoid.insert(x);
        binder = fresh_term_name(m->name, avoid);
        body = subst_rec(Term::var(binder), {binder}, m->name, body);
      }
      return Term::lam(binder, subst_rec(value, value_fv, x, body), m->pos, m->type);
    }
    case Term::Kind::App:
      return Term::app(subst_rec(value, value_fv, x, m->first),
                       subst_rec(value, value_fv, x, m->second), m->pos);
    case Term::Kind::Let: {
      TermPtr bound = subst_rec(value, value_fv, x, m->first);
      if (m->name == x) return Term::let(m->name, bound, m->second, m->pos);
      std::string binder = m->name;
      TermPtr body = m->second;
      if (value_fv.count(binder)) {
        std::set<std::string> avoid = all_names(*body);
        avoid.insert(value_fv.begin(), value_fv.end());
        avoid.insert(x);
        binder = fresh_term_name(m->name, avoid);
        body = subst_rec(Term::var(binder), {binder}, m->name, body);
      }
      return Term::let(binder, bound, subst_rec(value, value_fv, x, body), m->pos);
    }
    case Term::Kind::TyAbs:
      return Term::tyabs(m->name, subst_rec(value, value_fv, x, m->first), m->pos);
    case Term::Kind::TyInst:
      return Term::tyinst(m->type, subst_rec(value, value_fv, x, m->first), m->pos);
  }
  return m;
}

}  // namespace

TermPtr subst_term(const TermPtr& value, const std::string& x, const TermPtr& m) {
  return subst_rec(value, free_vars(*value), x, m);
}

TermPtr erase_types(const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::Var: return t;
    case Term::Kind::Const: {
      if (t->constant.args.empty()) return t;
      Constant c = t->constant;
      for (auto& a : c.args) a = erase_types(a);
      return Term::constant_(std::move(c), t->pos);
    }
    case Term::Kind::Lam:
      if (!t->type) {
        auto b = erase_types(t->first);
        return b == t->first ? t : Term::lam(t->name, b, t->pos);
      }
      return Term::lam(t->name, erase_types(t->first), t->pos);
    case Term::Kind::App: return Term::app(erase_types(t->first), erase_types(t->second), t->pos);
    case Term::Kind::Let:
      return Term::let(t->name, erase_types(t->first), erase_types(t->second), t->pos);
    case Term::Kind::TyAbs:
    case Term::Kind::TyInst: return erase_types(t->first);
  }
  return t;
}

TermPtr expand_partials(const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::Var: return t;
    case Term::Kind::Const: {
      if (t->constant.args.empty()) return t;
      std::vector<TermPtr> args;
      for (const auto& a : t->constant.args) args.push_back(expand_partials(a));
      return app_spine(Term::prim(t->constant.prim, t->pos), args);
    }
    case Term::Kind::Lam: return Term::lam(t->name, expand_partials(t->first), t->pos, t->type);
    case Term::Kind::App:
      return Term::app(expand_partials(t->first), expand_partials(t->second), t->pos);
    case Term::Kind::Let:
      return Term::let(t->name, expand_partials(t->first), expand_partials(t->second), t->pos);
    case Term::Kind::TyAbs: return Term::tyabs(t->name, expand_partials(t->first), t->pos);
    case Term::Kind::TyInst: return Term::tyinst(t->type, expand_partials(t->first), t->pos);
  }
  return t;
}

bool terms_equal(const Term& a, const Term& b) {
  if (&a == &b) return true;
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Term::Kind::Var: return a.name == b.name;
    case Term::Kind::Const: {
      const Constant& x = a.constant;
      const Constant& y = b.constant;
      if (x.kind != y.kind || x.args.size() != y.args.size()) return false;
      if (x.kind == Constant::Kind::Prim ? x.prim != y.prim : x.value != y.value) return false;
      for (std::size_t i = 0; i < x.args.size(); ++i) {
        if (!terms_equal(*x.args[i], *y.args[i])) return false;
      }
      return true;
    }
    case Term::Kind::Lam: {
      if (a.name != b.name || !!a.type != !!b.type) return false;
      if (a.type && !same_shape(*a.type, *b.type)) return false;
      return terms_equal(*a.first, *b.first);
    }
    case Term::Kind::App:
    case Term::Kind::Let:
      return a.name == b.name && terms_equal(*a.first, *b.first) &&
             terms_equal(*a.second, *b.second);
    case Term::Kind::TyAbs: return a.name == b.name && terms_equal(*a.first, *b.first);
    case Term::Kind::TyInst:
      return same_shape(*a.type, *b.type) && terms_equal(*a.first, *b.first);
  }
  return false;
}

namespace {

enum class Prec { Term, App, Atom };

std::string print(const Term& t, Prec ctx);

std::string wrap(std::string s, bool paren) { return paren ? "(" + s + ")" : s; }

std::string print(const Term& t, Prec ctx) {
  switch (t.kind) {
    case Term::Kind::Var: return t.name;
    case Term::Kind::Const: return wrap(to_string(t.constant), false);
    case Term::Kind::Lam:
      return wrap("\\" + t.name + ". " + print(*t.first, Prec::Term), ctx != Prec::Term);
    case Term::Kind::Let:
      return wrap("let " + t.name + " = " + print(*t.first, Prec::Term) + " in " +
                      print(*t.second, Prec::Term),
                  ctx != Prec::Term);
    case Term::Kind::App:
      return wrap(print(*t.first, Prec::App) + " " + print(*t.second, Prec::Atom),
                  ctx == Prec::Atom);
    case Term::Kind::TyAbs:
      return wrap("/\\" + tyvar_spelling(t.name) + ". " + print(*t.first, Prec::Term),
                  ctx != Prec::Term);
    case Term::Kind::TyInst:
      return "[" + to_string(*t.type) + "]" + print(*t.first, Prec::Atom);
  }
  return "?";
}

TermPtr rename_rec(const TermPtr& t, std::set<std::string>& scope);

TermPtr rename_under(const TermPtr& body, const std::string& binder, std::string& out_binder,
                     std::set<std::string>& scope) {
  out_binder = binder;
  TermPtr b = body;
  if (scope.count(binder) || binder == "v") {
    std::set<std::string> avoid = scope;
    auto names = all_names(*body);
    avoid.insert(names.begin(), names.end());
    avoid.insert("v");
    out_binder = fresh_term_name(binder, avoid);
    b = subst_term(Term::var(out_binder), binder, body);
  }
  scope.insert(out_binder);
  TermPtr r = rename_rec(b, scope);
  scope.erase(out_binder);
  return r;
}

TermPtr rename_rec(const TermPtr& t, std::set<std::string>& scope) {
  switch (t->kind) {
    case Term::Kind::Var:
    case Term::Kind::Const: return t;
    case Term::Kind::Lam: {
      std::string binder;
      TermPtr body = rename_under(t->first, t->name, binder, scope);
      return Term::lam(binder, body, t->pos, t->type);
    }
    case Term::Kind::App:
      return Term::app(rename_rec(t->first, scope), rename_rec(t->second, scope), t->pos);
    case Term::Kind::Let: {
      TermPtr bound = rename_rec(t->first, scope);
      std::string binder;
      TermPtr body = rename_under(t->second, t->name, binder, scope);
      return Term::let(binder, bound, body, t->pos);
    }
    case Term::Kind::TyAbs: return Term::tyabs(t->name, rename_rec(t->first, scope), t->pos);
    case Term::Kind::TyInst: return Term::tyinst(t->type, rename_rec(t->first, scope), t->pos);
  }
  return t;
}

}  // namespace

std::string to_string(const Term& t) { return print(t, Prec::Term); }

TermPtr rename_binders(const TermPtr& t, const std::set<std::string>& scope) {
  std::set<std::string> s = scope;
  auto fv = free_vars(*t);
  s.insert(fv.begin(), fv.end());
  return rename_rec(t, s);
}

std::optional<ExprPtr> value_expr(const Term& t) {
  switch (t.kind) {
    case Term::Kind::Var: return Expr::var(t.name);
    case Term::Kind::Const:
      if (t.constant.kind == Constant::Kind::Int) return Expr::int_lit(t.constant.value);
      if (t.constant.kind == Constant::Kind::Bool) return Expr::bool_lit(t.constant.value != 0);
      return std::nullopt;
    case Term::Kind::TyInst: return value_expr(*t.first);
    default: return std::nullopt;
  }
}

Scheme subst_type(const ValueSubst& rho, const Scheme& s) {
  Scheme out = s;
  for (const auto& [x, v] : rho) {
    auto fv = free_vars(out.body);
    if (!fv.count(x)) continue;
    if (auto e = value_expr(*v)) out = subst_value(out, x, *e);
  }
  return out;
}

ValueSubst compose(const ValueSubst& first, const ValueSubst& second) {
  ValueSubst out = first;
  out.insert(out.end(), second.begin(), second.end());
  return out;
}

}  // namespace lqi
