#include "lqi/eval.hpp"

namespace lqi {

namespace {

std::optional<std::int64_t> as_int(const TermPtr& t) {
  if (t->kind == Term::Kind::Const && t->constant.kind == Constant::Kind::Int) {
    return t->constant.value;
  }
  return std::nullopt;
}

std::optional<bool> as_bool(const TermPtr& t) {
  if (t->kind == Term::Kind::Const && t->constant.kind == Constant::Kind::Bool) {
    return t->constant.value != 0;
  }
  return std::nullopt;
}

std::optional<TermPtr> arithmetic(Prim p, std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  bool overflow = false;
  switch (p) {
    case Prim::Add: overflow = __builtin_add_overflow(a, b, &r); break;
    case Prim::Sub: overflow = __builtin_sub_overflow(a, b, &r); break;
    case Prim::Mul: overflow = __builtin_mul_overflow(a, b, &r); break;
    case Prim::Le: return Term::bool_lit(a <= b);
    case Prim::Ge: return Term::bool_lit(a >= b);
    case Prim::Lt: return Term::bool_lit(a < b);
    case Prim::Gt: return Term::bool_lit(a > b);
    case Prim::Eq: return Term::bool_lit(a == b);
    default: return std::nullopt;
  }
  if (overflow) return std::nullopt;
  return Term::int_lit(r);
}

}  // namespace

std::optional<TermPtr> delta(const Constant& c, const TermPtr& v) {
  if (c.kind != Constant::Kind::Prim) return std::nullopt;
  Constant applied = c;
  applied.args.push_back(v);
  if (static_cast<int>(applied.args.size()) < prim_arity(c.prim)) {
    return Term::constant_(std::move(applied));
  }
  const auto& args = applied.args;
  switch (c.prim) {
    case Prim::Neg: {
      auto n = as_int(args[0]);
      if (!n || *n == INT64_MIN) return std::nullopt;
      return Term::int_lit(-*n);
    }
    case Prim::Ite: {
      auto b = as_bool(args[0]);
      if (!b) return std::nullopt;
      return *b ? args[1] : args[2];
    }
    case Prim::Fix: {
      const TermPtr& f = args[0];
      std::string z = fresh_term_name("z", free_vars(*f));
      TermPtr unfolded = Term::app(Term::app(Term::prim(Prim::Fix), f), Term::var(z));
      return Term::app(f, Term::lam(z, unfolded));
    }
    default: {
      auto a = as_int(args[0]);
      auto b = as_int(args[1]);
      if (!a || !b) return std::nullopt;
      return arithmetic(c.prim, *a, *b);
    }
  }
}

StepResult step(const TermPtr& m) {
  auto stuck = [&](std::string why) {
    return StepResult{StepResult::Kind::Stuck, m, std::nullopt, std::move(why)};
  };
  switch (m->kind) {
    case Term::Kind::Const:
    case Term::Kind::Lam: return StepResult{StepResult::Kind::Value, m, std::nullopt, {}};
    case Term::Kind::Var: return stuck("free variable '" + m->name + "'");
    case Term::Kind::TyAbs:
    case Term::Kind::TyInst: return stuck("type node in evaluated term");
    case Term::Kind::Let: {
      if (is_value(*m->first)) {
        return StepResult{StepResult::Kind::Stepped, subst_term(m->first, m->name, m->second),
                          std::make_pair(m->name, m->first), {}};
      }
      StepResult inner = step(m->first);
      if (inner.kind != StepResult::Kind::Stepped) return inner;
      inner.next = Term::let(m->name, inner.next, m->second, m->pos);
      return inner;
    }
    case Term::Kind::App: {
      if (!is_value(*m->first)) {
        StepResult inner = step(m->first);
        if (inner.kind != StepResult::Kind::Stepped) return inner;
        inner.next = Term::app(inner.next, m->second, m->pos);
        return inner;
      }
      if (!is_value(*m->second)) {
        StepResult inner = step(m->second);
        if (inner.kind != StepResult::Kind::Stepped) return inner;
        inner.next = Term::app(m->first, inner.next, m->pos);
        return inner;
      }
      const TermPtr& f = m->first;
      if (f->kind == Term::Kind::Lam) {
        return StepResult{StepResult::Kind::Stepped, subst_term(m->second, f->name, f->first),
                          std::make_pair(f->name, m->second), {}};
      }
      auto r = delta(f->constant, m->second);
      if (!r) return stuck("no reduction for " + to_string(*m));
      return StepResult{StepResult::Kind::Stepped, *r, std::nullopt, {}};
    }
  }
  return stuck("unknown term");
}

EvalResult eval(const TermPtr& m, std::size_t fuel) {
  TermPtr cur = erase_types(m);
  for (std::size_t n = 0;; ++n) {
    if (is_value(*cur)) return EvalResult{EvalResult::Kind::Value, cur, n, {}};
    if (n == fuel) return EvalResult{EvalResult::Kind::Timeout, cur, n, {}};
    StepResult r = step(cur);
    if (r.kind == StepResult::Kind::Stuck) return EvalResult{EvalResult::Kind::Stuck, cur, n, r.reason};
    cur = r.next;
  }
}

}  // namespace lqi
