#include "lqi/metatheory.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include "lqi/error.hpp"
#include "lqi/eval.hpp"

namespace lqi {

bool recheck(Subtyping& sub, const Env& env, const TermPtr& m, const Scheme& s,
             const InferOptions& opts, std::string* why) {
  auto fail = [&](std::string msg) {
    if (why) *why = std::move(msg);
    return false;
  };
  try {
    Inferrer inferrer(sub, opts);
    Scheme inferred = inferrer.infer_surface(env, m);
    if (!wf_check(env, s)) return fail(to_string(s) + " is not well formed");
    if (!sub.is_subtype(env, inferred, s)) {
      return fail("inferred " + to_string(inferred) + " is not a subtype of " + to_string(s));
    }
    return true;
  } catch (const Error& e) {
    return fail(e.what());
  }
}

std::string_view to_string(TrialReport::Kind k) {
  switch (k) {
    case TrialReport::Kind::Ok: return "ok";
    case TrialReport::Kind::Violation: return "violation";
    case TrialReport::Kind::Stuck: return "stuck";
    case TrialReport::Kind::Untyped: return "untyped";
  }
  return "?";
}

TrialReport subject_reduction_trial(Subtyping& sub, const TermPtr& m, const InferOptions& opts,
                                    std::size_t fuel) {
  TrialReport report;
  std::optional<Scheme> s0;
  try {
    Inferrer inferrer(sub, opts);
    s0 = inferrer.infer_surface(Env{}, m);
  } catch (const Error& e) {
    report.kind = TrialReport::Kind::Untyped;
    report.message = e.what();
    return report;
  }
  std::string why;
  if (!recheck(sub, Env{}, m, *s0, opts, &why)) {
    report.kind = TrialReport::Kind::Violation;
    report.term = m;
    report.message = why;
    return report;
  }
  ValueSubst rho;
  TermPtr current = m;
  for (std::size_t i = 0; i < fuel; ++i) {
    StepResult st = step(current);
    if (st.kind == StepResult::Kind::Value) break;
    if (st.kind == StepResult::Kind::Stuck) {
      report.kind = TrialReport::Kind::Stuck;
      report.term = current;
      report.message = st.reason;
      return report;
    }
    if (st.subst) rho = compose(rho, ValueSubst{*st.subst});
    current = st.next;
    ++report.steps;
    Scheme expected = subst_type(rho, *s0);
    if (!recheck(sub, Env{}, current, expected, opts, &why)) {
      report.kind = TrialReport::Kind::Violation;
      report.term = current;
      report.message = "after " + std::to_string(report.steps) + " steps: " + why;
      return report;
    }
  }
  return report;
}

namespace {

TermPtr prim_app(Prim p, std::vector<TermPtr> args) { return app_spine(Term::prim(p), args); }

TermPtr bool_not(TermPtr b) {
  return prim_app(Prim::Ite, {std::move(b), Term::bool_lit(false), Term::bool_lit(true)});
}

struct Assignment {
  std::map<std::string, TermPtr> values;
  std::map<std::string, BaseType> types;
};

TermPtr expr_term(const Expr& e, const Assignment& a, const TermPtr& nu, BaseType nu_type) {
  switch (e.kind()) {
    case Expr::Kind::IntLit: return Term::int_lit(e.int_value());
    case Expr::Kind::BoolLit: return Term::bool_lit(e.bool_value());
    case Expr::Kind::Nu: return nu;
    case Expr::Kind::Var: return a.values.at(e.name());
    case Expr::Kind::Neg: return prim_app(Prim::Neg, {expr_term(*e.operand(), a, nu, nu_type)});
    case Expr::Kind::Arith: {
      Prim p = e.arith_op() == ArithOp::Add ? Prim::Add : e.arith_op() == ArithOp::Sub ? Prim::Sub : Prim::Mul;
      return prim_app(p, {expr_term(*e.lhs(), a, nu, nu_type), expr_term(*e.rhs(), a, nu, nu_type)});
    }
    case Expr::Kind::And:
      return prim_app(Prim::Ite, {expr_term(*e.lhs(), a, nu, nu_type), expr_term(*e.rhs(), a, nu, nu_type),
                                  Term::bool_lit(false)});
    case Expr::Kind::Cmp: break;
  }
  TermPtr l = expr_term(*e.lhs(), a, nu, nu_type);
  TermPtr r = expr_term(*e.rhs(), a, nu, nu_type);
  VarTypeLookup lookup = [&](const std::string& y) -> std::optional<BaseType> {
    auto it = a.types.find(y);
    if (it == a.types.end()) return std::nullopt;
    return it->second;
  };
  if (e.cmp_op() == CmpOp::Eq && type_of(*e.lhs(), nu_type, lookup) == BaseType::Bool) {
    return prim_app(Prim::Ite, {l, r, bool_not(r)});
  }
  Prim p = Prim::Eq;
  switch (e.cmp_op()) {
    case CmpOp::Eq: p = Prim::Eq; break;
    case CmpOp::Le: p = Prim::Le; break;
    case CmpOp::Ge: p = Prim::Ge; break;
    case CmpOp::Lt: p = Prim::Lt; break;
    case CmpOp::Gt: p = Prim::Gt; break;
  }
  return prim_app(p, {l, r});
}

bool holds(const Expr& e, const Assignment& a, const TermPtr& nu, BaseType nu_type) {
  EvalResult r = eval(expr_term(e, a, nu, nu_type), 10000);
  return r.kind == EvalResult::Kind::Value && r.term->kind == Term::Kind::Const &&
         r.term->constant.kind == Constant::Kind::Bool && r.term->constant.value != 0;
}

std::vector<TermPtr> domain(BaseType b, int bound) {
  std::vector<TermPtr> out;
  if (b == BaseType::Bool) return {Term::bool_lit(false), Term::bool_lit(true)};
  for (int i = -bound; i <= bound; ++i) out.push_back(Term::int_lit(i));
  return out;
}

struct OracleBinding {
  std::string name;
  BaseType type;
  std::vector<ExprPtr> refinements;
};

bool oracle_search(const std::vector<OracleBinding>& bs, std::size_t i, Assignment& a, const Expr& e,
                   const Expr& e2, BaseType nu_type, int bound) {
  if (i == bs.size()) {
    for (const auto& nu : domain(nu_type, bound)) {
      if (holds(e, a, nu, nu_type) && !holds(e2, a, nu, nu_type)) return false;
    }
    return true;
  }
  const OracleBinding& b = bs[i];
  auto saved_value = a.values.find(b.name) != a.values.end() ? std::optional<TermPtr>(a.values[b.name]) : std::nullopt;
  auto saved_type = a.types.find(b.name) != a.types.end() ? std::optional<BaseType>(a.types[b.name]) : std::nullopt;
  bool ok = true;
  for (const auto& value : domain(b.type, bound)) {
    bool admitted = std::all_of(b.refinements.begin(), b.refinements.end(),
                                [&](const ExprPtr& r) { return holds(*r, a, value, b.type); });
    if (!admitted) continue;
    a.values[b.name] = value;
    a.types[b.name] = b.type;
    if (!oracle_search(bs, i + 1, a, e, e2, nu_type, bound)) {
      ok = false;
      break;
    }
  }
  if (saved_value) a.values[b.name] = *saved_value; else a.values.erase(b.name);
  if (saved_type) a.types[b.name] = *saved_type; else a.types.erase(b.name);
  return ok;
}

// Every base binding of env, oldest first; nullopt when e or e2 mentions
// a variable that is unbound or not of base type, or a name is shadowed.
std::optional<std::vector<OracleBinding>> relevant_bindings(const Env& env, const Expr& e, const Expr& e2) {
  std::set<std::string> needed = free_vars(e);
  for (const auto& y : free_vars(e2)) needed.insert(y);
  std::vector<OracleBinding> out;
  std::set<std::string> seen;
  auto all = env.bindings();
  for (auto it = all.rbegin(); it != all.rend(); ++it) {
    if (!seen.insert(it->first).second) return std::nullopt;
    const Scheme& s = it->second;
    bool base = s.is_mono() && s.body.shape()->kind == SimpleType::Kind::Base;
    if (!base) {
      if (needed.count(it->first)) return std::nullopt;
      continue;
    }
    needed.erase(it->first);
    OracleBinding b{it->first, s.body.shape()->base, {}};
    for (const Arm& arm : s.body.arms()) b.refinements.push_back(arm.refinement);
    out.push_back(std::move(b));
  }
  if (!needed.empty()) return std::nullopt;
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace

std::optional<bool> semantic_implication_oracle(const Env& env, const ExprPtr& e, const ExprPtr& e2,
                                                BaseType nu_type, int bound) {
  auto bs = relevant_bindings(env, *e, *e2);
  if (!bs) return std::nullopt;
  Assignment a;
  return oracle_search(*bs, 0, a, *e, *e2, nu_type, bound);
}

namespace {

class TermGen {
 public:
  explicit TermGen(std::mt19937_64& rng) : rng_(rng) {}

  TermPtr integer(int size, std::vector<std::string>& scope, int lam_depth) {
    if (size <= 1) return leaf(scope);
    switch (pick({6, 2, 3, 3, 2, 2, 1, 1})) {
      case 0: {
        static const Prim ops[] = {Prim::Add, Prim::Add, Prim::Sub, Prim::Sub, Prim::Mul};
        Prim p = ops[uniform(0, 4)];
        int left = uniform(1, size - 1);
        TermPtr a = integer(left, scope, lam_depth);
        TermPtr b = integer(size - left, scope, lam_depth);
        return prim_app(p, {a, b});
      }
      case 1: return prim_app(Prim::Neg, {integer(size - 1, scope, lam_depth)});
      case 2: {
        int left = uniform(1, size - 1);
        TermPtr bound = integer(left, scope, lam_depth);
        std::string x = fresh();
        scope.push_back(x);
        TermPtr body = integer(size - left, scope, lam_depth);
        scope.pop_back();
        return Term::let(x, bound, body);
      }
      case 3: {
        if (lam_depth >= 3) return leaf(scope);
        int left = uniform(1, size - 1);
        std::string x = fresh();
        scope.push_back(x);
        TermPtr body = integer(left, scope, lam_depth + 1);
        scope.pop_back();
        return Term::app(Term::lam(x, body), integer(size - left, scope, lam_depth));
      }
      case 4: {
        if (lam_depth >= 3 || size < 3) return leaf(scope);
        std::string f = fresh(), x = fresh();
        scope.push_back(x);
        TermPtr body = integer(size / 2, scope, lam_depth + 1);
        scope.pop_back();
        TermPtr a1 = integer(std::max(1, size / 4), scope, lam_depth);
        TermPtr a2 = integer(std::max(1, size / 4), scope, lam_depth);
        TermPtr use = prim_app(Prim::Add, {Term::app(Term::var(f), a1), Term::app(Term::var(f), a2)});
        return Term::let(f, Term::lam(x, body), use);
      }
      case 5: {
        if (size < 4) return leaf(scope);
        static const Prim cmps[] = {Prim::Le, Prim::Ge, Prim::Lt, Prim::Gt, Prim::Eq};
        TermPtr c = prim_app(cmps[uniform(0, 4)], {leaf(scope), leaf(scope)});
        int left = std::max(1, (size - 2) / 2);
        TermPtr a = integer(left, scope, lam_depth);
        TermPtr b = integer(std::max(1, size - 2 - left), scope, lam_depth);
        return prim_app(Prim::Ite, {c, a, b});
      }
      case 6: {
        if (lam_depth >= 2 || size < 3) return leaf(scope);
        std::string x = fresh(), y = fresh();
        scope.push_back(x);
        scope.push_back(y);
        TermPtr body = integer(size - 2, scope, lam_depth + 2);
        scope.pop_back();
        scope.pop_back();
        return app_spine(Term::lam(x, Term::lam(y, body)), {leaf(scope), leaf(scope)});
      }
      default: {
        if (lam_depth >= 3 || size < 3) return leaf(scope);
        static const Prim ops[] = {Prim::Add, Prim::Sub, Prim::Mul};
        std::string x = fresh();
        TermPtr partial = prim_app(ops[uniform(0, 2)], {leaf(scope)});
        TermPtr use = Term::app(Term::var(x), integer(size - 2, scope, lam_depth));
        return Term::let(x, partial, use);
      }
    }
  }

 private:
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  int pick(std::initializer_list<int> weights) {
    std::discrete_distribution<int> d(weights.begin(), weights.end());
    return d(rng_);
  }
  TermPtr leaf(const std::vector<std::string>& scope) {
    if (!scope.empty() && uniform(0, 1) == 0) {
      return Term::var(scope[static_cast<std::size_t>(uniform(0, static_cast<int>(scope.size()) - 1))]);
    }
    return Term::int_lit(uniform(-8, 8));
  }
  std::string fresh() { return "x" + std::to_string(++counter_); }

  std::mt19937_64& rng_;
  int counter_ = 0;
};

}  // namespace

TermPtr random_term(std::mt19937_64& rng, int size) {
  TermGen gen(rng);
  std::vector<std::string> scope;
  return gen.integer(std::max(1, size), scope, 0);
}

namespace {

struct Atom {
  ExprPtr lin;
  CmpOp op;
  std::int64_t k;
};

ExprPtr atom_expr(const Atom& a) { return Expr::cmp(a.op, a.lin, Expr::int_lit(a.k)); }

Atom random_atom(std::mt19937_64& rng, const std::vector<std::string>& vars) {
  auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  std::vector<ExprPtr> names{Expr::nu()};
  for (const auto& v : vars) names.push_back(Expr::var(v));
  ExprPtr lin;
  int terms = uni(1, 2);
  for (int i = 0; i < terms; ++i) {
    ExprPtr x = names[static_cast<std::size_t>(uni(0, static_cast<int>(names.size()) - 1))];
    int c = uni(-3, 3);
    if (c == 0) c = 1;
    ExprPtr t = c == 1 ? x : Expr::arith(ArithOp::Mul, Expr::int_lit(c), x);
    lin = lin ? Expr::arith(uni(0, 1) ? ArithOp::Add : ArithOp::Sub, lin, t) : t;
  }
  static const CmpOp ops[] = {CmpOp::Eq, CmpOp::Le, CmpOp::Ge, CmpOp::Lt, CmpOp::Gt};
  return Atom{lin, ops[uni(0, 4)], uni(-4, 4)};
}

}  // namespace

ExprPtr random_refinement(std::mt19937_64& rng, const std::vector<std::string>& vars, int atoms) {
  ExprPtr out;
  for (int i = 0; i < std::max(1, atoms); ++i) {
    ExprPtr a = atom_expr(random_atom(rng, vars));
    out = out ? Expr::conj(out, a) : a;
  }
  return out;
}

SimpleTypePtr random_shape(std::mt19937_64& rng, int arrows) {
  int pick = std::uniform_int_distribution<int>(0, arrows > 0 ? 9 : 5)(rng);
  if (pick <= 3) return SimpleType::int_type();
  if (pick == 4) return SimpleType::bool_type();
  if (pick == 5) return SimpleType::var("a");
  return SimpleType::arrow("x" + std::to_string(arrows), random_shape(rng, arrows - 1),
                           random_shape(rng, arrows - 1));
}

LiquidType random_type(std::mt19937_64& rng, const SimpleType& t,
                       const std::vector<std::string>& vars, int max_arms) {
  auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  if (t.kind == SimpleType::Kind::Var) return LiquidType::single(Arm::tyvar(t.name));
  std::vector<Arm> arms;
  int count = uni(1, std::max(1, max_arms));
  for (int i = 0; i < count; ++i) {
    switch (t.kind) {
      case SimpleType::Kind::Base:
        if (t.base == BaseType::Int) {
          arms.push_back(Arm::base_arm(BaseType::Int,
                                       uni(0, 5) == 0 ? Expr::top() : random_refinement(rng, vars, uni(1, 2))));
        } else {
          int b = uni(0, 2);
          arms.push_back(Arm::base_arm(
              BaseType::Bool, b == 0 ? Expr::top() : Expr::cmp(CmpOp::Eq, Expr::nu(), Expr::bool_lit(b == 1))));
        }
        break;
      case SimpleType::Kind::Arrow: {
        LiquidType dom = random_type(rng, *t.dom, vars, max_arms);
        std::vector<std::string> inner = vars;
        if (t.dom->kind == SimpleType::Kind::Base && t.dom->base == BaseType::Int) inner.push_back(t.name);
        arms.push_back(Arm::fun(t.name, std::move(dom), random_type(rng, *t.cod, inner, max_arms)));
        break;
      }
      case SimpleType::Kind::Var: break;
    }
  }
  return LiquidType::make(std::move(arms));
}

AlgebraReport intersection_algebra(ValidityEngine& engine, std::size_t n, std::uint64_t seed) {
  AlgebraReport out;
  std::mt19937_64 rng(seed);
  Subtyping sub(engine);
  Env env = Env{}
                .extended("p", LiquidType::base(BaseType::Int, Expr::cmp(CmpOp::Ge, Expr::nu(), Expr::int_lit(0))))
                .extended("q", LiquidType::base(BaseType::Int, Expr::top()));
  const std::vector<std::string> vars{"p", "q"};
  auto expect = [&](bool ok, const std::string& law, const std::vector<LiquidType*>& ts) {
    ++out.checks;
    if (ok) return;
    std::string msg = law + ":";
    for (const LiquidType* t : ts) msg += " [" + to_string(*t) + "]";
    out.failures.push_back(msg);
  };
  for (std::size_t i = 0; i < n; ++i) {
    SimpleTypePtr shape = random_shape(rng, 2);
    LiquidType a = random_type(rng, *shape, vars, 3);
    LiquidType b = random_type(rng, *shape, vars, 3);
    LiquidType c = random_type(rng, *shape, vars, 3);
    ++out.types;
    LiquidType ab = intersect(a, b);
    expect(intersect(a, a) == a, "idempotence", {&a});
    expect(ab == intersect(b, a), "commutativity", {&a, &b});
    expect(intersect(ab, c) == intersect(a, intersect(b, c)), "associativity", {&a, &b, &c});
    expect(sub.is_subtype(env, a, a), "reflexivity", {&a});
    expect(sub.is_subtype(env, ab, a), "elimination", {&a, &b});
    bool both = sub.is_subtype(env, c, a) && sub.is_subtype(env, c, b);
    expect(sub.is_subtype(env, c, ab) == both, "introduction", {&c, &a, &b});
  }
  return out;
}

OracleAgreement oracle_agreement(std::size_t queries, int bound, std::uint64_t seed,
                                 const std::string& external) {
  OracleAgreement out;
  std::mt19937_64 rng(seed);
  auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  static const std::vector<std::string> pool{"a", "b", "c"};
  for (std::size_t n = 0; n < queries; ++n) {
    std::vector<std::string> vars(pool.begin(), pool.begin() + uni(1, 3));
    Env env;
    std::vector<std::string> earlier;
    for (const auto& v : vars) {
      env = env.extended(v, LiquidType::base(BaseType::Int, random_refinement(rng, earlier, 1)));
      earlier.push_back(v);
    }
    std::vector<Atom> hyp;
    int hyp_atoms = uni(1, 2);
    for (int i = 0; i < hyp_atoms; ++i) hyp.push_back(random_atom(rng, vars));
    Atom concl = random_atom(rng, vars);
    switch (uni(0, 2)) {
      case 0: {
        // Weakening of a hypothesis: often valid.
        concl = hyp[static_cast<std::size_t>(uni(0, hyp_atoms - 1))];
        if (concl.op == CmpOp::Le || concl.op == CmpOp::Lt) concl.k += uni(0, 2);
        if (concl.op == CmpOp::Ge || concl.op == CmpOp::Gt) concl.k -= uni(0, 2);
        if (concl.op == CmpOp::Eq) concl.op = uni(0, 1) ? CmpOp::Le : CmpOp::Ge;
        break;
      }
      default: break;
    }
    ExprPtr e = atom_expr(hyp[0]);
    for (std::size_t i = 1; i < hyp.size(); ++i) e = Expr::conj(e, atom_expr(hyp[i]));
    ExprPtr e2 = atom_expr(concl);

    ValidityQuery q = base_subtype_query(env, {e}, {e2}, BaseType::Int);
    Verdict builtin = builtin_decide(q);
    auto oracle = semantic_implication_oracle(env, e, e2, BaseType::Int, bound);
    ++out.queries;
    if (builtin.valid() && oracle && !*oracle) {
      ++out.oracle_violations;
      out.failures.push_back("builtin Valid, oracle countermodel: " + to_string(q));
    }
    if (!external.empty()) {
      Verdict ext = run_external(q, external, std::chrono::milliseconds(10000));
      ++out.external_compared;
      if (ext.kind != builtin.kind) {
        ++out.external_disagreements;
        out.failures.push_back("builtin " + std::string(to_string(builtin.kind)) + ", external " +
                               std::string(to_string(ext.kind)) + ": " + to_string(q));
      }
    }
  }
  return out;
}

MetatheoryReport check_metatheory(ValidityEngine& engine, const MetatheoryOptions& opts) {
  MetatheoryReport report;
  InferOptions iopts{opts.qualifiers, opts.max_arms};
  unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());

  std::mutex mu;
  std::set<std::string> oracle_seen;
  std::atomic<std::size_t> oracle_queries{0}, oracle_bad{0};
  std::vector<std::string> oracle_failures;
  Subtyping::Observer observer = [&](const Env& env, const std::vector<ExprPtr>& lhs,
                                     const std::vector<ExprPtr>& rhs, BaseType b, const Verdict& v) {
    if (!v.valid()) return;
    ExprPtr e = Expr::top(), e2 = Expr::top();
    for (const auto& x : lhs) e = Expr::conj(e, x);
    for (const auto& x : rhs) e2 = Expr::conj(e2, x);
    auto bs = relevant_bindings(env, *e, *e2);
    if (!bs || bs->size() > 3) return;
    std::string key = canonical_key(base_subtype_query(env, lhs, rhs, b));
    {
      std::lock_guard<std::mutex> lock(mu);
      if (!oracle_seen.insert(key).second) return;
    }
    ++oracle_queries;
    Assignment a;
    if (!oracle_search(*bs, 0, a, *e, *e2, b, opts.bound)) {
      ++oracle_bad;
      std::lock_guard<std::mutex> lock(mu);
      oracle_failures.push_back("Valid answer refuted by the oracle: " + key);
    }
  };

  std::mt19937_64 rng(opts.seed);
  std::size_t max_attempts = std::max<std::size_t>(opts.trials * 50, 100);
  while (report.trials < opts.trials && report.attempts < max_attempts) {
    std::size_t need = opts.trials - report.trials;
    std::size_t batch = std::min(max_attempts - report.attempts, need + need / 2 + 4);
    std::vector<TermPtr> terms;
    for (std::size_t i = 0; i < batch; ++i) {
      int size = std::uniform_int_distribution<int>(2, 14)(rng);
      terms.push_back(random_term(rng, size));
    }
    std::vector<TrialReport> results(batch);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      Subtyping sub(engine);
      sub.set_observer(observer);
      for (std::size_t i = next++; i < batch; i = next++) {
        results[i] = subject_reduction_trial(sub, terms[i], iopts, opts.fuel);
      }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < std::min<std::size_t>(threads, batch); ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    for (std::size_t i = 0; i < batch && report.trials < opts.trials; ++i) {
      ++report.attempts;
      const TrialReport& r = results[i];
      if (r.kind == TrialReport::Kind::Untyped) continue;
      ++report.trials;
      report.steps += r.steps;
      if (r.kind == TrialReport::Kind::Ok) continue;
      std::string line = std::string(to_string(r.kind)) + " in " + to_string(terms[i]);
      if (r.term) line += " at " + to_string(r.term);
      line += ": " + r.message;
      if (r.kind == TrialReport::Kind::Stuck) ++report.stuck;
      else if (r.steps == 0) ++report.recheck_failures;
      else ++report.violations;
      report.failures.push_back(line);
    }
  }
  report.oracle_queries = oracle_queries;
  report.oracle_disagreements = oracle_bad;
  report.failures.insert(report.failures.end(), oracle_failures.begin(), oracle_failures.end());
  if (report.trials < opts.trials) {
    report.failures.push_back("only " + std::to_string(report.trials) + " typable terms in " +
                              std::to_string(report.attempts) + " attempts");
  }
  return report;
}

}  // namespace lqi
