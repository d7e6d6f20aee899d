#include "lqi/validity.hpp"

#include <cstdlib>
#include <functional>
#include <optional>

#include "lqi/error.hpp"
#include "lqi/omega.hpp"

namespace lqi {

std::string_view to_string(Verdict::Kind k) {
  switch (k) {
    case Verdict::Kind::Valid: return "valid";
    case Verdict::Kind::Invalid: return "invalid";
    case Verdict::Kind::Unknown: return "unknown";
  }
  return "?";
}

std::optional<Backend> parse_backend(std::string_view s) {
  if (s == "builtin") return Backend::Builtin;
  if (s == "external") return Backend::External;
  if (s == "both") return Backend::Both;
  return std::nullopt;
}

namespace {

struct NotLinear {};
struct Overflow {};

using Wide = __int128;

std::int64_t fit(Wide w) {
  if (w > INT64_MAX || w < INT64_MIN) throw Overflow{};
  return static_cast<std::int64_t>(w);
}

struct Linear {
  std::map<std::string, std::int64_t> coef;
  std::int64_t constant = 0;
};

Linear scale(const Linear& l, std::int64_t s) {
  Linear out;
  for (const auto& [v, a] : l.coef) out.coef[v] = fit(static_cast<Wide>(a) * s);
  out.constant = fit(static_cast<Wide>(l.constant) * s);
  return out;
}

Linear combine(const Linear& a, const Linear& b, std::int64_t sign) {
  Linear out = a;
  for (const auto& [v, c] : b.coef) out.coef[v] = fit(static_cast<Wide>(out.coef[v]) + static_cast<Wide>(sign) * c);
  out.constant = fit(static_cast<Wide>(out.constant) + static_cast<Wide>(sign) * b.constant);
  return out;
}

Linear linearize(const LTerm& t) {
  switch (t.kind) {
    case LTerm::Kind::Const: return Linear{{}, t.value};
    case LTerm::Kind::Var: return Linear{{{t.name, 1}}, 0};
    case LTerm::Kind::Add: return combine(linearize(*t.args[0]), linearize(*t.args[1]), 1);
    case LTerm::Kind::Sub: return combine(linearize(*t.args[0]), linearize(*t.args[1]), -1);
    case LTerm::Kind::Neg: return scale(linearize(*t.args[0]), -1);
    case LTerm::Kind::Mul: {
      Linear a = linearize(*t.args[0]);
      Linear b = linearize(*t.args[1]);
      auto is_const = [](const Linear& l) {
        for (const auto& [v, c] : l.coef) {
          if (c != 0) return false;
        }
        return true;
      };
      if (is_const(a)) return scale(b, a.constant);
      if (is_const(b)) return scale(a, b.constant);
      throw NotLinear{};
    }
    case LTerm::Kind::App: throw NotLinear{};
  }
  throw NotLinear{};
}

omega::LinearConstraint atom_constraint(CmpOp op, const LTerm& lhs, const LTerm& rhs) {
  Linear d = combine(linearize(lhs), linearize(rhs), -1);
  omega::LinearConstraint c;
  switch (op) {
    case CmpOp::Eq: c.equality = true; break;
    case CmpOp::Le: break;
    case CmpOp::Lt: d.constant = fit(static_cast<Wide>(d.constant) + 1); break;
    case CmpOp::Ge: d = scale(d, -1); break;
    case CmpOp::Gt:
      d = scale(d, -1);
      d.constant = fit(static_cast<Wide>(d.constant) + 1);
      break;
  }
  c.coef = d.coef;
  c.constant = d.constant;
  return c;
}

// Applications replaced by fresh variables, innermost first.
class Purifier {
 public:
  struct Application {
    std::string symbol;
    std::vector<LTermPtr> args;  // purified
    std::string var;
  };

  FormulaPtr formula(const FormulaPtr& f) {
    switch (f->kind) {
      case Formula::Kind::Cmp: return Formula::cmp(f->op, term(f->lhs), term(f->rhs));
      case Formula::Kind::Not: return Formula::negation(formula(f->kids[0]));
      case Formula::Kind::And:
      case Formula::Kind::Or: {
        std::vector<FormulaPtr> kids;
        for (const auto& k : f->kids) kids.push_back(formula(k));
        return f->kind == Formula::Kind::And ? Formula::conj(kids) : Formula::disj(kids);
      }
      case Formula::Kind::Implies: return Formula::implies(formula(f->kids[0]), formula(f->kids[1]));
      case Formula::Kind::Iff: return Formula::iff(formula(f->kids[0]), formula(f->kids[1]));
      default: return f;
    }
  }

  LTermPtr term(const LTermPtr& t) {
    if (t->kind == LTerm::Kind::Const || t->kind == LTerm::Kind::Var) return t;
    std::vector<LTermPtr> args;
    for (const auto& a : t->args) args.push_back(term(a));
    if (t->kind != LTerm::Kind::App) {
      LTerm copy = *t;
      copy.args = std::move(args);
      return std::make_shared<const LTerm>(std::move(copy));
    }
    std::string key = t->name + "(";
    for (const auto& a : args) key += to_string(*a) + ",";
    auto it = index_.find(key);
    if (it != index_.end()) return LTerm::var(apps_[it->second].var);
    std::string var = "@u" + std::to_string(apps_.size());
    index_.emplace(key, apps_.size());
    apps_.push_back(Application{t->name, std::move(args), var});
    return LTerm::var(var);
  }

  // Functional consistency of every pair of applications of one symbol.
  std::vector<FormulaPtr> ackermann() const {
    std::vector<FormulaPtr> out;
    for (std::size_t i = 0; i < apps_.size(); ++i) {
      for (std::size_t j = i + 1; j < apps_.size(); ++j) {
        const auto& a = apps_[i];
        const auto& b = apps_[j];
        if (a.symbol != b.symbol || a.args.size() != b.args.size()) continue;
        std::vector<FormulaPtr> same;
        for (std::size_t k = 0; k < a.args.size(); ++k) {
          same.push_back(Formula::cmp(CmpOp::Eq, a.args[k], b.args[k]));
        }
        out.push_back(Formula::implies(Formula::conj(same),
                                       Formula::cmp(CmpOp::Eq, LTerm::var(a.var), LTerm::var(b.var))));
      }
    }
    return out;
  }

  const std::vector<Application>& apps() const { return apps_; }

 private:
  std::vector<Application> apps_;
  std::map<std::string, std::size_t> index_;
};

FormulaPtr nnf(const FormulaPtr& f, bool positive) {
  switch (f->kind) {
    case Formula::Kind::True:
    case Formula::Kind::False: return positive ? f : Formula::negation(f);
    case Formula::Kind::BoolVar: return positive ? f : Formula::negation(f);
    case Formula::Kind::Cmp: {
      if (positive) return f;
      switch (f->op) {
        case CmpOp::Eq:
          return Formula::disj({Formula::cmp(CmpOp::Lt, f->lhs, f->rhs),
                                Formula::cmp(CmpOp::Gt, f->lhs, f->rhs)});
        case CmpOp::Le: return Formula::cmp(CmpOp::Gt, f->lhs, f->rhs);
        case CmpOp::Ge: return Formula::cmp(CmpOp::Lt, f->lhs, f->rhs);
        case CmpOp::Lt: return Formula::cmp(CmpOp::Ge, f->lhs, f->rhs);
        case CmpOp::Gt: return Formula::cmp(CmpOp::Le, f->lhs, f->rhs);
      }
      break;
    }
    case Formula::Kind::Not: return nnf(f->kids[0], !positive);
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      std::vector<FormulaPtr> kids;
      for (const auto& k : f->kids) kids.push_back(nnf(k, positive));
      bool conj = (f->kind == Formula::Kind::And) == positive;
      return conj ? Formula::conj(kids) : Formula::disj(kids);
    }
    case Formula::Kind::Implies:
      if (positive) return Formula::disj({nnf(f->kids[0], false), nnf(f->kids[1], true)});
      return Formula::conj({nnf(f->kids[0], true), nnf(f->kids[1], false)});
    case Formula::Kind::Iff: {
      const auto& a = f->kids[0];
      const auto& b = f->kids[1];
      if (positive) {
        return Formula::disj({Formula::conj({nnf(a, true), nnf(b, true)}),
                              Formula::conj({nnf(a, false), nnf(b, false)})});
      }
      return Formula::disj({Formula::conj({nnf(a, true), nnf(b, false)}),
                            Formula::conj({nnf(a, false), nnf(b, true)})});
    }
  }
  return f;
}

struct BudgetExceeded {};

class Search {
 public:
  Search(const BuiltinOptions& opts, const FormulaPtr& original, const Purifier& purifier,
         const Signature& sig)
      : opts_(opts), original_(original), purifier_(purifier), sig_(sig) {}

  struct State {
    std::vector<FormulaPtr> pending;
    std::vector<omega::LinearConstraint> cube;
    std::map<std::string, bool> literals;
    std::size_t checked = 0;  // cube size at the last feasibility check
  };

  // True when a genuine countermodel was found.
  bool run(State s) {
    if (++branches_ > opts_.max_branches) throw BudgetExceeded{};
    while (!s.pending.empty()) {
      FormulaPtr f = s.pending.back();
      s.pending.pop_back();
      switch (f->kind) {
        case Formula::Kind::True: break;
        case Formula::Kind::False: return false;
        case Formula::Kind::And:
          for (auto it = f->kids.rbegin(); it != f->kids.rend(); ++it) s.pending.push_back(*it);
          break;
        case Formula::Kind::Cmp: s.cube.push_back(atom_constraint(f->op, *f->lhs, *f->rhs)); break;
        case Formula::Kind::BoolVar:
        case Formula::Kind::Not: {
          bool value = f->kind == Formula::Kind::BoolVar;
          const std::string& name = value ? f->name : f->kids[0]->name;
          auto [it, fresh] = s.literals.emplace(name, value);
          if (!fresh && it->second != value) return false;
          break;
        }
        case Formula::Kind::Or: {
          if (s.cube.size() > s.checked) {
            omega::Result r = omega::solve(s.cube, opts_.solver_budget);
            if (r.outcome == omega::Outcome::Unsat) return false;
            s.checked = s.cube.size();
          }
          for (const auto& k : f->kids) {
            State branch = s;
            branch.pending.push_back(k);
            if (run(std::move(branch))) return true;
          }
          return false;
        }
        default: throw NotLinear{};
      }
    }
    omega::Result r = omega::solve(s.cube, opts_.solver_budget);
    if (r.outcome == omega::Outcome::Unsat) return false;
    if (r.outcome == omega::Outcome::Unknown) {
      unknown_ = true;
      return false;
    }
    Model m = build_model(r.model, s.literals);
    auto holds = evaluate(*original_, m, true);
    if (holds && *holds) {
      model_ = std::move(m);
      return true;
    }
    spurious_ = true;
    return false;
  }

  bool unknown() const { return unknown_; }
  bool spurious() const { return spurious_; }
  const Model& model() const { return model_; }

 private:
  const BuiltinOptions& opts_;
  FormulaPtr original_;
  const Purifier& purifier_;
  const Signature& sig_;
  std::size_t branches_ = 0;
  bool unknown_ = false;
  bool spurious_ = false;
  Model model_;

  Model build_model(const std::map<std::string, std::int64_t>& ints,
                    const std::map<std::string, bool>& literals) const {
    Model m;
    auto read = [&](const std::string& v) {
      auto it = ints.find(v);
      return it == ints.end() ? std::int64_t{0} : it->second;
    };
    for (const auto& v : sig_.int_vars) m.ints[v] = read(v);
    for (const auto& b : sig_.bool_vars) {
      auto it = literals.find(b);
      m.bools[b] = it != literals.end() && it->second;
    }
    Model args_model;
    for (const auto& [v, x] : ints) args_model.ints[v] = x;
    for (const auto& app : purifier_.apps()) {
      std::vector<std::int64_t> args;
      for (const auto& a : app.args) args.push_back(evaluate(*a, args_model, false).value_or(0));
      m.functions[app.symbol][args] = read(app.var);
    }
    return m;
  }
};

}  // namespace

Verdict builtin_decide(const ValidityQuery& q, const BuiltinOptions& opts) {
  FormulaPtr original = Formula::conj({q.hypothesis, Formula::negation(q.conclusion)});
  try {
    Signature sig;
    collect_signature(*original, sig);
    Purifier purifier;
    FormulaPtr pure = purifier.formula(original);
    std::vector<FormulaPtr> parts = purifier.ackermann();
    parts.push_back(pure);
    FormulaPtr normal = nnf(Formula::conj(parts), true);
    Search search(opts, original, purifier, sig);
    Search::State start;
    start.pending.push_back(normal);
    if (search.run(std::move(start))) {
      return Verdict{Verdict::Kind::Invalid, search.model(), {}};
    }
    if (search.unknown()) return Verdict::unknown("integer solver gave up");
    if (search.spurious()) return Verdict::unknown("countermodel relies on uninterpreted times");
    return Verdict::make_valid();
  } catch (const NotLinear&) {
    return Verdict::unknown("nonlinear arithmetic");
  } catch (const Overflow&) {
    return Verdict::unknown("coefficient overflow");
  } catch (const BudgetExceeded&) {
    return Verdict::unknown("case split budget exceeded");
  }
}

ValidityEngine::ValidityEngine(EngineOptions opts) : opts_(std::move(opts)) {
  if (opts_.smt_cmd.empty()) {
    if (const char* env = std::getenv("LQI_SMT_CMD")) opts_.smt_cmd = env;
  }
}

Verdict ValidityEngine::check_valid(const ValidityQuery& q, Backend backend) {
  SmtOptions smt{opts_.nonlinear, true};
  auto external = [&] {
    ++external_;
    if (opts_.smt_cmd.empty()) return Verdict::unknown("no external solver configured");
    return run_external(q, opts_.smt_cmd, opts_.timeout, smt);
  };
  switch (backend) {
    case Backend::Builtin: ++builtin_; return builtin_decide(q);
    case Backend::External: return external();
    case Backend::Both: {
      ++builtin_;
      Verdict b = builtin_decide(q);
      if (b.valid()) return b;
      Verdict e = external();
      if (e.valid()) return e;
      if (b.kind == Verdict::Kind::Invalid) return b;
      return e;
    }
  }
  return Verdict::unknown("unknown backend");
}

Verdict ValidityEngine::cached(const ValidityQuery& q) {
  ++queries_;
  std::string key = canonical_key(q);
  std::string text = to_string(q);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(key);
    if (it != cache_.end()) {
      ++hits_;
      Verdict v = it->second.second;
      // Countermodel names only match the query that produced them.
      if (it->second.first != text) v.countermodel.reset();
      return v;
    }
  }
  Verdict v = check_valid(q);
  std::lock_guard<std::mutex> lock(mu_);
  cache_.emplace(key, std::make_pair(text, v));
  return v;
}

EngineStats ValidityEngine::stats() const {
  return EngineStats{queries_.load(), hits_.load(), builtin_.load(), external_.load()};
}

void ValidityEngine::preflight() {
  if (opts_.backend == Backend::Builtin) return;
  if (opts_.smt_cmd.empty()) {
    throw SolverError("no external solver command (use --smt-cmd or LQI_SMT_CMD)");
  }
  ValidityQuery trivial{Formula::truth(), Formula::cmp(CmpOp::Le, LTerm::var("x"), LTerm::var("x"))};
  Verdict v = run_external(trivial, opts_.smt_cmd, opts_.timeout, SmtOptions{opts_.nonlinear, true});
  if (!v.valid()) {
    throw SolverError("external solver '" + opts_.smt_cmd + "' failed a trivial query: " +
                      (v.detail.empty() ? std::string(to_string(v.kind)) : v.detail));
  }
}

}  // namespace lqi
