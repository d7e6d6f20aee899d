#include "lqi/formula.hpp"

#include "lqi/error.hpp"

namespace lqi {

namespace {

LTermPtr make_term(LTerm t) { return std::make_shared<const LTerm>(std::move(t)); }
FormulaPtr make_formula(Formula f) { return std::make_shared<const Formula>(std::move(f)); }

}  // namespace

LTermPtr LTerm::constant(std::int64_t v) { return make_term(LTerm{Kind::Const, v, {}, {}}); }
LTermPtr LTerm::var(std::string name) { return make_term(LTerm{Kind::Var, 0, std::move(name), {}}); }
LTermPtr LTerm::add(LTermPtr a, LTermPtr b) {
  return make_term(LTerm{Kind::Add, 0, {}, {std::move(a), std::move(b)}});
}
LTermPtr LTerm::sub(LTermPtr a, LTermPtr b) {
  return make_term(LTerm{Kind::Sub, 0, {}, {std::move(a), std::move(b)}});
}
LTermPtr LTerm::neg(LTermPtr a) { return make_term(LTerm{Kind::Neg, 0, {}, {std::move(a)}}); }
LTermPtr LTerm::mul(LTermPtr a, LTermPtr b) {
  return make_term(LTerm{Kind::Mul, 0, {}, {std::move(a), std::move(b)}});
}
LTermPtr LTerm::app(std::string symbol, std::vector<LTermPtr> args) {
  return make_term(LTerm{Kind::App, 0, std::move(symbol), std::move(args)});
}

FormulaPtr Formula::truth() {
  static const FormulaPtr t = make_formula(Formula{Kind::True, {}, CmpOp::Eq, nullptr, nullptr, {}});
  return t;
}

FormulaPtr Formula::falsity() {
  static const FormulaPtr f =
      make_formula(Formula{Kind::False, {}, CmpOp::Eq, nullptr, nullptr, {}});
  return f;
}

FormulaPtr Formula::bool_var(std::string name) {
  return make_formula(Formula{Kind::BoolVar, std::move(name), CmpOp::Eq, nullptr, nullptr, {}});
}

FormulaPtr Formula::cmp(CmpOp op, LTermPtr lhs, LTermPtr rhs) {
  return make_formula(Formula{Kind::Cmp, {}, op, std::move(lhs), std::move(rhs), {}});
}

FormulaPtr Formula::negation(FormulaPtr f) {
  if (f->kind == Kind::True) return falsity();
  if (f->kind == Kind::False) return truth();
  if (f->kind == Kind::Not) return f->kids[0];
  return make_formula(Formula{Kind::Not, {}, CmpOp::Eq, nullptr, nullptr, {std::move(f)}});
}

namespace {

FormulaPtr nary(Formula::Kind kind, std::vector<FormulaPtr> fs) {
  bool is_and = kind == Formula::Kind::And;
  Formula::Kind unit = is_and ? Formula::Kind::True : Formula::Kind::False;
  Formula::Kind zero = is_and ? Formula::Kind::False : Formula::Kind::True;
  std::vector<FormulaPtr> out;
  for (auto& f : fs) {
    if (f->kind == unit) continue;
    if (f->kind == zero) return f;
    if (f->kind == kind) {
      out.insert(out.end(), f->kids.begin(), f->kids.end());
    } else {
      out.push_back(std::move(f));
    }
  }
  if (out.empty()) return is_and ? Formula::truth() : Formula::falsity();
  if (out.size() == 1) return out.front();
  return make_formula(Formula{kind, {}, CmpOp::Eq, nullptr, nullptr, std::move(out)});
}

}  // namespace

FormulaPtr Formula::conj(std::vector<FormulaPtr> fs) { return nary(Kind::And, std::move(fs)); }
FormulaPtr Formula::disj(std::vector<FormulaPtr> fs) { return nary(Kind::Or, std::move(fs)); }

FormulaPtr Formula::implies(FormulaPtr a, FormulaPtr b) {
  if (a->kind == Kind::True) return b;
  if (a->kind == Kind::False || b->kind == Kind::True) return truth();
  return make_formula(Formula{Kind::Implies, {}, CmpOp::Eq, nullptr, nullptr, {std::move(a), std::move(b)}});
}

FormulaPtr Formula::iff(FormulaPtr a, FormulaPtr b) {
  return make_formula(Formula{Kind::Iff, {}, CmpOp::Eq, nullptr, nullptr, {std::move(a), std::move(b)}});
}

std::string to_string(const LTerm& t) {
  switch (t.kind) {
    case LTerm::Kind::Const: return std::to_string(t.value);
    case LTerm::Kind::Var: return t.name;
    case LTerm::Kind::Add: return "(" + to_string(*t.args[0]) + " + " + to_string(*t.args[1]) + ")";
    case LTerm::Kind::Sub: return "(" + to_string(*t.args[0]) + " - " + to_string(*t.args[1]) + ")";
    case LTerm::Kind::Mul: return "(" + to_string(*t.args[0]) + " * " + to_string(*t.args[1]) + ")";
    case LTerm::Kind::Neg: return "-" + to_string(*t.args[0]);
    case LTerm::Kind::App: {
      std::string out = t.name + "(";
      for (std::size_t i = 0; i < t.args.size(); ++i) out += (i ? ", " : "") + to_string(*t.args[i]);
      return out + ")";
    }
  }
  return "?";
}

std::string to_string(const Formula& f) {
  auto join = [&](const char* sep) {
    std::string out = "(";
    for (std::size_t i = 0; i < f.kids.size(); ++i) out += (i ? sep : "") + to_string(*f.kids[i]);
    return out + ")";
  };
  switch (f.kind) {
    case Formula::Kind::True: return "true";
    case Formula::Kind::False: return "false";
    case Formula::Kind::BoolVar: return f.name;
    case Formula::Kind::Cmp:
      return to_string(*f.lhs) + " " + std::string(to_string(f.op)) + " " + to_string(*f.rhs);
    case Formula::Kind::Not: return "!" + to_string(*f.kids[0]);
    case Formula::Kind::And: return join(" && ");
    case Formula::Kind::Or: return join(" || ");
    case Formula::Kind::Implies: return join(" => ");
    case Formula::Kind::Iff: return join(" <=> ");
  }
  return "?";
}

void collect_signature(const LTerm& t, Signature& sig) {
  if (t.kind == LTerm::Kind::Var) sig.int_vars.insert(t.name);
  if (t.kind == LTerm::Kind::App) {
    auto [it, fresh] = sig.functions.emplace(t.name, t.args.size());
    if (!fresh && it->second != t.args.size()) {
      throw EmbeddingError("symbol '" + t.name + "' used at two arities");
    }
  }
  for (const auto& a : t.args) collect_signature(*a, sig);
}

void collect_signature(const Formula& f, Signature& sig) {
  if (f.kind == Formula::Kind::BoolVar) sig.bool_vars.insert(f.name);
  if (f.lhs) collect_signature(*f.lhs, sig);
  if (f.rhs) collect_signature(*f.rhs, sig);
  for (const auto& k : f.kids) collect_signature(*k, sig);
}

std::string to_string(const ValidityQuery& q) {
  return to_string(*q.hypothesis) + " => " + to_string(*q.conclusion);
}

namespace {

class Canon {
 public:
  std::string term(const LTerm& t) {
    switch (t.kind) {
      case LTerm::Kind::Const: return std::to_string(t.value);
      case LTerm::Kind::Var: return rename(t.name, "i");
      case LTerm::Kind::App: {
        std::string out = "(" + rename(t.name, "f");
        for (const auto& a : t.args) out += " " + term(*a);
        return out + ")";
      }
      default: {
        static const char* ops[] = {"", "", "+", "-", "~", "*", ""};
        std::string out = std::string("(") + ops[static_cast<int>(t.kind)];
        for (const auto& a : t.args) out += " " + term(*a);
        return out + ")";
      }
    }
  }

  std::string formula(const Formula& f) {
    switch (f.kind) {
      case Formula::Kind::True: return "T";
      case Formula::Kind::False: return "F";
      case Formula::Kind::BoolVar: return rename(f.name, "b");
      case Formula::Kind::Cmp: {
        std::string l = term(*f.lhs);
        return "(" + std::string(to_string(f.op)) + " " + l + " " + term(*f.rhs) + ")";
      }
      default: {
        static const char* ops[] = {"", "", "", "", "not", "and", "or", "imp", "iff"};
        std::string out = std::string("(") + ops[static_cast<int>(f.kind)];
        for (const auto& k : f.kids) out += " " + formula(*k);
        return out + ")";
      }
    }
  }

 private:
  std::map<std::string, std::string> names_;

  std::string rename(const std::string& name, const char* prefix) {
    auto it = names_.find(name);
    if (it != names_.end()) return it->second;
    // `times` keeps its meaning across queries.
    std::string fresh = name == "times" ? name : prefix + std::to_string(names_.size());
    names_.emplace(name, fresh);
    return fresh;
  }
};

}  // namespace

std::string canonical_key(const ValidityQuery& q) {
  Canon c;
  std::string h = c.formula(*q.hypothesis);
  return h + " |- " + c.formula(*q.conclusion);
}

std::string to_string(const Model& m) {
  std::string out;
  auto add = [&](const std::string& s) { out += (out.empty() ? "" : ", ") + s; };
  for (const auto& [k, v] : m.ints) add(k + "=" + std::to_string(v));
  for (const auto& [k, v] : m.bools) add(k + "=" + (v ? "true" : "false"));
  for (const auto& [f, table] : m.functions) {
    for (const auto& [args, v] : table) {
      std::string a;
      for (std::size_t i = 0; i < args.size(); ++i) a += (i ? "," : "") + std::to_string(args[i]);
      add(f + "(" + a + ")=" + std::to_string(v));
    }
  }
  return out;
}

std::optional<std::int64_t> evaluate(const LTerm& t, const Model& m, bool interpret_times) {
  switch (t.kind) {
    case LTerm::Kind::Const: return t.value;
    case LTerm::Kind::Var: {
      auto it = m.ints.find(t.name);
      return it == m.ints.end() ? 0 : it->second;
    }
    case LTerm::Kind::Neg: {
      auto a = evaluate(*t.args[0], m, interpret_times);
      if (!a || *a == INT64_MIN) return std::nullopt;
      return -*a;
    }
    case LTerm::Kind::Add:
    case LTerm::Kind::Sub:
    case LTerm::Kind::Mul: {
      auto a = evaluate(*t.args[0], m, interpret_times);
      auto b = evaluate(*t.args[1], m, interpret_times);
      if (!a || !b) return std::nullopt;
      std::int64_t r;
      bool overflow = t.kind == LTerm::Kind::Add   ? __builtin_add_overflow(*a, *b, &r)
                      : t.kind == LTerm::Kind::Sub ? __builtin_sub_overflow(*a, *b, &r)
                                                   : __builtin_mul_overflow(*a, *b, &r);
      if (overflow) return std::nullopt;
      return r;
    }
    case LTerm::Kind::App: {
      std::vector<std::int64_t> args;
      for (const auto& a : t.args) {
        auto v = evaluate(*a, m, interpret_times);
        if (!v) return std::nullopt;
        args.push_back(*v);
      }
      if (interpret_times && t.name == "times" && args.size() == 2) {
        std::int64_t r;
        if (__builtin_mul_overflow(args[0], args[1], &r)) return std::nullopt;
        return r;
      }
      auto f = m.functions.find(t.name);
      if (f == m.functions.end()) return 0;
      auto e = f->second.find(args);
      return e == f->second.end() ? 0 : e->second;
    }
  }
  return std::nullopt;
}

std::optional<bool> evaluate(const Formula& f, const Model& m, bool interpret_times) {
  switch (f.kind) {
    case Formula::Kind::True: return true;
    case Formula::Kind::False: return false;
    case Formula::Kind::BoolVar: {
      auto it = m.bools.find(f.name);
      return it != m.bools.end() && it->second;
    }
    case Formula::Kind::Cmp: {
      auto a = evaluate(*f.lhs, m, interpret_times);
      auto b = evaluate(*f.rhs, m, interpret_times);
      if (!a || !b) return std::nullopt;
      switch (f.op) {
        case CmpOp::Eq: return *a == *b;
        case CmpOp::Le: return *a <= *b;
        case CmpOp::Ge: return *a >= *b;
        case CmpOp::Lt: return *a < *b;
        case CmpOp::Gt: return *a > *b;
      }
      return std::nullopt;
    }
    case Formula::Kind::Not: {
      auto a = evaluate(*f.kids[0], m, interpret_times);
      if (!a) return std::nullopt;
      return !*a;
    }
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      bool is_and = f.kind == Formula::Kind::And;
      bool unknown = false;
      for (const auto& k : f.kids) {
        auto v = evaluate(*k, m, interpret_times);
        if (!v) {
          unknown = true;
        } else if (*v != is_and) {
          return !is_and;
        }
      }
      if (unknown) return std::nullopt;
      return is_and;
    }
    case Formula::Kind::Implies: {
      auto a = evaluate(*f.kids[0], m, interpret_times);
      auto b = evaluate(*f.kids[1], m, interpret_times);
      if (a && !*a) return true;
      if (b && *b) return true;
      if (!a || !b) return std::nullopt;
      return false;
    }
    case Formula::Kind::Iff: {
      auto a = evaluate(*f.kids[0], m, interpret_times);
      auto b = evaluate(*f.kids[1], m, interpret_times);
      if (!a || !b) return std::nullopt;
      return *a == *b;
    }
  }
  return std::nullopt;
}

}  // namespace lqi
