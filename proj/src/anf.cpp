#include "lqi/anf.hpp"

#include <utility>
#include <vector>

namespace lqi {

namespace {

// let x = (let y = a in b) in c  becomes  let y = a in let x = b in c.
// Binders are distinct, so y is not free in c.
TermPtr flat_let(const std::string& x, const TermPtr& bound, const TermPtr& body, SourcePos pos) {
  if (bound->kind != Term::Kind::Let) return Term::let(x, bound, body, pos);
  return flat_let(bound->name, bound->first, flat_let(x, bound->second, body, pos), bound->pos);
}

class Normalizer {
 public:
  explicit Normalizer(std::set<std::string> taken) : taken_(std::move(taken)) {}

  TermPtr norm(const TermPtr& m) {
    switch (m->kind) {
      case Term::Kind::Var: return m;
      case Term::Kind::Const:
        if (m->constant.is_partial()) return norm(expand_partials(m));
        return m;
      case Term::Kind::Lam: return Term::lam(m->name, norm(m->first), m->pos, m->type);
      case Term::Kind::Let: return flat_let(m->name, norm(m->first), norm(m->second), m->pos);
      case Term::Kind::TyAbs: return Term::tyabs(m->name, norm(m->first), m->pos);
      case Term::Kind::TyInst:
        if (is_atomic(*m)) return m;
        return Term::tyinst(m->type, norm(m->first), m->pos);
      case Term::Kind::App: {
        std::vector<std::pair<std::string, TermPtr>> binds;
        TermPtr f = atomize(m->first, binds);
        TermPtr a = atomize(m->second, binds);
        TermPtr out = Term::app(f, a, m->pos);
        for (auto it = binds.rbegin(); it != binds.rend(); ++it) {
          out = flat_let(it->first, it->second, out, it->second->pos);
        }
        return out;
      }
    }
    return m;
  }

 private:
  std::set<std::string> taken_;
  std::size_t counter_ = 0;

  std::string fresh() {
    while (true) {
      std::string name = "t" + std::to_string(counter_++);
      if (taken_.insert(name).second) return name;
    }
  }

  TermPtr atomize(const TermPtr& n, std::vector<std::pair<std::string, TermPtr>>& binds) {
    if (is_atomic(*n)) return n;
    TermPtr normal = norm(n);
    std::string t = fresh();
    binds.emplace_back(t, normal);
    return Term::var(t, n->pos);
  }
};

}  // namespace

TermPtr normalize(const TermPtr& m, const std::set<std::string>& avoid) {
  std::set<std::string> taken = avoid;
  auto names = all_names(*m);
  taken.insert(names.begin(), names.end());
  return Normalizer(std::move(taken)).norm(m);
}

bool is_anf(const Term& m) {
  switch (m.kind) {
    case Term::Kind::Var: return true;
    case Term::Kind::Const: return !m.constant.is_partial();
    case Term::Kind::Lam:
    case Term::Kind::TyAbs: return is_anf(*m.first);
    case Term::Kind::TyInst: return is_anf(*m.first);
    case Term::Kind::Let: return is_anf(*m.first) && is_anf(*m.second);
    case Term::Kind::App: return is_atomic(*m.first) && is_atomic(*m.second);
  }
  return false;
}

}  // namespace lqi
