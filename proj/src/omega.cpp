#include "lqi/omega.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <optional>

namespace lqi::omega {

namespace {

using Int = std::int64_t;
using Wide = __int128;

struct Overflow {};
struct OutOfBudget {};

constexpr std::size_t kMaxConstraints = 4000;

Int fit(Wide w) {
  if (w > std::numeric_limits<Int>::max() || w < std::numeric_limits<Int>::min()) throw Overflow{};
  return static_cast<Int>(w);
}

Wide floor_div(Wide a, Wide b) {
  Wide q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Wide ceil_div(Wide a, Wide b) { return -floor_div(-a, b); }

// sum(c[v] * v) + k, compared with zero.
struct Lin {
  std::map<int, Int> c;
  Int k = 0;
  bool eq = false;
};

using Model = std::map<int, Int>;

Int coef_of(const Lin& l, int x) {
  auto it = l.c.find(x);
  return it == l.c.end() ? 0 : it->second;
}

Wide eval_rest(const Lin& l, const Model& m, int skip) {
  Wide s = l.k;
  for (const auto& [v, a] : l.c) {
    if (v == skip) continue;
    auto it = m.find(v);
    if (it != m.end()) s += static_cast<Wide>(a) * it->second;
  }
  return s;
}

// x := expr, where expr is read as sum + k.
Lin substitute(const Lin& l, int x, const Lin& expr) {
  Int a = coef_of(l, x);
  if (a == 0) return l;
  Lin out = l;
  out.c.erase(x);
  for (const auto& [v, b] : expr.c) out.c[v] = fit(static_cast<Wide>(out.c[v]) + static_cast<Wide>(a) * b);
  out.k = fit(static_cast<Wide>(out.k) + static_cast<Wide>(a) * expr.k);
  return out;
}

enum class Status { True, False, Open };

Status normalize(Lin& l) {
  for (auto it = l.c.begin(); it != l.c.end();) {
    it = it->second == 0 ? l.c.erase(it) : std::next(it);
  }
  if (l.c.empty()) {
    bool holds = l.eq ? l.k == 0 : l.k <= 0;
    return holds ? Status::True : Status::False;
  }
  Int g = 0;
  for (const auto& [v, a] : l.c) g = std::gcd(g, a < 0 ? -a : a);
  if (l.eq) {
    if (l.k % g != 0) return Status::False;
    for (auto& [v, a] : l.c) a /= g;
    l.k /= g;
    if (l.c.begin()->second < 0) {
      for (auto& [v, a] : l.c) a = -a;
      l.k = -l.k;
    }
  } else if (g > 1) {
    for (auto& [v, a] : l.c) a /= g;
    l.k = fit(ceil_div(l.k, g));
  }
  return Status::Open;
}

Int mod_hat(Int a, Int m) {
  Wide q = floor_div(2 * static_cast<Wide>(a) + m, 2 * static_cast<Wide>(m));
  return fit(static_cast<Wide>(a) - q * m);
}

Int closest_to_zero(std::optional<Wide> lo, std::optional<Wide> hi) {
  if (lo && hi && *lo > *hi) throw OutOfBudget{};
  if (lo && *lo > 0) return fit(*lo);
  if (hi && *hi < 0) return fit(*hi);
  return 0;
}

class Solver {
 public:
  Solver(std::size_t budget, int next_var) : budget_(budget), next_var_(next_var) {}

  Outcome solve(const std::vector<Lin>& input, Model& model) {
    if (budget_ == 0) throw OutOfBudget{};
    --budget_;

    std::vector<Lin> eqs;
    std::map<std::map<int, Int>, Int> ineqs;  // coefficients -> tightest constant
    for (Lin l : input) {
      switch (normalize(l)) {
        case Status::False: return Outcome::Unsat;
        case Status::True: continue;
        case Status::Open: break;
      }
      if (l.eq) {
        eqs.push_back(std::move(l));
      } else {
        auto [it, fresh] = ineqs.emplace(l.c, l.k);
        if (!fresh) it->second = std::max(it->second, l.k);
      }
    }
    if (eqs.size() + ineqs.size() > kMaxConstraints) throw OutOfBudget{};

    std::vector<Lin> flat;
    for (const auto& [c, k] : ineqs) flat.push_back(Lin{c, k, false});
    if (!eqs.empty()) return eliminate_equality(eqs, flat, model);
    return eliminate_inequalities(flat, model);
  }

 private:
  std::size_t budget_;
  int next_var_;

  Outcome eliminate_equality(const std::vector<Lin>& eqs, const std::vector<Lin>& ineqs,
                             Model& model) {
    std::size_t pick = 0;
    int x = -1;
    Int best = 0;
    for (std::size_t i = 0; i < eqs.size(); ++i) {
      for (const auto& [v, a] : eqs[i].c) {
        Int mag = a < 0 ? -a : a;
        if (x < 0 || mag < best) {
          best = mag;
          pick = i;
          x = v;
        }
      }
      if (best == 1) break;
    }
    Lin chosen = eqs[pick];
    Int a = coef_of(chosen, x);
    Lin expr;
    std::vector<Lin> rest;
    if (best == 1) {
      // x = -a * (rest + k)
      for (const auto& [v, b] : chosen.c) {
        if (v != x) expr.c[v] = fit(-static_cast<Wide>(a) * b);
      }
      expr.k = fit(-static_cast<Wide>(a) * chosen.k);
      for (std::size_t i = 0; i < eqs.size(); ++i) {
        if (i != pick) rest.push_back(substitute(eqs[i], x, expr));
      }
    } else {
      if (a < 0) {
        for (auto& [v, b] : chosen.c) b = -b;
        chosen.k = -chosen.k;
        a = -a;
      }
      Int m = fit(static_cast<Wide>(a) + 1);
      int sigma = next_var_++;
      expr.c[sigma] = -m;
      for (const auto& [v, b] : chosen.c) {
        if (v != x) expr.c[v] = mod_hat(b, m);
      }
      expr.k = mod_hat(chosen.k, m);
      for (const auto& e : eqs) rest.push_back(substitute(e, x, expr));
    }
    for (const auto& l : ineqs) rest.push_back(substitute(l, x, expr));
    Outcome o = solve(rest, model);
    if (o == Outcome::Sat) model[x] = fit(eval_rest(expr, model, -1));
    return o;
  }

  void assign_from_bounds(int x, const std::vector<Lin>& cs, Model& model) {
    std::optional<Wide> lo, hi;
    for (const auto& l : cs) {
      Int a = coef_of(l, x);
      if (a == 0) continue;
      Wide r = eval_rest(l, model, x);
      if (a < 0) {
        Wide b = ceil_div(r, -static_cast<Wide>(a));
        lo = lo ? std::max(*lo, b) : b;
      } else {
        Wide b = floor_div(-r, a);
        hi = hi ? std::min(*hi, b) : b;
      }
    }
    model[x] = closest_to_zero(lo, hi);
  }

  Outcome eliminate_inequalities(const std::vector<Lin>& cs, Model& model) {
    std::map<int, std::pair<std::size_t, std::size_t>> counts;  // lower, upper
    std::map<int, std::pair<bool, bool>> unit;                  // all lower unit, all upper unit
    for (const auto& l : cs) {
      for (const auto& [v, a] : l.c) {
        auto& [lower, upper] = counts[v];
        auto& [lu, uu] = unit.try_emplace(v, true, true).first->second;
        if (a < 0) {
          ++lower;
          lu = lu && a == -1;
        } else {
          ++upper;
          uu = uu && a == 1;
        }
      }
    }
    if (counts.empty()) return Outcome::Sat;

    for (const auto& [v, lu] : counts) {
      if (lu.first == 0 || lu.second == 0) {
        std::vector<Lin> rest;
        for (const auto& l : cs) {
          if (coef_of(l, v) == 0) rest.push_back(l);
        }
        Outcome o = solve(rest, model);
        if (o == Outcome::Sat) assign_from_bounds(v, cs, model);
        return o;
      }
    }

    int x = -1;
    bool exact = false;
    std::size_t score = 0;
    for (const auto& [v, lu] : counts) {
      bool e = unit[v].first || unit[v].second;
      std::size_t s = lu.first * lu.second;
      if (x < 0 || (e && !exact) || (e == exact && s < score)) {
        x = v;
        exact = e;
        score = s;
      }
    }

    std::vector<Lin> others, lowers, uppers;
    for (const auto& l : cs) {
      Int a = coef_of(l, x);
      (a == 0 ? others : a < 0 ? lowers : uppers).push_back(l);
    }
    auto shadow = [&](bool dark) {
      std::vector<Lin> out = others;
      for (const auto& lo : lowers) {
        Int a = -coef_of(lo, x);
        for (const auto& up : uppers) {
          Int b = coef_of(up, x);
          Lin comb;
          for (const auto& [v, c] : lo.c) {
            if (v != x) comb.c[v] = fit(static_cast<Wide>(comb.c[v]) + static_cast<Wide>(b) * c);
          }
          for (const auto& [v, c] : up.c) {
            if (v != x) comb.c[v] = fit(static_cast<Wide>(comb.c[v]) + static_cast<Wide>(a) * c);
          }
          Wide k = static_cast<Wide>(b) * lo.k + static_cast<Wide>(a) * up.k;
          if (dark) k += static_cast<Wide>(a - 1) * (b - 1);
          comb.k = fit(k);
          out.push_back(std::move(comb));
        }
      }
      return out;
    };

    if (exact) {
      Outcome o = solve(shadow(false), model);
      if (o == Outcome::Sat) assign_from_bounds(x, cs, model);
      return o;
    }

    bool unknown = false;
    {
      Model real;
      Outcome o = solve(shadow(false), real);
      if (o == Outcome::Unsat) return Outcome::Unsat;
      unknown = o == Outcome::Unknown;
    }
    {
      Model dark;
      Outcome o = solve(shadow(true), dark);
      if (o == Outcome::Sat) {
        assign_from_bounds(x, cs, dark);
        model = std::move(dark);
        return Outcome::Sat;
      }
      unknown = unknown || o == Outcome::Unknown;
    }
    Int bmax = 0;
    for (const auto& up : uppers) bmax = std::max(bmax, coef_of(up, x));
    for (const auto& lo : lowers) {
      Int a = -coef_of(lo, x);
      Wide jmax = floor_div(static_cast<Wide>(bmax) * a - a - bmax, bmax);
      for (Wide j = 0; j <= jmax; ++j) {
        std::vector<Lin> splinter = cs;
        Lin eq = lo;
        eq.eq = true;
        eq.k = fit(static_cast<Wide>(eq.k) + j);
        splinter.push_back(std::move(eq));
        Model m;
        Outcome o = solve(splinter, m);
        if (o == Outcome::Sat) {
          model = std::move(m);
          return Outcome::Sat;
        }
        unknown = unknown || o == Outcome::Unknown;
      }
    }
    return unknown ? Outcome::Unknown : Outcome::Unsat;
  }
};

}  // namespace

Result solve(const std::vector<LinearConstraint>& constraints, std::size_t budget) {
  std::map<std::string, int> ids;
  std::vector<std::string> names;
  std::vector<Lin> cs;
  for (const auto& lc : constraints) {
    Lin l;
    l.eq = lc.equality;
    l.k = lc.constant;
    for (const auto& [name, a] : lc.coef) {
      auto [it, fresh] = ids.emplace(name, static_cast<int>(names.size()));
      if (fresh) names.push_back(name);
      l.c[it->second] += a;
    }
    cs.push_back(std::move(l));
  }
  Solver solver(budget, static_cast<int>(names.size()));
  Model model;
  Result r;
  try {
    r.outcome = solver.solve(cs, model);
  } catch (const Overflow&) {
    return Result{};
  } catch (const OutOfBudget&) {
    return Result{};
  }
  if (r.outcome == Outcome::Sat) {
    for (std::size_t i = 0; i < names.size(); ++i) {
      auto it = model.find(static_cast<int>(i));
      r.model[names[i]] = it == model.end() ? 0 : it->second;
    }
  }
  return r;
}

}  // namespace lqi::omega
