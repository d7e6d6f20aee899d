#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace lqi::omega {

/// sum(coef * var) + constant, compared with zero: `= 0` or `<= 0`.
struct LinearConstraint {
  std::map<std::string, std::int64_t> coef;
  std::int64_t constant = 0;
  bool equality = false;
};

enum class Outcome { Sat, Unsat, Unknown };

struct Result {
  Outcome outcome = Outcome::Unknown;
  // Integer solution when Sat; variables not listed are 0.
  std::map<std::string, std::int64_t> model;
};

/// Integer satisfiability of a conjunction of linear constraints by exact
/// variable elimination (Omega test: unit-coefficient and modulo-hat
/// equality elimination, exact Fourier-Motzkin steps, real and dark shadows,
/// splinters). Unknown when coefficients leave 64 bits or `budget`
/// recursive calls are spent.
Result solve(const std::vector<LinearConstraint>& constraints, std::size_t budget = 20000);

}  // namespace lqi::omega
