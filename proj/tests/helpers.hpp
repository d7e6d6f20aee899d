#pragma once

#include <cstdlib>
#include <set>
#include <string>
#include <vector>

#include "lqi/parser.hpp"
#include "lqi/types.hpp"

namespace lqi::test {

inline LiquidType ty(const std::string& text) { return parse_type(text); }

inline ExprPtr q(const std::string& text) { return parse_qualifier(text); }

inline std::vector<ExprPtr> qualifiers(const std::vector<std::string>& texts) {
  std::vector<ExprPtr> out;
  for (const auto& t : texts) out.push_back(q(t));
  return out;
}

inline std::set<std::string> arm_set(const LiquidType& t) {
  std::set<std::string> out;
  for (const Arm& a : t.arms()) out.insert(a.key);
  return out;
}

inline std::set<std::string> arm_set(const std::vector<std::string>& texts) {
  std::set<std::string> out;
  for (const auto& s : texts) {
    LiquidType t = ty(s);
    for (const Arm& a : t.arms()) out.insert(a.key);
  }
  return out;
}

// Solver command for tests that need an external solver, or empty.
inline std::string external_solver() {
  if (const char* cmd = std::getenv("LQI_SMT_CMD"); cmd && *cmd) return cmd;
  if (std::system("command -v z3 >/dev/null 2>&1") == 0) return "z3 -in -smt2";
  return {};
}

}  // namespace lqi::test
