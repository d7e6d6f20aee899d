#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>

#include "lqi/term.hpp"

namespace lqi {

struct StepResult {
  enum class Kind { Value, Stepped, Stuck };

  Kind kind;
  TermPtr next;  // successor when stepped, the term itself otherwise
  // Substitution performed by a beta or let step.
  std::optional<std::pair<std::string, TermPtr>> subst;
  std::string reason;  // why the term is stuck
};

/// One leftmost call-by-value step on a closed, type-erased term.
StepResult step(const TermPtr& m);

/// Applies a constant to a value. Partial applications of multi-argument
/// primitives yield a constant carrying the consumed arguments. Returns
/// nullopt on a dynamic type mismatch or integer overflow.
std::optional<TermPtr> delta(const Constant& c, const TermPtr& v);

struct EvalResult {
  enum class Kind { Value, Timeout, Stuck };

  Kind kind;
  TermPtr term;  // final value, last term reached, or the stuck term
  std::size_t steps = 0;
  std::string reason;
};

// Evaluates the type-erased form of `m` for at most `fuel` steps.
EvalResult eval(const TermPtr& m, std::size_t fuel);

}  // namespace lqi
