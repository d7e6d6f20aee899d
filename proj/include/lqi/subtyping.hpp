#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lqi/embed.hpp"
#include "lqi/env.hpp"
#include "lqi/types.hpp"
#include "lqi/validity.hpp"

namespace lqi {

/// Well-formedness: every refinement is a boolean expression whose
/// variables are monomorphic base-typed bindings in scope (ν bound at the
/// arm's base type). Type-variable arms are always well formed.
bool wf_check(const Env& env, const Scheme& s);
bool wf_check(const Env& env, const LiquidType& t);

struct Constraint {
  enum class Kind { WellFormed, Subtype };

  Kind kind;
  Env env;
  LiquidType lhs;
  std::optional<LiquidType> rhs;

  static Constraint well_formed(Env env, LiquidType t) {
    return Constraint{Kind::WellFormed, std::move(env), std::move(t), std::nullopt};
  }
  static Constraint subtype(Env env, LiquidType a, LiquidType b) {
    return Constraint{Kind::Subtype, std::move(env), std::move(a), std::move(b)};
  }
};

std::string to_string(const Constraint& c);

/// Splits intersections and single-arm function constraints into atomic
/// ones. A multi-arm function on the left of a subtyping stays whole,
/// since splitting it needs a choice of arms. Throws IllFoundedType when
/// the two sides of a subtyping differ in shape.
std::vector<Constraint> simplify(const Constraint& c);

// The implication of base subtyping: env /\ lhs => rhs, ν at `base`.
ValidityQuery base_subtype_query(const Env& env, const std::vector<ExprPtr>& lhs,
                                 const std::vector<ExprPtr>& rhs, BaseType base,
                                 const EmbedOptions& opts = {});

/// Algorithmic subtyping. Base types reduce to one validity query; an
/// intersection target is checked arm by arm; a function target
/// x:c -> d is met by the codomains of every left arm whose domain
/// accepts c; quantifiers are matched pairwise. Unknown verdicts count
/// as failures.
class Subtyping {
 public:
  using Log = std::function<void(const std::string&)>;
  // Sees every base query with its verdict.
  using Observer = std::function<void(const Env&, const std::vector<ExprPtr>& lhs,
                                      const std::vector<ExprPtr>& rhs, BaseType, const Verdict&)>;

  explicit Subtyping(ValidityEngine& engine, Log log = {})
      : engine_(engine), log_(std::move(log)) {}

  void set_observer(Observer obs) { observer_ = std::move(obs); }

  bool is_subtype(const Env& env, const Scheme& a, const Scheme& b);
  bool is_subtype(const Env& env, const LiquidType& a, const LiquidType& b);

  // WF with atomic results reported to the log.
  bool well_formed(const Env& env, const LiquidType& t);

  EmbedOptions embed_options() const { return EmbedOptions{engine_.options().nonlinear}; }
  ValidityEngine& engine() { return engine_; }

 private:
  ValidityEngine& engine_;
  Log log_;
  Observer observer_;
};

}  // namespace lqi
