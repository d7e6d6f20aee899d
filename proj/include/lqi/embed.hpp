#pragma once

#include "lqi/env.hpp"
#include "lqi/formula.hpp"
#include "lqi/refinement.hpp"
#include "lqi/term.hpp"

namespace lqi {

struct EmbedOptions {
  // Products of two non-constant terms stay arithmetic instead of
  // becoming the uninterpreted `times`.
  bool nonlinear = false;
};

// Name of the value variable in embedded formulas.
inline constexpr const char* kNuSymbol = "v";

/// Embeds a boolean refinement with the value variable at `nu_type`.
/// Unknown variables are taken to be integers. Throws EmbeddingError on a
/// non-boolean expression.
FormulaPtr embed_refinement(const Expr& e, BaseType nu_type, const VarTypeLookup& lookup,
                            const EmbedOptions& opts = {});
FormulaPtr embed_refinement(const Expr& e, BaseType nu_type = BaseType::Int,
                            const EmbedOptions& opts = {});

LTermPtr embed_int(const Expr& e, const VarTypeLookup& lookup, BaseType nu_type,
                   const EmbedOptions& opts);

/// Integer-sorted embedding of an atomic term: literals and variables map
/// to themselves, arithmetic primitives to arithmetic, lambdas to fresh
/// nullary symbols `lam0, lam1, ...`, other applications to `app(f, y)`.
class TermEmbedder {
 public:
  explicit TermEmbedder(EmbedOptions opts = {}) : opts_(opts) {}
  LTermPtr embed(const Term& m);

 private:
  EmbedOptions opts_;
  std::size_t lambdas_ = 0;
};

// Conjunction over monomorphic base bindings of their refinements at x.
FormulaPtr embed_env(const Env& env, const EmbedOptions& opts = {});

}  // namespace lqi
