#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lqi/env.hpp"
#include "lqi/term.hpp"
#include "lqi/types.hpp"

namespace lqi {

struct ShapeScheme {
  std::vector<std::string> quantified;
  SimpleTypePtr type;
};

std::string to_string(const ShapeScheme& s);

class ShapeEnv {
 public:
  ShapeEnv extended(std::string name, ShapeScheme s) const;
  const ShapeScheme* lookup(const std::string& name) const;
  const std::vector<std::pair<std::string, ShapeScheme>>& bindings() const { return bindings_; }

 private:
  std::vector<std::pair<std::string, ShapeScheme>> bindings_;
};

ShapeScheme shape_scheme(const Scheme& s);
ShapeEnv shape_env(const Env& env);

struct Elaboration {
  TermPtr term;
  ShapeScheme scheme;
};

/// Algorithm W with let-generalization. Type annotations in the input are
/// ignored. Residual type variables of the result are generalized.
SimpleTypePtr w_infer(const ShapeEnv& env, const TermPtr& m);

/// Runs W and rebuilds the term with explicit type abstraction at
/// generalizing lets (and at the top, for residual variables), explicit
/// instantiation at polymorphic uses, and annotated lambda binders.
Elaboration elaborate(const ShapeEnv& env, const TermPtr& m);

/// Shape of an elaborated term, read off its annotations without
/// unification. Throws ShapeError on inconsistency.
ShapeScheme shape_check(const ShapeEnv& env, const TermPtr& m);

// First instantiation step of a scheme: replaces its first quantifier.
ShapeScheme instantiate_first(const ShapeScheme& s, const SimpleTypePtr& t);

}  // namespace lqi
