#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lqi/env.hpp"
#include "lqi/infer.hpp"
#include "lqi/refinement.hpp"
#include "lqi/subtyping.hpp"
#include "lqi/term.hpp"
#include "lqi/types.hpp"
#include "lqi/validity.hpp"

namespace lqi {

/// Sound check of `m : s` under `env`: the inferred type of `m` must be a
/// subtype of `s`, and `s` must be well formed. Inference failures give
/// false with the reason in `why`.
bool recheck(Subtyping& sub, const Env& env, const TermPtr& m, const Scheme& s,
             const InferOptions& opts, std::string* why = nullptr);

struct TrialReport {
  enum class Kind { Ok, Violation, Stuck, Untyped };

  Kind kind = Kind::Ok;
  std::size_t steps = 0;
  TermPtr term;  // the offending term for Violation and Stuck
  std::string message;
};

std::string_view to_string(TrialReport::Kind k);

/// Evaluates closed `m` step by step, rechecking every reduct against the
/// type inferred for `m` (with the substitutions performed so far applied).
TrialReport subject_reduction_trial(Subtyping& sub, const TermPtr& m, const InferOptions& opts,
                                    std::size_t fuel);

/// Finite reading of semantic implication: every assignment of values in
/// [-bound, bound] (and both booleans) to the base variables of `env` and
/// to ν that satisfies the refinements of `env` and `e` satisfies `e2`.
/// Refinements are evaluated as terms. Returns nullopt when a free
/// variable of `e` or `e2` is not a base-typed binding of `env`.
std::optional<bool> semantic_implication_oracle(const Env& env, const ExprPtr& e,
                                                const ExprPtr& e2, BaseType nu_type, int bound);

// Closed term of shape int, built from small constants, arithmetic,
// comparisons, lets, conditionals and lambdas nested at most three deep.
TermPtr random_term(std::mt19937_64& rng, int size);

// Linear refinement over `vars` and ν; `atoms` comparisons joined by &&.
ExprPtr random_refinement(std::mt19937_64& rng, const std::vector<std::string>& vars, int atoms);

// Shape over int, bool and 'a with at most `arrows` nested arrows.
SimpleTypePtr random_shape(std::mt19937_64& rng, int arrows);
/// Canonical type of shape `t`: each intersection has 1 to `max_arms`
/// arms, refinements over `vars`, ν and enclosing integer binders.
LiquidType random_type(std::mt19937_64& rng, const SimpleType& t,
                       const std::vector<std::string>& vars, int max_arms);

struct AlgebraReport {
  std::size_t types = 0;
  std::size_t checks = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};
/// Over `n` random triples a, b, c of one shape: intersect is idempotent,
/// commutative and associative; a <: a; a /\ b <: a; and
/// c <: a /\ b exactly when c <: a and c <: b.
AlgebraReport intersection_algebra(ValidityEngine& engine, std::size_t n, std::uint64_t seed);

struct MetatheoryOptions {
  std::size_t trials = 500;
  std::size_t fuel = 100;
  int bound = 4;
  std::uint64_t seed = 1;
  std::vector<ExprPtr> qualifiers;
  std::size_t max_arms = kDefaultMaxArms;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct MetatheoryReport {
  std::size_t trials = 0;
  std::size_t attempts = 0;  // generated terms, including rejected ones
  std::size_t steps = 0;
  std::size_t violations = 0;
  std::size_t stuck = 0;
  std::size_t recheck_failures = 0;
  std::size_t oracle_queries = 0;
  std::size_t oracle_disagreements = 0;
  std::vector<std::string> failures;

  bool ok() const { return violations == 0 && stuck == 0 && recheck_failures == 0 && oracle_disagreements == 0; }
};

/// Generates `trials` closed terms that infer, checks that each rechecks
/// against its own type and that evaluation preserves it, and compares
/// every Valid base-subtyping answer of the engine with the oracle.
MetatheoryReport check_metatheory(ValidityEngine& engine, const MetatheoryOptions& opts);

struct OracleAgreement {
  std::size_t queries = 0;
  std::size_t oracle_violations = 0;  // builtin Valid, oracle countermodel
  std::size_t external_compared = 0;
  std::size_t external_disagreements = 0;
  std::vector<std::string> failures;
};

/// Random base implications over up to three integer variables, decided
/// by the built-in procedure, the enumeration oracle and, when `external`
/// is set, the external solver.
OracleAgreement oracle_agreement(std::size_t queries, int bound, std::uint64_t seed,
                                 const std::string& external = {});

}  // namespace lqi
