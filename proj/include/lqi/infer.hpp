#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "lqi/env.hpp"
#include "lqi/subtyping.hpp"
#include "lqi/term.hpp"
#include "lqi/types.hpp"

namespace lqi {

constexpr std::size_t kDefaultMaxArms = 4096;

/// Template of shape `t`: one arm per choice of a qualifier at each base
/// position. A position where no qualifier is sort-correct gets `true`;
/// type-variable positions stay as they are. Throws ArmCapExceeded when
/// the arm count would exceed `max_arms`.
LiquidType fresh(const SimpleType& t, const std::vector<ExprPtr>& qualifiers,
                 std::size_t max_arms = kDefaultMaxArms);
std::size_t fresh_count(const SimpleType& t, const std::vector<ExprPtr>& qualifiers);

struct InferOptions {
  std::vector<ExprPtr> qualifiers;
  std::size_t max_arms = kDefaultMaxArms;
};

// Arm counts of one lambda: template, after well-formedness, final.
struct LambdaTrace {
  std::string binder;
  std::vector<Arm> template_arms;
  std::vector<Arm> wf_arms;
  std::vector<Arm> final_arms;
};

/// Binder renaming, A-normalization and shape elaboration of a surface
/// term under `env`. Throws ShapeError for ill-shaped terms.
TermPtr prepare(const Env& env, const TermPtr& surface);

class Inferrer {
 public:
  Inferrer(Subtyping& sub, InferOptions opts) : sub_(sub), opts_(std::move(opts)) {}

  void set_trace(std::function<void(const LambdaTrace&)> trace) { trace_ = std::move(trace); }

  // `m` must come from prepare. Throws InferenceFailure or ArmCapExceeded.
  Scheme infer(const Env& env, const TermPtr& m);
  // prepare followed by infer.
  Scheme infer_surface(const Env& env, const TermPtr& surface) {
    return infer(env, prepare(env, surface));
  }

  // Result of applying a function of type `fun` to atom `arg` of type `arg_type`.
  LiquidType apply_result(const Env& env, const LiquidType& fun, const LiquidType& arg_type,
                          const Term& arg);

  const InferOptions& options() const { return opts_; }

 private:
  std::vector<Arm> well_formed_arms(const Env& env, const LiquidType& t);
  LiquidType infer_lambda(const Env& env, const TermPtr& m);
  LiquidType infer_let(const Env& env, const TermPtr& m);
  LiquidType mono(const Env& env, const TermPtr& m);

  Subtyping& sub_;
  InferOptions opts_;
  std::function<void(const LambdaTrace&)> trace_;
};

}  // namespace lqi
