#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lqi/refinement.hpp"

namespace lqi {

struct LTerm;
using LTermPtr = std::shared_ptr<const LTerm>;

/// Integer-sorted logic term.
struct LTerm {
  enum class Kind { Const, Var, Add, Sub, Neg, Mul, App };

  Kind kind;
  std::int64_t value = 0;
  std::string name;  // variable, or uninterpreted symbol of App
  std::vector<LTermPtr> args;

  static LTermPtr constant(std::int64_t v);
  static LTermPtr var(std::string name);
  static LTermPtr add(LTermPtr a, LTermPtr b);
  static LTermPtr sub(LTermPtr a, LTermPtr b);
  static LTermPtr neg(LTermPtr a);
  static LTermPtr mul(LTermPtr a, LTermPtr b);
  static LTermPtr app(std::string symbol, std::vector<LTermPtr> args);
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// Quantifier-free formula over integer atoms and propositional variables.
struct Formula {
  enum class Kind { True, False, BoolVar, Cmp, Not, And, Or, Implies, Iff };

  Kind kind;
  std::string name;  // BoolVar
  CmpOp op = CmpOp::Eq;
  LTermPtr lhs, rhs;  // Cmp
  std::vector<FormulaPtr> kids;

  static FormulaPtr truth();
  static FormulaPtr falsity();
  static FormulaPtr bool_var(std::string name);
  static FormulaPtr cmp(CmpOp op, LTermPtr lhs, LTermPtr rhs);
  static FormulaPtr negation(FormulaPtr f);
  // Flattening, true/false-absorbing n-ary connectives.
  static FormulaPtr conj(std::vector<FormulaPtr> fs);
  static FormulaPtr disj(std::vector<FormulaPtr> fs);
  static FormulaPtr implies(FormulaPtr a, FormulaPtr b);
  static FormulaPtr iff(FormulaPtr a, FormulaPtr b);
};

std::string to_string(const LTerm& t);
std::string to_string(const Formula& f);

struct Signature {
  std::set<std::string> int_vars;
  std::set<std::string> bool_vars;
  std::map<std::string, std::size_t> functions;  // symbol -> arity
};

// Throws EmbeddingError when a symbol is used at two arities.
void collect_signature(const Formula& f, Signature& sig);
void collect_signature(const LTerm& t, Signature& sig);

struct ValidityQuery {
  FormulaPtr hypothesis;
  FormulaPtr conclusion;
};

std::string to_string(const ValidityQuery& q);

// Serialization with symbols renamed by first occurrence; equal for
// alpha-variant queries.
std::string canonical_key(const ValidityQuery& q);

struct Model {
  std::map<std::string, std::int64_t> ints;
  std::map<std::string, bool> bools;
  // Uninterpreted symbols: argument tuple -> value; missing entries read 0.
  std::map<std::string, std::map<std::vector<std::int64_t>, std::int64_t>> functions;
};

std::string to_string(const Model& m);

// Evaluation in a model. `times` is read as multiplication when
// `interpret_times` is set. Returns nullopt on overflow.
std::optional<std::int64_t> evaluate(const LTerm& t, const Model& m, bool interpret_times);
std::optional<bool> evaluate(const Formula& f, const Model& m, bool interpret_times);

}  // namespace lqi
