#pragma once

#include <atomic>
#include <chrono>
#include <cstddef>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>

#include "lqi/formula.hpp"

namespace lqi {

struct Verdict {
  enum class Kind { Valid, Invalid, Unknown };

  Kind kind = Kind::Unknown;
  std::optional<Model> countermodel;
  std::string detail;

  bool valid() const { return kind == Kind::Valid; }
  static Verdict make_valid() { return Verdict{Kind::Valid, std::nullopt, {}}; }
  static Verdict unknown(std::string why) { return Verdict{Kind::Unknown, std::nullopt, std::move(why)}; }
};

std::string_view to_string(Verdict::Kind k);

struct BuiltinOptions {
  std::size_t max_branches = 20000;
  std::size_t solver_budget = 20000;
};

/// Decides hypothesis => conclusion over EUF + linear integer arithmetic.
/// Uninterpreted applications are purified and related by Ackermann
/// constraints; each disjunct of the negation goes to the Omega solver.
/// Countermodels are re-checked against the original query, reading
/// `times` as multiplication; a countermodel that only exists for an
/// uninterpreted `times` yields Unknown.
Verdict builtin_decide(const ValidityQuery& q, const BuiltinOptions& opts = {});

struct SmtOptions {
  bool nonlinear = false;
  bool produce_model = true;
};

// Script asserting hypothesis and the negated conclusion; unsat iff valid.
std::string emit_smtlib(const ValidityQuery& q, const SmtOptions& opts = {});

/// Runs `command` through /bin/sh with the script on stdin. Launch
/// failures, timeouts and unparsable answers give Unknown.
Verdict run_external(const ValidityQuery& q, const std::string& command,
                     std::chrono::milliseconds timeout, const SmtOptions& opts = {});

enum class Backend { Builtin, External, Both };

std::optional<Backend> parse_backend(std::string_view s);

struct EngineOptions {
  Backend backend = Backend::Builtin;
  std::string smt_cmd;  // defaults from LQI_SMT_CMD
  std::chrono::milliseconds timeout{5000};
  bool nonlinear = false;
};

struct EngineStats {
  std::size_t queries = 0;
  std::size_t cache_hits = 0;
  std::size_t builtin_calls = 0;
  std::size_t external_calls = 0;
};

/// Validity checking with a thread-safe cache keyed by the canonical
/// (alpha-renamed) form of each query.
class ValidityEngine {
 public:
  explicit ValidityEngine(EngineOptions opts = {});

  const EngineOptions& options() const { return opts_; }

  Verdict check_valid(const ValidityQuery& q, Backend backend);
  Verdict check_valid(const ValidityQuery& q) { return check_valid(q, opts_.backend); }
  Verdict cached(const ValidityQuery& q);

  EngineStats stats() const;

  // Throws SolverError when the external solver cannot answer a trivial query.
  void preflight();

 private:
  EngineOptions opts_;
  mutable std::mutex mu_;
  std::unordered_map<std::string, std::pair<std::string, Verdict>> cache_;
  std::atomic<std::size_t> queries_{0}, hits_{0}, builtin_{0}, external_{0};
};

}  // namespace lqi
