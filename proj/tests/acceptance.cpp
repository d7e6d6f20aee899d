// Runs every acceptance criterion and prints one PASS/FAIL line each.
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lqi/cli.hpp"
#include "lqi/error.hpp"
#include "lqi/infer.hpp"
#include "lqi/metatheory.hpp"
#include "lqi/parser.hpp"
#include "lqi/subtyping.hpp"
#include "lqi/validity.hpp"

using namespace lqi;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string external_solver() {
  if (const char* cmd = std::getenv("LQI_SMT_CMD"); cmd && *cmd) return cmd;
  if (std::system("command -v z3 >/dev/null 2>&1") == 0) return "z3 -in -smt2";
  return {};
}

std::vector<ExprPtr> quals(const std::vector<std::string>& texts) {
  std::vector<ExprPtr> out;
  for (const auto& t : texts) out.push_back(parse_qualifier(t));
  return out;
}

std::set<std::string> arm_set(const LiquidType& t) {
  std::set<std::string> out;
  for (const Arm& a : t.arms()) out.insert(a.key);
  return out;
}

std::set<std::string> arm_set(const std::vector<std::string>& texts) {
  std::set<std::string> out;
  for (const auto& s : texts) {
    LiquidType t = parse_type(s);
    for (const Arm& a : t.arms()) out.insert(a.key);
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::string kGeLe = "x: {v : int | v >= 0} -> {v : int | v <= 0}";
const std::string kLeGe = "x: {v : int | v <= 0} -> {v : int | v >= 0}";
const std::string kGeGe = "x: {v : int | v >= 0} -> {v : int | v >= 0}";
const std::string kLeLe = "x: {v : int | v <= 0} -> {v : int | v <= 0}";

struct Result {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail.clear();
    pass = false;
    detail += (detail.empty() ? "" : "; ") + why;
  }
};

Result golden() {
  Result r;
  std::string path = std::string(LQI_TEST_DATA) + "/golden.lqi";
  auto check = [&](const std::vector<std::string>& args, const std::string& label) {
    std::ostringstream out, err;
    auto t0 = Clock::now();
    int code = cli::run(args, out, err);
    double dt = seconds_since(t0);
    if (code != cli::kOk) return r.fail(label + " exit " + std::to_string(code) + ": " + err.str());
    std::map<std::string, std::string> got;
    std::istringstream lines(out.str());
    std::string line;
    while (std::getline(lines, line)) {
      auto pos = line.find(" : ");
      if (pos != std::string::npos) got[line.substr(0, pos)] = line.substr(pos + 3);
    }
    if (!got.count("neg") || arm_set(parse_type(got["neg"])) != arm_set({kGeLe, kLeGe})) r.fail(label + " neg");
    if (!got.count("mul") || arm_set(parse_type(got["mul"])) != arm_set({kGeGe, kLeGe})) r.fail(label + " mul");
    if (r.pass) r.detail += (r.detail.empty() ? "" : ", ") + label + " " + std::to_string(dt).substr(0, 5) + " s";
    if (label == "builtin" && dt >= 10.0) r.fail("builtin took " + std::to_string(dt) + " s");
  };
  check({path}, "builtin");
  std::string cmd = external_solver();
  if (cmd.empty()) {
    r.fail("no external solver (set LQI_SMT_CMD)");
  } else {
    check({"--backend", "external", "--smt-cmd", cmd, path}, "external");
  }
  return r;
}

Result fresh_cardinality() {
  Result r;
  SimpleTypePtr t = SimpleType::arrow("x", SimpleType::int_type(), SimpleType::int_type());
  std::vector<std::string> pool{"v >= 0", "v <= 0", "y = 5"};
  for (std::size_t n = 1; n <= 3; ++n) {
    LiquidType f = fresh(*t, quals({pool.begin(), pool.begin() + static_cast<long>(n)}));
    if (f.size() != n * n) r.fail("|Q|=" + std::to_string(n) + " gave " + std::to_string(f.size()));
  }
  std::vector<std::string> four{kGeGe, kGeLe, kLeGe, kLeLe};
  if (arm_set(fresh(*t, quals({"v >= 0", "v <= 0"}))) != arm_set(four)) r.fail("4-arm listing");
  std::vector<std::string> nine = four;
  for (const char* s : {"x: {v : int | v >= 0} -> {v : int | y = 5}", "x: {v : int | v <= 0} -> {v : int | y = 5}",
                        "x: {v : int | y = 5} -> {v : int | v >= 0}", "x: {v : int | y = 5} -> {v : int | v <= 0}",
                        "x: {v : int | y = 5} -> {v : int | y = 5}"}) {
    nine.push_back(s);
  }
  if (arm_set(fresh(*t, quals(pool))) != arm_set(nine)) r.fail("9-arm listing");
  if (r.pass) r.detail = "1, 4, 9 arms; listings match";
  return r;
}

Result wf_filtering() {
  Result r;
  ValidityEngine engine;
  Subtyping sub(engine);
  Inferrer inf(sub, InferOptions{quals({"v >= 0", "v <= 0", "y = 5"})});
  std::vector<LambdaTrace> traces;
  inf.set_trace([&](const LambdaTrace& t) { traces.push_back(t); });
  Scheme s = inf.infer_surface(Env{}, parse_term("\\x. - x"));
  if (traces.size() != 1) {
    r.fail("expected one lambda, saw " + std::to_string(traces.size()));
    return r;
  }
  const LambdaTrace& t = traces[0];
  if (t.template_arms.size() != 9) r.fail("template has " + std::to_string(t.template_arms.size()) + " arms");
  if (arm_set(LiquidType::make(t.wf_arms)) != arm_set({kGeGe, kGeLe, kLeGe, kLeLe})) r.fail("WF survivors differ");
  if (arm_set(LiquidType::make(t.final_arms)) != arm_set({kGeLe, kLeGe})) r.fail("subtyping survivors differ");
  if (arm_set(s.body) != arm_set({kGeLe, kLeGe})) r.fail("result " + to_string(s));
  if (r.pass) {
    r.detail = std::to_string(t.template_arms.size()) + " -> " + std::to_string(t.wf_arms.size()) + " -> " +
               std::to_string(t.final_arms.size());
  }
  return r;
}

Result derivation_queries() {
  Result r;
  Env env = Env{}.extended("x", parse_type("{v : int | v >= 0}"));
  std::vector<ValidityQuery> qs{
      base_subtype_query(env, {parse_refinement("v = x")}, {Expr::top()}, BaseType::Int),
      base_subtype_query(env, {parse_refinement("v = -x")}, {parse_refinement("v <= 0")}, BaseType::Int)};
  std::string cmd = external_solver();
  for (const auto& q : qs) {
    if (!builtin_decide(q).valid()) r.fail("builtin: " + to_string(q));
    if (cmd.empty()) {
      r.fail("no external solver");
    } else if (!run_external(q, cmd, std::chrono::seconds(10)).valid()) {
      r.fail("external: " + to_string(q));
    }
  }
  if (r.pass) r.detail = "both queries Valid on builtin and external";
  return r;
}

Result subject_reduction() {
  Result r;
  ValidityEngine engine;
  MetatheoryOptions o;
  o.trials = 500;
  o.fuel = 100;
  o.qualifiers = quals({"v >= 0", "v <= 0"});
  auto t0 = Clock::now();
  MetatheoryReport m = check_metatheory(engine, o);
  double dt = seconds_since(t0);
  if (m.trials != 500) r.fail("only " + std::to_string(m.trials) + " typable terms");
  if (m.violations) r.fail(std::to_string(m.violations) + " violations");
  if (m.stuck) r.fail(std::to_string(m.stuck) + " stuck");
  if (dt >= 60.0) r.fail("took " + std::to_string(dt) + " s");
  if (!m.failures.empty() && (m.violations || m.stuck)) r.fail(m.failures.front());
  if (r.pass) {
    r.detail = std::to_string(m.trials) + " terms, " + std::to_string(m.steps) + " steps, 0 violations, 0 stuck, " +
               std::to_string(dt).substr(0, 5) + " s";
  }
  return r;
}

Result soundness() {
  Result r;
  ValidityEngine engine;
  Subtyping sub(engine);
  std::size_t golden = 0, generated = 0;
  for (const char* file : {"/golden.lqi", "/corpus.lqi"}) {
    Program p = parse_program(read_file(std::string(LQI_TEST_DATA) + file));
    InferOptions opts{p.qualifiers};
    Inferrer inf(sub, opts);
    Env env;
    for (const Binding& b : p.bindings) {
      Scheme s = inf.infer_surface(env, b.term);
      std::string why;
      if (!recheck(sub, env, b.term, s, opts, &why)) r.fail(b.name + ": " + why);
      env = env.extended(b.name, s);
      ++golden;
    }
  }
  InferOptions opts{quals({"v >= 0", "v <= 0"})};
  Inferrer inf(sub, opts);
  std::mt19937_64 rng(2024);
  while (generated < 500) {
    TermPtr m = random_term(rng, std::uniform_int_distribution<int>(2, 14)(rng));
    std::optional<Scheme> s;
    try {
      s = inf.infer_surface(Env{}, m);
    } catch (const Error&) {
      continue;
    }
    std::string why;
    if (!recheck(sub, Env{}, m, *s, opts, &why)) r.fail(to_string(m) + ": " + why);
    ++generated;
  }
  if (r.pass) {
    r.detail = std::to_string(golden) + " corpus bindings and " + std::to_string(generated) + " generated terms recheck";
  }
  return r;
}

Result oracle_agreement_check() {
  Result r;
  std::string cmd = external_solver();
  OracleAgreement a = oracle_agreement(200, 4, 7, cmd);
  if (a.oracle_violations) r.fail(std::to_string(a.oracle_violations) + " Valid answers refuted");
  if (cmd.empty()) {
    r.fail("no external solver");
  } else if (a.external_compared != a.queries) {
    r.fail("external compared on " + std::to_string(a.external_compared) + " queries");
  }
  if (a.external_disagreements) r.fail(std::to_string(a.external_disagreements) + " external disagreements");
  if (!a.failures.empty()) r.fail(a.failures.front());
  if (r.pass) r.detail = std::to_string(a.queries) + " queries, 0 refuted, external agrees on all";
  return r;
}

Result intersection_laws() {
  Result r;
  ValidityEngine engine;
  AlgebraReport a = intersection_algebra(engine, 1000, 11);
  if (a.types != 1000) r.fail("only " + std::to_string(a.types) + " types");
  if (!a.ok()) r.fail(std::to_string(a.failures.size()) + " law failures, first: " + a.failures.front());
  if (r.pass) r.detail = std::to_string(a.types) + " types, " + std::to_string(a.checks) + " checks";
  return r;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Result()>>> criteria{
      {"golden arm sets", golden},
      {"fresh cardinality", fresh_cardinality},
      {"well-formedness filtering", wf_filtering},
      {"derivation queries", derivation_queries},
      {"subject reduction", subject_reduction},
      {"soundness of inference", soundness},
      {"oracle agreement", oracle_agreement_check},
      {"intersection algebra", intersection_laws},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Result res;
    try {
      res = criteria[i].second();
    } catch (const std::exception& e) {
      res.fail(std::string("exception: ") + e.what());
    }
    if (!res.pass) ++failed;
    std::cout << (res.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << ": " << res.detail
              << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
