#include "lqi/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "lqi/anf.hpp"
#include "lqi/error.hpp"
#include "lqi/infer.hpp"
#include "lqi/metatheory.hpp"
#include "lqi/parser.hpp"
#include "lqi/subtyping.hpp"
#include "lqi/validity.hpp"

namespace lqi::cli {

namespace {

void tyvars_in_order(const LiquidType& t, std::vector<std::string>& out) {
  for (const Arm& a : t.arms()) {
    switch (a.kind) {
      case Arm::Kind::TyVar:
        if (std::find(out.begin(), out.end(), a.name) == out.end()) out.push_back(a.name);
        break;
      case Arm::Kind::Fun:
        tyvars_in_order(*a.dom, out);
        tyvars_in_order(*a.cod, out);
        break;
      case Arm::Kind::Base: break;
    }
  }
}

std::string letter_name(std::size_t i) {
  std::string s(1, static_cast<char>('a' + i % 26));
  if (i >= 26) s += std::to_string(i / 26);
  return s;
}

std::vector<ExprPtr> parse_qualifier_list(const std::string& text) {
  std::vector<ExprPtr> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    out.push_back(parse_qualifier(item));
  }
  return out;
}

struct Common {
  std::string smt_cmd;
  std::string backend = "builtin";
  double prover_timeout = 5.0;
  bool nonlinear = false;
  std::size_t max_arms = kDefaultMaxArms;
};

EngineOptions engine_options(const Common& c) {
  EngineOptions o;
  o.backend = *parse_backend(c.backend);
  if (!c.smt_cmd.empty()) o.smt_cmd = c.smt_cmd;
  o.timeout = std::chrono::milliseconds(static_cast<long long>(c.prover_timeout * 1000));
  o.nonlinear = c.nonlinear;
  return o;
}

int infer_file(const std::string& path, const Common& common, bool emit_anf, bool emit_constraints,
               bool json, std::ostream& out, std::ostream& err) {
  std::ifstream in(path);
  if (!in) {
    err << "error: cannot read " << path << "\n";
    return kIoError;
  }
  std::stringstream buf;
  buf << in.rdbuf();

  Program program;
  try {
    program = parse_program(buf.str());
  } catch (const ParseError& e) {
    err << path << ":" << e.what() << "\n";
    return kParseError;
  }

  ValidityEngine engine(engine_options(common));
  Subtyping::Log log;
  if (emit_constraints) log = [&](const std::string& line) { out << line << "\n"; };
  Subtyping sub(engine, log);
  Inferrer inferrer(sub, InferOptions{program.qualifiers, common.max_arms});

  nlohmann::json result = nlohmann::json::array();
  Env env;
  try {
    engine.preflight();
    for (const Binding& b : program.bindings) {
      if (emit_anf) out << "val " << b.name << " = " << to_string(normalize(b.term, env.names())) << "\n";
      Scheme s = tidy(inferrer.infer_surface(env, b.term));
      env = env.extended(b.name, s);
      if (json) {
        nlohmann::json arms = nlohmann::json::array();
        for (const Arm& a : s.body.arms()) arms.push_back(to_string(a));
        nlohmann::json q = nlohmann::json::array();
        for (const auto& v : s.quantified) q.push_back(tyvar_spelling(v));
        result.push_back({{"name", b.name}, {"type", to_string(s)}, {"quantified", q}, {"arms", arms}});
      } else {
        out << b.name << " : " << to_string(s) << "\n";
      }
    }
  } catch (const SolverError& e) {
    err << "solver error: " << e.what() << "\n";
    return kSolverError;
  } catch (const ArmCapExceeded& e) {
    err << "arm cap exceeded: " << e.what() << " (raise it with --max-arms)\n";
    return kCapExceeded;
  } catch (const ShapeError& e) {
    err << "shape error: " << e.what() << "\n";
    return kInferenceFailure;
  } catch (const InferenceFailure& e) {
    err << "inference failure: " << e.what() << "\n";
    return kInferenceFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInferenceFailure;
  }
  if (json) out << nlohmann::json{{"bindings", result}}.dump(2) << "\n";
  return kOk;
}

int metatheory(const Common& common, const MetatheoryOptions& mopts, std::ostream& out,
               std::ostream& err) {
  ValidityEngine engine(engine_options(common));
  try {
    engine.preflight();
  } catch (const SolverError& e) {
    err << "solver error: " << e.what() << "\n";
    return kSolverError;
  }
  MetatheoryReport r = check_metatheory(engine, mopts);
  out << "trials: " << r.trials << " (generated " << r.attempts << ")\n";
  out << "steps: " << r.steps << "\n";
  out << "recheck failures: " << r.recheck_failures << "\n";
  out << "preservation violations: " << r.violations << "\n";
  out << "stuck states: " << r.stuck << "\n";
  out << "oracle checks: " << r.oracle_queries << ", disagreements: " << r.oracle_disagreements << "\n";
  for (const auto& f : r.failures) err << f << "\n";
  return r.ok() && r.trials == mopts.trials ? kOk : kInferenceFailure;
}

}  // namespace

Scheme tidy(const Scheme& s) {
  std::vector<std::string> order;
  tyvars_in_order(s.body, order);
  std::vector<std::string> quantified;
  for (const auto& v : order) {
    if (std::find(s.quantified.begin(), s.quantified.end(), v) != s.quantified.end()) quantified.push_back(v);
  }
  for (const auto& v : s.quantified) {
    if (std::find(quantified.begin(), quantified.end(), v) == quantified.end()) quantified.push_back(v);
  }
  LiquidType body = s.body;
  std::vector<std::string> temp;
  for (std::size_t i = 0; i < quantified.size(); ++i) {
    temp.push_back("?" + std::to_string(i));
    body = subst_tyvar(body, quantified[i], LiquidType::single(Arm::tyvar(temp.back())));
  }
  std::vector<std::string> names;
  for (std::size_t i = 0; i < temp.size(); ++i) {
    names.push_back(letter_name(i));
    body = subst_tyvar(body, temp[i], LiquidType::single(Arm::tyvar(names.back())));
  }
  return Scheme{names, body};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Liquid intersection type inference"};
  app.set_version_flag("--version", "lqi 0.1.0");
  Common common;
  if (const char* env = std::getenv("LQI_SMT_CMD")) common.smt_cmd = env;
  std::string file;
  bool emit_anf = false, emit_constraints = false, json = false;

  app.add_option("--smt-cmd", common.smt_cmd, "external SMT-LIB solver command (default $LQI_SMT_CMD)");
  app.add_option("--backend", common.backend, "validity backend")
      ->check(CLI::IsMember({"builtin", "external", "both"}));
  app.add_option("--prover-timeout", common.prover_timeout, "seconds per external query")
      ->check(CLI::PositiveNumber);
  app.add_flag("--nonlinear", common.nonlinear, "pass nonlinear products to the external solver");
  app.add_option("--max-arms", common.max_arms, "largest template generated")->check(CLI::PositiveNumber);
  app.add_flag("--emit-anf", emit_anf, "print each binding in A-normal form");
  app.add_flag("--emit-constraints", emit_constraints, "print atomic constraints and verdicts");
  app.add_flag("--json", json, "print the result as JSON");
  app.add_option("file", file, "program to infer");

  MetatheoryOptions mopts;
  std::string qualifiers = "v >= 0, v <= 0";
  CLI::App* mt = app.add_subcommand("check-metatheory", "property-test subject reduction and soundness");
  mt->add_option("--trials", mopts.trials, "typable terms to test");
  mt->add_option("--fuel", mopts.fuel, "evaluation steps per term");
  mt->add_option("--bound", mopts.bound, "oracle domain bound")->check(CLI::PositiveNumber);
  mt->add_option("--seed", mopts.seed, "generator seed");
  mt->add_option("--qualifiers", qualifiers, "comma-separated qualifiers");
  mt->add_option("--threads", mopts.threads, "worker threads (0: one per core)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  if (*mt) {
    try {
      mopts.qualifiers = parse_qualifier_list(qualifiers);
    } catch (const ParseError& e) {
      err << "--qualifiers: " << e.what() << "\n";
      return kParseError;
    }
    mopts.max_arms = common.max_arms;
    return metatheory(common, mopts, out, err);
  }
  if (file.empty()) {
    err << app.help();
    return kParseError;
  }
  return infer_file(file, common, emit_anf, emit_constraints, json, out, err);
}

}  // namespace lqi::cli
