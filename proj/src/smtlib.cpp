#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cctype>
#include <cerrno>
#include <cstring>
#include <mutex>
#include <sstream>

#include "lqi/validity.hpp"

namespace lqi {

namespace {

std::string symbol(const std::string& name) { return "|" + name + "|"; }

std::string number(std::int64_t v) {
  if (v >= 0) return std::to_string(v);
  if (v == INT64_MIN) return "(- 9223372036854775808)";
  return "(- " + std::to_string(-v) + ")";
}

std::string smt_term(const LTerm& t) {
  switch (t.kind) {
    case LTerm::Kind::Const: return number(t.value);
    case LTerm::Kind::Var: return symbol(t.name);
    case LTerm::Kind::Add: return "(+ " + smt_term(*t.args[0]) + " " + smt_term(*t.args[1]) + ")";
    case LTerm::Kind::Sub: return "(- " + smt_term(*t.args[0]) + " " + smt_term(*t.args[1]) + ")";
    case LTerm::Kind::Mul: return "(* " + smt_term(*t.args[0]) + " " + smt_term(*t.args[1]) + ")";
    case LTerm::Kind::Neg: return "(- " + smt_term(*t.args[0]) + ")";
    case LTerm::Kind::App: {
      if (t.args.empty()) return symbol(t.name);
      std::string out = "(" + symbol(t.name);
      for (const auto& a : t.args) out += " " + smt_term(*a);
      return out + ")";
    }
  }
  return "?";
}

std::string smt_formula(const Formula& f) {
  auto join = [&](const char* op) {
    std::string out = std::string("(") + op;
    for (const auto& k : f.kids) out += " " + smt_formula(*k);
    return out + ")";
  };
  switch (f.kind) {
    case Formula::Kind::True: return "true";
    case Formula::Kind::False: return "false";
    case Formula::Kind::BoolVar: return symbol(f.name);
    case Formula::Kind::Cmp:
      return "(" + std::string(to_string(f.op)) + " " + smt_term(*f.lhs) + " " + smt_term(*f.rhs) +
             ")";
    case Formula::Kind::Not: return join("not");
    case Formula::Kind::And: return join("and");
    case Formula::Kind::Or: return join("or");
    case Formula::Kind::Implies: return join("=>");
    case Formula::Kind::Iff: return join("=");
  }
  return "?";
}

// Minimal s-expression reader for solver output.
struct Sexp {
  std::string atom;
  std::vector<Sexp> list;
  bool is_list = false;
};

class SexpReader {
 public:
  explicit SexpReader(const std::string& s) : s_(s) {}

  std::optional<Sexp> next() {
    skip();
    if (i_ >= s_.size()) return std::nullopt;
    if (s_[i_] == ')') {
      ++i_;
      return next();
    }
    return read();
  }

 private:
  const std::string& s_;
  std::size_t i_ = 0;

  void skip() {
    while (i_ < s_.size()) {
      if (std::isspace(static_cast<unsigned char>(s_[i_]))) {
        ++i_;
      } else if (s_[i_] == ';') {
        while (i_ < s_.size() && s_[i_] != '\n') ++i_;
      } else {
        break;
      }
    }
  }

  Sexp read() {
    skip();
    Sexp e;
    if (i_ >= s_.size()) return e;
    if (s_[i_] == '(') {
      ++i_;
      e.is_list = true;
      while (true) {
        skip();
        if (i_ >= s_.size()) break;
        if (s_[i_] == ')') {
          ++i_;
          break;
        }
        e.list.push_back(read());
      }
      return e;
    }
    if (s_[i_] == '|') {
      std::size_t j = s_.find('|', i_ + 1);
      if (j == std::string::npos) j = s_.size();
      e.atom = s_.substr(i_ + 1, j - i_ - 1);
      i_ = std::min(j + 1, s_.size());
      return e;
    }
    if (s_[i_] == '"') {
      std::size_t j = i_ + 1;
      while (j < s_.size() && s_[j] != '"') ++j;
      e.atom = s_.substr(i_, j + 1 - i_);
      i_ = std::min(j + 1, s_.size());
      return e;
    }
    std::size_t j = i_;
    while (j < s_.size() && !std::isspace(static_cast<unsigned char>(s_[j])) && s_[j] != '(' &&
           s_[j] != ')') {
      ++j;
    }
    e.atom = s_.substr(i_, j - i_);
    i_ = j;
    return e;
  }
};

std::optional<std::int64_t> int_value(const Sexp& e) {
  try {
    if (!e.is_list) {
      std::size_t used = 0;
      long long v = std::stoll(e.atom, &used);
      if (used != e.atom.size()) return std::nullopt;
      return v;
    }
    if (e.list.size() == 2 && !e.list[0].is_list && e.list[0].atom == "-") {
      auto v = int_value(e.list[1]);
      if (v) return -*v;
    }
  } catch (const std::exception&) {
  }
  return std::nullopt;
}

void read_model(const Sexp& e, Model& m) {
  if (!e.is_list) return;
  if (e.list.size() == 5 && !e.list[0].is_list && e.list[0].atom == "define-fun" &&
      e.list[2].is_list && e.list[2].list.empty()) {
    const std::string& name = e.list[1].atom;
    const std::string& sort = e.list[3].atom;
    if (sort == "Int") {
      if (auto v = int_value(e.list[4])) m.ints[name] = *v;
    } else if (sort == "Bool" && !e.list[4].is_list) {
      m.bools[name] = e.list[4].atom == "true";
    }
    return;
  }
  for (const auto& k : e.list) read_model(k, m);
}

struct ProcessOutput {
  bool launched = false;
  bool timed_out = false;
  std::string out;
};

ProcessOutput run_process(const std::string& command, const std::string& input,
                          std::chrono::milliseconds timeout) {
  static std::once_flag sigpipe;
  std::call_once(sigpipe, [] { signal(SIGPIPE, SIG_IGN); });
  ProcessOutput result;
  int in_pipe[2], out_pipe[2];
  if (pipe(in_pipe) != 0) return result;
  if (pipe(out_pipe) != 0) {
    close(in_pipe[0]);
    close(in_pipe[1]);
    return result;
  }
  pid_t pid = fork();
  if (pid < 0) {
    for (int fd : {in_pipe[0], in_pipe[1], out_pipe[0], out_pipe[1]}) close(fd);
    return result;
  }
  if (pid == 0) {
    dup2(in_pipe[0], STDIN_FILENO);
    dup2(out_pipe[1], STDOUT_FILENO);
    int devnull = open("/dev/null", O_WRONLY);
    if (devnull >= 0) dup2(devnull, STDERR_FILENO);
    for (int fd : {in_pipe[0], in_pipe[1], out_pipe[0], out_pipe[1]}) close(fd);
    execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  close(in_pipe[0]);
  close(out_pipe[1]);
  result.launched = true;

  const char* data = input.data();
  std::size_t left = input.size();
  while (left > 0) {
    ssize_t n = write(in_pipe[1], data, left);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) break;
    data += n;
    left -= static_cast<std::size_t>(n);
  }
  close(in_pipe[1]);

  auto deadline = std::chrono::steady_clock::now() + timeout;
  char buf[4096];
  while (true) {
    auto now = std::chrono::steady_clock::now();
    if (now >= deadline) {
      result.timed_out = true;
      break;
    }
    int wait_ms = static_cast<int>(
        std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now).count());
    pollfd p{out_pipe[0], POLLIN, 0};
    int r = poll(&p, 1, std::max(wait_ms, 1));
    if (r < 0 && errno == EINTR) continue;
    if (r <= 0) continue;
    ssize_t n = read(out_pipe[0], buf, sizeof buf);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) break;
    result.out.append(buf, static_cast<std::size_t>(n));
  }
  close(out_pipe[0]);
  if (result.timed_out) kill(pid, SIGKILL);
  int status = 0;
  while (waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }
  if (!result.timed_out && WIFEXITED(status) && WEXITSTATUS(status) == 127 && result.out.empty()) {
    result.launched = false;
  }
  return result;
}

}  // namespace

std::string emit_smtlib(const ValidityQuery& q, const SmtOptions& opts) {
  Signature sig;
  collect_signature(*q.hypothesis, sig);
  collect_signature(*q.conclusion, sig);
  std::ostringstream out;
  if (opts.produce_model) out << "(set-option :produce-models true)\n";
  out << "(set-logic " << (opts.nonlinear ? "QF_UFNIA" : "QF_UFLIA") << ")\n";
  for (const auto& v : sig.int_vars) out << "(declare-fun " << symbol(v) << " () Int)\n";
  for (const auto& b : sig.bool_vars) out << "(declare-fun " << symbol(b) << " () Bool)\n";
  for (const auto& [f, arity] : sig.functions) {
    out << "(declare-fun " << symbol(f) << " (";
    for (std::size_t i = 0; i < arity; ++i) out << (i ? " Int" : "Int");
    out << ") Int)\n";
  }
  out << "(assert " << smt_formula(*q.hypothesis) << ")\n";
  out << "(assert (not " << smt_formula(*q.conclusion) << "))\n";
  out << "(check-sat)\n";
  if (opts.produce_model) out << "(get-model)\n";
  return out.str();
}

Verdict run_external(const ValidityQuery& q, const std::string& command,
                     std::chrono::milliseconds timeout, const SmtOptions& opts) {
  ProcessOutput p = run_process(command, emit_smtlib(q, opts), timeout);
  if (!p.launched) return Verdict::unknown("could not launch '" + command + "'");
  if (p.timed_out) return Verdict::unknown("solver timed out");
  SexpReader reader(p.out);
  auto first = reader.next();
  if (!first || first->is_list) return Verdict::unknown("unexpected solver output: " + p.out);
  if (first->atom == "unsat") return Verdict::make_valid();
  if (first->atom == "sat") {
    Model m;
    while (auto e = reader.next()) read_model(*e, m);
    return Verdict{Verdict::Kind::Invalid, std::move(m), {}};
  }
  return Verdict::unknown("solver answered " + first->atom);
}

}  // namespace lqi
