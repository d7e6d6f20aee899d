#include "lqi/parser.hpp"

#include <cctype>
#include <limits>
#include <set>

#include "lqi/error.hpp"

namespace lqi {

namespace {

struct Token {
  enum class Kind { Ident, Int, Sym, End };
  Kind kind = Kind::End;
  std::string text;
  std::int64_t value = 0;
  int line = 1;
  int column = 1;
  std::size_t offset = 0;
  std::size_t end = 0;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  int line = 1;
  std::size_t line_start = 0;
  auto column = [&](std::size_t at) { return static_cast<int>(at - line_start) + 1; };
  while (true) {
    while (i < src.size()) {
      char c = src[i];
      if (c == '\n') {
        ++i;
        ++line;
        line_start = i;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
      } else if (c == '-' && i + 1 < src.size() && src[i + 1] == '-') {
        while (i < src.size() && src[i] != '\n') ++i;
      } else {
        break;
      }
    }
    Token t;
    t.line = line;
    t.column = column(i);
    t.offset = i;
    if (i >= src.size()) {
      t.kind = Token::Kind::End;
      t.end = i;
      out.push_back(t);
      return out;
    }
    char c = src[i];
    if (ident_start(c)) {
      std::size_t j = i + 1;
      while (j < src.size() && ident_char(src[j])) ++j;
      t.kind = Token::Kind::Ident;
      t.text = std::string(src.substr(i, j - i));
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      std::int64_t v = 0;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) {
        int d = src[j] - '0';
        if (v > (std::numeric_limits<std::int64_t>::max() - d) / 10) {
          throw ParseError("integer literal out of range", t.line, t.column);
        }
        v = v * 10 + d;
        ++j;
      }
      t.kind = Token::Kind::Int;
      t.value = v;
      t.text = std::string(src.substr(i, j - i));
      i = j;
    } else {
      static const char* multi[] = {"->", "/\\", "<=", ">=", "&&"};
      t.kind = Token::Kind::Sym;
      for (const char* m : multi) {
        if (src.substr(i, 2) == m) t.text = m;
      }
      if (t.text.empty()) {
        static const std::string singles = "\\.(){},=:|'+-*<>[]";
        if (singles.find(c) == std::string::npos) {
          throw ParseError(std::string("unexpected character '") + c + "'", t.line, t.column);
        }
        t.text = std::string(1, c);
      }
      i += t.text.size();
    }
    t.end = i;
    out.push_back(t);
  }
}

const std::set<std::string> kKeywords = {"let", "in", "val", "Qualifiers", "forall"};
const std::set<std::string> kWordPrims = {"neg", "sub", "if", "fix"};

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  Program program() {
    Program p;
    if (is_ident("Qualifiers")) {
      next();
      expect_sym("{");
      if (!is_sym("}")) {
        p.qualifiers.push_back(qualifier());
        while (is_sym(",")) {
          next();
          p.qualifiers.push_back(qualifier());
        }
      }
      expect_sym("}");
    }
    std::set<std::string> defined;
    while (!at_end()) {
      if (!is_ident("val")) fail("expected 'val'");
      next();
      const Token& name_tok = peek();
      std::string name = binder_name("binding name");
      if (name == "v") fail_at(name_tok, "'v' is reserved for the value variable");
      if (defined.count(name)) fail_at(name_tok, "duplicate binding '" + name + "'");
      expect_sym("=");
      TermPtr body = term();
      p.bindings.push_back(Binding{name, rename_binders(body, defined), pos_of(name_tok)});
      defined.insert(name);
      scope_.push_back(name);
    }
    return p;
  }

  TermPtr whole_term() {
    TermPtr t = term();
    if (!at_end()) fail("unexpected '" + peek().text + "'");
    return t;
  }

  ExprPtr whole_qualifier() {
    ExprPtr e = qualifier();
    if (!at_end()) fail("unexpected '" + peek().text + "' in qualifier");
    return e;
  }

  ExprPtr whole_refinement() {
    ExprPtr e = expr();
    if (!at_end()) fail("unexpected '" + peek().text + "' in refinement");
    return e;
  }

  Scheme whole_scheme() {
    Scheme s = scheme();
    if (!at_end()) fail("unexpected '" + peek().text + "' in type");
    return s;
  }

 private:
  std::vector<Token> toks_;
  std::size_t at_ = 0;
  std::vector<std::string> scope_;

  const Token& peek(std::size_t k = 0) const {
    return toks_[std::min(at_ + k, toks_.size() - 1)];
  }
  const Token& next() {
    const Token& t = toks_[at_];
    if (at_ + 1 < toks_.size()) ++at_;
    return t;
  }
  bool at_end() const { return peek().kind == Token::Kind::End; }
  bool is_sym(std::string_view s, std::size_t k = 0) const {
    return peek(k).kind == Token::Kind::Sym && peek(k).text == s;
  }
  bool is_ident(std::string_view s) const {
    return peek().kind == Token::Kind::Ident && peek().text == s;
  }
  static SourcePos pos_of(const Token& t) { return SourcePos{t.line, t.column}; }

  [[noreturn]] void fail_at(const Token& t, const std::string& msg) const {
    throw ParseError(msg, t.line, t.column);
  }
  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    fail_at(t, t.kind == Token::Kind::End ? msg + " at end of input" : msg);
  }

  void expect_sym(std::string_view s) {
    if (!is_sym(s)) fail("expected '" + std::string(s) + "'");
    next();
  }

  std::string binder_name(const std::string& what) {
    const Token& t = peek();
    if (t.kind != Token::Kind::Ident || kKeywords.count(t.text) || t.text == "true" ||
        t.text == "false") {
      fail("expected " + what);
    }
    if (t.text.find('\'') != std::string::npos) fail_at(t, "identifier may not contain '''");
    next();
    return t.text;
  }

  bool in_scope(const std::string& name) const {
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
      if (*it == name) return true;
    }
    return false;
  }

  // Terms.

  TermPtr term() {
    const Token& start = peek();
    if (is_sym("\\")) {
      next();
      std::string x = binder_name("binder after '\\'");
      expect_sym(".");
      scope_.push_back(x);
      TermPtr body = term_or_fail("expected lambda body");
      scope_.pop_back();
      return Term::lam(x, body, pos_of(start));
    }
    if (is_ident("let")) {
      next();
      std::string x = binder_name("binder after 'let'");
      expect_sym("=");
      TermPtr bound = term_or_fail("expected bound term");
      if (!is_ident("in")) fail("expected 'in'");
      next();
      scope_.push_back(x);
      TermPtr body = term_or_fail("expected let body");
      scope_.pop_back();
      return Term::let(x, bound, body, pos_of(start));
    }
    return application();
  }

  TermPtr term_or_fail(const std::string& msg) {
    if (!starts_term()) fail(msg);
    return term();
  }

  bool starts_atom() const {
    const Token& t = peek();
    switch (t.kind) {
      case Token::Kind::Int: return true;
      case Token::Kind::Ident: return !kKeywords.count(t.text);
      case Token::Kind::Sym: {
        static const std::set<std::string> s = {"(", "+", "-", "*", "<=", ">=", "<", ">", "="};
        return s.count(t.text) > 0;
      }
      case Token::Kind::End: return false;
    }
    return false;
  }

  bool starts_term() const { return starts_atom() || is_sym("\\") || is_ident("let"); }

  TermPtr application() {
    if (!starts_atom()) fail("expected term");
    TermPtr head = atom();
    while (true) {
      if (starts_atom()) {
        head = Term::app(head, atom(), head->pos);
      } else if (is_sym("\\") || is_ident("let")) {
        head = Term::app(head, term(), head->pos);
        break;
      } else {
        break;
      }
    }
    return head;
  }

  TermPtr atom() {
    const Token& t = next();
    SourcePos pos = pos_of(t);
    switch (t.kind) {
      case Token::Kind::Int: return Term::int_lit(t.value, pos);
      case Token::Kind::Ident:
        if (t.text == "true") return Term::bool_lit(true, pos);
        if (t.text == "false") return Term::bool_lit(false, pos);
        if (kWordPrims.count(t.text) && !in_scope(t.text)) {
          return Term::prim(*prim_from_spelling(t.text), pos);
        }
        return Term::var(t.text, pos);
      case Token::Kind::Sym:
        if (t.text == "(") {
          TermPtr inner = term_or_fail("expected term after '('");
          expect_sym(")");
          return inner;
        }
        if (t.text == "-" && peek().kind == Token::Kind::Int && peek().offset == t.end) {
          const Token& n = next();
          return Term::int_lit(-n.value, pos);
        }
        return Term::prim(*prim_from_spelling(t.text), pos);
      case Token::Kind::End: break;
    }
    fail_at(t, "expected term");
  }

  // Refinement expressions.

  ExprPtr qualifier() {
    const Token& start = peek();
    ExprPtr e = expr();
    check_qualifier(start, *e);
    return e;
  }

  void check_qualifier(const Token& start, const Expr& e) const {
    auto no_bool_inside = [&](const Expr& x) { return !contains_predicate(x); };
    switch (e.kind()) {
      case Expr::Kind::Cmp:
        if (no_bool_inside(*e.lhs()) && no_bool_inside(*e.rhs()) && linear(*e.lhs()) &&
            linear(*e.rhs())) {
          return;
        }
        fail_at(start, "qualifier must be a single linear comparison");
      case Expr::Kind::Var:
      case Expr::Kind::Nu:
      case Expr::Kind::BoolLit: return;
      default: fail_at(start, "qualifier must be a comparison or a boolean atom");
    }
  }

  static bool contains_predicate(const Expr& e) {
    switch (e.kind()) {
      case Expr::Kind::Cmp:
      case Expr::Kind::And:
      case Expr::Kind::BoolLit: return true;
      case Expr::Kind::Neg: return contains_predicate(*e.operand());
      case Expr::Kind::Arith: return contains_predicate(*e.lhs()) || contains_predicate(*e.rhs());
      default: return false;
    }
  }

  static bool constant_valued(const Expr& e) {
    switch (e.kind()) {
      case Expr::Kind::IntLit: return true;
      case Expr::Kind::Neg: return constant_valued(*e.operand());
      case Expr::Kind::Arith: return constant_valued(*e.lhs()) && constant_valued(*e.rhs());
      default: return false;
    }
  }

  static bool linear(const Expr& e) {
    switch (e.kind()) {
      case Expr::Kind::Neg: return linear(*e.operand());
      case Expr::Kind::Arith:
        if (!linear(*e.lhs()) || !linear(*e.rhs())) return false;
        return e.arith_op() != ArithOp::Mul || constant_valued(*e.lhs()) ||
               constant_valued(*e.rhs());
      default: return true;
    }
  }

  ExprPtr expr() {
    ExprPtr e = comparison();
    while (is_sym("&&")) {
      next();
      e = Expr::conj(e, comparison());
    }
    return e;
  }

  ExprPtr comparison() {
    ExprPtr lhs = arith();
    static const std::pair<const char*, CmpOp> ops[] = {
        {"=", CmpOp::Eq}, {"<=", CmpOp::Le}, {">=", CmpOp::Ge}, {"<", CmpOp::Lt}, {">", CmpOp::Gt}};
    for (const auto& [s, op] : ops) {
      if (is_sym(s)) {
        next();
        return Expr::cmp(op, lhs, arith());
      }
    }
    return lhs;
  }

  ExprPtr arith() {
    ExprPtr e = product();
    while (is_sym("+") || is_sym("-")) {
      ArithOp op = next().text == "+" ? ArithOp::Add : ArithOp::Sub;
      e = Expr::arith(op, e, product());
    }
    return e;
  }

  ExprPtr product() {
    ExprPtr e = unary();
    while (is_sym("*")) {
      next();
      e = Expr::arith(ArithOp::Mul, e, unary());
    }
    return e;
  }

  ExprPtr unary() {
    const Token& t = peek();
    if (is_sym("-")) {
      next();
      return Expr::neg(unary());
    }
    if (is_sym("(")) {
      next();
      ExprPtr e = expr();
      expect_sym(")");
      return e;
    }
    if (t.kind == Token::Kind::Int) {
      next();
      return Expr::int_lit(t.value);
    }
    if (t.kind == Token::Kind::Ident && !kKeywords.count(t.text)) {
      next();
      if (t.text == "v") return Expr::nu();
      if (t.text == "true") return Expr::bool_lit(true);
      if (t.text == "false") return Expr::bool_lit(false);
      return Expr::var(t.text);
    }
    fail("expected expression");
  }

  // Types.

  Scheme scheme() {
    std::vector<std::string> qs;
    if (is_ident("forall")) {
      next();
      while (is_sym("'")) {
        next();
        qs.push_back(type_ident());
      }
      if (qs.empty()) fail("expected type variable after 'forall'");
      expect_sym(".");
    }
    return Scheme{qs, type()};
  }

  std::string type_ident() {
    const Token& t = peek();
    if (t.kind != Token::Kind::Ident) fail("expected identifier");
    next();
    return t.text;
  }

  LiquidType type() {
    std::vector<Arm> arms = unit().arms();
    while (is_sym("/\\")) {
      next();
      auto more = unit().arms();
      arms.insert(arms.end(), more.begin(), more.end());
    }
    return make_type(std::move(arms));
  }

  LiquidType make_type(std::vector<Arm> arms) {
    try {
      return LiquidType::make(std::move(arms));
    } catch (const IllFoundedType& e) {
      fail(e.what());
    }
  }

  LiquidType unit() {
    const Token& t = peek();
    if (is_sym("{")) {
      next();
      if (!is_ident("v")) fail("expected 'v'");
      next();
      expect_sym(":");
      std::string b = type_ident();
      if (b != "int" && b != "bool") fail_at(t, "unknown base type '" + b + "'");
      expect_sym("|");
      ExprPtr e = expr();
      expect_sym("}");
      return LiquidType::base(b == "int" ? BaseType::Int : BaseType::Bool, e);
    }
    if (is_sym("'")) {
      next();
      return LiquidType::single(Arm::tyvar(type_ident()));
    }
    if (is_sym("(")) {
      next();
      LiquidType inner = type();
      expect_sym(")");
      return inner;
    }
    if (t.kind == Token::Kind::Ident && is_sym(":", 1)) {
      std::string binder = type_ident();
      next();
      LiquidType dom = unit();
      expect_sym("->");
      LiquidType cod = unit();
      return LiquidType::single(Arm::fun(binder, dom, cod));
    }
    fail("expected type");
  }
};

}  // namespace

Program parse_program(std::string_view text) { return Parser(text).program(); }
ExprPtr parse_qualifier(std::string_view text) { return Parser(text).whole_qualifier(); }
ExprPtr parse_refinement(std::string_view text) { return Parser(text).whole_refinement(); }
TermPtr parse_term(std::string_view text) { return Parser(text).whole_term(); }
Scheme parse_scheme(std::string_view text) { return Parser(text).whole_scheme(); }

LiquidType parse_type(std::string_view text) {
  Scheme s = parse_scheme(text);
  if (!s.is_mono()) throw ParseError("expected a monomorphic type", 1, 1);
  return s.body;
}

std::string to_string(const Program& p) {
  std::string out = "Qualifiers {";
  for (std::size_t i = 0; i < p.qualifiers.size(); ++i) {
    out += (i ? ", " : " ") + to_string(*p.qualifiers[i]);
  }
  out += p.qualifiers.empty() ? "}\n" : " }\n";
  for (const auto& b : p.bindings) out += "val " + b.name + " = " + to_string(*b.term) + "\n";
  return out;
}

}  // namespace lqi
