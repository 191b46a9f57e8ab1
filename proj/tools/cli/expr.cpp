#include "cli/expr.hpp"

#include <algorithm>
#include <cctype>

namespace nabla::cli {

ExprPtr Expr::make_number(Integer v) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::number;
  e->number = std::move(v);
  return e;
}

ExprPtr Expr::make_name(std::string n) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::name;
  e->name = std::move(n);
  return e;
}

ExprPtr Expr::make_atom(char basis, Partition la) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::atom;
  e->name = std::string(1, basis);
  e->partition = std::move(la);
  return e;
}

ExprPtr Expr::make_call(std::string fn, std::vector<ExprPtr> args) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::call;
  e->name = std::move(fn);
  e->args = std::move(args);
  return e;
}

ExprPtr Expr::make_unary(ExprPtr x) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::neg;
  e->args = {std::move(x)};
  return e;
}

ExprPtr Expr::make_binary(Kind k, ExprPtr a, ExprPtr b) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->args = {std::move(a), std::move(b)};
  return e;
}

bool same(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.args.size() != b.args.size()) return false;
  switch (a.kind) {
    case Expr::Kind::number:
      if (a.number != b.number) return false;
      break;
    case Expr::Kind::name:
    case Expr::Kind::call:
      if (a.name != b.name) return false;
      break;
    case Expr::Kind::atom:
      if (a.name != b.name || a.partition != b.partition) return false;
      break;
    default:
      break;
  }
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!same(*a.args[i], *b.args[i])) return false;
  return true;
}

ParseError::ParseError(const std::string& message, int line, int column, std::vector<std::string> expected)
    : Error(message), line_(line), column_(column), expected_(std::move(expected)) {}

const std::vector<FunctionInfo>& functions() {
  static const std::vector<FunctionInfo> table = {
      {"nabla", 1, 1, "nabla(f)"},
      {"nabla_inv", 1, 1, "nabla_inv(f)"},
      {"nabla_f", 2, 2, "nabla_f(g, f)"},
      {"nabla_k", 2, 2, "nabla_k(k, f)"},
      {"Dm", 2, 2, "Dm(m, f)"},
      {"rho", 1, 1, "rho(f)"},
      {"theta", 1, 1, "theta(f)"},
      {"psi", 1, 2, "psi(f) or psi(truncation, f)"},
      {"psi_plus", 1, 2, "psi_plus(f) or psi_plus(truncation, f)"},
      {"pleth", 2, 2, "pleth(f, g)"},
      {"pleth_scaled", 2, 2, "pleth_scaled(f, c)"},
      {"epsilon", 2, 2, "epsilon(n, j)"},
      {"scalar", 2, 2, "scalar(f, g)"},
      {"expand", 2, 2, "expand(f, basis)"},
      {"hilbert", 1, 1, "hilbert(f)"},
      {"matrix", 1, 1, "matrix(n)"},
      {"at", 3, 3, "at(x, q0, t0)"},
  };
  return table;
}

const FunctionInfo* find_function(std::string_view name) {
  for (const FunctionInfo& f : functions())
    if (f.name == name) return &f;
  return nullptr;
}

namespace {

std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

}  // namespace

std::vector<std::string> suggest(std::string_view name) {
  std::vector<std::string> out;
  for (const FunctionInfo& f : functions()) {
    const bool prefix = name.size() >= 2 && f.name.rfind(name, 0) == 0;
    if (prefix || edit_distance(name, f.name) <= 2) out.push_back(f.name);
  }
  return out;
}

bool is_bare_name(std::string_view name) {
  static const std::set<std::string_view> names = {"q", "t", "u", "s", "e", "h", "p", "m"};
  return names.count(name) > 0;
}

// ---------------------------------------------------------------------------
// Lexer

namespace {

struct Token {
  enum class Type { integer, ident, symbol, end };
  Type type = Type::end;
  std::string text;
  int line = 1;
  int column = 1;
};

std::string describe(const Token& tok) {
  switch (tok.type) {
    case Token::Type::end: return "end of input";
    case Token::Type::integer: return "number '" + tok.text + "'";
    case Token::Type::ident: return "name '" + tok.text + "'";
    case Token::Type::symbol: return "'" + tok.text + "'";
  }
  return tok.text;
}

std::vector<Token> tokenize(std::string_view in) {
  std::vector<Token> out;
  int line = 1, column = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (in[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
  };
  while (i < in.size()) {
    const char c = in[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token tok;
    tok.line = line;
    tok.column = column;
    std::size_t j = i;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (j < in.size() && std::isdigit(static_cast<unsigned char>(in[j]))) ++j;
      tok.type = Token::Type::integer;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (j < in.size() && (std::isalnum(static_cast<unsigned char>(in[j])) || in[j] == '_')) ++j;
      tok.type = Token::Type::ident;
    } else if (std::string_view("+-*/^()[],").find(c) != std::string_view::npos) {
      j = i + 1;
      tok.type = Token::Type::symbol;
    } else {
      throw ParseError("unexpected character '" + std::string(1, c) + "' at line " + std::to_string(line) +
                           ", column " + std::to_string(column),
                       line, column);
    }
    tok.text = std::string(in.substr(i, j - i));
    advance(j - i);
    out.push_back(std::move(tok));
  }
  Token end;
  end.line = line;
  end.column = column;
  out.push_back(end);
  return out;
}

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  ExprPtr parse_all() {
    ExprPtr e = expr();
    if (peek().type != Token::Type::end) fail({"'+'", "'-'", "'*'", "'/'", "'^'", "end of input"});
    return e;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  bool at_symbol(const char* s) const { return peek().type == Token::Type::symbol && peek().text == s; }
  Token take() { return toks_[pos_++]; }

  [[noreturn]] void fail(const std::vector<std::string>& expected) const {
    const Token& tok = peek();
    std::string msg = "syntax error at line " + std::to_string(tok.line) + ", column " + std::to_string(tok.column) +
                      ": expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) msg += (i == 0 ? "" : i + 1 == expected.size() ? " or " : ", ") + expected[i];
    msg += ", found " + describe(tok);
    throw ParseError(msg, tok.line, tok.column, expected);
  }

  void expect(const char* s, std::vector<std::string> expected = {}) {
    if (!at_symbol(s)) fail(expected.empty() ? std::vector<std::string>{"'" + std::string(s) + "'"} : expected);
    take();
  }

  static ExprPtr at(ExprPtr e, const Token& tok) {
    auto m = std::const_pointer_cast<Expr>(e);
    m->line = tok.line;
    m->column = tok.column;
    return m;
  }

  ExprPtr expr() {
    ExprPtr left = term();
    while (at_symbol("+") || at_symbol("-")) {
      const Token op = take();
      ExprPtr right = term();
      left = at(Expr::make_binary(op.text == "+" ? Expr::Kind::add : Expr::Kind::sub, left, right), op);
    }
    return left;
  }

  ExprPtr term() {
    ExprPtr left = unary();
    while (at_symbol("*") || at_symbol("/")) {
      const Token op = take();
      ExprPtr right = unary();
      left = at(Expr::make_binary(op.text == "*" ? Expr::Kind::mul : Expr::Kind::div, left, right), op);
    }
    return left;
  }

  ExprPtr unary() {
    if (at_symbol("-")) {
      const Token op = take();
      return at(Expr::make_unary(unary()), op);
    }
    return power();
  }

  ExprPtr power() {
    ExprPtr base = primary();
    if (at_symbol("^")) {
      const Token op = take();
      return at(Expr::make_binary(Expr::Kind::pow, base, unary()), op);
    }
    return base;
  }

  ExprPtr primary() {
    const Token& tok = peek();
    if (tok.type == Token::Type::integer) {
      const Token t = take();
      return at(Expr::make_number(Integer(t.text)), t);
    }
    if (at_symbol("(")) {
      take();
      ExprPtr e = expr();
      expect(")", {"')'", "'+'", "'-'", "'*'", "'/'", "'^'"});
      return e;
    }
    if (tok.type == Token::Type::ident) {
      const Token name = take();
      if (at_symbol("[")) return atom(name);
      if (at_symbol("(")) return call(name);
      if (!is_bare_name(name.text)) {
        std::string msg = "unknown name '" + name.text + "' at line " + std::to_string(name.line) + ", column " +
                          std::to_string(name.column);
        const auto close = suggest(name.text);
        if (!close.empty()) msg += "; did you mean " + join(close) + "?";
        throw ParseError(msg, name.line, name.column, close);
      }
      return at(Expr::make_name(name.text), name);
    }
    fail({"number", "name", "atom such as s[2,1]", "function call", "'('", "'-'"});
  }

  static std::string join(const std::vector<std::string>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i == 0 ? "" : ", ") + xs[i];
    return out;
  }

  ExprPtr atom(const Token& name) {
    static const std::string letters = "sehpmH";
    if (name.text.size() != 1 || letters.find(name.text[0]) == std::string::npos)
      throw ParseError("'" + name.text + "' is not a basis; atoms are s[..], e[..], h[..], p[..], m[..], H[..] (line " +
                           std::to_string(name.line) + ", column " + std::to_string(name.column) + ")",
                       name.line, name.column, {"s", "e", "h", "p", "m", "H"});
    take();  // '['
    std::vector<int> parts;
    if (!at_symbol("]")) {
      for (;;) {
        if (peek().type != Token::Type::integer) fail({"partition part"});
        const Token part = take();
        if (part.text.size() > 6) throw ParseError("partition part " + part.text + " is too large", part.line, part.column);
        parts.push_back(std::stoi(part.text));
        if (at_symbol(",")) {
          take();
          continue;
        }
        break;
      }
    }
    expect("]", {"','", "']'"});
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (parts[i] <= 0)
        throw ParseError("partition parts must be positive in " + name.text + "[...] at line " + std::to_string(name.line) +
                             ", column " + std::to_string(name.column),
                         name.line, name.column);
      if (i > 0 && parts[i] > parts[i - 1])
        throw ParseError("partition parts not weakly decreasing in " + name.text + "[...] at line " +
                             std::to_string(name.line) + ", column " + std::to_string(name.column),
                         name.line, name.column);
    }
    return at(Expr::make_atom(name.text[0], Partition(parts)), name);
  }

  ExprPtr call(const Token& name) {
    const FunctionInfo* fn = find_function(name.text);
    if (!fn) {
      std::string msg = "unknown function '" + name.text + "' at line " + std::to_string(name.line) + ", column " +
                        std::to_string(name.column);
      const auto close = suggest(name.text);
      if (!close.empty()) msg += "; did you mean " + join(close) + "?";
      throw ParseError(msg, name.line, name.column, close);
    }
    take();  // '('
    std::vector<ExprPtr> args;
    args.push_back(expr());
    while (at_symbol(",")) {
      take();
      args.push_back(expr());
    }
    expect(")", {"','", "')'"});
    const int n = static_cast<int>(args.size());
    if (n < fn->min_args || n > fn->max_args)
      throw ParseError(fn->name + " takes " +
                           (fn->min_args == fn->max_args ? std::to_string(fn->min_args)
                                                         : std::to_string(fn->min_args) + " or " + std::to_string(fn->max_args)) +
                           " argument(s), got " + std::to_string(n) + ": " + fn->signature + " (line " +
                           std::to_string(name.line) + ", column " + std::to_string(name.column) + ")",
                       name.line, name.column);
    return at(Expr::make_call(fn->name, std::move(args)), name);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

int precedence(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::add:
    case Expr::Kind::sub: return 1;
    case Expr::Kind::mul:
    case Expr::Kind::div: return 2;
    case Expr::Kind::neg: return 3;
    case Expr::Kind::pow: return 4;
    default: return 5;
  }
}

std::string wrap(const Expr& e, bool parens) { return parens ? "(" + render(e) + ")" : render(e); }

}  // namespace

ExprPtr parse(std::string_view input) { return Parser(tokenize(input)).parse_all(); }

std::string render(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::number: return e.number.get_str();
    case Expr::Kind::name: return e.name;
    case Expr::Kind::atom: {
      std::string out = e.name + "[";
      const auto& parts = e.partition.parts();
      for (std::size_t i = 0; i < parts.size(); ++i) out += (i == 0 ? "" : ",") + std::to_string(parts[i]);
      return out + "]";
    }
    case Expr::Kind::call: {
      std::string out = e.name + "(";
      for (std::size_t i = 0; i < e.args.size(); ++i) out += (i == 0 ? "" : ", ") + render(*e.args[i]);
      return out + ")";
    }
    case Expr::Kind::neg: return "-" + wrap(*e.args[0], precedence(*e.args[0]) < 3);
    case Expr::Kind::pow:
      return wrap(*e.args[0], precedence(*e.args[0]) <= 4) + "^" + wrap(*e.args[1], precedence(*e.args[1]) < 3);
    default: {
      const int p = precedence(e);
      const char* op = e.kind == Expr::Kind::add ? " + " : e.kind == Expr::Kind::sub ? " - " : e.kind == Expr::Kind::mul ? "*" : "/";
      return wrap(*e.args[0], precedence(*e.args[0]) < p) + op + wrap(*e.args[1], precedence(*e.args[1]) <= p);
    }
  }
}

}  // namespace nabla::cli
