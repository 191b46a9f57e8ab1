#pragma once

// Expression language of the command line tool.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?
//   primary := integer | name | atom | call | '(' expr ')'
//   atom    := ('s'|'e'|'h'|'p'|'m'|'H') '[' parts ']'
//   call    := function '(' expr (',' expr)* ')'

#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "nabla/partitions.hpp"
#include "nabla/ring.hpp"

namespace nabla::cli {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { number, name, atom, call, neg, add, sub, mul, div, pow };
  Kind kind = Kind::number;
  Integer number;      // number
  std::string name;    // name, call, and the basis letter of an atom
  Partition partition; // atom
  std::vector<ExprPtr> args;
  int line = 1;
  int column = 1;

  static ExprPtr make_number(Integer v);
  static ExprPtr make_name(std::string n);
  static ExprPtr make_atom(char basis, Partition la);
  static ExprPtr make_call(std::string fn, std::vector<ExprPtr> args);
  static ExprPtr make_unary(ExprPtr x);
  static ExprPtr make_binary(Kind k, ExprPtr a, ExprPtr b);
};

/// Structural equality, ignoring source positions.
bool same(const Expr& a, const Expr& b);

class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column, std::vector<std::string> expected = {});
  int line() const { return line_; }
  int column() const { return column_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  int line_;
  int column_;
  std::vector<std::string> expected_;
};

struct FunctionInfo {
  std::string name;
  int min_args;
  int max_args;
  std::string signature;
};

const std::vector<FunctionInfo>& functions();
const FunctionInfo* find_function(std::string_view name);
/// Known functions close to `name` (edit distance or shared prefix).
std::vector<std::string> suggest(std::string_view name);
/// Names that may appear bare: q, t, u and the basis letters.
bool is_bare_name(std::string_view name);

ExprPtr parse(std::string_view input);
/// Canonical text: minimal parentheses, no spaces inside calls except after commas.
std::string render(const Expr& e);

}  // namespace nabla::cli
