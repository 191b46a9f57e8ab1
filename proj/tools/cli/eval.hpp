#pragma once

#include <variant>

#include "cli/expr.hpp"
#include "nabla/identities.hpp"

namespace nabla::cli {

using Value = std::variant<RationalFunction, SymFunc, NablaMatrix>;

/// "scalar", "symmetric function" or "matrix".
std::string type_name(const Value& v);

/// Type-checked evaluation. Errors carry the position of the offending node.
Value evaluate(const Expr& e);

class EvalError : public Error {
 public:
  EvalError(const std::string& message, int line, int column)
      : Error(message + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace nabla::cli
