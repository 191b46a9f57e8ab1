#include "cli/eval.hpp"

#include "nabla/plethysm.hpp"
#include "nabla/specials.hpp"

namespace nabla::cli {

std::string type_name(const Value& v) {
  switch (v.index()) {
    case 0: return "scalar";
    case 1: return "symmetric function";
    default: return "matrix";
  }
}

namespace {

[[noreturn]] void error_at(const Expr& e, const std::string& message) { throw EvalError(message, e.line, e.column); }

SymFunc as_symfunc(const Expr& at, const Value& v, const std::string& what) {
  if (const auto* f = std::get_if<SymFunc>(&v)) return *f;
  if (const auto* c = std::get_if<RationalFunction>(&v)) return SymFunc::constant(*c);
  error_at(at, what + " must be a symmetric function, got a matrix");
}

RationalFunction as_scalar(const Expr& at, const Value& v, const std::string& what) {
  if (const auto* c = std::get_if<RationalFunction>(&v)) return *c;
  if (const auto* f = std::get_if<SymFunc>(&v)) {
    if (auto c = f->constant_value()) return *c;
    if (f->is_zero()) return RationalFunction();
  }
  error_at(at, what + " must be a scalar, got a " + type_name(v));
}

Rational as_rational(const Expr& at, const Value& v, const std::string& what) {
  const RationalFunction c = as_scalar(at, v, what);
  auto r = c.constant_value();
  if (!r) error_at(at, what + " must be a number, got " + c.to_string());
  return *r;
}

int as_int(const Expr& at, const Value& v, const std::string& what) {
  const Rational r = as_rational(at, v, what);
  if (r.get_den() != 1 || !r.get_num().fits_sint_p()) error_at(at, what + " must be an integer, got " + r.get_str());
  return static_cast<int>(r.get_num().get_si());
}

std::string arg_label(const std::string& fn, std::size_t i) { return fn + ": argument " + std::to_string(i + 1); }

std::optional<Basis> basis_letter(const Expr& e) {
  if (e.kind != Expr::Kind::name) return std::nullopt;
  return basis_from_name(e.name);
}

Value arithmetic(const Expr& e, const Value& a, const Value& b) {
  const Expr& left = *e.args[0];
  const Expr& right = *e.args[1];
  if (std::holds_alternative<NablaMatrix>(a) || std::holds_alternative<NablaMatrix>(b))
    error_at(e, "arithmetic on a matrix is not supported");
  const bool both_scalar = std::holds_alternative<RationalFunction>(a) && std::holds_alternative<RationalFunction>(b);
  switch (e.kind) {
    case Expr::Kind::add:
      if (both_scalar) return std::get<RationalFunction>(a) + std::get<RationalFunction>(b);
      return as_symfunc(left, a, "left operand") + as_symfunc(right, b, "right operand");
    case Expr::Kind::sub:
      if (both_scalar) return std::get<RationalFunction>(a) - std::get<RationalFunction>(b);
      return as_symfunc(left, a, "left operand") - as_symfunc(right, b, "right operand");
    case Expr::Kind::mul:
      if (both_scalar) return std::get<RationalFunction>(a) * std::get<RationalFunction>(b);
      if (std::holds_alternative<RationalFunction>(a)) return std::get<SymFunc>(b) * std::get<RationalFunction>(a);
      if (std::holds_alternative<RationalFunction>(b)) return std::get<SymFunc>(a) * std::get<RationalFunction>(b);
      return multiply(std::get<SymFunc>(a), std::get<SymFunc>(b));
    case Expr::Kind::div: {
      if (!std::holds_alternative<RationalFunction>(b)) error_at(e, "division is only by scalars, got a " + type_name(b));
      const RationalFunction d = std::get<RationalFunction>(b);
      if (d.is_zero()) error_at(e, "division by zero");
      if (both_scalar) return std::get<RationalFunction>(a) / d;
      return std::get<SymFunc>(a) * d.inverse();
    }
    case Expr::Kind::pow: {
      const int k = as_int(right, b, "exponent");
      if (const auto* c = std::get_if<RationalFunction>(&a)) {
        if (k < 0 && c->is_zero()) error_at(e, "negative power of zero");
        return c->pow(k);
      }
      if (k < 0) error_at(e, "negative power of a symmetric function");
      const SymFunc& f = std::get<SymFunc>(a);
      SymFunc acc = SymFunc::constant(1, f.basis());
      for (int i = 0; i < k; ++i) acc = multiply(acc, f);
      return acc;
    }
    default:
      error_at(e, "internal: not an arithmetic node");
  }
}

SymFunc evaluate_coefficients(const SymFunc& f, const Rational& q0, const Rational& t0) {
  return f.map_coefficients([&](const RationalFunction& c) {
    if (c.den().evaluate(q0, t0) == 0) throw Error("a coefficient has a pole at the requested point: " + c.to_string());
    return RationalFunction(c.evaluate(q0, t0));
  });
}

Value call(const Expr& e) {
  const std::string& fn = e.name;
  std::vector<Value> v;
  // expand takes a bare basis name as its second argument
  const std::size_t evaluated = fn == "expand" ? 1 : e.args.size();
  for (std::size_t i = 0; i < evaluated; ++i) v.push_back(evaluate(*e.args[i]));
  auto sym = [&](std::size_t i) { return as_symfunc(*e.args[i], v[i], arg_label(fn, i)); };
  auto scalar = [&](std::size_t i) { return as_scalar(*e.args[i], v[i], arg_label(fn, i)); };
  auto integer = [&](std::size_t i) { return as_int(*e.args[i], v[i], arg_label(fn, i)); };

  if (fn == "nabla") return nabla(sym(0));
  if (fn == "nabla_inv") return nabla_inverse(sym(0));
  if (fn == "nabla_f") return nabla_f(sym(0), sym(1));
  if (fn == "nabla_k") {
    const int k = integer(0);
    if (k < 0) error_at(*e.args[0], "nabla_k needs k >= 0");
    return nabla_k(k, sym(1));
  }
  if (fn == "Dm") return D_m(integer(0), sym(1));
  if (fn == "rho") return rho(sym(0));
  if (fn == "theta") return theta(sym(0));
  if (fn == "psi" || fn == "psi_plus") {
    const PsiSign sign = fn == "psi" ? PsiSign::minus : PsiSign::plus;
    if (v.size() == 1) {
      const SymFunc f = sym(0);
      return psi(f, f.is_zero() ? 0 : f.max_degree(), sign);
    }
    return psi(sym(1), integer(0), sign);
  }
  if (fn == "pleth") {
    if (std::holds_alternative<RationalFunction>(v[1])) return pleth_scalar(sym(0), std::get<RationalFunction>(v[1]));
    return plethysm(sym(0), sym(1));
  }
  if (fn == "pleth_scaled") return pleth_scaled(sym(0), scalar(1));
  if (fn == "epsilon") return epsilon(integer(0), integer(1));
  if (fn == "scalar") return hall_scalar(sym(0), sym(1));
  if (fn == "expand") {
    const auto b = basis_letter(*e.args[1]);
    if (!b) error_at(*e.args[1], "expand: argument 2 must be one of s, e, h, p, m");
    return convert(sym(0), *b);
  }
  if (fn == "hilbert") {
    const SymFunc f = sym(0);
    if (!f.is_homogeneous()) error_at(*e.args[0], "hilbert needs a homogeneous symmetric function");
    return hilbert_of_frobenius(f);
  }
  if (fn == "matrix") {
    const int n = integer(0);
    if (n < 1) error_at(*e.args[0], "matrix needs n >= 1");
    return nabla_matrix(n);
  }
  if (fn == "at") {
    const Rational q0 = as_rational(*e.args[1], v[1], arg_label(fn, 1));
    const Rational t0 = as_rational(*e.args[2], v[2], arg_label(fn, 2));
    if (const auto* c = std::get_if<RationalFunction>(&v[0])) {
      if (c->den().evaluate(q0, t0) == 0) error_at(e, "pole at the requested point");
      return RationalFunction(c->evaluate(q0, t0));
    }
    return evaluate_coefficients(sym(0), q0, t0);
  }
  error_at(e, "unknown function '" + fn + "'");
}

}  // namespace

Value evaluate(const Expr& e) {
  try {
    switch (e.kind) {
      case Expr::Kind::number: return RationalFunction(e.number);
      case Expr::Kind::name:
        if (e.name == "q") return RationalFunction(Poly::q());
        if (e.name == "t") return RationalFunction(Poly::t());
        if (e.name == "u") return RationalFunction(Poly::aux_var(Aux::u));
        error_at(e, "basis name '" + e.name + "' is only meaningful as the second argument of expand");
      case Expr::Kind::atom: {
        const Partition& la = e.partition;
        if (e.name == "H") {
          if (la.empty()) return SymFunc::constant(1);
          return macdonald_basis(la.size()).polynomial(la);
        }
        const Basis b = *basis_from_name(e.name);
        return la.empty() ? SymFunc::constant(1, b) : SymFunc::atom(b, la);
      }
      case Expr::Kind::neg: {
        const Value x = evaluate(*e.args[0]);
        if (const auto* c = std::get_if<RationalFunction>(&x)) return -*c;
        if (const auto* f = std::get_if<SymFunc>(&x)) return -*f;
        error_at(e, "cannot negate a matrix");
      }
      case Expr::Kind::call: return call(e);
      default: return arithmetic(e, evaluate(*e.args[0]), evaluate(*e.args[1]));
    }
  } catch (const EvalError&) {
    throw;
  } catch (const Error& ex) {
    throw EvalError(ex.what(), e.line, e.column);
  }
}

}  // namespace nabla::cli
