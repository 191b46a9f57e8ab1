#pragma once

// Exact coefficient arithmetic: integers, rationals, polynomials in q, t and
// one optional auxiliary variable, and reduced rational functions.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nabla {

using Integer = mpz_class;
using Rational = mpq_class;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The auxiliary formal variable sharing the coefficient ring with q and t.
/// Only xi may carry negative exponents.
enum class Aux : std::uint8_t { none, u, z, xi };

std::string_view aux_name(Aux a);
std::optional<Aux> aux_from_name(std::string_view name);

enum class Var : std::uint8_t { q, t, aux };

struct Monomial {
  int q = 0;
  int t = 0;
  int a = 0;

  int degree() const { return q + t + a; }
  int exponent(Var v) const { return v == Var::q ? q : v == Var::t ? t : a; }
  int& exponent(Var v) { return v == Var::q ? q : v == Var::t ? t : a; }
  bool is_one() const { return q == 0 && t == 0 && a == 0; }

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend Monomial operator+(Monomial x, const Monomial& y) {
    return {x.q + y.q, x.t + y.t, x.a + y.a};
  }
  friend Monomial operator-(Monomial x, const Monomial& y) {
    return {x.q - y.q, x.t - y.t, x.a - y.a};
  }
};

// Graded lexicographic order with q > t > aux.
std::strong_ordering compare(const Monomial& x, const Monomial& y);

/// Sparse polynomial with integer coefficients in q, t and one auxiliary
/// variable. Terms are kept sorted in decreasing graded-lex order with no
/// zero coefficients. Exponents of q and t are nonnegative; the auxiliary
/// exponent may be negative only for xi (Laurent).
class Poly {
 public:
  struct Term {
    Monomial mono;
    Integer coeff;
  };

  Poly() = default;
  Poly(long c);  // NOLINT(google-explicit-constructor)
  Poly(const Integer& c);  // NOLINT(google-explicit-constructor)

  static Poly monomial(const Monomial& m, const Integer& c = 1, Aux aux = Aux::none);
  static Poly variable(Var v, Aux aux = Aux::none);
  static Poly q() { return variable(Var::q); }
  static Poly t() { return variable(Var::t); }
  static Poly aux_var(Aux a) { return variable(Var::aux, a); }
  static Poly from_terms(std::vector<Term> terms, Aux aux = Aux::none);

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  Aux aux() const { return aux_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_monomial() const { return terms_.size() == 1; }
  bool is_one() const;
  std::optional<Integer> constant_value() const;

  const Term& leading() const;
  const Integer& leading_coeff() const { return leading().coeff; }
  int max_degree(Var v) const;
  int min_degree(Var v) const;
  Monomial min_exponents() const;
  int total_degree() const;
  bool depends_on(Var v) const;

  /// Positive gcd of all coefficients (0 for the zero polynomial).
  Integer content() const;
  Integer max_norm() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Integer& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Integer& c) { return a *= c; }
  friend bool operator==(const Poly& a, const Poly& b);

  Poly pow(unsigned e) const;
  /// Multiplies by the monomial m (q, t exponents of the result must stay >= 0).
  /// `aux` names the auxiliary variable when m carries an auxiliary exponent.
  Poly shifted(const Monomial& m, Aux aux = Aux::none) const;
  /// Exact division by an integer; throws if some coefficient is not divisible.
  Poly divided_by(const Integer& c) const;
  /// Exact polynomial division; nullopt when d does not divide *this.
  std::optional<Poly> divide_exact(const Poly& d) const;

  /// v -> v^k for every variable (k >= 1).
  Poly substitute_power(int k) const;
  /// Substitute the integer x for variable v.
  Poly evaluate_at(Var v, const Integer& x) const;
  Rational evaluate(const Rational& q, const Rational& t, const Rational& aux = 0) const;
  /// Swap the roles of q and t.
  Poly swap_qt() const;
  /// Coefficient of v^e, as a polynomial free of v.
  Poly coefficient_of(Var v, int e) const;

  std::string to_string() const;

 private:
  friend class PolyBuilder;
  void normalize_aux();
  std::vector<Term> terms_;
  Aux aux_ = Aux::none;
};

using QTPoly = Poly;

/// Greatest common divisor over Z[q,t,aux]: primitive with respect to the
/// integer content of both inputs, positive leading coefficient.
Poly gcd(const Poly& a, const Poly& b);
/// Least common multiple including the integer content, positive leading
/// coefficient.
Poly lcm(const Poly& a, const Poly& b);

/// Element of Q(q,t[,aux]) kept in lowest terms: gcd(num, den) = 1, the
/// combined integer content of num and den is 1, and the leading
/// coefficient of den is positive.
class RationalFunction {
 public:
  RationalFunction() : num_(0), den_(1) {}
  RationalFunction(long c) : num_(c), den_(1) {}  // NOLINT
  RationalFunction(const Integer& c) : num_(c), den_(1) {}  // NOLINT
  RationalFunction(const Rational& c);  // NOLINT
  RationalFunction(Poly p);  // NOLINT

  static RationalFunction normalize(Poly num, Poly den);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  Aux aux() const;

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  /// Denominator is 1 (integer polynomial).
  bool is_polynomial() const { return den_.is_one(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  std::optional<Rational> constant_value() const;
  /// Polynomial with nonnegative integer coefficients and no negative exponents.
  bool in_nonnegative_integer_span() const;

  RationalFunction operator-() const;
  RationalFunction& operator+=(const RationalFunction& o);
  RationalFunction& operator-=(const RationalFunction& o);
  RationalFunction& operator*=(const RationalFunction& o);
  RationalFunction& operator/=(const RationalFunction& o);
  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
  friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  RationalFunction& scale(const Rational& c);
  RationalFunction inverse() const;
  RationalFunction pow(int e) const;
  RationalFunction substitute_power(int k) const;
  RationalFunction swap_qt() const;
  /// Coefficient of aux^e. The denominator must be an aux-free polynomial
  /// times a power of aux.
  RationalFunction coefficient_of_aux(int e) const;
  Rational evaluate(const Rational& q, const Rational& t, const Rational& aux = 0) const;

  std::string to_string() const;

 private:
  RationalFunction(Poly num, Poly den, bool /*trusted*/) : num_(std::move(num)), den_(std::move(den)) {}
  Poly num_;
  Poly den_;
};

RationalFunction normalize(const Poly& num, const Poly& den);
/// Sum over a common denominator with a single reduction at the end.
RationalFunction sum(const std::vector<RationalFunction>& xs);
RationalFunction substitute_power(const RationalFunction& f, int k);
Poly coefficient_of(const Poly& f, Var v, int exponent);

/// Parses the canonical text form produced by Poly::to_string, e.g.
/// `q^2*t - 3*q + 1` or `xi^-2 + q*xi`.
Poly parse_poly(std::string_view text);

/// [a]_{q,t} = q^{a-1} + q^{a-2} t + ... + t^{a-1}; [0] = 0.
Poly qt_bracket(int a);
/// [a]_v = 1 + v + ... + v^{a-1} in the single variable v.
Poly q_integer(int a, Var v = Var::q);
/// (q;q)_i
Poly q_pochhammer(int i);
/// Gaussian binomial in q; zero when i < 0 or i > k.
Poly q_binomial(int k, int i);

/// alpha = (1-q)(1-t)
Poly alpha_poly();

}  // namespace nabla
