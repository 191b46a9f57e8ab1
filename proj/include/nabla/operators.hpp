#pragma once

// Linear operators on symmetric functions: the Macdonald eigenoperators
// (nabla, nabla_f, Psi), the D_m family, rho = p_1-perp, theta and
// multiplication operators, with a small composition layer.

#include <functional>
#include <string>

#include "nabla/macdonald.hpp"

namespace nabla {

class LinearOperator {
 public:
  using Fn = std::function<SymFunc(const SymFunc&)>;

  LinearOperator(std::string description, int degree_shift, Fn fn);

  SymFunc operator()(const SymFunc& f) const { return fn_(f); }
  const std::string& description() const { return description_; }
  /// Homogeneous inputs of degree d go to degree d + degree_shift().
  int degree_shift() const { return shift_; }

  /// Composition: (a * b)(f) = a(b(f)).
  friend LinearOperator operator*(const LinearOperator& a, const LinearOperator& b);
  friend LinearOperator operator+(const LinearOperator& a, const LinearOperator& b);
  friend LinearOperator operator-(const LinearOperator& a, const LinearOperator& b);
  friend LinearOperator operator*(const RationalFunction& c, const LinearOperator& a);

 private:
  std::string description_;
  int shift_;
  Fn fn_;
};

/// Sign convention for Psi: `minus` has eigenvalue prod (1 - q^a t^b u),
/// `plus` has prod (1 + q^a t^b u) = sum_k u^k e_k[B_mu].
enum class PsiSign { minus, plus };

/// q^{n(mu')} t^{n(mu)}
RationalFunction nabla_eigenvalue(const Partition& mu);

SymFunc nabla(const SymFunc& f);
SymFunc nabla_inverse(const SymFunc& f);
/// Eigenvalue f[B_mu] on H_mu.
SymFunc nabla_f(const SymFunc& f, const SymFunc& g);
/// nabla_{e_k}
SymFunc nabla_k(int k, const SymFunc& g);
/// Coefficient of xi^m in f[w + alpha/xi] Omega'(w; -xi). `degree_bound`, when
/// given, must be at least deg f + m.
SymFunc D_m(int m, const SymFunc& f, std::optional<int> degree_bound = std::nullopt);
SymFunc rho(const SymFunc& f);
/// alpha^{-1} D_{-1}
SymFunc theta(const SymFunc& f);
/// Multiplication by e_1.
SymFunc iota(const SymFunc& f);
/// Eigenvalue prod (1 -+ q^a t^b u); `truncation` must be at least the degree of f.
SymFunc psi(const SymFunc& f, int truncation, PsiSign sign = PsiSign::minus);
/// Inverse of psi as a power series in u, truncated after u^truncation.
SymFunc psi_inverse(const SymFunc& f, int truncation, PsiSign sign = PsiSign::minus);

LinearOperator identity_op();
LinearOperator nabla_op();
LinearOperator nabla_inverse_op();
LinearOperator nabla_f_op(const SymFunc& f);
LinearOperator nabla_k_op(int k);
LinearOperator D_op(int m);
LinearOperator rho_op();
LinearOperator theta_op();
LinearOperator iota_op();
LinearOperator psi_op(int truncation, PsiSign sign = PsiSign::minus);
LinearOperator psi_inverse_op(int truncation, PsiSign sign = PsiSign::minus);
/// Multiplication by a homogeneous f.
LinearOperator multiplication_op(const SymFunc& f);
/// f-perp for a homogeneous f.
LinearOperator perp_op(const SymFunc& f);
/// Projection onto degree k.
LinearOperator projection_op(int k);

/// Drops every power of the auxiliary variable above `max_power` from the
/// coefficients (their denominators must be free of it).
SymFunc truncate_aux(const SymFunc& f, int max_power);
/// Coefficient of aux^k in every coefficient of f.
SymFunc aux_coefficient(const SymFunc& f, int k);

}  // namespace nabla
