#include "nabla/operators.hpp"

#include "nabla/plethysm.hpp"

namespace nabla {

LinearOperator::LinearOperator(std::string description, int degree_shift, Fn fn)
    : description_(std::move(description)), shift_(degree_shift), fn_(std::move(fn)) {}

LinearOperator operator*(const LinearOperator& a, const LinearOperator& b) {
  return LinearOperator(a.description_ + " " + b.description_, a.shift_ + b.shift_,
                        [fa = a.fn_, fb = b.fn_](const SymFunc& f) { return fa(fb(f)); });
}

LinearOperator operator+(const LinearOperator& a, const LinearOperator& b) {
  if (a.shift_ != b.shift_) throw Error("cannot add operators with different degree shifts");
  return LinearOperator("(" + a.description_ + " + " + b.description_ + ")", a.shift_,
                        [fa = a.fn_, fb = b.fn_](const SymFunc& f) { return fa(f) + fb(f); });
}

LinearOperator operator-(const LinearOperator& a, const LinearOperator& b) {
  if (a.shift_ != b.shift_) throw Error("cannot subtract operators with different degree shifts");
  return LinearOperator("(" + a.description_ + " - " + b.description_ + ")", a.shift_,
                        [fa = a.fn_, fb = b.fn_](const SymFunc& f) { return fa(f) - fb(f); });
}

LinearOperator operator*(const RationalFunction& c, const LinearOperator& a) {
  return LinearOperator("(" + c.to_string() + ")*" + a.description_, a.shift_,
                        [c, fa = a.fn_](const SymFunc& f) { return fa(f) * c; });
}

RationalFunction nabla_eigenvalue(const Partition& mu) {
  return RationalFunction(Poly::monomial(Monomial{nstat(conjugate(mu)), nstat(mu), 0}));
}

namespace {

RationalFunction alpha() { return RationalFunction(alpha_poly()); }

// prod over cells (1 + sign q^a t^b u)
Poly psi_eigenvalue(const Partition& mu, PsiSign sign) {
  Poly acc(1);
  for (const Cell& c : cells(mu)) {
    const Poly x = Poly::monomial(Monomial{c.a, c.b, 1}, sign == PsiSign::plus ? 1 : -1, Aux::u);
    acc *= Poly(1) + x;
  }
  return acc;
}

void require_truncation(const SymFunc& f, int truncation) {
  if (truncation < 0) throw Error("truncation must be nonnegative");
  if (!f.is_zero() && truncation < f.max_degree())
    throw Error("truncation " + std::to_string(truncation) + " is below the degree " + std::to_string(f.max_degree()));
}

}  // namespace

SymFunc nabla(const SymFunc& f) { return apply_diagonal(f, nabla_eigenvalue, "nabla"); }

SymFunc nabla_inverse(const SymFunc& f) {
  return apply_diagonal(f, [](const Partition& mu) { return nabla_eigenvalue(mu).inverse(); }, "nabla_inv");
}

SymFunc nabla_f(const SymFunc& f, const SymFunc& g) {
  const SymFunc fs = convert(f, Basis::s);
  return apply_diagonal(
      g, [fs](const Partition& mu) { return pleth_scalar(fs, RationalFunction(b_mu(mu))); }, "nabla_f:" + fs.to_string());
}

SymFunc nabla_k(int k, const SymFunc& g) {
  if (k < 0) throw Error("nabla_k needs k >= 0");
  const SymFunc ek = k == 0 ? SymFunc::constant(1, Basis::e) : SymFunc::atom(Basis::e, Partition{k});
  return nabla_f(ek, g);
}

SymFunc D_m(int m, const SymFunc& f, std::optional<int> degree_bound) {
  SymFunc out(Basis::s);
  const RationalFunction a_xi = RationalFunction::normalize(alpha_poly(), Poly::aux_var(Aux::xi));
  for (int d : f.degrees()) {
    const int target = d + m;
    if (target < 0) continue;
    if (degree_bound && *degree_bound < target)
      throw Error("degree bound " + std::to_string(*degree_bound) + " is below the result degree " + std::to_string(target));
    const SymFunc shifted = convert(pleth_add_constant(f.project_degree(d), a_xi), Basis::e);
    const SymFunc product = multiply(shifted, omega_prime(target, -1));
    out += convert(aux_coefficient(product, m).project_degree(target), Basis::s);
  }
  return out;
}

SymFunc rho(const SymFunc& f) { return p1_perp(f); }

SymFunc theta(const SymFunc& f) { return D_m(-1, f) * alpha().inverse(); }

SymFunc iota(const SymFunc& f) { return multiply(SymFunc::atom(Basis::e, Partition{1}), f); }

SymFunc psi(const SymFunc& f, int truncation, PsiSign sign) {
  require_truncation(f, truncation);
  return apply_diagonal(f, [sign](const Partition& mu) { return RationalFunction(psi_eigenvalue(mu, sign)); });
}

SymFunc psi_inverse(const SymFunc& f, int truncation, PsiSign sign) {
  if (truncation < 0) throw Error("truncation must be nonnegative");
  // 1 / prod (1 - x u) = sum_k h_k[x] u^k; the plus convention replaces u by -u.
  return apply_diagonal(f, [truncation, sign](const Partition& mu) {
    const RationalFunction b(b_mu(mu));
    Poly acc;
    for (int k = 0; k <= truncation; ++k) {
      const SymFunc hk = k == 0 ? SymFunc::constant(1, Basis::h) : SymFunc::atom(Basis::h, Partition{k});
      const RationalFunction c = pleth_scalar(hk, b);
      const int s = sign == PsiSign::plus && k % 2 == 1 ? -1 : 1;
      acc += c.num().shifted(Monomial{0, 0, k}, Aux::u) * Integer(s);
    }
    return RationalFunction(acc);
  });
}

LinearOperator identity_op() {
  return LinearOperator("Id", 0, [](const SymFunc& f) { return f; });
}

LinearOperator nabla_op() { return LinearOperator("nabla", 0, nabla); }

LinearOperator nabla_inverse_op() { return LinearOperator("nabla_inv", 0, nabla_inverse); }

LinearOperator nabla_f_op(const SymFunc& f) {
  return LinearOperator("nabla_f(" + f.to_string() + ")", 0, [f](const SymFunc& g) { return nabla_f(f, g); });
}

LinearOperator nabla_k_op(int k) {
  return LinearOperator("nabla_k(" + std::to_string(k) + ")", 0, [k](const SymFunc& g) { return nabla_k(k, g); });
}

LinearOperator D_op(int m) {
  return LinearOperator("Dm(" + std::to_string(m) + ")", m, [m](const SymFunc& f) { return D_m(m, f); });
}

LinearOperator rho_op() { return LinearOperator("rho", -1, rho); }

LinearOperator theta_op() { return LinearOperator("theta", -1, theta); }

LinearOperator iota_op() { return LinearOperator("iota", 1, iota); }

LinearOperator psi_op(int truncation, PsiSign sign) {
  return LinearOperator("psi(" + std::to_string(truncation) + ")", 0,
                        [truncation, sign](const SymFunc& f) { return psi(f, truncation, sign); });
}

LinearOperator psi_inverse_op(int truncation, PsiSign sign) {
  return LinearOperator("psi_inv(" + std::to_string(truncation) + ")", 0,
                        [truncation, sign](const SymFunc& f) { return psi_inverse(f, truncation, sign); });
}

LinearOperator multiplication_op(const SymFunc& f) {
  const int d = f.is_zero() ? 0 : f.degree();
  return LinearOperator("mul(" + f.to_string() + ")", d, [f](const SymFunc& g) {
    return convert(multiply(f, g), Basis::s);
  });
}

LinearOperator perp_op(const SymFunc& f) {
  const int d = f.is_zero() ? 0 : f.degree();
  return LinearOperator("perp(" + f.to_string() + ")", -d, [f](const SymFunc& g) { return perp_apply(f, g); });
}

LinearOperator projection_op(int k) {
  return LinearOperator("pi(" + std::to_string(k) + ")", 0, [k](const SymFunc& f) { return f.project_degree(k); });
}

SymFunc truncate_aux(const SymFunc& f, int max_power) {
  return f.map_coefficients([max_power](const RationalFunction& c) {
    if (c.den().depends_on(Var::aux)) throw Error("cannot truncate a coefficient with the auxiliary variable in the denominator");
    const Poly& num = c.num();
    std::vector<Poly::Term> kept;
    for (const auto& term : num.terms())
      if (term.mono.a <= max_power) kept.push_back(term);
    return RationalFunction::normalize(Poly::from_terms(std::move(kept), num.aux()), c.den());
  });
}

SymFunc aux_coefficient(const SymFunc& f, int k) {
  return f.map_coefficients([k](const RationalFunction& c) { return c.coefficient_of_aux(k); });
}

}  // namespace nabla
