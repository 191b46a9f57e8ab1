#pragma once

// Plethystic substitution computed in the power-sum basis:
// p_k[g] replaces every p_j in g by p_{jk} and every variable v of the
// coefficient field by v^k. The coefficients of the outer function are left
// alone.

#include "nabla/symfunc.hpp"

namespace nabla {

/// f[g]; the result is expressed in the basis of f.
SymFunc plethysm(const SymFunc& f, const SymFunc& g);
/// f[factor * w]
SymFunc pleth_scaled(const SymFunc& f, const RationalFunction& factor);
/// f[w + c] for a scalar alphabet c
SymFunc pleth_add_constant(const SymFunc& f, const RationalFunction& c);
/// f[c] for a scalar alphabet c
RationalFunction pleth_scalar(const SymFunc& f, const RationalFunction& c);
/// p_k[g] in the power-sum basis.
SymFunc power_sum_plethysm(int k, const SymFunc& g);

/// sum_{k=0}^{truncation} e_k (sign * xi)^k, in the e basis.
SymFunc omega_prime(int truncation, int sign);

}  // namespace nabla
