#pragma once

// The refinement e_n = sum_j eps_{n,j}(w; q) and the series it is built from.

#include <map>
#include <vector>

#include "nabla/symfunc.hpp"

namespace nabla {

/// F_0..F_n with sum_k F_k z^k = e_n[w (1 - z) / (1 - q)], in the s basis.
std::vector<SymFunc> f_series(int n);

/// Z_k = sum_i c_i T_i where the T_i are formal symbols (unrelated to the
/// parameter t). Entry i is the coefficient c_i, a Laurent monomial in q
/// times a polynomial.
std::vector<RationalFunction> z_poly(int k);

/// eps_{n,j} = sum_k F_k (coefficient of T_j in Z_k), 1 <= j <= n.
SymFunc epsilon(int n, int j);

struct EpsilonFamily {
  int n = 0;
  std::map<int, SymFunc> members;  // j = 1..n
};

EpsilonFamily epsilon_family(int n);

}  // namespace nabla
