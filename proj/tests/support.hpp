#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "nabla/ring.hpp"
#include "nabla/symfunc.hpp"

namespace testing_support {

inline nabla::Poly random_poly(std::mt19937_64& rng, int max_deg, int max_terms, int coeff_range,
                               bool with_aux = false) {
  std::uniform_int_distribution<int> deg(0, max_deg);
  std::uniform_int_distribution<int> nterms(1, max_terms);
  std::uniform_int_distribution<int> coeff(-coeff_range, coeff_range);
  std::vector<nabla::Poly::Term> terms;
  const int n = nterms(rng);
  for (int i = 0; i < n; ++i) {
    nabla::Monomial m{deg(rng), deg(rng), with_aux ? deg(rng) : 0};
    int c = coeff(rng);
    if (c == 0) c = 1;
    terms.push_back({m, c});
  }
  return nabla::Poly::from_terms(std::move(terms), with_aux ? nabla::Aux::u : nabla::Aux::none);
}

inline nabla::Poly random_nonzero_poly(std::mt19937_64& rng, int max_deg, int max_terms, int coeff_range,
                                       bool with_aux = false) {
  for (;;) {
    auto p = random_poly(rng, max_deg, max_terms, coeff_range, with_aux);
    if (!p.is_zero()) return p;
  }
}

// Evaluation of symmetric functions in finitely many variables, straight
// from the defining formulas of each basis. Coefficients must be constants.
inline nabla::Rational power(const nabla::Rational& x, int e) {
  nabla::Rational r = 1;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

inline nabla::Rational determinant(std::vector<std::vector<nabla::Rational>> m) {
  const std::size_t n = m.size();
  nabla::Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      nabla::Rational f = m[r][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[r][j] -= f * m[c][j];
    }
  }
  return det;
}

inline nabla::Rational elementary(int k, const std::vector<nabla::Rational>& x) {
  // coefficient extraction from prod (1 + x_i z)
  std::vector<nabla::Rational> c(static_cast<std::size_t>(k) + 1, 0);
  c[0] = 1;
  for (const auto& xi : x)
    for (int j = k; j >= 1; --j) c[static_cast<std::size_t>(j)] += xi * c[static_cast<std::size_t>(j - 1)];
  return c[static_cast<std::size_t>(k)];
}

inline nabla::Rational complete(int k, const std::vector<nabla::Rational>& x) {
  std::vector<nabla::Rational> c(static_cast<std::size_t>(k) + 1, 0);
  c[0] = 1;
  for (const auto& xi : x)
    for (int j = 1; j <= k; ++j) c[static_cast<std::size_t>(j)] += xi * c[static_cast<std::size_t>(j - 1)];
  return c[static_cast<std::size_t>(k)];
}

inline nabla::Rational monomial_sym(const nabla::Partition& la, const std::vector<nabla::Rational>& x) {
  std::vector<int> ex(x.size(), 0);
  if (static_cast<std::size_t>(la.length()) > x.size()) return 0;
  for (int i = 0; i < la.length(); ++i) ex[static_cast<std::size_t>(i)] = la.parts()[static_cast<std::size_t>(i)];
  std::sort(ex.begin(), ex.end());
  nabla::Rational total = 0;
  do {
    nabla::Rational term = 1;
    for (std::size_t i = 0; i < x.size(); ++i) term *= power(x[i], ex[i]);
    total += term;
  } while (std::next_permutation(ex.begin(), ex.end()));
  return total;
}

inline nabla::Rational schur(const nabla::Partition& la, const std::vector<nabla::Rational>& x) {
  const std::size_t n = x.size();
  if (static_cast<std::size_t>(la.length()) > n) return 0;
  std::vector<std::vector<nabla::Rational>> num(n, std::vector<nabla::Rational>(n));
  std::vector<std::vector<nabla::Rational>> den(n, std::vector<nabla::Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      num[i][j] = power(x[i], la[j] + static_cast<int>(n - 1 - j));
      den[i][j] = power(x[i], static_cast<int>(n - 1 - j));
    }
  return determinant(num) / determinant(den);
}

inline nabla::Rational evaluate_in_variables(const nabla::SymFunc& f, const std::vector<nabla::Rational>& x) {
  nabla::Rational total = 0;
  for (const auto& [la, c] : f.terms()) {
    auto cv = c.constant_value();
    if (!cv) throw nabla::Error("evaluation oracle needs constant coefficients");
    nabla::Rational v = 1;
    switch (f.basis()) {
      case nabla::Basis::p:
        for (int k : la.parts()) {
          nabla::Rational s = 0;
          for (const auto& xi : x) s += power(xi, k);
          v *= s;
        }
        break;
      case nabla::Basis::e:
        for (int k : la.parts()) v *= elementary(k, x);
        break;
      case nabla::Basis::h:
        for (int k : la.parts()) v *= complete(k, x);
        break;
      case nabla::Basis::m: v = monomial_sym(la, x); break;
      case nabla::Basis::s: v = schur(la, x); break;
    }
    total += *cv * v;
  }
  return total;
}

inline nabla::SymFunc random_constant_symfunc(std::mt19937_64& rng, nabla::Basis b, int max_degree, int terms) {
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::uniform_int_distribution<int> coeff(-4, 4);
  nabla::SymFunc f(b);
  for (int i = 0; i < terms; ++i) {
    const auto& parts = nabla::partitions_of(deg(rng));
    std::uniform_int_distribution<std::size_t> pick(0, parts.size() - 1);
    f.add_term(parts[pick(rng)], nabla::RationalFunction(coeff(rng)));
  }
  return f;
}

inline nabla::SymFunc random_homogeneous(std::mt19937_64& rng, nabla::Basis b, int degree, int terms,
                                         bool qt_coefficients) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  nabla::SymFunc f(b);
  const auto& parts = nabla::partitions_of(degree);
  std::uniform_int_distribution<std::size_t> pick(0, parts.size() - 1);
  for (int i = 0; i < terms; ++i) {
    nabla::RationalFunction c(coeff(rng));
    if (qt_coefficients) {
      c = nabla::RationalFunction::normalize(random_poly(rng, 2, 2, 3), random_nonzero_poly(rng, 1, 2, 2));
    }
    f.add_term(parts[pick(rng)], c);
  }
  return f;
}

}  // namespace testing_support
