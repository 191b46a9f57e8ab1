#include "nabla/specials.hpp"

#include <mutex>

#include "nabla/operators.hpp"
#include "nabla/plethysm.hpp"

namespace nabla {

namespace {

// q^e for any integer e
RationalFunction q_power(int e) {
  const Poly m = Poly::monomial(Monomial{e >= 0 ? e : -e, 0, 0});
  return e >= 0 ? RationalFunction(m) : RationalFunction::normalize(Poly(1), m);
}

}  // namespace

std::vector<SymFunc> f_series(int n) {
  if (n < 1) throw Error("f_series needs n >= 1");
  const Poly z = Poly::aux_var(Aux::z);
  SymFunc alphabet = SymFunc::atom(Basis::p, Partition{1}, RationalFunction::normalize(Poly(1) - z, Poly(1) - Poly::q()));
  const SymFunc full = convert(plethysm(SymFunc::atom(Basis::e, Partition{n}), alphabet), Basis::s);
  std::vector<SymFunc> out;
  for (int k = 0; k <= n; ++k) out.push_back(aux_coefficient(full, k));
  return out;
}

std::vector<RationalFunction> z_poly(int k) {
  if (k < 0) throw Error("z_poly needs k >= 0");
  std::vector<RationalFunction> out;
  for (int i = 0; i <= k; ++i) {
    const int e = (i + 1) * i / 2 - k * i;
    RationalFunction c = q_power(e) * RationalFunction(q_pochhammer(i) * q_binomial(k, i));
    out.push_back(i % 2 == 0 ? c : -c);
  }
  return out;
}

SymFunc epsilon(int n, int j) {
  if (n < 1) throw Error("epsilon needs n >= 1");
  if (j < 1 || j > n) throw Error("epsilon(" + std::to_string(n) + ", " + std::to_string(j) + "): j must lie in 1.." + std::to_string(n));
  return epsilon_family(n).members.at(j);
}

EpsilonFamily epsilon_family(int n) {
  if (n < 1) throw Error("epsilon needs n >= 1");
  static std::mutex m;
  static std::map<int, EpsilonFamily> cache;
  {
    std::lock_guard lock(m);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  const auto f = f_series(n);
  EpsilonFamily fam;
  fam.n = n;
  for (int j = 1; j <= n; ++j) fam.members[j] = SymFunc(Basis::s);
  for (int k = 1; k <= n; ++k) {
    const auto z = z_poly(k);
    for (int j = 1; j <= k; ++j) fam.members[j] += f[static_cast<std::size_t>(k)] * z[static_cast<std::size_t>(j)];
  }
  std::lock_guard lock(m);
  return cache.emplace(n, std::move(fam)).first->second;
}

}  // namespace nabla
