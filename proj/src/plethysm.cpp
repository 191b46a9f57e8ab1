#include "nabla/plethysm.hpp"

#include <functional>
#include <map>

namespace nabla {

SymFunc power_sum_plethysm(int k, const SymFunc& g) {
  if (k < 1) throw Error("p_k plethysm needs k >= 1");
  const SymFunc gp = convert(g, Basis::p);
  SymFunc out(Basis::p);
  for (const auto& [sigma, c] : gp.terms()) {
    std::vector<int> parts = sigma.parts();
    for (int& x : parts) x *= k;
    out.add_term(Partition(std::move(parts)), c.substitute_power(k));
  }
  return out;
}

SymFunc plethysm(const SymFunc& f, const SymFunc& g) {
  const SymFunc fp = convert(f, Basis::p);
  std::map<int, SymFunc> pk;
  auto get = [&](int k) -> const SymFunc& {
    auto it = pk.find(k);
    if (it == pk.end()) it = pk.emplace(k, power_sum_plethysm(k, g)).first;
    return it->second;
  };
  // Products over a prefix of rho are shared between partitions that agree on it.
  std::map<Partition, SymFunc> prefix;
  std::function<const SymFunc&(const Partition&)> product = [&](const Partition& rho) -> const SymFunc& {
    auto it = prefix.find(rho);
    if (it != prefix.end()) return it->second;
    SymFunc value(Basis::p);
    if (rho.empty()) {
      value = SymFunc::constant(1, Basis::p);
    } else {
      std::vector<int> rest = rho.parts();
      const int last = rest.back();
      rest.pop_back();
      value = multiply(product(Partition(rest)), get(last));
    }
    return prefix.emplace(rho, std::move(value)).first->second;
  };
  SymFuncBuilder out(Basis::p);
  for (const auto& [rho, c] : fp.terms()) {
    for (const auto& [sigma, x] : product(rho).terms()) out.add(sigma, c * x);
  }
  return convert(out.build(), f.basis());
}

SymFunc pleth_scaled(const SymFunc& f, const RationalFunction& factor) {
  const SymFunc fp = convert(f, Basis::p);
  SymFunc out(Basis::p);
  for (const auto& [rho, c] : fp.terms()) {
    RationalFunction x = c;
    for (int k : rho.parts()) x *= factor.substitute_power(k);
    out.add_term(rho, x);
  }
  return convert(out, f.basis());
}

SymFunc pleth_add_constant(const SymFunc& f, const RationalFunction& c) {
  SymFunc g = SymFunc::atom(Basis::p, Partition{1});
  g.add_term(Partition(), c);
  return plethysm(f, g);
}

RationalFunction pleth_scalar(const SymFunc& f, const RationalFunction& c) {
  const SymFunc fp = convert(f, Basis::p);
  std::vector<RationalFunction> terms;
  std::map<int, RationalFunction> powers;
  for (const auto& [rho, x] : fp.terms()) {
    RationalFunction v = x;
    for (int k : rho.parts()) {
      auto it = powers.find(k);
      if (it == powers.end()) it = powers.emplace(k, c.substitute_power(k)).first;
      v *= it->second;
    }
    terms.push_back(std::move(v));
  }
  return sum(terms);
}

SymFunc omega_prime(int truncation, int sign) {
  if (truncation < 0) throw Error("omega_prime needs a nonnegative truncation degree");
  if (sign != 1 && sign != -1) throw Error("omega_prime sign must be +1 or -1");
  SymFunc out(Basis::e);
  for (int k = 0; k <= truncation; ++k) {
    Poly c = Poly::monomial(Monomial{0, 0, k}, (sign < 0 && k % 2) ? -1 : 1, Aux::xi);
    out.add_term(k == 0 ? Partition() : Partition{k}, RationalFunction(c));
  }
  return out;
}

}  // namespace nabla
