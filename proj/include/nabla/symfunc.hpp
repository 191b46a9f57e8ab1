#pragma once

// Symmetric functions with rational-function coefficients in the classical
// bases p, e, h, m, s. The power-sum basis is the conversion hub.

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "nabla/partitions.hpp"
#include "nabla/ring.hpp"

namespace nabla {

enum class Basis : std::uint8_t { p, e, h, m, s };

std::string_view basis_name(Basis b);
std::optional<Basis> basis_from_name(std::string_view name);

class SymFunc {
 public:
  using Terms = std::map<Partition, RationalFunction, PartitionOrder>;

  SymFunc() = default;
  explicit SymFunc(Basis b) : basis_(b) {}
  static SymFunc atom(Basis b, const Partition& la, const RationalFunction& c = 1);
  static SymFunc constant(const RationalFunction& c, Basis b = Basis::s);

  Basis basis() const { return basis_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  RationalFunction coefficient(const Partition& la) const;
  /// Adds c to the coefficient of la, dropping it if the result is zero.
  void add_term(const Partition& la, const RationalFunction& c);

  std::set<int> degrees() const;
  bool is_homogeneous() const { return degrees().size() <= 1; }
  /// Degree of a homogeneous nonzero value (0 for zero); throws otherwise.
  int degree() const;
  int max_degree() const;
  /// Homogeneous component of degree k.
  SymFunc project_degree(int k) const;
  /// The value as a scalar when it lives in degree 0.
  std::optional<RationalFunction> constant_value() const;

  SymFunc operator-() const;
  SymFunc& operator+=(const SymFunc& o);
  SymFunc& operator-=(const SymFunc& o);
  SymFunc& operator*=(const RationalFunction& c);
  friend SymFunc operator+(SymFunc a, const SymFunc& b) { return a += b; }
  friend SymFunc operator-(SymFunc a, const SymFunc& b) { return a -= b; }
  friend SymFunc operator*(SymFunc a, const RationalFunction& c) { return a *= c; }
  friend SymFunc operator*(const RationalFunction& c, SymFunc a) { return a *= c; }
  friend SymFunc operator*(const SymFunc& a, const SymFunc& b);
  /// Equality as elements of the ring, whatever the bases.
  friend bool operator==(const SymFunc& a, const SymFunc& b);

  SymFunc map_coefficients(const std::function<RationalFunction(const RationalFunction&)>& fn) const;

  /// e.g. `s[2,1] + (q + t)*s[1,1,1]`
  std::string to_string() const;

 private:
  Basis basis_ = Basis::s;
  Terms terms_;
};

/// Accumulates many coefficient contributions per partition and reduces each
/// coefficient once at the end.
class SymFuncBuilder {
 public:
  explicit SymFuncBuilder(Basis b) : basis_(b) {}
  void add(const Partition& la, RationalFunction c);
  SymFunc build() const;

 private:
  Basis basis_;
  std::map<Partition, std::vector<RationalFunction>, PartitionOrder> pending_;
};

/// Same element of the ring in the target basis.
SymFunc convert(const SymFunc& f, Basis target);
inline SymFunc basis_convert(const SymFunc& f, Basis target) { return convert(f, target); }

/// Ring product, expressed in the basis of f.
SymFunc multiply(const SymFunc& f, const SymFunc& g);
/// Hall scalar product: <p_la, p_mu> = z_la delta.
RationalFunction hall_scalar(const SymFunc& f, const SymFunc& g);
/// f-perp applied to g (adjoint of multiplication by f); result in g's basis.
SymFunc perp_apply(const SymFunc& f, const SymFunc& g);
/// p_1-perp, the derivation removing one part 1 in the power-sum basis.
SymFunc p1_perp(const SymFunc& g);
SymFunc project_degree(const SymFunc& f, int k);
/// <f, p_1^n> for homogeneous f of degree n.
RationalFunction hilbert_of_frobenius(const SymFunc& f);

/// Irreducible character chi^la at cycle type rho (Murnaghan-Nakayama).
Integer character(const Partition& la, const Partition& rho);
/// Number of semistandard tableaux of shape la and content mu.
Integer kostka_number(const Partition& la, const Partition& mu);

using RationalMatrix = std::vector<std::vector<Rational>>;
/// Row i holds the coefficients of the i-th basis element of `from` in the
/// basis `to`; both indexed by partitions_of(n).
const RationalMatrix& transition_matrix(Basis from, Basis to, int n);
RationalMatrix invert(const RationalMatrix& m);

/// Index of la within partitions_of(|la|).
std::size_t partition_index(const Partition& la);

}  // namespace nabla
