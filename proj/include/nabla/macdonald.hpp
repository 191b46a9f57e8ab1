#pragma once

// Modified Macdonald polynomials H_mu(w; q, t) in the Schur basis, obtained
// from their triangularity characterization, plus the change of basis to
// and from {H_mu} and a small on-disk cache.

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nabla/symfunc.hpp"

namespace nabla {

using PartitionMap = std::map<Partition, RationalFunction, PartitionOrder>;

struct MacdonaldBasis {
  int degree = 0;
  std::vector<Partition> order;  // partitions_of(degree)
  /// kostka[i][j] = K_{order[i], order[j]}(q, t)
  std::vector<std::vector<Poly>> kostka;

  const Poly& K(const Partition& la, const Partition& mu) const;
  /// H_mu in the s basis.
  SymFunc polynomial(const Partition& mu) const;
};

/// Solves the triangularity system for every mu of size n. Throws if the
/// system is not uniquely solvable or the solution is not polynomial.
MacdonaldBasis compute_basis(int n);

/// Checks the defining conditions exactly; returns a description of the
/// first violation, or nothing when all hold.
std::optional<std::string> check_characterization(const MacdonaldBasis& b);

/// Degree budget for every routine that needs a Macdonald basis (default 8).
int degree_budget();
void set_degree_budget(int n);

/// Process-wide access with in-memory caching, and on-disk caching when a
/// cache directory is configured.
const MacdonaldBasis& macdonald_basis(int n);
void set_cache_directory(std::optional<std::filesystem::path> dir);
std::optional<std::filesystem::path> cache_directory();
/// $NABLA_KIT_CACHE or ./.nabla-cache
std::filesystem::path default_cache_directory();

std::string serialize(const MacdonaldBasis& b);
std::optional<MacdonaldBasis> deserialize(const std::string& text, std::string* diagnostic = nullptr);
std::filesystem::path cache_file(const std::filesystem::path& dir, int n);
/// Writes through a temporary file and an atomic rename.
void cache_store(const MacdonaldBasis& b, const std::filesystem::path& dir);
std::optional<MacdonaldBasis> cache_load(int n, const std::filesystem::path& dir, std::string* diagnostic = nullptr);

/// <p_la, p_mu>_* = (-1)^{|mu| - l(mu)} z_mu prod (1 - q^{mu_i})(1 - t^{mu_i}) delta
RationalFunction star_scalar(const SymFunc& f, const SymFunc& g);

/// Coefficients c_mu with f = sum c_mu H_mu (f homogeneous).
PartitionMap to_H_basis(const SymFunc& f);
/// sum c_mu H_mu in the s basis.
SymFunc from_H_basis(const PartitionMap& coeffs);

/// H_n(w; q) = h_n[w / (1 - q)] prod_{k=1}^n (1 - q^k)
SymFunc hall_littlewood_Hn(int n);
/// e_n[w / (1 - q)] prod_{k=1}^n (1 - q^k), the omega image of the above.
SymFunc hall_littlewood_Hn_e_form(int n);

/// rho H_mu = sum c_{mu,nu} H_nu
PartitionMap dual_pieri(const Partition& mu);

using Eigenvalue = std::function<RationalFunction(const Partition&)>;

/// Applies the operator that is diagonal on {H_mu} with the given
/// eigenvalues, degree by degree. When `cache_key` is nonempty, images of
/// single Schur functions are remembered under that key; inputs with wide
/// support that miss the cache are computed directly.
SymFunc apply_diagonal(const SymFunc& f, const Eigenvalue& eigenvalue, const std::string& cache_key = "");

}  // namespace nabla
