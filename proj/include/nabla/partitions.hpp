#pragma once

// Integer partitions and the bits of tableau combinatorics the rest of the
// library needs.

#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "nabla/ring.hpp"

namespace nabla {

class Partition {
 public:
  Partition() = default;
  /// Throws unless parts are positive and weakly decreasing.
  explicit Partition(std::vector<int> parts);
  Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}
  /// Drops zeros and sorts; useful when assembling a partition from pieces.
  static Partition from_unsorted(std::vector<int> parts);

  const std::vector<int>& parts() const { return parts_; }
  int size() const { return size_; }
  int length() const { return static_cast<int>(parts_.size()); }
  bool empty() const { return parts_.empty(); }
  /// Part i (0-based), zero beyond the length.
  int operator[](std::size_t i) const { return i < parts_.size() ? parts_[i] : 0; }
  /// Multiplicity of k as a part.
  int multiplicity(int k) const;

  std::string to_string() const;

  friend bool operator==(const Partition&, const Partition&) = default;
  /// Plain lexicographic comparison of the part vectors.
  friend std::strong_ordering operator<=>(const Partition& a, const Partition& b) {
    return a.parts_ <=> b.parts_;
  }

 private:
  std::vector<int> parts_;
  int size_ = 0;
};

/// Order used for every map keyed by partitions: by size, then decreasing
/// lexicographic order inside a size.
struct PartitionOrder {
  bool operator()(const Partition& a, const Partition& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a > b;
  }
};

struct PartitionHash {
  std::size_t operator()(const Partition& p) const;
};

/// Parses "[3,1,1]" or "3,1,1"; "[]" is the empty partition.
Partition parse_partition(const std::string& text);

/// All partitions of n in decreasing lexicographic order.
const std::vector<Partition>& partitions_of(int n);

Partition conjugate(const Partition& la);
/// Dominance la <= mu; throws when the sizes differ.
bool dominance_leq(const Partition& la, const Partition& mu);
/// n(mu) = sum (i-1) mu_i
int nstat(const Partition& mu);
/// z_la = prod_k k^{m_k} m_k!
Integer z_lambda(const Partition& la);
std::vector<int> hook_lengths(const Partition& la);

/// Cell (a, b): a is the column, b is the row, both from 0.
struct Cell {
  int a = 0;
  int b = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
};

std::vector<Cell> cells(const Partition& mu);
/// B_mu = sum over cells of q^a t^b
Poly b_mu(const Partition& mu);

/// Partitions covered by mu in Young's lattice, with the removed corner,
/// ordered by the row of the removed corner.
std::vector<std::pair<Partition, Cell>> covers_down(const Partition& mu);
/// Partitions covering mu, ordered by the row of the added cell.
std::vector<std::pair<Partition, Cell>> covers_up(const Partition& mu);

/// Partitions la with la/nu a horizontal strip of size k.
std::vector<Partition> remove_horizontal_strips(const Partition& la, int k);

struct StandardTableau {
  Partition shape;
  std::vector<std::vector<int>> rows;
};

std::vector<StandardTableau> standard_tableaux(const Partition& la);

/// Reading word: rows from the bottom (longest index) up, each left to right.
std::vector<int> reading_word(const StandardTableau& tau);
/// Cocharge of a permutation word: 1 gets index 0, and r+1 gets the index
/// of r plus one exactly when it sits to the left of r.
int cocharge_word(const std::vector<int>& word);
int cocharge(const StandardTableau& tau);

/// m(la) = C(k,2) + sum_{i<=k, la'_i < i-1} (i-1-la'_i) with k = la_1.
int sign_exponent(const Partition& la);
/// (-1)^{m(la)}
int predicted_sign(const Partition& la);

}  // namespace nabla
