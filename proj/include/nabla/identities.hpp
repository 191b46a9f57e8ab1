#pragma once

// Verification catalog for the operator identities, the nabla matrices with
// their two-variable Schur expansions, and the positivity scans.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nabla/operators.hpp"

namespace nabla {

/// s_(a,b)(q,t) = sum_{j=b..a} q^j t^{a+b-j}, for a >= b >= 0.
Poly qt_schur(int a, int b);

struct QTSchurExpansion {
  /// (a, b) with a >= b >= 0, mapped to a nonzero integer.
  std::map<std::pair<int, int>, Integer> coeffs;

  Poly reconstruct() const;
  bool is_zero() const { return coeffs.empty(); }
  bool nonnegative() const;
  QTSchurExpansion operator-() const;
  /// Terms by decreasing total degree, then decreasing a: `s[2] + s[1]`,
  /// `-s[1,1]`, `1` for s of the empty partition, `0` when empty.
  std::string to_string() const;
  /// Same order with subscripts: `s_{2}+s_{1}`.
  std::string to_latex() const;
  friend bool operator==(const QTSchurExpansion&, const QTSchurExpansion&) = default;
};

/// Greedy elimination of the leading term (highest total degree, then
/// highest power of q). Throws unless p is a polynomial in q, t that is
/// symmetric under q <-> t.
QTSchurExpansion qt_schur_expand(const Poly& p);

struct NablaMatrix {
  int n = 0;
  std::vector<Partition> order;  // decreasing lexicographic
  /// values[i][j] = <nabla s_order[i], s_order[j]>
  std::vector<std::vector<Poly>> values;
  std::vector<std::vector<QTSchurExpansion>> entries;

  std::string to_text() const;
  std::string to_latex() const;
};

NablaMatrix nabla_matrix(int n);

enum class Status { pass, fail, finding };
std::string_view status_name(Status s);

struct Witness {
  std::string input;
  std::string lhs;
  std::string rhs;
};

/// A reading of an identity that is checked alongside the main statement,
/// e.g. the form as printed when it differs from the one that holds.
struct Variant {
  std::string name;
  bool holds = false;
  std::optional<Witness> witness;
};

struct VerdictReport {
  std::string id;
  std::string title;
  std::string range;
  Status status = Status::pass;
  std::optional<Witness> witness;
  double ms = 0;
  std::vector<std::string> notes;
  std::vector<Variant> variants;
};

/// ID-A .. ID-O followed by the extra checks DIAG-HOOK, HILBERT, PARKING.
const std::vector<std::string>& identity_ids();
/// Exact check of one catalog entry for all degrees up to n_max. Unknown ids
/// throw; failing identities are reported, not thrown.
VerdictReport verify(const std::string& id, int n_max);

/// predicted_sign(la) * entry is qt-Schur positive for all entries of the
/// degree-n matrix; a violation is a finding.
VerdictReport check_sign_conjecture(int n);

enum class ScanTarget { bght, haiman, haglund_eps, gh_eps };
std::optional<ScanTarget> scan_target_from_name(std::string_view name);
std::string_view scan_target_name(ScanTarget target);
/// First Schur coefficient of f outside N[q,t], in term order.
std::optional<Witness> schur_positivity_witness(const std::string& label, const SymFunc& f);
/// Exhaustive positivity scan in degree n. mu runs over partitions of size
/// 1..n for the nabla_{s_mu} targets. A counterexample is `fail` for the
/// proven HAIMAN statement and a `finding` for the conjectures.
VerdictReport scan_positivity(ScanTarget target, int n);

/// sum_{j=0..k} [k-j+1]_{q,t} nabla(e_j e_{n-j})
SymFunc conjectured_diag(int n, int k);

}  // namespace nabla
