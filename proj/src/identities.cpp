#include "nabla/identities.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <sstream>

#include "nabla/plethysm.hpp"
#include "nabla/specials.hpp"

namespace nabla {

// ---------------------------------------------------------------------------
// Two-variable Schur polynomials

Poly qt_schur(int a, int b) {
  if (b < 0 || a < b) throw Error("qt_schur needs a >= b >= 0");
  Poly acc;
  for (int j = b; j <= a; ++j) acc += Poly::monomial(Monomial{j, a + b - j, 0});
  return acc;
}

Poly QTSchurExpansion::reconstruct() const {
  Poly acc;
  for (const auto& [ab, c] : coeffs) acc += qt_schur(ab.first, ab.second) * c;
  return acc;
}

bool QTSchurExpansion::nonnegative() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const auto& kv) { return kv.second > 0; });
}

QTSchurExpansion QTSchurExpansion::operator-() const {
  QTSchurExpansion out = *this;
  for (auto& [ab, c] : out.coeffs) c = -c;
  return out;
}

namespace {

// decreasing total degree, then decreasing a
std::vector<std::pair<std::pair<int, int>, Integer>> ordered_terms(const QTSchurExpansion& x) {
  std::vector<std::pair<std::pair<int, int>, Integer>> v(x.coeffs.begin(), x.coeffs.end());
  std::sort(v.begin(), v.end(), [](const auto& l, const auto& r) {
    const int dl = l.first.first + l.first.second, dr = r.first.first + r.first.second;
    if (dl != dr) return dl > dr;
    return l.first.first > r.first.first;
  });
  return v;
}

std::string schur_atom(int a, int b) {
  if (a == 0) return "";
  return b == 0 ? "s[" + std::to_string(a) + "]" : "s[" + std::to_string(a) + "," + std::to_string(b) + "]";
}

std::string schur_atom_latex(int a, int b) {
  if (a == 0) return "";
  const bool wide = a >= 10;
  std::string sub = std::to_string(a);
  if (b > 0) sub += (wide ? "," : "") + std::to_string(b);
  return "s_{" + sub + "}";
}

std::string render(const QTSchurExpansion& x, bool latex) {
  const auto terms = ordered_terms(x);
  if (terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [ab, c] : terms) {
    const std::string atom = latex ? schur_atom_latex(ab.first, ab.second) : schur_atom(ab.first, ab.second);
    const Integer mag = abs(c);
    std::string body;
    if (atom.empty())
      body = mag.get_str();
    else if (mag == 1)
      body = atom;
    else
      body = mag.get_str() + (latex ? "" : "*") + atom;
    if (first)
      out += (c < 0 ? "-" : "") + body;
    else if (latex)
      out += (c < 0 ? "-" : "+") + body;
    else
      out += (c < 0 ? " - " : " + ") + body;
    first = false;
  }
  return out;
}

}  // namespace

std::string QTSchurExpansion::to_string() const { return render(*this, false); }
std::string QTSchurExpansion::to_latex() const { return render(*this, true); }

QTSchurExpansion qt_schur_expand(const Poly& p) {
  if (p.aux() != Aux::none && p.depends_on(Var::aux)) throw Error("qt_schur_expand: input involves an auxiliary variable");
  if (p.swap_qt() != p) throw Error("qt_schur_expand: " + p.to_string() + " is not symmetric in q and t");
  QTSchurExpansion out;
  Poly rest = p;
  while (!rest.is_zero()) {
    // the leading term in graded order has the largest q exponent among the top degree
    const Poly::Term& lead = rest.leading();
    const int a = lead.mono.q, b = lead.mono.t;
    if (a < b) throw Error("qt_schur_expand: unexpected leading term in " + p.to_string());
    const Integer c = lead.coeff;
    out.coeffs[{a, b}] = c;
    rest -= qt_schur(a, b) * c;
  }
  return out;
}

// ---------------------------------------------------------------------------
// nabla matrices

NablaMatrix nabla_matrix(int n) {
  if (n < 1) throw Error("nabla_matrix needs n >= 1");
  NablaMatrix m;
  m.n = n;
  m.order = partitions_of(n);
  const std::size_t N = m.order.size();
  m.values.assign(N, std::vector<Poly>(N));
  m.entries.assign(N, std::vector<QTSchurExpansion>(N));
  for (std::size_t i = 0; i < N; ++i) {
    const SymFunc image = nabla(SymFunc::atom(Basis::s, m.order[i]));
    for (std::size_t j = 0; j < N; ++j) {
      const RationalFunction c = image.coefficient(m.order[j]);
      if (!c.is_polynomial()) throw Error("nabla matrix entry is not a polynomial: " + c.to_string());
      m.values[i][j] = c.num();
      m.entries[i][j] = qt_schur_expand(c.num());
    }
  }
  return m;
}

std::string NablaMatrix::to_text() const {
  std::ostringstream out;
  out << "nabla matrix n=" << n << "\n";
  for (std::size_t i = 0; i < order.size(); ++i) {
    out << order[i].to_string() << ":";
    for (std::size_t j = 0; j < order.size(); ++j) out << (j == 0 ? " " : " | ") << entries[i][j].to_string();
    out << "\n";
  }
  return out.str();
}

std::string NablaMatrix::to_latex() const {
  std::ostringstream out;
  out << "\\nabla^{(" << n << ")} = \\begin{pmatrix}\n";
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t j = 0; j < order.size(); ++j) out << (j == 0 ? "" : " & ") << entries[i][j].to_latex();
    out << (i + 1 < order.size() ? " \\\\\n" : "\n");
  }
  out << "\\end{pmatrix}\n";
  return out.str();
}

std::string_view status_name(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::finding: return "finding";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Identity catalog

namespace {

SymFunc e(int n) { return n == 0 ? SymFunc::constant(1, Basis::e) : SymFunc::atom(Basis::e, Partition{n}); }
SymFunc h(int n) { return n == 0 ? SymFunc::constant(1, Basis::h) : SymFunc::atom(Basis::h, Partition{n}); }
SymFunc p(int n) { return SymFunc::atom(Basis::p, Partition{n}); }
SymFunc s(const Partition& la) { return la.empty() ? SymFunc::constant(1) : SymFunc::atom(Basis::s, la); }

Partition hook(int k, int n) {
  std::vector<int> parts{k};
  for (int i = 0; i < n - k; ++i) parts.push_back(1);
  return Partition(parts);
}

std::vector<Partition> partitions_or_empty(int n) { return n == 0 ? std::vector<Partition>{Partition{}} : partitions_of(n); }

RationalFunction rf(const Poly& a) { return RationalFunction(a); }
RationalFunction sign(int k) { return RationalFunction(k % 2 == 0 ? 1 : -1); }
RationalFunction alpha() { return rf(alpha_poly()); }
RationalFunction u_var() { return rf(Poly::aux_var(Aux::u)); }
RationalFunction qt_power(int k) { return RationalFunction(Poly::q() * Poly::t()).pow(k); }

std::string fn_input(const Partition& la) { return "f = " + s(la).to_string(); }

// First failure of a family of equalities.
class Check {
 public:
  bool ok() const { return !witness_; }
  bool equal(const std::string& input, const SymFunc& lhs, const SymFunc& rhs) {
    if (witness_) return false;
    if (lhs == rhs) return true;
    witness_ = Witness{input, lhs.to_string(), rhs.to_string()};
    return false;
  }
  void fail(Witness w) {
    if (!witness_) witness_ = std::move(w);
  }
  const std::optional<Witness>& witness() const { return witness_; }

 private:
  std::optional<Witness> witness_;
};

Variant variant(std::string name, const Check& c) { return Variant{std::move(name), c.ok(), c.witness()}; }

struct Entry {
  std::string id;
  std::string title;
  std::function<void(int, VerdictReport&, Check&)> run;
};

std::string degrees(int lo, int hi) { return "n = " + std::to_string(lo) + ".." + std::to_string(hi); }

// truncation of the u power series in the Psi checks
constexpr int kSlack = 1;

void id_a(int n_max, VerdictReport& r, Check& c) {
  r.range = degrees(0, n_max);
  const RationalFunction ai = alpha().inverse();
  for (int d = 0; d <= n_max && c.ok(); ++d)
    for (const Partition& la : partitions_or_empty(d)) {
      const SymFunc f = s(la);
      if (!c.equal(fn_input(la), rho(nabla(f)), nabla(D_m(-1, f)) * ai)) break;
    }
}

SymFunc diag_sum(int n, int lo) {
  SymFunc acc(Basis::s);
  for (int k = lo; k <= n; ++k) acc += nabla(multiply(e(k), e(n - k))) * rf(qt_bracket(k + 1));
  return acc;
}

void id_b(int n_max, VerdictReport& r, Check& c) {
  r.range = degrees(0, n_max);
  const RationalFunction ai = alpha().inverse();
  for (int n = 0; n <= n_max && c.ok(); ++n) {
    const std::string in = "n = " + std::to_string(n);
    SymFunc inner(Basis::e);
    for (int k = 0; k <= n; ++k) inner += multiply(e(k), e(n - k)) * rf(qt_bracket(k + 1));
    if (!c.equal(in + ", alpha^-1 D_-1 e_{n+1}", D_m(-1, e(n + 1)) * ai, inner)) break;
    c.equal(in, rho(nabla(e(n + 1))), diag_sum(n, 0));
  }
  Check printed;
  for (int n = 1; n <= n_max && printed.ok(); ++n)
    printed.equal("n = " + std::to_string(n), rho(nabla(e(n + 1))), diag_sum(n, 1));
  r.variants.push_back(variant("sum over k = 1..n", printed));
  r.notes.push_back("the sum runs over k = 0..n; starting at k = 1 drops the term nabla(e_n)");
}

void id_c(int n_max, VerdictReport& r, Check& c) {
  r.range = degrees(0, n_max);
  const RationalFunction a = alpha();
  const RationalFunction u = u_var();
  for (int d = 0; d <= n_max && c.ok(); ++d) {
    for (const Partition& la : partitions_or_empty(d)) {
      const SymFunc f = s(la);
      const std::string in = fn_input(la);
      c.equal("(a) " + in, D_m(0, f), f - nabla_k(1, f) * a);
      for (int k = -2; k <= 2; ++k)
        c.equal("(b) k = " + std::to_string(k) + ", " + in, D_m(k + 1, f) * a, D_m(k, iota(f)) - iota(D_m(k, f)));
      c.equal("(c) " + in, D_m(1, f), -nabla(iota(nabla_inverse(f))));
      c.equal("(d) " + in, theta(f), nabla_inverse(rho(nabla(f))));
      if (d > 0) {
        const int T = d + kSlack;
        const SymFunc lhs = truncate_aux(psi_inverse(rho(psi(f, d, PsiSign::plus)), T, PsiSign::plus), T);
        c.equal("(e) " + in, lhs, rho(f) + theta(f) * u);
      }
      for (int k = 1; k <= d; ++k)
        c.equal("(f) k = " + std::to_string(k) + ", " + in, rho(nabla_k(k, f)),
                nabla_k(k, rho(f)) + nabla_k(k - 1, theta(f)));
      if (!c.ok()) break;
    }
  }

  // e_1 in (e) and (f) read as multiplication
  Check literal_e, literal_f;
  {
    const Partition la{1};
    const SymFunc f = s(la);
    const SymFunc lhs = truncate_aux(psi_inverse(iota(psi(f, 1, PsiSign::plus)), 2, PsiSign::plus), 2);
    literal_e.equal("(e) " + fn_input(la), lhs, iota(f) + theta(f) * u);
    literal_f.equal("(f) k = 1, " + fn_input(la), iota(nabla_k(1, f)), nabla_k(1, iota(f)) + nabla_k(0, theta(f)));
  }
  r.variants.push_back(variant("(e) with e_1 acting by multiplication", literal_e));
  r.variants.push_back(variant("(f) with e_1 acting by multiplication", literal_f));

  // what does hold for multiplication by e_1
  Check mul_e, mul_f;
  for (int d = 0; d <= std::min(n_max, 4) && mul_e.ok() && mul_f.ok(); ++d) {
    for (const Partition& la : partitions_or_empty(d)) {
      const SymFunc f = s(la);
      const int T = d + 1;
      const SymFunc conj = truncate_aux(psi(iota(psi_inverse(f, T, PsiSign::plus)), T, PsiSign::plus), T);
      mul_e.equal(fn_input(la), conj, iota(f) - D_m(1, f) * u);
      for (int k = 1; k <= d + 1; ++k)
        mul_f.equal("k = " + std::to_string(k) + ", " + fn_input(la), nabla_k(k, iota(f)),
                    iota(nabla_k(k, f)) - D_m(1, nabla_k(k - 1, f)));
    }
  }
  r.variants.push_back(variant("Psi e_1 Psi^-1 = e_1 - u D_1 (multiplication, degrees <= 4)", mul_e));
  r.variants.push_back(variant("nabla_k e_1 = e_1 nabla_k - D_1 nabla_{k-1} (multiplication, degrees <= 4)", mul_f));
  r.notes.push_back("iota is multiplication by e_1");
  r.notes.push_back("(e) and (f) are checked with e_1 read as e_1-perp = rho, which lowers degree like theta");
  r.notes.push_back("Psi has eigenvalue prod(1 + q^a t^b u) in (e)");
}

void psi_conjugation(int n_max, PsiSign sign, int direction, Check& c) {
  for (int d = 1; d <= n_max && c.ok(); ++d)
    for (const Partition& la : partitions_of(d)) {
      const SymFunc f = s(la);
      const int T = d + kSlack;
      const SymFunc lhs = truncate_aux(psi_inverse(rho(psi(f, d, sign)), T, sign), T);
      if (!c.equal(fn_input(la), lhs, rho(f) + theta(f) * (u_var() * RationalFunction(direction)))) break;
    }
}

void id_d(int n_max, VerdictReport& r, Check& c) {
  r.range = degrees(1, n_max);
  psi_conjugation(n_max, PsiSign::plus, 1, c);
  Check minus;
  psi_conjugation(std::min(n_max, 2), PsiSign::minus, 1, minus);
  r.variants.push_back(variant("Psi with eigenvalue prod(1 - q^a t^b u)", minus));
  Check minus_flipped;
  psi_conjugation(std::min(n_max, 4), PsiSign::minus, -1, minus_flipped);
  r.variants.push_back(variant("Psi with eigenvalue prod(1 - q^a t^b u), right side rho - u theta", minus_flipped));
  r.notes.push_back("Psi has eigenvalue prod(1 + q^a t^b u) = sum_k u^k e_k[B_mu]");
  r.notes.push_back("u-series compared through u^(n+1)");
}

void id_e(int n_max, VerdictReport& r, Check& c) {
  r.range = degrees(1, n_max) + ", k = 1..n";
  for (int d = 1; d <= n_max && c.ok(); ++d)
    for (const Partition& la : partitions_of(d)) {
      const SymFunc f = s(la);
      const SymFunc rf_ = rho(f), tf = theta(f);
      for (int k = 1; k <= d; ++k)
        if (!c.equal("k = " + std::to_string(k) + ", " + fn_input(la), rho(nabla_k(k, f)),
                     nabla_k(k, rf_) + nabla_k(k - 1, tf)))
          break;
      if (!c.ok()) break;
    }
}

SymFunc nabla_k_or_zero(int k, const SymFunc& f) { return k < 0 ? SymFunc(Basis::s) : nabla_k(k, f); }

// Sum of w(f) over words w of length r in {rho, theta}, grouped by the number
// of letters equal to `counted`.
std::vector<SymFunc> word_sums(const SymFunc& f, int r, bool count_theta) {
  std::vector<SymFunc> sums(static_cast<std::size_t>(r + 1), SymFunc(Basis::s));
  for (unsigned mask = 0; mask < (1u << r); ++mask) {
    SymFunc g = f;
    int thetas = 0;
    for (int i = 0; i < r; ++i) {
      if (mask & (1u << i)) {
        g = theta(g);
        ++thetas;
      } else {
        g = rho(g);
      }
    }
    sums[static_cast<std::size_t>(count_theta ? thetas : r - thetas)] += g;
  }
  return sums;
}

void words_check(int n_max, bool count_theta, Check& c) {
  for (int d = 1; d <= n_max && c.ok(); ++d)
    for (const Partition& la : partitions_of(d)) {
      const SymFunc f = s(la);
      for (int r = 1; r <= d && c.ok(); ++r) {
        const auto sums = word_sums(f, r, count_theta);
        for (int m = 0; m <= d; ++m) {
          SymFunc lhs = nabla_k(m, f);
          for (int i = 0; i < r; ++i) lhs = rho(lhs);
          SymFunc rhs(Basis::s);
          for (int j = 0; j <= r; ++j) rhs += nabla_k_or_zero(m - j, sums[static_cast<std::size_t>(j)]);
          if (!c.equal("r = " + std::to_string(r) + ", m = " + std::to_string(m) + ", " + fn_input(la), lhs, rhs)) break;
        }
      }
      if (!c.ok()) break;
    }
}

void id_f(int n_max, VerdictReport& r, Check& c) {
  r.range = degrees(1, n_max) + ", r = 1..n, m = 0..n";
  words_check(n_max, true, c);
  Check swapped;
  words_check(std::min(n_max, 3), false, swapped);
  r.variants.push_back(variant("nabla_{m-j} paired with words containing j copies of rho", swapped));
  r.notes.push_back("rho^r nabla_m = sum over words w of r letters rho, theta of nabla_{m-j} w, j = number of theta letters");
}

void id_g(int n_max, VerdictReport& r, Check& c) {
  r.range = degrees(1, n_max);
  for (int n = 1; n <= n_max && c.ok(); ++n) {
    SymFunc lhs = nabla_k(n - 1, e(n));
    for (int i = 0; i < n; ++i) lhs = rho(lhs);
    SymFunc rhs(Basis::s);
    for (int k = 0; k <= n - 1; ++k) {
      SymFunc g = e(n);
      for (int i = 0; i < n - 1 - k; ++i) g = theta(g);
      g = rho(g);
      for (int i = 0; i < k; ++i) g = theta(g);
      rhs += g;
    }
    c.equal("n = " + std::to_string(n), lhs, rhs);
  }
}

void id_h(int n_max, VerdictReport& r, Check& c) {
  r.range = degrees(2, n_max);
  auto run = [](int top, PsiSign convention, int shift, Check& chk) {
    for (int n = 2; n <= top && chk.ok(); ++n) {
      const RationalFunction k = rf(q_integer(n, Var::t) * q_integer(n, Var::q)) * sign(n - 1) * u_var();
      chk.equal("n = " + std::to_string(n), rho(psi(p(n), n, convention)), psi(e(n - shift), n, convention) * k);
    }
  };
  run(n_max, PsiSign::plus, 1, c);
  Check printed, minus;
  run(std::min(n_max, 3), PsiSign::plus, 0, printed);
  run(std::min(n_max, 3), PsiSign::minus, 1, minus);
  r.variants.push_back(variant("right side with Psi(e_n)", printed));
  r.variants.push_back(variant("Psi with eigenvalue prod(1 - q^a t^b u)", minus));
  r.notes.push_back("right side is Psi(e_{n-1}); rho lowers degree by one");
  r.notes.push_back("n = 1 is excluded: rho(p_1) = 1 adds the term Psi(1) on the left");
}

void id_i(int n_max, VerdictReport& r, Check& c) {
  r.range = degrees(1, n_max);
  for (int n = 1; n <= n_max && c.ok(); ++n) {
    const RationalFunction k = rf(q_integer(n, Var::t) * q_integer(n, Var::q)) / qt_power(n - 1);
    c.equal("n = " + std::to_string(n), nabla_k(n - 1, p(n)), nabla(h(n)) * k);
  }
}

void id_j(int n_max, VerdictReport& r, Check& c) {
  r.range = degrees(1, n_max);
  const Poly qt = Poly::q() * Poly::t();
  for (int n = 1; n <= n_max && c.ok(); ++n) {
    const std::string in = "n = " + std::to_string(n);
    c.equal(in + ", p_n", nabla_k(1, p(n)), e(n) * (rf(q_integer(n, Var::t) * q_integer(n, Var::q)) * sign(n - 1)));
    SymFunc hooks(Basis::s);
    for (int k = 1; k <= n; ++k) hooks += s(hook(k, n)) * rf((-qt).pow(static_cast<unsigned>(n - k)));
    c.equal(in + ", h_n", nabla_k(1, h(n)), hooks);
    SymFunc products(Basis::e);
    for (int k = 1; k <= n; ++k) products += multiply(e(n - k), e(k)) * rf(qt_bracket(k));
    c.equal(in + ", e_n", nabla_k(1, e(n)), products);
  }
}

void id_k(int n_max, VerdictReport& r, Check& c) {
  r.range = degrees(1, n_max);
  Check inside, outside;
  for (int n = 1; n <= n_max && c.ok(); ++n) {
    const std::string in = "n = " + std::to_string(n);
    const SymFunc lhs = nabla_k(n - 1, e(n));
    c.equal(in, lhs, nabla(nabla_k(1, h(n))) * (sign(n - 1) / qt_power(n - 1)));
    SymFunc bare(Basis::s), signed_terms(Basis::s);
    for (int k = 1; k <= n; ++k) {
      const SymFunc term = nabla(s(hook(k, n))) * RationalFunction(-(Poly::q() * Poly::t())).pow(1 - k);
      bare += term;
      signed_terms += term * sign(k - 1);
    }
    c.equal(in + ", hook form", lhs, bare);
    inside.equal(in, lhs, signed_terms);
    outside.equal(in, lhs, bare * sign(n - 1));
  }
  r.variants.push_back(variant("(-1)^(k-1) inside the hook sum", inside));
  r.variants.push_back(variant("(-1)^(n-1) in front of the hook sum", outside));
  r.notes.push_back("hook form: sum_k (-qt)^(1-k) nabla(s_{k,1^(n-k)}) with no extra sign; the power of -qt already carries (-1)^(k-1)");
}

SymFunc t_linear_part(const SymFunc& f) {
  return f.map_coefficients([](const RationalFunction& c) {
    if (!c.is_polynomial()) throw Error("expected a polynomial coefficient, got " + c.to_string());
    return RationalFunction(c.num().coefficient_of(Var::t, 1) * Poly::t());
  });
}

void id_l(int n_max, VerdictReport& r, Check& c) {
  r.range = degrees(2, n_max);
  Check bare;
  for (int n = 2; n <= n_max && c.ok(); ++n) {
    const SymFunc lhs = nabla(epsilon(n, n - 1));
    const SymFunc part = t_linear_part(nabla(e(n)));
    c.equal("n = " + std::to_string(n), lhs, part);
    bare.equal("n = " + std::to_string(n), lhs, part * RationalFunction(Poly::t()).inverse());
  }
  r.variants.push_back(variant("coefficient of t without the factor t", bare));
  r.notes.push_back("right side is the part of nabla(e_n) of degree exactly 1 in t");
}

Poly cocharge_polynomial(const Partition& la) {
  Poly acc;
  for (const StandardTableau& tau : standard_tableaux(la)) acc += Poly::monomial(Monomial{cocharge(tau), 0, 0});
  return acc;
}

void id_m(int n_max, VerdictReport& r, Check& c) {
  r.range = degrees(1, n_max);
  for (int n = 1; n <= n_max && c.ok(); ++n) {
    const SymFunc hl = convert(hall_littlewood_Hn(n), Basis::s);
    const MacdonaldBasis& b = macdonald_basis(n);
    for (const Partition& la : partitions_of(n)) {
      const RationalFunction oracle(cocharge_polynomial(la));
      const std::string in = "n = " + std::to_string(n) + ", la = " + la.to_string();
      if (hl.coefficient(la) != oracle) c.fail({in, hl.coefficient(la).to_string(), oracle.to_string()});
      if (RationalFunction(b.K(la, Partition{n})) != oracle) c.fail({in + ", K_{la,(n)}", b.K(la, Partition{n}).to_string(), oracle.to_string()});
    }
  }
}

void id_n(int n_max, VerdictReport& r, Check& c) {
  r.range = degrees(0, n_max);
  const RationalFunction ai = alpha().inverse();
  for (int d = 0; d <= n_max && c.ok(); ++d)
    for (const Partition& la : partitions_or_empty(d)) {
      const SymFunc f = s(la);
      if (!c.equal(fn_input(la), nabla_k(1, f), (f - D_m(0, f)) * ai)) break;
    }
}

// e_k of the cell weights q^a t^b, by the subset recursion
Poly e_of_cells(int k, const Partition& mu) {
  std::vector<Poly> acc(static_cast<std::size_t>(k + 1));
  acc[0] = Poly(1);
  for (const Cell& cell : cells(mu)) {
    const Poly x = Poly::monomial(Monomial{cell.a, cell.b, 0});
    for (int j = k; j >= 1; --j) acc[static_cast<std::size_t>(j)] += acc[static_cast<std::size_t>(j - 1)] * x;
  }
  return acc[static_cast<std::size_t>(k)];
}

void id_o(int n_max, VerdictReport& r, Check& c) {
  r.range = degrees(1, n_max);
  const std::vector<SymFunc> extra = {SymFunc::atom(Basis::s, Partition{2, 1}), p(2)};
  for (int d = 1; d <= n_max && c.ok(); ++d) {
    for (const Partition& mu : partitions_of(d)) {
      const SymFunc hm = macdonald_basis(d).polynomial(mu);
      const std::string in = "H_" + mu.to_string();
      const int nq = nstat(conjugate(mu)), nt = nstat(mu);
      const RationalFunction ev(Poly::monomial(Monomial{nq, nt, 0}));
      c.equal("nabla " + in, nabla(hm), hm * ev);
      c.equal("nabla_inv " + in, nabla_inverse(hm), hm * ev.inverse());
      for (int k = 0; k <= d + 1; ++k)
        c.equal("nabla_k k = " + std::to_string(k) + ", " + in, nabla_k(k, hm), hm * rf(e_of_cells(k, mu)));
      for (const SymFunc& g : extra)
        c.equal("nabla_f f = " + g.to_string() + ", " + in, nabla_f(g, hm), hm * pleth_scalar(g, rf(b_mu(mu))));
      for (PsiSign sg : {PsiSign::minus, PsiSign::plus}) {
        Poly ev_psi(1);
        for (const Cell& cell : cells(mu))
          ev_psi *= Poly(1) + Poly::monomial(Monomial{cell.a, cell.b, 1}, sg == PsiSign::plus ? 1 : -1, Aux::u);
        c.equal(std::string("psi ") + (sg == PsiSign::plus ? "(plus) " : "(minus) ") + in, psi(hm, d, sg), hm * rf(ev_psi));
      }
      if (!c.ok()) break;
    }
  }
}

void diag_hook(int n_max, VerdictReport& r, Check& c) {
  r.range = degrees(2, n_max);
  Check printed;
  const RationalFunction qt1 = rf(Poly::q() + Poly::t() + Poly(1));
  for (int n = 2; n <= n_max && c.ok(); ++n) {
    const std::string in = "n = " + std::to_string(n);
    c.equal(in + ", k = 0", conjectured_diag(n, 0), nabla(e(n)));
    const SymFunc lhs = conjectured_diag(n, 1) - conjectured_diag(n, 0) * qt1;
    c.equal(in, lhs, nabla(s(hook(2, n))));
    printed.equal(in, lhs, -nabla(s(hook(2, n))));
  }
  r.variants.push_back(variant("right side -nabla(s_{2,1^(n-2)})", printed));
  r.notes.push_back("diag(n,1) - (q+t+1) diag(n,0) = nabla(e_1 e_{n-1} - e_n) = nabla(s_{2,1^(n-2)})");
}

void hilbert_check(int n_max, VerdictReport& r, Check& c) {
  r.range = degrees(1, n_max);
  for (int n = 1; n <= n_max && c.ok(); ++n) {
    const SymFunc f = nabla_k(n - 1, e(n));
    SymFunc lhs = f;
    for (int i = 0; i < n; ++i) lhs = rho(lhs);
    c.equal("n = " + std::to_string(n), lhs, SymFunc::constant(hilbert_of_frobenius(f)));
  }
}

void parking_check(int n_max, VerdictReport& r, Check& c) {
  r.range = degrees(1, n_max);
  for (int n = 1; n <= n_max && c.ok(); ++n) {
    const RationalFunction hil = hall_scalar(nabla(e(n)), SymFunc::atom(Basis::p, Partition(std::vector<int>(static_cast<std::size_t>(n), 1))));
    const Rational at_one = hil.evaluate(1, 1);
    Integer expected = 1;
    for (int i = 0; i < n - 1; ++i) expected *= n + 1;
    if (at_one != Rational(expected))
      c.fail({"n = " + std::to_string(n), at_one.get_str(), expected.get_str()});
  }
  r.notes.push_back("<nabla e_n, p_1^n> at q = t = 1 against (n+1)^(n-1)");
}

const std::vector<Entry>& catalog() {
  static const std::vector<Entry> entries = {
      {"ID-A", "rho nabla = alpha^-1 nabla D_-1", id_a},
      {"ID-B", "rho nabla e_{n+1} = sum_{k=0..n} [k+1]_{q,t} nabla(e_k e_{n-k})", id_b},
      {"ID-C", "D_0, D_{k+1}, D_1, theta and the Psi / nabla_k commutations", id_c},
      {"ID-D", "Psi^-1 rho Psi = rho + u theta", id_d},
      {"ID-E", "rho nabla_k = nabla_k rho + nabla_{k-1} theta", id_e},
      {"ID-F", "rho^r nabla_m as a sum over words in rho, theta", id_f},
      {"ID-G", "rho^n nabla_{n-1} e_n = sum_k theta^k rho theta^{n-1-k} e_n", id_g},
      {"ID-H", "rho Psi p_n = (-1)^{n-1} u [n]_t [n]_q Psi e_{n-1}", id_h},
      {"ID-I", "nabla_{n-1} p_n = [n]_t [n]_q / (qt)^{n-1} nabla h_n", id_i},
      {"ID-J", "nabla_1 on p_n, h_n and e_n", id_j},
      {"ID-K", "nabla_{n-1} e_n = (-1)^{n-1} (qt)^{1-n} nabla nabla_1 h_n and its hook form", id_k},
      {"ID-L", "nabla eps_{n,n-1} = t-linear part of nabla e_n", id_l},
      {"ID-M", "one-row Hall-Littlewood coefficients = cocharge polynomials", id_m},
      {"ID-N", "nabla_1 = (Id - D_0) / ((1-q)(1-t))", id_n},
      {"ID-O", "eigenvalues of nabla, nabla_f and Psi on H_mu", id_o},
      {"DIAG-HOOK", "diag(n,1) - (q+t+1) diag(n,0) = nabla s_{2,1^(n-2)}", diag_hook},
      {"HILBERT", "rho^n nabla_{n-1} e_n = <nabla_{n-1} e_n, p_1^n>", hilbert_check},
      {"PARKING", "<nabla e_n, p_1^n> at q = t = 1 is (n+1)^(n-1)", parking_check},
  };
  return entries;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

const std::vector<std::string>& identity_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const Entry& entry : catalog()) out.push_back(entry.id);
    return out;
  }();
  return ids;
}

VerdictReport verify(const std::string& id, int n_max) {
  const auto& entries = catalog();
  auto it = std::find_if(entries.begin(), entries.end(), [&](const Entry& x) { return x.id == id; });
  if (it == entries.end()) throw Error("unknown identity id '" + id + "'");
  if (n_max < 0) throw Error("n_max must be nonnegative");
  const auto start = std::chrono::steady_clock::now();
  VerdictReport r;
  r.id = it->id;
  r.title = it->title;
  Check c;
  it->run(n_max, r, c);
  r.status = c.ok() ? Status::pass : Status::fail;
  r.witness = c.witness();
  r.ms = elapsed_ms(start);
  return r;
}

VerdictReport check_sign_conjecture(int n) {
  const auto start = std::chrono::steady_clock::now();
  VerdictReport r;
  r.id = "SIGN";
  r.title = "predicted_sign(la) nabla_{la,mu} is qt-Schur positive";
  r.range = "n = " + std::to_string(n);
  const NablaMatrix m = nabla_matrix(n);
  int cells_checked = 0;
  for (std::size_t i = 0; i < m.order.size() && !r.witness; ++i) {
    const int sg = predicted_sign(m.order[i]);
    for (std::size_t j = 0; j < m.order.size(); ++j) {
      ++cells_checked;
      const QTSchurExpansion x = sg > 0 ? m.entries[i][j] : -m.entries[i][j];
      if (!x.nonnegative()) {
        r.witness = Witness{"la = " + m.order[i].to_string() + ", mu = " + m.order[j].to_string() +
                                ", predicted sign " + (sg > 0 ? "+" : "-"),
                            m.entries[i][j].to_string(), "expected sign " + std::string(sg > 0 ? "+" : "-")};
        break;
      }
    }
  }
  r.status = r.witness ? Status::finding : Status::pass;
  r.notes.push_back(std::to_string(cells_checked) + " entries checked");
  r.notes.push_back("m(la) = C(k,2) + sum_{i<=k, la'_i < i-1} (i-1-la'_i) with k = la_1");
  r.ms = elapsed_ms(start);
  return r;
}

// ---------------------------------------------------------------------------
// Positivity scans

std::optional<ScanTarget> scan_target_from_name(std::string_view name) {
  if (name == "bght") return ScanTarget::bght;
  if (name == "haiman") return ScanTarget::haiman;
  if (name == "haglund-eps") return ScanTarget::haglund_eps;
  if (name == "gh-eps") return ScanTarget::gh_eps;
  return std::nullopt;
}

std::string_view scan_target_name(ScanTarget target) {
  switch (target) {
    case ScanTarget::bght: return "bght";
    case ScanTarget::haiman: return "haiman";
    case ScanTarget::haglund_eps: return "haglund-eps";
    case ScanTarget::gh_eps: return "gh-eps";
  }
  return "?";
}

namespace {

struct ScanTask {
  std::string label;
  std::function<SymFunc()> compute;
};

}  // namespace

std::optional<Witness> schur_positivity_witness(const std::string& label, const SymFunc& f) {
  const SymFunc fs = convert(f, Basis::s);
  for (const auto& [la, c] : fs.terms())
    if (!c.in_nonnegative_integer_span()) return Witness{label + ", alpha = " + la.to_string(), c.to_string(), "coefficient in N[q,t]"};
  return std::nullopt;
}

VerdictReport scan_positivity(ScanTarget target, int n) {
  if (n < 1) throw Error("scan needs n >= 1");
  const auto start = std::chrono::steady_clock::now();
  VerdictReport r;
  r.id = "SCAN-" + std::string(scan_target_name(target));
  r.range = "n = " + std::to_string(n);

  std::vector<Partition> mus;
  for (int k = 1; k <= n; ++k)
    for (const Partition& mu : partitions_of(k)) mus.push_back(mu);

  std::vector<ScanTask> tasks;
  switch (target) {
    case ScanTarget::bght:
      r.title = "<nabla_{s_mu} e_n, s_alpha> in N[q,t]";
      for (const Partition& mu : mus)
        tasks.push_back({"mu = " + mu.to_string(), [mu, n] { return nabla_f(s(mu), e(n)); }});
      break;
    case ScanTarget::haiman: {
      r.title = "<nabla_{s_mu} nabla e_n, s_alpha> in N[q,t]";
      const SymFunc ne = nabla(e(n));
      for (const Partition& mu : mus)
        tasks.push_back({"mu = " + mu.to_string(), [mu, ne] { return nabla_f(s(mu), ne); }});
      break;
    }
    case ScanTarget::haglund_eps:
      r.title = "<nabla_{s_mu} nabla eps_{n,k}, s_alpha> in N[q,t]";
      for (int k = 1; k <= n; ++k) {
        const SymFunc ne = nabla(epsilon(n, k));
        for (const Partition& mu : mus)
          tasks.push_back({"k = " + std::to_string(k) + ", mu = " + mu.to_string(), [mu, ne] { return nabla_f(s(mu), ne); }});
      }
      break;
    case ScanTarget::gh_eps:
      r.title = "nabla eps_{n,j} is Schur positive";
      for (int j = 1; j <= n; ++j)
        tasks.push_back({"j = " + std::to_string(j), [j, n] { return nabla(epsilon(n, j)); }});
      break;
  }

  for (const ScanTask& task : tasks) {
    r.witness = schur_positivity_witness(task.label, task.compute());
    if (r.witness) break;
  }
  const std::size_t cells_scanned = tasks.size() * partitions_of(n).size();
  r.notes.push_back(std::to_string(cells_scanned) + " coefficients scanned");
  if (target != ScanTarget::gh_eps) r.notes.push_back("mu runs over partitions of size 1..n");
  if (!r.witness)
    r.status = Status::pass;
  else
    r.status = target == ScanTarget::haiman ? Status::fail : Status::finding;
  r.ms = elapsed_ms(start);
  return r;
}

SymFunc conjectured_diag(int n, int k) {
  if (n < 0 || k < 0 || k > n) throw Error("conjectured_diag needs 0 <= k <= n");
  SymFunc acc(Basis::s);
  for (int j = 0; j <= k; ++j) acc += nabla(multiply(e(j), e(n - j))) * rf(qt_bracket(k - j + 1));
  return acc;
}

}  // namespace nabla
