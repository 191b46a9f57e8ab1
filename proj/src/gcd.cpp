// Multivariate gcd over Z[q, t, aux].
//
// The main route is the heuristic gcd: evaluate one variable at a large
// integer, recurse, rebuild the candidate from its balanced base-x digits
// and confirm it by trial division. When that gives up, a primitive
// pseudo-remainder sequence in one variable takes over.

#include <algorithm>
#include <span>

#include "nabla/ring.hpp"

namespace nabla {

namespace {

constexpr int kHeuristicAttempts = 6;

Poly make_positive(Poly p) {
  if (!p.is_zero() && p.leading_coeff() < 0) p = -p;
  return p;
}

Integer int_gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Aux pick_aux(const Poly& a, const Poly& b) { return a.aux() != Aux::none ? a.aux() : b.aux(); }

// Inverse of evaluation at v = x: write each coefficient in balanced base x.
Poly interpolate(const Poly& h, const Integer& x, Var v, Aux aux) {
  std::vector<Poly::Term> out;
  const Integer half = x / 2;
  for (const auto& term : h.terms()) {
    Integer c = term.coeff;
    int i = 0;
    while (c != 0) {
      Integer d;
      mpz_fdiv_r(d.get_mpz_t(), c.get_mpz_t(), x.get_mpz_t());
      if (d > half) d -= x;
      if (d != 0) {
        Monomial m = term.mono;
        m.exponent(v) = i;
        out.push_back({m, d});
      }
      c -= d;
      mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), x.get_mpz_t());
      ++i;
    }
  }
  return Poly::from_terms(std::move(out), aux);
}

Poly primitive(const Poly& p) {
  if (p.is_zero()) return p;
  Integer c = p.content();
  return make_positive(c == 1 ? p : p.divided_by(c));
}

Poly gcd_rec(const Poly& f, const Poly& g, std::span<const Var> vars, Aux aux);

std::optional<Poly> heuristic(const Poly& f, const Poly& g, std::span<const Var> all_vars, Aux aux) {
  const Integer cf = f.content();
  const Integer cg = g.content();
  const Integer c = int_gcd(cf, cg);
  const Poly F = f.divided_by(cf);
  const Poly G = g.divided_by(cg);
  std::vector<Var> live;
  for (Var v : all_vars)
    if (F.depends_on(v) || G.depends_on(v)) live.push_back(v);
  const std::span<const Var> vars(live);
  if (vars.empty()) return Poly(c);

  const Integer fn = F.max_norm();
  const Integer gn = G.max_norm();
  // Below 2 min(|F|, |G|) + 2 a candidate that divides both may still be wrong.
  Integer x = 2 * std::min(fn, gn) + 29;
  Integer lc_bound = 2 * std::min(fn / abs(F.leading_coeff()), gn / abs(G.leading_coeff())) + 2;
  x = std::max(x, lc_bound);

  const Var v = vars.back();
  const auto rest = vars.first(vars.size() - 1);
  for (int attempt = 0; attempt < kHeuristicAttempts; ++attempt) {
    Poly ff = F.evaluate_at(v, x);
    Poly gg = G.evaluate_at(v, x);
    if (!ff.is_zero() && !gg.is_zero()) {
      auto h = heuristic(ff, gg, rest, aux);
      if (h) {
        const Poly image = primitive(*h);
        // A candidate must divide F and G and evaluate back to the image gcd;
        // without the second test a spurious constant would be accepted.
        auto accept = [&](const Poly& cand) {
          return !cand.is_zero() && primitive(cand.evaluate_at(v, x)) == image && F.divide_exact(cand) &&
                 G.divide_exact(cand);
        };
        Poly cand = primitive(interpolate(*h, x, v, aux));
        if (accept(cand)) return cand * c;
        // Try the cofactors as well; they often interpolate when h does not.
        if (auto cff = ff.divide_exact(*h)) {
          Poly cof = interpolate(*cff, x, v, aux);
          if (!cof.is_zero()) {
            if (auto q = F.divide_exact(cof)) {
              Poly cand2 = primitive(*q);
              if (accept(cand2)) return cand2 * c;
            }
          }
        }
        if (auto cfg = gg.divide_exact(*h)) {
          Poly cof = interpolate(*cfg, x, v, aux);
          if (!cof.is_zero()) {
            if (auto q = G.divide_exact(cof)) {
              Poly cand2 = primitive(*q);
              if (accept(cand2)) return cand2 * c;
            }
          }
        }
      }
    }
    x = 73794 * x * Integer(sqrt(Integer(sqrt(x)))) / 27011;
  }
  return std::nullopt;
}

// Dense representation in v; coefficients are polynomials free of v.
using Dense = std::vector<Poly>;

Dense to_dense(const Poly& p, Var v) {
  const int d = p.max_degree(v);
  Dense out(static_cast<std::size_t>(d) + 1);
  for (int i = 0; i <= d; ++i) out[static_cast<std::size_t>(i)] = p.coefficient_of(v, i);
  while (out.size() > 1 && out.back().is_zero()) out.pop_back();
  return out;
}

Poly from_dense(const Dense& d, Var v, Aux aux) {
  Poly out;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i].is_zero()) continue;
    Monomial m;
    m.exponent(v) = static_cast<int>(i);
    out += d[i].shifted(m, aux);
  }
  return out;
}

bool dense_zero(const Dense& d) { return d.size() == 1 && d[0].is_zero(); }

void trim(Dense& d) {
  while (d.size() > 1 && d.back().is_zero()) d.pop_back();
}

Poly dense_content(const Dense& d, std::span<const Var> rest, Aux aux) {
  Poly c;
  for (const auto& coeff : d) {
    if (coeff.is_zero()) continue;
    c = c.is_zero() ? make_positive(coeff) : gcd_rec(c, coeff, rest, aux);
    if (c.is_one()) break;
  }
  return c;
}

Dense dense_divide(const Dense& d, const Poly& c) {
  Dense out;
  out.reserve(d.size());
  for (const auto& coeff : d) {
    auto q = coeff.divide_exact(c);
    if (!q) throw Error("internal error: content does not divide a coefficient");
    out.push_back(std::move(*q));
  }
  return out;
}

// Pseudo-remainder of a by b in v.
Dense prem(Dense a, const Dense& b) {
  const std::size_t n = b.size() - 1;
  const Poly& lb = b.back();
  while (!dense_zero(a) && a.size() - 1 >= n) {
    const std::size_t d = a.size() - 1;
    const Poly la = a.back();
    for (auto& coeff : a) coeff *= lb;
    for (std::size_t i = 0; i <= n; ++i) a[d - n + i] -= la * b[i];
    trim(a);
    if (a.size() - 1 == d) throw Error("internal error: pseudo-division did not reduce the degree");
  }
  return a;
}

Poly prs(const Poly& f, const Poly& g, std::span<const Var> vars, Aux aux) {
  const Var v = vars.back();
  const auto rest = vars.first(vars.size() - 1);
  Dense a = to_dense(f, v);
  Dense b = to_dense(g, v);
  const Poly ca = dense_content(a, rest, aux);
  const Poly cb = dense_content(b, rest, aux);
  const Poly c = gcd_rec(ca, cb, rest, aux);
  a = dense_divide(a, ca);
  b = dense_divide(b, cb);
  if (a.size() < b.size()) std::swap(a, b);
  while (!dense_zero(b) && b.size() > 1) {
    Dense r = prem(a, b);
    a = std::move(b);
    if (dense_zero(r)) {
      b = std::move(r);
      break;
    }
    b = dense_divide(r, dense_content(r, rest, aux));
  }
  // b is now zero (a is the gcd) or a nonzero constant in v (coprime).
  if (!dense_zero(b)) return make_positive(c);
  const Poly prim = from_dense(dense_divide(a, dense_content(a, rest, aux)), v, aux);
  return make_positive(prim * c);
}

Poly gcd_rec(const Poly& f, const Poly& g, std::span<const Var> all_vars, Aux aux) {
  if (f.is_zero()) return make_positive(g);
  if (g.is_zero()) return make_positive(f);
  if (f.is_constant() || g.is_constant()) return Poly(int_gcd(f.content(), g.content()));
  std::vector<Var> vars;
  for (Var v : all_vars)
    if (f.depends_on(v) || g.depends_on(v)) vars.push_back(v);
  if (auto h = heuristic(f, g, vars, aux)) return make_positive(*h);
  return prs(f, g, vars, aux);
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return primitive(b);
  if (b.is_zero()) return primitive(a);
  const Aux aux = pick_aux(a, b);
  const Monomial ma = a.min_exponents();
  const Monomial mb = b.min_exponents();
  const Monomial mg{std::min(ma.q, mb.q), std::min(ma.t, mb.t), std::min(ma.a, mb.a)};
  const Poly A = primitive(a.shifted(Monomial{} - ma, aux));
  const Poly B = primitive(b.shifted(Monomial{} - mb, aux));
  Poly core(1);
  if (!A.is_constant() && !B.is_constant()) {
    if (A == B) {
      core = A;
    } else if (A.is_monomial() || B.is_monomial()) {
      core = Poly(1);  // no monomial content is left
    } else {
      static constexpr Var kVars[] = {Var::q, Var::t, Var::aux};
      core = primitive(gcd_rec(A, B, kVars, aux));
    }
  }
  return make_positive(core.shifted(mg, aux));
}

}  // namespace nabla
