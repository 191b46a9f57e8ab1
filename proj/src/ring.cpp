#include "nabla/ring.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <sstream>
#include <tuple>

namespace nabla {

std::string_view aux_name(Aux a) {
  switch (a) {
    case Aux::u: return "u";
    case Aux::z: return "z";
    case Aux::xi: return "xi";
    case Aux::none: break;
  }
  return "";
}

std::optional<Aux> aux_from_name(std::string_view name) {
  if (name == "u") return Aux::u;
  if (name == "z") return Aux::z;
  if (name == "xi") return Aux::xi;
  return std::nullopt;
}

std::strong_ordering compare(const Monomial& x, const Monomial& y) {
  if (auto c = x.degree() <=> y.degree(); c != 0) return c;
  if (auto c = x.q <=> y.q; c != 0) return c;
  return x.t <=> y.t;
}

namespace {

bool mono_greater(const Monomial& x, const Monomial& y) { return compare(x, y) > 0; }

Aux combine_aux(Aux a, Aux b) {
  if (a == Aux::none) return b;
  if (b == Aux::none || a == b) return a;
  throw Error("cannot mix auxiliary variables " + std::string(aux_name(a)) + " and " +
              std::string(aux_name(b)));
}

void check_exponents(const Monomial& m, Aux aux) {
  if (m.q < 0 || m.t < 0) throw Error("negative exponent of q or t in a polynomial");
  if (m.a < 0 && aux != Aux::xi) throw Error("negative exponent allowed only for xi");
  if (m.a != 0 && aux == Aux::none) throw Error("auxiliary exponent without an auxiliary variable");
}

// Merge two sorted term lists; sign = +1 or -1 applied to b.
std::vector<Poly::Term> merge_terms(const std::vector<Poly::Term>& a,
                                    const std::vector<Poly::Term>& b, int sign) {
  std::vector<Poly::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && mono_greater(a[i].mono, b[j].mono))) {
      out.push_back(a[i++]);
    } else if (i == a.size() || mono_greater(b[j].mono, a[i].mono)) {
      out.push_back({b[j].mono, sign > 0 ? b[j].coeff : Integer(-b[j].coeff)});
      ++j;
    } else {
      Integer c = sign > 0 ? Integer(a[i].coeff + b[j].coeff) : Integer(a[i].coeff - b[j].coeff);
      if (c != 0) out.push_back({a[i].mono, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

Rational rational_pow(const Rational& x, int e) {
  Rational r = 1;
  Rational base = x;
  if (e < 0) {
    if (x == 0) throw Error("division by zero while evaluating a negative power");
    base = 1 / x;
    e = -e;
  }
  while (e > 0) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// Poly

Poly::Poly(long c) {
  if (c != 0) terms_.push_back({Monomial{}, Integer(c)});
}

Poly::Poly(const Integer& c) {
  if (c != 0) terms_.push_back({Monomial{}, c});
}

Poly Poly::monomial(const Monomial& m, const Integer& c, Aux aux) {
  check_exponents(m, aux);
  Poly p;
  if (c != 0) p.terms_.push_back({m, c});
  p.aux_ = aux;
  p.normalize_aux();
  return p;
}

Poly Poly::variable(Var v, Aux aux) {
  Monomial m;
  m.exponent(v) = 1;
  if (v == Var::aux && aux == Aux::none) throw Error("auxiliary variable requires a name");
  return monomial(m, 1, v == Var::aux ? aux : Aux::none);
}

Poly Poly::from_terms(std::vector<Term> terms, Aux aux) {
  for (const auto& t : terms) check_exponents(t.mono, aux);
  std::sort(terms.begin(), terms.end(),
            [](const Term& x, const Term& y) { return mono_greater(x.mono, y.mono); });
  Poly p;
  p.aux_ = aux;
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coeff += t.coeff;
    } else {
      if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
  p.normalize_aux();
  return p;
}

void Poly::normalize_aux() {
  if (aux_ == Aux::none) return;
  for (const auto& t : terms_)
    if (t.mono.a != 0) return;
  aux_ = Aux::none;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
}

bool Poly::is_one() const {
  return terms_.size() == 1 && terms_[0].mono.is_one() && terms_[0].coeff == 1;
}

std::optional<Integer> Poly::constant_value() const {
  if (terms_.empty()) return Integer(0);
  if (is_constant()) return terms_[0].coeff;
  return std::nullopt;
}

const Poly::Term& Poly::leading() const {
  if (terms_.empty()) throw Error("leading term of the zero polynomial");
  return terms_.front();
}

int Poly::max_degree(Var v) const {
  if (terms_.empty()) return 0;
  int d = terms_[0].mono.exponent(v);
  for (const auto& t : terms_) d = std::max(d, t.mono.exponent(v));
  return d;
}

int Poly::min_degree(Var v) const {
  if (terms_.empty()) return 0;
  int d = terms_[0].mono.exponent(v);
  for (const auto& t : terms_) d = std::min(d, t.mono.exponent(v));
  return d;
}

Monomial Poly::min_exponents() const {
  return {min_degree(Var::q), min_degree(Var::t), min_degree(Var::aux)};
}

int Poly::total_degree() const { return terms_.empty() ? 0 : terms_[0].mono.degree(); }

bool Poly::depends_on(Var v) const {
  for (const auto& t : terms_)
    if (t.mono.exponent(v) != 0) return true;
  return false;
}

Integer Poly::content() const {
  Integer g = 0;
  for (const auto& t : terms_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

Integer Poly::max_norm() const {
  Integer m = 0;
  for (const auto& t : terms_) {
    Integer a = abs(t.coeff);
    if (a > m) m = a;
  }
  return m;
}

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto& t : p.terms_) t.coeff = -t.coeff;
  return p;
}

Poly& Poly::operator+=(const Poly& o) {
  aux_ = combine_aux(aux_, o.aux_);
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) {
    terms_ = o.terms_;
  } else {
    terms_ = merge_terms(terms_, o.terms_, +1);
  }
  normalize_aux();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  aux_ = combine_aux(aux_, o.aux_);
  if (o.terms_.empty()) return *this;
  terms_ = merge_terms(terms_, o.terms_, -1);
  normalize_aux();
  return *this;
}

Poly& Poly::operator*=(const Integer& c) {
  if (c == 0) {
    terms_.clear();
    aux_ = Aux::none;
    return *this;
  }
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

Poly& Poly::operator*=(const Poly& o) {
  *this = *this * o;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly out;
  out.aux_ = combine_aux(a.aux_, b.aux_);
  if (a.terms_.empty() || b.terms_.empty()) {
    out.aux_ = Aux::none;
    return out;
  }
  const Poly& small = a.terms_.size() <= b.terms_.size() ? a : b;
  const Poly& large = &small == &a ? b : a;
  if (small.terms_.size() == 1) {
    // Translation preserves the graded order.
    const auto& s = small.terms_[0];
    out.terms_.reserve(large.terms_.size());
    for (const auto& t : large.terms_) out.terms_.push_back({t.mono + s.mono, t.coeff * s.coeff});
    out.normalize_aux();
    return out;
  }
  struct Slot {
    Monomial mono;
    std::uint32_t i;
    std::uint32_t j;
  };
  std::vector<Slot> slots;
  slots.reserve(a.terms_.size() * b.terms_.size());
  for (std::uint32_t i = 0; i < a.terms_.size(); ++i)
    for (std::uint32_t j = 0; j < b.terms_.size(); ++j)
      slots.push_back({a.terms_[i].mono + b.terms_[j].mono, i, j});
  std::sort(slots.begin(), slots.end(), [](const Slot& x, const Slot& y) {
    auto c = compare(x.mono, y.mono);
    if (c != 0) return c > 0;
    return std::tie(x.i, x.j) < std::tie(y.i, y.j);
  });
  Integer acc;
  for (std::size_t k = 0; k < slots.size();) {
    std::size_t l = k;
    acc = 0;
    while (l < slots.size() && slots[l].mono == slots[k].mono) {
      mpz_addmul(acc.get_mpz_t(), a.terms_[slots[l].i].coeff.get_mpz_t(),
                 b.terms_[slots[l].j].coeff.get_mpz_t());
      ++l;
    }
    if (acc != 0) out.terms_.push_back({slots[k].mono, acc});
    k = l;
  }
  out.normalize_aux();
  return out;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coeff != b.terms_[i].coeff)
      return false;
  }
  return a.terms_.empty() || a.aux_ == b.aux_;
}

Poly Poly::pow(unsigned e) const {
  Poly r(1);
  Poly base = *this;
  while (e > 0) {
    if (e & 1u) r *= base;
    e >>= 1u;
    if (e > 0) base *= base;
  }
  return r;
}

Poly Poly::shifted(const Monomial& m, Aux aux) const {
  Poly p = *this;
  if (m.a != 0) p.aux_ = combine_aux(aux_, aux);
  for (auto& t : p.terms_) {
    t.mono = t.mono + m;
    check_exponents(t.mono, p.aux_);
  }
  p.normalize_aux();
  return p;
}

Poly Poly::divided_by(const Integer& c) const {
  if (c == 0) throw Error("division of a polynomial by zero");
  Poly p = *this;
  for (auto& t : p.terms_) {
    if (!mpz_divisible_p(t.coeff.get_mpz_t(), c.get_mpz_t()))
      throw Error("inexact integer division of a polynomial");
    mpz_divexact(t.coeff.get_mpz_t(), t.coeff.get_mpz_t(), c.get_mpz_t());
  }
  return p;
}

std::optional<Poly> Poly::divide_exact(const Poly& d) const {
  if (d.is_zero()) throw Error("polynomial division by zero");
  if (is_zero()) return Poly();
  const Aux aux = combine_aux(aux_, d.aux_);
  const auto& lt = d.terms_.front();
  if (d.terms_.size() == 1) {
    Poly p = *this;
    p.aux_ = aux;
    for (auto& t : p.terms_) {
      if (!mpz_divisible_p(t.coeff.get_mpz_t(), lt.coeff.get_mpz_t())) return std::nullopt;
      mpz_divexact(t.coeff.get_mpz_t(), t.coeff.get_mpz_t(), lt.coeff.get_mpz_t());
      t.mono = t.mono - lt.mono;
      if (t.mono.q < 0 || t.mono.t < 0 || (t.mono.a < 0 && aux != Aux::xi)) return std::nullopt;
    }
    p.normalize_aux();
    return p;
  }
  // Exponent floor for every quotient term: min_v(f) - min_v(d).
  const Monomial floor = min_exponents() - d.min_exponents();
  auto key_less = [](const Monomial& x, const Monomial& y) { return compare(x, y) > 0; };
  std::map<Monomial, Integer, decltype(key_less)> rem(key_less);
  for (const auto& t : terms_) rem.emplace(t.mono, t.coeff);
  std::vector<Term> quot;
  while (!rem.empty()) {
    auto it = rem.begin();
    Monomial qm = it->first - lt.mono;
    if (qm.q < floor.q || qm.t < floor.t || qm.a < floor.a) return std::nullopt;
    if (qm.q < 0 || qm.t < 0 || (qm.a < 0 && aux != Aux::xi)) return std::nullopt;
    if (!mpz_divisible_p(it->second.get_mpz_t(), lt.coeff.get_mpz_t())) return std::nullopt;
    Integer qc;
    mpz_divexact(qc.get_mpz_t(), it->second.get_mpz_t(), lt.coeff.get_mpz_t());
    rem.erase(it);
    for (std::size_t k = 1; k < d.terms_.size(); ++k) {
      Monomial m = qm + d.terms_[k].mono;
      auto [pos, inserted] = rem.try_emplace(m, 0);
      mpz_submul(pos->second.get_mpz_t(), qc.get_mpz_t(), d.terms_[k].coeff.get_mpz_t());
      if (pos->second == 0) rem.erase(pos);
    }
    quot.push_back({qm, std::move(qc)});
  }
  Poly p;
  p.terms_ = std::move(quot);  // produced in decreasing order
  p.aux_ = aux;
  p.normalize_aux();
  return p;
}

Poly Poly::substitute_power(int k) const {
  if (k < 1) throw Error("substitute_power requires k >= 1");
  Poly p = *this;
  for (auto& t : p.terms_) t.mono = {t.mono.q * k, t.mono.t * k, t.mono.a * k};
  return p;  // scaling exponents preserves the graded order
}

Poly Poly::evaluate_at(Var v, const Integer& x) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  Integer pw;
  for (const auto& t : terms_) {
    int e = t.mono.exponent(v);
    if (e < 0) throw Error("cannot evaluate a negative power at an integer");
    mpz_pow_ui(pw.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(e));
    Monomial m = t.mono;
    m.exponent(v) = 0;
    out.push_back({m, t.coeff * pw});
  }
  return from_terms(std::move(out), aux_);
}

Rational Poly::evaluate(const Rational& qv, const Rational& tv, const Rational& av) const {
  Rational s = 0;
  for (const auto& t : terms_) {
    s += Rational(t.coeff) * rational_pow(qv, t.mono.q) * rational_pow(tv, t.mono.t) *
         rational_pow(av, t.mono.a);
  }
  return s;
}

Poly Poly::swap_qt() const {
  std::vector<Term> out = terms_;
  for (auto& t : out) std::swap(t.mono.q, t.mono.t);
  return from_terms(std::move(out), aux_);
}

Poly Poly::coefficient_of(Var v, int e) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (t.mono.exponent(v) != e) continue;
    Monomial m = t.mono;
    m.exponent(v) = 0;
    out.push_back({m, t.coeff});
  }
  return from_terms(std::move(out), aux_);
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Integer c = t.coeff;
    bool neg = c < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) os << '-';
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    std::vector<std::string> factors;
    auto add = [&](std::string_view name, int e) {
      if (e == 0) return;
      std::string f(name);
      if (e != 1) f += "^" + std::to_string(e);
      factors.push_back(std::move(f));
    };
    add("q", t.mono.q);
    add("t", t.mono.t);
    add(aux_name(aux_), t.mono.a);
    if (factors.empty()) {
      os << c.get_str();
      continue;
    }
    if (c != 1) os << c.get_str() << '*';
    for (std::size_t i = 0; i < factors.size(); ++i) os << (i ? "*" : "") << factors[i];
  }
  return os.str();
}

Poly lcm(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  Poly g = gcd(a, b);
  Integer c;
  mpz_gcd(c.get_mpz_t(), a.content().get_mpz_t(), b.content().get_mpz_t());
  g *= c;
  auto quotient = a.divide_exact(g);
  if (!quotient) throw Error("internal error: gcd does not divide its argument");
  Poly l = *quotient * b;
  if (l.leading_coeff() < 0) l = -l;
  return l;
}

// ---------------------------------------------------------------------------
// RationalFunction

RationalFunction::RationalFunction(const Rational& c) {
  Rational r = c;
  r.canonicalize();
  num_ = Poly(Integer(r.get_num()));
  den_ = Poly(Integer(r.get_den()));
}

RationalFunction::RationalFunction(Poly p) : num_(std::move(p)), den_(1) {
  // An integer polynomial is already in lowest terms.
}

Aux RationalFunction::aux() const { return combine_aux(num_.aux(), den_.aux()); }

RationalFunction RationalFunction::normalize(Poly num, Poly den) {
  if (den.is_zero()) throw Error("rational function with zero denominator");
  if (num.is_zero()) return RationalFunction();
  // Clear Laurent powers of xi.
  int shift = std::min(num.min_degree(Var::aux), den.min_degree(Var::aux));
  if (shift < 0) {
    Monomial m{0, 0, -shift};
    num = num.shifted(m, Aux::xi);
    den = den.shifted(m, Aux::xi);
  }
  if (!den.is_constant()) {
    Poly g = gcd(num, den);
    if (!g.is_constant()) {
      auto nq = num.divide_exact(g);
      auto dq = den.divide_exact(g);
      if (!nq || !dq) throw Error("internal error: gcd does not divide");
      num = std::move(*nq);
      den = std::move(*dq);
    }
  }
  Integer c = num.content();
  Integer cd = den.content();
  mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), cd.get_mpz_t());
  if (den.leading_coeff() < 0) c = -c;
  if (c != 1) {
    num = num.divided_by(c);
    den = den.divided_by(c);
  }
  return RationalFunction(std::move(num), std::move(den), true);
}

std::optional<Rational> RationalFunction::constant_value() const {
  auto n = num_.constant_value();
  auto d = den_.constant_value();
  if (!n || !d) return std::nullopt;
  return Rational(*n, *d);
}

bool RationalFunction::in_nonnegative_integer_span() const {
  if (!den_.is_one()) return false;
  for (const auto& t : num_.terms()) {
    if (t.coeff < 0 || t.mono.a < 0) return false;
  }
  return true;
}

RationalFunction RationalFunction::operator-() const {
  return RationalFunction(-num_, den_, true);
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_.is_one() && o.den_.is_one()) {
    num_ += o.num_;
    return *this;
  }
  if (den_ == o.den_) {
    *this = normalize(num_ + o.num_, den_);
    return *this;
  }
  if (den_.is_constant() && o.den_.is_constant()) {
    Integer a = *den_.constant_value();
    Integer b = *o.den_.constant_value();
    *this = normalize(num_ * b + o.num_ * a, Poly(a * b));
    return *this;
  }
  // a/b + c/d with g = gcd(b, d): (a*(d/g) + c*(b/g)) / (b*(d/g))
  Poly g = gcd(den_, o.den_);
  Poly bg = *den_.divide_exact(g);
  Poly dg = *o.den_.divide_exact(g);
  *this = normalize(num_ * dg + o.num_ * bg, den_ * dg);
  return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) { return *this += -o; }

RationalFunction& RationalFunction::operator*=(const RationalFunction& o) {
  if (is_zero() || o.is_zero()) return *this = RationalFunction();
  if (den_.is_one() && o.den_.is_one()) {
    num_ *= o.num_;
    return *this;
  }
  if (o.is_constant()) return scale(*o.constant_value());
  if (is_constant()) {
    Rational c = *constant_value();
    *this = o;
    return scale(c);
  }
  // Cross-cancel before multiplying.
  Poly g1 = gcd(num_, o.den_);
  Poly g2 = gcd(o.num_, den_);
  Poly a = *num_.divide_exact(g1);
  Poly d = *o.den_.divide_exact(g1);
  Poly c = *o.num_.divide_exact(g2);
  Poly b = *den_.divide_exact(g2);
  *this = normalize(a * c, b * d);
  return *this;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& o) { return *this *= o.inverse(); }

RationalFunction& RationalFunction::scale(const Rational& c) {
  if (c == 0) return *this = RationalFunction();
  if (c == 1) return *this;
  Integer n = c.get_num();
  Integer d = c.get_den();
  if (d == 1 && den_.is_one()) {
    num_ *= n;
    return *this;
  }
  // Only integer contents change; the polynomial gcd is unaffected.
  Poly num = num_ * n;
  Poly den = den_ * d;
  Integer g = num.content();
  Integer gd = den.content();
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), gd.get_mpz_t());
  if (den.leading_coeff() < 0) g = -g;
  if (g != 1) {
    num = num.divided_by(g);
    den = den.divided_by(g);
  }
  num_ = std::move(num);
  den_ = std::move(den);
  return *this;
}

RationalFunction RationalFunction::inverse() const {
  if (is_zero()) throw Error("division by zero rational function");
  return normalize(den_, num_);
}

RationalFunction RationalFunction::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  // Powers of coprime, content-free pairs stay reduced (Gauss lemma).
  return RationalFunction(num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)), true);
}

RationalFunction RationalFunction::substitute_power(int k) const {
  return normalize(num_.substitute_power(k), den_.substitute_power(k));
}

RationalFunction RationalFunction::swap_qt() const { return normalize(num_.swap_qt(), den_.swap_qt()); }

RationalFunction RationalFunction::coefficient_of_aux(int e) const {
  // den = D(q,t) * aux^k with D free of aux
  int k = den_.min_degree(Var::aux);
  if (den_.max_degree(Var::aux) != k)
    throw Error("coefficient extraction needs a denominator that is a pure power of the auxiliary variable");
  Poly d = den_.coefficient_of(Var::aux, k);
  return normalize(num_.coefficient_of(Var::aux, e + k), d);
}

Rational RationalFunction::evaluate(const Rational& qv, const Rational& tv, const Rational& av) const {
  Rational d = den_.evaluate(qv, tv, av);
  if (d == 0) throw Error("denominator vanishes at the evaluation point");
  return num_.evaluate(qv, tv, av) / d;
}

std::string RationalFunction::to_string() const {
  if (den_.is_one()) return num_.to_string();
  std::string n = num_.to_string();
  std::string d = den_.to_string();
  if (num_.size() > 1) n = "(" + n + ")";
  const bool single_factor =
      den_.is_constant() ||
      (den_.size() == 1 && den_.leading_coeff() == 1 &&
       (den_.leading().mono.q != 0) + (den_.leading().mono.t != 0) + (den_.leading().mono.a != 0) == 1);
  if (!single_factor) d = "(" + d + ")";
  return n + "/" + d;
}

RationalFunction normalize(const Poly& num, const Poly& den) { return RationalFunction::normalize(num, den); }

RationalFunction sum(const std::vector<RationalFunction>& xs) {
  struct Bucket {
    Poly den;
    Poly num;
  };
  std::vector<Bucket> buckets;
  for (const auto& x : xs) {
    if (x.is_zero()) continue;
    auto it = std::find_if(buckets.begin(), buckets.end(), [&](const Bucket& b) { return b.den == x.den(); });
    if (it == buckets.end()) {
      buckets.push_back({x.den(), x.num()});
    } else {
      it->num += x.num();
    }
  }
  if (buckets.empty()) return RationalFunction();
  if (buckets.size() == 1) {
    if (buckets[0].den.is_one()) return RationalFunction(std::move(buckets[0].num));
    return RationalFunction::normalize(std::move(buckets[0].num), std::move(buckets[0].den));
  }
  Poly common = buckets[0].den;
  for (std::size_t i = 1; i < buckets.size(); ++i) common = lcm(common, buckets[i].den);
  Poly num;
  for (auto& b : buckets) {
    auto factor = common.divide_exact(b.den);
    if (!factor) throw Error("internal error: lcm is not a common multiple");
    num += b.num * *factor;
  }
  return RationalFunction::normalize(std::move(num), std::move(common));
}

RationalFunction substitute_power(const RationalFunction& f, int k) { return f.substitute_power(k); }

Poly coefficient_of(const Poly& f, Var v, int exponent) { return f.coefficient_of(v, exponent); }

Poly parse_poly(std::string_view text) {
  std::vector<Poly::Term> terms;
  Aux aux = Aux::none;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && text[i] == ' ') ++i;
  };
  auto fail = [&](const std::string& what) -> Error {
    return Error("cannot parse polynomial '" + std::string(text) + "': " + what);
  };
  auto read_int = [&]() -> std::string {
    std::size_t start = i;
    if (i < text.size() && text[i] == '-') ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == start || (i == start + 1 && text[start] == '-')) throw fail("expected an integer");
    return std::string(text.substr(start, i - start));
  };
  skip();
  if (text.substr(i) == "0") return Poly();
  bool first = true;
  while (true) {
    skip();
    if (i >= text.size()) break;
    int sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
      skip();
    } else if (!first) {
      throw fail("expected + or -");
    }
    first = false;
    Integer coeff = 1;
    Monomial m;
    bool need_factor = true;
    while (need_factor) {
      need_factor = false;
      if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        coeff *= Integer(read_int());
      } else {
        std::size_t start = i;
        while (i < text.size() && std::isalpha(static_cast<unsigned char>(text[i]))) ++i;
        const std::string_view name = text.substr(start, i - start);
        int e = 1;
        if (i < text.size() && text[i] == '^') {
          ++i;
          e = std::stoi(read_int());
        }
        if (name == "q") {
          m.q += e;
        } else if (name == "t") {
          m.t += e;
        } else if (auto a = aux_from_name(name)) {
          if (aux != Aux::none && aux != *a) throw fail("two auxiliary variables");
          aux = *a;
          m.a += e;
        } else {
          throw fail("unknown variable '" + std::string(name) + "'");
        }
      }
      if (i < text.size() && text[i] == '*') {
        ++i;
        need_factor = true;
      }
    }
    terms.push_back({m, sign * coeff});
  }
  return Poly::from_terms(std::move(terms), aux);
}

Poly qt_bracket(int a) {
  if (a < 0) throw Error("qt_bracket needs a >= 0");
  std::vector<Poly::Term> terms;
  for (int j = 0; j < a; ++j) terms.push_back({Monomial{a - 1 - j, j, 0}, 1});
  return Poly::from_terms(std::move(terms));
}

Poly q_integer(int a, Var v) {
  if (a < 0) throw Error("q_integer needs a >= 0");
  std::vector<Poly::Term> terms;
  for (int j = 0; j < a; ++j) {
    Monomial m;
    m.exponent(v) = j;
    terms.push_back({m, 1});
  }
  return Poly::from_terms(std::move(terms));
}

Poly q_pochhammer(int i) {
  if (i < 0) throw Error("q_pochhammer needs i >= 0");
  Poly r(1);
  for (int j = 1; j <= i; ++j) r *= Poly(1) - Poly::monomial(Monomial{j, 0, 0});
  return r;
}

Poly q_binomial(int k, int i) {
  if (i < 0 || k < 0 || i > k) return Poly();
  Poly num = q_pochhammer(k);
  Poly den = q_pochhammer(i) * q_pochhammer(k - i);
  auto r = num.divide_exact(den);
  if (!r) throw Error("internal error: Gaussian binomial is not a polynomial");
  return *r;
}

Poly alpha_poly() { return (Poly(1) - Poly::q()) * (Poly(1) - Poly::t()); }

}  // namespace nabla
