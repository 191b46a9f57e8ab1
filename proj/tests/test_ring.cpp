#include <random>

#include "doctest.h"
#include "nabla/ring.hpp"
#include "support.hpp"

using namespace nabla;
using testing_support::random_nonzero_poly;

namespace {
const Poly q = Poly::q();
const Poly t = Poly::t();
}  // namespace

TEST_CASE("polynomial arithmetic basics") {
  Poly a = q + t;
  CHECK((a * a).to_string() == "q^2 + 2*q*t + t^2");
  CHECK((a - a).is_zero());
  CHECK((q * q - Poly(1)).divide_exact(q - Poly(1)) == q + Poly(1));
  CHECK_FALSE((q * q + Poly(1)).divide_exact(q - Poly(1)).has_value());
  CHECK(a.pow(3).evaluate(2, 3) == 125);
  CHECK((q * t * t).swap_qt() == q * q * t);
  CHECK((q + t).substitute_power(2) == q * q + t * t);
}

TEST_CASE("rational function normal form") {
  auto r = RationalFunction::normalize(Poly(1) - q * q, Poly(1) - q);
  CHECK(r == RationalFunction(Poly(1) + q));
  CHECK(RationalFunction::normalize(q - t, t - q) == RationalFunction(-1));
  auto s = RationalFunction::normalize(Poly(2) * q, Poly(4) * q * t - Poly(4));
  CHECK(s.num() == q);
  CHECK(s.den() == Poly(2) * q * t - Poly(2));
  auto neg = RationalFunction::normalize(Poly(1), Poly(-1) - q);
  CHECK(neg.den().leading_coeff() > 0);
  CHECK(neg.num() == Poly(-1));
  CHECK(RationalFunction(Rational(3, 6)).to_string() == "1/2");
}

TEST_CASE("laurent powers of xi are cleared into the denominator") {
  Poly xi = Poly::aux_var(Aux::xi);
  Poly inv = Poly::monomial(Monomial{0, 0, -1}, 1, Aux::xi);
  auto r = RationalFunction::normalize(inv + q, Poly(1));
  CHECK(r.num() == Poly(1) + q * xi);
  CHECK(r.den() == xi);
  CHECK(r.coefficient_of_aux(-1) == RationalFunction(1));
  CHECK(r.coefficient_of_aux(0) == RationalFunction(q));
}

TEST_CASE("q, t brackets and Gaussian binomials") {
  CHECK(qt_bracket(2) == q + t);
  CHECK(qt_bracket(3) == q * q + q * t + t * t);
  CHECK(qt_bracket(0).is_zero());
  CHECK(q_binomial(4, 2) == (Poly(1) + q * q) * (Poly(1) + q + q * q));
  CHECK(q_binomial(5, 0) == Poly(1));
  CHECK(q_binomial(3, 4).is_zero());
  CHECK(alpha_poly() == Poly(1) - q - t + q * t);
}

TEST_CASE("gcd of structured inputs") {
  Poly f = (q - t) * (q + Poly(2) * t + Poly(1));
  Poly g = (q - t) * (q * t - Poly(3));
  CHECK(gcd(f, g) == q - t);
  CHECK(gcd(q * q * t, q * t * t) == q * t);
  CHECK(gcd(Poly(6) * q, Poly(4) * q * q) == q);
  CHECK(gcd(q + Poly(1), Poly(0)) == q + Poly(1));
  Poly u = Poly::aux_var(Aux::u);
  Poly h = Poly(1) - q * u;
  CHECK(gcd(h * (t + u), h * (q - u * u)) == (h.leading_coeff() > 0 ? h : -h));
}

TEST_CASE("gcd with large evaluated coefficients") {
  const Poly a = parse_poly("q*t^9 + q*t^8 + t^9 - q^2*t^6 + q*t^7 - q^2*t^5 - q^2*t^4 - q^2*t^3");
  const Poly b = parse_poly("t^3 - q");
  CHECK(gcd(a, b) == b);
  CHECK(RationalFunction::normalize(a, b) == RationalFunction(parse_poly("q*t^6 + q*t^5 + t^6 + q*t^4 + q*t^3")));

  std::mt19937_64 rng(515);
  for (int trial = 0; trial < 40; ++trial) {
    // sparse binomial factors of high degree evaluate to large integers
    const int k = 1 + trial % 5;
    const Poly c = Poly::monomial(Monomial{0, k, 0}) - Poly::monomial(Monomial{1 + trial % 3, 0, 0});
    const Poly A = random_nonzero_poly(rng, 7, 6, 3) * c;
    const Poly B = random_nonzero_poly(rng, 7, 6, 3) * c;
    const Poly g = gcd(A, B);
    CHECK(g.divide_exact(c).has_value());
    CHECK(A.divide_exact(g).has_value());
    CHECK(B.divide_exact(g).has_value());
  }
}

TEST_CASE("gcd property: common factor divides the gcd, cofactors are coprime") {
  std::mt19937_64 rng(20260101);
  for (int trial = 0; trial < 60; ++trial) {
    const bool aux = trial % 3 == 0;
    Poly a = random_nonzero_poly(rng, 3, 4, 5, aux);
    Poly b = random_nonzero_poly(rng, 3, 4, 5, aux);
    Poly c = random_nonzero_poly(rng, 2, 3, 4, aux);
    Poly A = a * c;
    Poly B = b * c;
    Poly g = gcd(A, B);
    REQUIRE(A.divide_exact(g).has_value());
    REQUIRE(B.divide_exact(g).has_value());
    // c is divisible by its own primitive part, which must divide g.
    Poly cp = c.divided_by(c.content());
    CHECK(g.divide_exact(cp).has_value());
    Poly ca = *A.divide_exact(g);
    Poly cb = *B.divide_exact(g);
    CHECK(gcd(ca, cb).is_constant());
  }
}

TEST_CASE("field axioms on random rational functions") {
  std::mt19937_64 rng(77);
  auto rf = [&] {
    return RationalFunction::normalize(random_nonzero_poly(rng, 2, 3, 3), random_nonzero_poly(rng, 2, 3, 3));
  };
  for (int trial = 0; trial < 40; ++trial) {
    auto x = rf(), y = rf(), z = rf();
    CHECK(x + y == y + x);
    CHECK(x * y == y * x);
    CHECK((x + y) + z == x + (y + z));
    CHECK((x * y) * z == x * (y * z));
    CHECK(x * (y + z) == x * y + x * z);
    CHECK((x - x).is_zero());
    CHECK((x / x).is_one());
    // Independent check of the normal form by evaluation at a rational point.
    Rational qv(3, 7), tv(-5, 2);
    auto lhs = (x * y + z);
    CHECK(lhs.evaluate(qv, tv) == x.evaluate(qv, tv) * y.evaluate(qv, tv) + z.evaluate(qv, tv));
  }
}

TEST_CASE("substitute_power is a ring homomorphism") {
  const RationalFunction a = RationalFunction::normalize(alpha_poly(), Poly(1));
  CHECK(a.substitute_power(2) == RationalFunction((Poly(1) - q * q) * (Poly(1) - t * t)));
  CHECK(RationalFunction::normalize(Poly(1), Poly(1) - q).substitute_power(3) ==
        RationalFunction::normalize(Poly(1), Poly(1) - q.pow(3)));
  CHECK(RationalFunction(5).substitute_power(2) == RationalFunction(5));
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    auto f = RationalFunction::normalize(random_nonzero_poly(rng, 2, 3, 3), random_nonzero_poly(rng, 2, 2, 3));
    auto g = RationalFunction::normalize(random_nonzero_poly(rng, 2, 3, 3), random_nonzero_poly(rng, 2, 2, 3));
    const int k = 1 + trial % 4;
    CHECK((f * g).substitute_power(k) == f.substitute_power(k) * g.substitute_power(k));
    CHECK((f + g).substitute_power(k) == f.substitute_power(k) + g.substitute_power(k));
  }
}

TEST_CASE("normalize is idempotent and representative independent") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    Poly a = random_nonzero_poly(rng, 2, 3, 4), b = random_nonzero_poly(rng, 2, 3, 4);
    Poly k = random_nonzero_poly(rng, 1, 2, 3);
    auto r = RationalFunction::normalize(a, b);
    CHECK(RationalFunction::normalize(r.num(), r.den()) == r);
    CHECK(RationalFunction::normalize(a * k, b * k) == r);
    CHECK(RationalFunction::normalize(-a, -b) == r);
  }
  CHECK(RationalFunction::normalize(Poly(0), Poly(7)).den() == Poly(1));
  CHECK_THROWS_AS(RationalFunction::normalize(Poly(1), Poly(0)), Error);
}

TEST_CASE("bracket and binomial identities") {
  for (int a = 0; a <= 20; ++a)
    CHECK(qt_bracket(a) * (q - t) == q.pow(static_cast<unsigned>(a)) - t.pow(static_cast<unsigned>(a)));
  for (int k = 0; k <= 12; ++k)
    for (int i = 0; i <= k; ++i) {
      Integer binom;
      mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(k), static_cast<unsigned long>(i));
      CHECK(q_binomial(k, i).evaluate(1, 1) == binom);
    }
  CHECK(q_binomial(2, 1) == Poly(1) + q);
  CHECK(q_pochhammer(0) == Poly(1));
}

TEST_CASE("coefficient extraction") {
  Poly xi = Poly::aux_var(Aux::xi);
  Poly f = Poly(1) + q * xi - t * xi * xi;
  CHECK(coefficient_of(f, Var::aux, 2) == -t);
  CHECK(coefficient_of(q + t, Var::aux, 0) == q + t);
  CHECK(coefficient_of(q + t, Var::aux, 3).is_zero());
}
