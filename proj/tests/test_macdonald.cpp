#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "nabla/macdonald.hpp"
#include "support.hpp"

using namespace nabla;
using namespace testing_support;

namespace {

const Poly q = Poly::q();
const Poly t = Poly::t();

SymFunc s(std::initializer_list<int> la) { return SymFunc::atom(Basis::s, Partition(la)); }
RationalFunction rf(const Poly& n, const Poly& d = Poly(1)) { return RationalFunction::normalize(n, d); }

Poly mono(int a, int b) { return Poly::monomial(Monomial{a, b, 0}); }

// sum over standard tableaux of shape la of q^cocharge
Poly cocharge_polynomial(const Partition& la) {
  Poly acc;
  for (const auto& tau : standard_tableaux(la)) acc += mono(cocharge(tau), 0);
  return acc;
}

bool nonnegative(const Poly& p) {
  for (const auto& term : p.terms())
    if (term.coeff < 0) return false;
  return true;
}

// prod over cells of (q^a - t^(l+1)) (t^l - q^(a+1)), arm a and leg l
Poly star_norm_product(const Partition& mu) {
  const Partition mc = conjugate(mu);
  Poly acc(1);
  for (const Cell& c : cells(mu)) {
    const int arm = mu[static_cast<std::size_t>(c.b)] - c.a - 1;
    const int leg = mc[static_cast<std::size_t>(c.a)] - c.b - 1;
    acc *= (mono(arm, 0) - mono(0, leg + 1)) * (mono(0, leg) - mono(arm + 1, 0));
  }
  return acc;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() / ("nabla-test-" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("small Macdonald polynomials") {
  CHECK(macdonald_basis(1).polynomial(Partition{1}) == s({1}));
  CHECK(macdonald_basis(2).polynomial(Partition{2}) == s({2}) + s({1, 1}) * rf(q));
  CHECK(macdonald_basis(2).polynomial(Partition{1, 1}) == s({2}) + s({1, 1}) * rf(t));
  CHECK(macdonald_basis(3).polynomial(Partition{3}) ==
        s({3}) + s({2, 1}) * rf(q * q + q) + s({1, 1, 1}) * rf(q.pow(3)));
  CHECK(macdonald_basis(3).polynomial(Partition{2, 1}) ==
        s({3}) + s({2, 1}) * rf(q + t) + s({1, 1, 1}) * rf(q * t));
  CHECK(macdonald_basis(0).polynomial(Partition{}) == SymFunc::constant(1));
}

TEST_CASE("Macdonald invariants up to degree 6") {
  for (int n = 1; n <= 6; ++n) {
    CAPTURE(n);
    const MacdonaldBasis& b = macdonald_basis(n);
    CHECK_FALSE(check_characterization(b).has_value());
    const Poly top = mono(0, 0);
    for (const Partition& mu : b.order) {
      const Partition mc = conjugate(mu);
      const int nq = nstat(mc);
      const int nt = nstat(mu);
      CHECK(b.K(Partition{n}, mu) == top);
      CHECK(b.K(Partition(std::vector<int>(static_cast<std::size_t>(n), 1)), mu) == mono(nq, nt));
      for (const Partition& la : b.order) {
        const Poly& k = b.K(la, mu);
        CHECK(nonnegative(k));
        CHECK(k.swap_qt() == b.K(la, mc));
        // K_{la',mu}(q,t) = q^{n(mu')} t^{n(mu)} K_{la,mu}(1/q,1/t)
        Poly reversed;
        for (const auto& term : k.terms())
          reversed += Poly::monomial(Monomial{nq - term.mono.q, nt - term.mono.t, 0}, term.coeff);
        CHECK(reversed == b.K(conjugate(la), mu));
      }
    }
  }
}

TEST_CASE("one-row column equals the cocharge generating polynomials") {
  for (int n = 1; n <= 6; ++n) {
    const MacdonaldBasis& b = macdonald_basis(n);
    for (const Partition& la : b.order) CHECK(b.K(la, Partition{n}) == cocharge_polynomial(la));
  }
}

TEST_CASE("Hall-Littlewood H_n") {
  CHECK(hall_littlewood_Hn(1) == s({1}));
  CHECK(hall_littlewood_Hn(2) == s({2}) + s({1, 1}) * rf(q));
  CHECK(hall_littlewood_Hn(3) == s({3}) + s({2, 1}) * rf(q * q + q) + s({1, 1, 1}) * rf(q.pow(3)));
  CHECK(hall_littlewood_Hn(4) == s({4}) + s({3, 1}) * rf(q.pow(3) + q.pow(2) + q) + s({2, 2}) * rf(q.pow(4) + q.pow(2)) +
                                     s({2, 1, 1}) * rf(q.pow(5) + q.pow(4) + q.pow(3)) + s({1, 1, 1, 1}) * rf(q.pow(6)));
  for (int n = 1; n <= 6; ++n) {
    CAPTURE(n);
    const SymFunc hn = convert(hall_littlewood_Hn(n), Basis::s);
    CHECK(hn == macdonald_basis(n).polynomial(Partition{n}));
    for (const auto& [la, c] : hn.terms()) {
      CHECK(c.is_polynomial());
      CHECK_FALSE(c.num().depends_on(Var::t));
      CHECK(c.num() == cocharge_polynomial(la));
    }
    // the e_n form is the omega image: coefficient of s_la' in one is that of s_la in the other
    const SymFunc ef = convert(hall_littlewood_Hn_e_form(n), Basis::s);
    for (const auto& [la, c] : hn.terms()) CHECK(ef.coefficient(conjugate(la)) == c);
  }
}

TEST_CASE("star scalar product diagonalizes H") {
  for (int n = 1; n <= 4; ++n) {
    const MacdonaldBasis& b = macdonald_basis(n);
    for (const Partition& mu : b.order) {
      const SymFunc hm = b.polynomial(mu);
      CHECK(star_scalar(hm, hm) == rf(star_norm_product(mu)));
      for (const Partition& nu : b.order)
        if (nu != mu) CHECK(star_scalar(hm, b.polynomial(nu)).is_zero());
    }
  }
}

TEST_CASE("change of basis to H") {
  const PartitionMap e2 = to_H_basis(SymFunc::atom(Basis::e, Partition{2}));
  CHECK(e2.size() == 2);
  CHECK(e2.at(Partition{2}) == rf(1, q - t));
  CHECK(e2.at(Partition{1, 1}) == rf(-1, q - t));

  for (int n = 1; n <= 5; ++n) {
    const MacdonaldBasis& b = macdonald_basis(n);
    for (const Partition& mu : b.order) {
      const PartitionMap c = to_H_basis(b.polynomial(mu));
      CHECK(c.size() == 1);
      CHECK(c.at(mu) == RationalFunction(1));
    }
  }

  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial % 5;
    const SymFunc f = random_homogeneous(rng, static_cast<Basis>(trial % 5), n, 3, true);
    if (f.is_zero()) continue;
    CHECK(from_H_basis(to_H_basis(f)) == f);
  }
}

TEST_CASE("dual Pieri expansion") {
  const PartitionMap one = dual_pieri(Partition{1});
  CHECK(one.size() == 1);
  CHECK(one.at(Partition{}) == RationalFunction(1));

  const PartitionMap two = dual_pieri(Partition{2});
  CHECK(two.size() == 1);
  CHECK(two.at(Partition{1}) == rf(Poly(1) + q));

  for (int n = 2; n <= 6; ++n) {
    for (const Partition& mu : partitions_of(n)) {
      CAPTURE(mu.to_string());
      const PartitionMap c = dual_pieri(mu);
      std::set<Partition> support;
      for (const auto& [nu, coeff] : c) support.insert(nu);
      std::set<Partition> covers;
      for (const auto& [nu, cell] : covers_down(mu)) covers.insert(nu);
      CHECK(support == covers);
      CHECK(from_H_basis(c) == p1_perp(macdonald_basis(n).polynomial(mu)));
    }
  }
}

TEST_CASE("serialization matches the golden file") {
  CHECK(serialize(compute_basis(3)) == read_file(std::filesystem::path(NABLA_GOLDEN_DIR) / "macdonald_n3.txt"));
}

TEST_CASE("cache round trip and integrity") {
  TempDir dir;
  const MacdonaldBasis& b = macdonald_basis(4);
  cache_store(b, dir.path);
  const std::string stored = read_file(cache_file(dir.path, 4));
  CHECK(stored == serialize(b));

  std::string diagnostic;
  auto loaded = cache_load(4, dir.path, &diagnostic);
  REQUIRE(loaded.has_value());
  CHECK(serialize(*loaded) == stored);
  CHECK(loaded->kostka == b.kostka);

  CHECK_FALSE(cache_load(5, dir.path, &diagnostic).has_value());
  CHECK(diagnostic.find("not found") != std::string::npos);

  // flip one coefficient
  std::string tampered = stored;
  const auto pos = tampered.find("q + t");
  REQUIRE(pos != std::string::npos);
  tampered.replace(pos, 5, "q - t");
  std::ofstream(cache_file(dir.path, 4), std::ios::binary | std::ios::trunc) << tampered;
  CHECK_FALSE(cache_load(4, dir.path, &diagnostic).has_value());
  CHECK(diagnostic.find("checksum") != std::string::npos);

  // a different format version is rejected even with a valid checksum
  std::string body = stored.substr(0, stored.rfind("checksum"));
  body.replace(body.find("version 1"), 9, "version 2");
  CHECK_FALSE(deserialize(body + "checksum sha256 0\n", &diagnostic).has_value());

  // no leftover temporary files
  int files = 0;
  for ([[maybe_unused]] const auto& entry : std::filesystem::directory_iterator(dir.path)) ++files;
  CHECK(files == 1);
}

TEST_CASE("disk cache is used by macdonald_basis") {
  TempDir dir;
  set_cache_directory(dir.path);
  // degree 7 is not used anywhere else in this binary, so it is computed here
  const MacdonaldBasis& b = macdonald_basis(7);
  set_cache_directory(std::nullopt);
  auto loaded = cache_load(7, dir.path);
  REQUIRE(loaded.has_value());
  CHECK(loaded->kostka == b.kostka);
}

TEST_CASE("degree budget") {
  const int saved = degree_budget();
  set_degree_budget(3);
  CHECK_THROWS_WITH_AS(macdonald_basis(4), doctest::Contains("degree 4"), Error);
  CHECK_THROWS_AS(to_H_basis(s({2, 2})), Error);
  set_degree_budget(saved);
  CHECK(macdonald_basis(4).degree == 4);
}

TEST_CASE("diagonal operators") {
  const Eigenvalue nabla_ev = [](const Partition& mu) { return RationalFunction(mono(nstat(conjugate(mu)), nstat(mu))); };
  const SymFunc e3 = SymFunc::atom(Basis::e, Partition{3});
  const SymFunc expected = s({3}) + s({2, 1}) * rf(q * q + q * t + t * t + q + t) +
                           s({1, 1, 1}) * rf(q.pow(3) + q * q * t + q * t * t + t.pow(3) + q * t);
  CHECK(apply_diagonal(e3, nabla_ev) == expected);
  CHECK(apply_diagonal(e3, nabla_ev, "test-nabla") == expected);
  CHECK(apply_diagonal(e3 + SymFunc::constant(2), nabla_ev, "test-nabla") == expected + SymFunc::constant(2));
}
