// Modified Macdonald polynomials.
//
// For each mu the unknowns K_{la,mu} satisfy a linear system with
// coefficients in Z[q,t]. The system is solved at integer points (q0, t0)
// with exact rational elimination, the values are interpolated back to
// polynomials (degree in q at most n(mu'), in t at most n(mu)), and the
// resulting polynomials are checked against the system exactly.

#include "nabla/macdonald.hpp"

#include <openssl/evp.h>

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <sstream>
#include <unordered_map>

#include <unistd.h>

#include "nabla/plethysm.hpp"

namespace nabla {

namespace {

using PolyMatrix = std::vector<std::vector<Poly>>;

Integer factorial(int n) {
  Integer f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Weighted character sum: sum_rho chi^la(rho) chi^nu(rho) / z_rho * weight(rho).
PolyMatrix character_pairing(int n, const std::function<Poly(const Partition&)>& weight) {
  const auto& parts = partitions_of(n);
  const std::size_t N = parts.size();
  const Integer nfact = factorial(n);
  std::vector<std::vector<Integer>> chi(N, std::vector<Integer>(N));
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t r = 0; r < N; ++r) chi[i][r] = character(parts[i], parts[r]);
  std::vector<Poly> w(N);
  for (std::size_t r = 0; r < N; ++r) w[r] = weight(parts[r]) * Integer(nfact / z_lambda(parts[r]));
  PolyMatrix out(N, std::vector<Poly>(N));
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = i; j < N; ++j) {
      Poly acc;
      for (std::size_t r = 0; r < N; ++r) {
        const Integer c = chi[i][r] * chi[j][r];
        if (c != 0) acc += w[r] * c;
      }
      out[i][j] = acc.divided_by(nfact);
      out[j][i] = out[i][j];
    }
  }
  return out;
}

Poly one_minus_power_product(const Partition& rho, Var v) {
  Poly acc(1);
  for (int k : rho.parts()) {
    Monomial m;
    m.exponent(v) = k;
    acc *= Poly(1) - Poly::monomial(m);
  }
  return acc;
}

// A[la][nu] = <s_la, s_nu[(1 - q) w]>
PolyMatrix alphabet_matrix(int n) {
  return character_pairing(n, [](const Partition& rho) { return one_minus_power_product(rho, Var::q); });
}

// S[nu][la] = <s_nu, s_la>_*
PolyMatrix star_matrix(int n) {
  return character_pairing(n, [n](const Partition& rho) {
    Poly w = one_minus_power_product(rho, Var::q) * one_minus_power_product(rho, Var::t);
    return (n - rho.length()) % 2 == 0 ? w : -w;
  });
}

// Solves M x = b; nullopt unless M has full column rank and the system is
// consistent.
std::optional<std::vector<Rational>> solve_full_rank(std::vector<std::vector<Rational>> m, std::vector<Rational> b) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows == 0 ? 0 : m[0].size();
  std::size_t r = 0;
  std::vector<std::size_t> pivot_row(cols);
  for (std::size_t c = 0; c < cols; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) return std::nullopt;
    std::swap(m[p], m[r]);
    std::swap(b[p], b[r]);
    const Rational inv = 1 / m[r][c];
    for (std::size_t k = c; k < cols; ++k) m[r][k] *= inv;
    b[r] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Rational f = m[i][c];
      for (std::size_t k = c; k < cols; ++k) m[i][k] -= f * m[r][k];
      b[i] -= f * b[r];
    }
    pivot_row[c] = r++;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (b[i] != 0) return std::nullopt;
  std::vector<Rational> x(cols);
  for (std::size_t c = 0; c < cols; ++c) x[c] = b[pivot_row[c]];
  return x;
}

// Coefficients (constant term first) of the polynomial of degree < xs.size()
// through the points (xs[i], ys[i]); Newton form expanded by Horner.
std::vector<Rational> interpolate(const std::vector<Rational>& xs, std::vector<Rational> ys) {
  const std::size_t n = xs.size();
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = n - 1; i >= j; --i) ys[i] = (ys[i] - ys[i - 1]) / (xs[i] - xs[i - j]);
  std::vector<Rational> coeffs(n, 0);
  for (std::size_t k = n; k-- > 0;) {
    // coeffs <- coeffs * (x - xs[k]) + ys[k]
    for (std::size_t i = n - 1; i > 0; --i) coeffs[i] = coeffs[i - 1] - xs[k] * coeffs[i];
    coeffs[0] = -xs[k] * coeffs[0] + ys[k];
  }
  return coeffs;
}

Integer as_integer(const Rational& r, const Partition& mu) {
  if (r.get_den() != 1)
    throw Error("Macdonald solve for " + mu.to_string() + " produced a non-integral coefficient");
  return r.get_num();
}

// 2, 3, -2, 4, -3, 5, -4, ...
long sample_point(int i) {
  if (i == 0) return 2;
  return i % 2 == 1 ? 3 + i / 2 : -(2 + i / 2);
}

struct Sampler {
  int n;
  const std::vector<Partition>& parts;
  const PolyMatrix& alphabet;
  std::unordered_map<long, std::vector<std::vector<Rational>>> evaluated;

  const std::vector<std::vector<Rational>>& at(long x) {
    auto it = evaluated.find(x);
    if (it != evaluated.end()) return it->second;
    const std::size_t N = parts.size();
    std::vector<std::vector<Rational>> m(N, std::vector<Rational>(N));
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) m[i][j] = alphabet[i][j].evaluate(Rational(x), 0);
    return evaluated.emplace(x, std::move(m)).first->second;
  }

  std::optional<std::vector<Rational>> solve(const Partition& mu, long q0, long t0) {
    const std::size_t N = parts.size();
    const Partition mu_c = conjugate(mu);
    const auto& aq = at(q0);
    const auto& at_ = at(t0);
    std::vector<std::vector<Rational>> m;
    std::vector<Rational> b;
    std::vector<Rational> row(N, 0);
    row[0] = 1;  // parts[0] == (n)
    m.push_back(row);
    b.emplace_back(1);
    for (std::size_t i = 0; i < N; ++i) {
      if (!dominance_leq(mu, parts[i])) {
        m.push_back(aq[i]);
        b.emplace_back(0);
      }
      if (!dominance_leq(mu_c, parts[i])) {
        m.push_back(at_[i]);
        b.emplace_back(0);
      }
    }
    return solve_full_rank(std::move(m), std::move(b));
  }
};

constexpr int kMaxSamples = 400;

// Values of K_{., mu}(q, t0) for enough q0 to interpolate in q.
std::optional<std::vector<std::vector<Rational>>> q_coefficients(Sampler& s, const Partition& mu, long t0) {
  const std::size_t N = s.parts.size();
  const std::size_t need = static_cast<std::size_t>(nstat(conjugate(mu))) + 1;
  std::vector<Rational> xs;
  std::vector<std::vector<Rational>> values(N);
  for (int i = 0; xs.size() < need && i < kMaxSamples; ++i) {
    const long q0 = sample_point(i);
    auto x = s.solve(mu, q0, t0);
    if (!x) continue;
    xs.emplace_back(q0);
    for (std::size_t l = 0; l < N; ++l) values[l].push_back((*x)[l]);
  }
  if (xs.size() < need) return std::nullopt;
  std::vector<std::vector<Rational>> out(N);
  for (std::size_t l = 0; l < N; ++l) out[l] = interpolate(xs, values[l]);
  return out;
}

std::vector<Poly> solve_column(Sampler& s, const Partition& mu) {
  const std::size_t N = s.parts.size();
  const std::size_t dq = static_cast<std::size_t>(nstat(conjugate(mu))) + 1;
  const std::size_t dt = static_cast<std::size_t>(nstat(mu)) + 1;
  std::vector<Rational> ts;
  // per t0: [la][j] coefficient of q^j
  std::vector<std::vector<std::vector<Rational>>> slices;
  for (int i = 0; ts.size() < dt && i < kMaxSamples; ++i) {
    const long t0 = sample_point(i + 1);
    auto c = q_coefficients(s, mu, t0);
    if (!c) continue;
    ts.emplace_back(t0);
    slices.push_back(std::move(*c));
  }
  if (ts.size() < dt) throw Error("Macdonald system for " + mu.to_string() + " is singular at every sample point");
  std::vector<Poly> column(N);
  for (std::size_t l = 0; l < N; ++l) {
    std::vector<Poly::Term> terms;
    for (std::size_t j = 0; j < dq; ++j) {
      std::vector<Rational> ys;
      ys.reserve(ts.size());
      for (const auto& slice : slices) ys.push_back(slice[l][j]);
      const auto tc = interpolate(ts, ys);
      for (std::size_t k = 0; k < tc.size(); ++k) {
        if (tc[k] == 0) continue;
        terms.push_back({Monomial{static_cast<int>(j), static_cast<int>(k), 0}, as_integer(tc[k], mu)});
      }
    }
    column[l] = Poly::from_terms(std::move(terms));
  }
  return column;
}

PolyMatrix transpose_qt(const PolyMatrix& a) {
  PolyMatrix out = a;
  for (auto& row : out)
    for (auto& p : row) p = p.swap_qt();
  return out;
}

const PolyMatrix& cached_alphabet_matrix(int n) {
  static std::mutex m;
  static std::map<int, std::unique_ptr<PolyMatrix>> table;
  {
    std::lock_guard lock(m);
    auto it = table.find(n);
    if (it != table.end()) return *it->second;
  }
  auto built = std::make_unique<PolyMatrix>(alphabet_matrix(n));
  std::lock_guard lock(m);
  auto [it, inserted] = table.try_emplace(n, std::move(built));
  return *it->second;
}

}  // namespace

const Poly& MacdonaldBasis::K(const Partition& la, const Partition& mu) const {
  if (la.size() != degree || mu.size() != degree) throw Error("partition size does not match the basis degree");
  return kostka[partition_index(la)][partition_index(mu)];
}

SymFunc MacdonaldBasis::polynomial(const Partition& mu) const {
  SymFunc out(Basis::s);
  const std::size_t j = partition_index(mu);
  for (std::size_t i = 0; i < order.size(); ++i)
    if (!kostka[i][j].is_zero()) out.add_term(order[i], kostka[i][j]);
  return out;
}

MacdonaldBasis compute_basis(int n) {
  if (n < 0) throw Error("compute_basis needs a nonnegative degree");
  MacdonaldBasis b;
  b.degree = n;
  b.order = partitions_of(n);
  const std::size_t N = b.order.size();
  b.kostka.assign(N, std::vector<Poly>(N));
  if (n == 0) {
    b.kostka[0][0] = Poly(1);
    return b;
  }
  Sampler sampler{n, b.order, cached_alphabet_matrix(n), {}};
  for (std::size_t j = 0; j < N; ++j) {
    auto column = solve_column(sampler, b.order[j]);
    for (std::size_t i = 0; i < N; ++i) b.kostka[i][j] = std::move(column[i]);
  }
  if (auto problem = check_characterization(b)) throw Error("Macdonald solve failed verification: " + *problem);
  return b;
}

std::optional<std::string> check_characterization(const MacdonaldBasis& b) {
  const int n = b.degree;
  const std::size_t N = b.order.size();
  if (b.order != partitions_of(n)) return "partition order does not match";
  if (b.kostka.size() != N) return "wrong number of rows";
  if (n == 0) return b.kostka[0][0].is_one() ? std::nullopt : std::optional<std::string>("H of degree 0 must be 1");
  const PolyMatrix& aq = cached_alphabet_matrix(n);
  const PolyMatrix at = transpose_qt(aq);
  for (std::size_t j = 0; j < N; ++j) {
    const Partition& mu = b.order[j];
    const Partition mu_c = conjugate(mu);
    if (!b.kostka[0][j].is_one()) return "<s_n, H_" + mu.to_string() + "> is not 1";
    for (std::size_t i = 0; i < N; ++i) {
      const bool need_q = !dominance_leq(mu, b.order[i]);
      const bool need_t = !dominance_leq(mu_c, b.order[i]);
      if (!need_q && !need_t) continue;
      Poly sq;
      Poly st;
      for (std::size_t v = 0; v < N; ++v) {
        if (b.kostka[v][j].is_zero()) continue;
        if (need_q) sq += aq[i][v] * b.kostka[v][j];
        if (need_t) st += at[i][v] * b.kostka[v][j];
      }
      if (!sq.is_zero())
        return "<s_" + b.order[i].to_string() + ", H_" + mu.to_string() + "[(1-q)w]> is not 0";
      if (!st.is_zero())
        return "<s_" + b.order[i].to_string() + ", H_" + mu.to_string() + "[(1-t)w]> is not 0";
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Budget and caches

namespace {

std::atomic<int> g_budget{8};

struct CacheDir {
  std::mutex mu;
  std::optional<std::filesystem::path> dir;
};

CacheDir& cache_dir_state() {
  static CacheDir c;
  return c;
}

struct Slot {
  std::once_flag once;
  std::unique_ptr<MacdonaldBasis> basis;
};

Slot& basis_slot(int n) {
  static std::mutex m;
  static std::map<int, std::unique_ptr<Slot>> slots;
  std::lock_guard lock(m);
  auto& s = slots[n];
  if (!s) s = std::make_unique<Slot>();
  return *s;
}

void check_budget(int n) {
  const int budget = g_budget.load();
  if (n > budget)
    throw Error("degree " + std::to_string(n) + " exceeds the Macdonald degree budget of " + std::to_string(budget));
}

}  // namespace

int degree_budget() { return g_budget.load(); }

void set_degree_budget(int n) {
  if (n < 0) throw Error("degree budget must be nonnegative");
  g_budget.store(n);
}

void set_cache_directory(std::optional<std::filesystem::path> dir) {
  auto& c = cache_dir_state();
  std::lock_guard lock(c.mu);
  c.dir = std::move(dir);
}

std::optional<std::filesystem::path> cache_directory() {
  auto& c = cache_dir_state();
  std::lock_guard lock(c.mu);
  return c.dir;
}

std::filesystem::path default_cache_directory() {
  if (const char* env = std::getenv("NABLA_KIT_CACHE"); env != nullptr && *env != '\0') return env;
  return ".nabla-cache";
}

const MacdonaldBasis& macdonald_basis(int n) {
  if (n < 0) throw Error("Macdonald basis needs a nonnegative degree");
  check_budget(n);
  Slot& slot = basis_slot(n);
  std::call_once(slot.once, [&] {
    const auto dir = cache_directory();
    if (dir) {
      std::string diagnostic;
      if (auto loaded = cache_load(n, *dir, &diagnostic)) {
        slot.basis = std::make_unique<MacdonaldBasis>(std::move(*loaded));
        return;
      }
      if (std::filesystem::exists(cache_file(*dir, n))) std::cerr << "nabla-kit: ignoring cache: " << diagnostic << '\n';
    }
    slot.basis = std::make_unique<MacdonaldBasis>(compute_basis(n));
    if (dir) {
      try {
        cache_store(*slot.basis, *dir);
      } catch (const std::exception& e) {
        std::cerr << "nabla-kit: could not write cache: " << e.what() << '\n';
      }
    }
  });
  return *slot.basis;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

constexpr const char* kHeader = "nabla-kit macdonald basis";
constexpr int kFormatVersion = 1;

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 computation failed");
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  return out.str();
}

std::optional<MacdonaldBasis> fail(std::string* diagnostic, const std::string& message) {
  if (diagnostic) *diagnostic = message;
  return std::nullopt;
}

}  // namespace

std::string serialize(const MacdonaldBasis& b) {
  std::ostringstream body;
  body << kHeader << '\n' << "version " << kFormatVersion << '\n' << "degree " << b.degree << '\n';
  for (std::size_t j = 0; j < b.order.size(); ++j) {
    body << "H " << b.order[j].to_string() << '\n';
    for (std::size_t i = 0; i < b.order.size(); ++i) {
      if (b.kostka[i][j].is_zero()) continue;
      body << "  " << b.order[i].to_string() << ' ' << b.kostka[i][j].to_string() << '\n';
    }
  }
  std::string text = body.str();
  text += "checksum sha256 " + sha256_hex(text) + '\n';
  return text;
}

std::optional<MacdonaldBasis> deserialize(const std::string& text, std::string* diagnostic) {
  const std::string marker = "checksum sha256 ";
  const auto pos = text.rfind(marker);
  if (pos == std::string::npos || (pos != 0 && text[pos - 1] != '\n')) return fail(diagnostic, "missing checksum line");
  const std::string body = text.substr(0, pos);
  std::string stored = text.substr(pos + marker.size());
  if (!stored.empty() && stored.back() == '\n') stored.pop_back();
  if (stored != sha256_hex(body)) return fail(diagnostic, "checksum mismatch");

  std::istringstream in(body);
  std::string line;
  if (!std::getline(in, line) || line != kHeader) return fail(diagnostic, "unrecognized header");
  if (!std::getline(in, line) || line != "version " + std::to_string(kFormatVersion))
    return fail(diagnostic, "unsupported format version: " + line);
  MacdonaldBasis b;
  try {
    if (!std::getline(in, line) || line.rfind("degree ", 0) != 0) return fail(diagnostic, "missing degree line");
    b.degree = std::stoi(line.substr(7));
    if (b.degree < 0) return fail(diagnostic, "negative degree");
    b.order = partitions_of(b.degree);
    const std::size_t N = b.order.size();
    b.kostka.assign(N, std::vector<Poly>(N));
    std::size_t column = 0;
    bool open = false;
    while (std::getline(in, line)) {
      if (line.rfind("H ", 0) == 0) {
        const Partition mu = parse_partition(line.substr(2));
        if (column >= N || mu != b.order[column]) return fail(diagnostic, "unexpected block " + line);
        ++column;
        open = true;
        continue;
      }
      if (!open || line.rfind("  ", 0) != 0) return fail(diagnostic, "malformed line: " + line);
      const auto space = line.find(' ', 2);
      if (space == std::string::npos) return fail(diagnostic, "malformed line: " + line);
      const Partition la = parse_partition(line.substr(2, space - 2));
      if (la.size() != b.degree) return fail(diagnostic, "partition of the wrong size: " + line);
      Poly k = parse_poly(line.substr(space + 1));
      if (k.aux() != Aux::none) return fail(diagnostic, "coefficient outside Z[q,t]: " + line);
      b.kostka[partition_index(la)][column - 1] = std::move(k);
    }
    if (column != N) return fail(diagnostic, "missing blocks");
  } catch (const std::exception& e) {
    return fail(diagnostic, std::string("parse error: ") + e.what());
  }
  for (std::size_t j = 0; j < b.order.size(); ++j)
    if (!b.kostka[0][j].is_one()) return fail(diagnostic, "K_{(n)," + b.order[j].to_string() + "} is not 1");
  if (serialize(b) != text) return fail(diagnostic, "file is not in canonical form");
  return b;
}

std::filesystem::path cache_file(const std::filesystem::path& dir, int n) {
  return dir / ("macdonald_n" + std::to_string(n) + ".txt");
}

void cache_store(const MacdonaldBasis& b, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto target = cache_file(dir, b.degree);
  static std::atomic<unsigned> counter{0};
  std::ostringstream tmp_name;
  tmp_name << target.filename().string() << ".tmp." << ::getpid() << '.' << counter++;
  const auto tmp = dir / tmp_name.str();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out << serialize(b);
    out.flush();
    if (!out) {
      std::filesystem::remove(tmp);
      throw Error("failed writing " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, target);
}

std::optional<MacdonaldBasis> cache_load(int n, const std::filesystem::path& dir, std::string* diagnostic) {
  const auto path = cache_file(dir, n);
  std::ifstream in(path, std::ios::binary);
  if (!in) return fail(diagnostic, path.string() + " not found");
  std::ostringstream buf;
  buf << in.rdbuf();
  auto b = deserialize(buf.str(), diagnostic);
  if (b && b->degree != n) return fail(diagnostic, path.string() + " holds degree " + std::to_string(b->degree));
  if (!b && diagnostic) *diagnostic = path.string() + ": " + *diagnostic;
  return b;
}

// ---------------------------------------------------------------------------
// Change of basis

namespace {

struct StarData {
  PolyMatrix g;          // g[mu][la] = <H_mu, s_la>_*
  std::vector<Poly> w;   // w[mu] = <H_mu, H_mu>_*
};

StarData compute_star(const MacdonaldBasis& b) {
  const std::size_t N = b.order.size();
  StarData d;
  if (b.degree == 0) {
    d.g = {{Poly(1)}};
    d.w = {Poly(1)};
    return d;
  }
  const PolyMatrix s = star_matrix(b.degree);
  d.g.assign(N, std::vector<Poly>(N));
  d.w.assign(N, Poly());
  for (std::size_t mu = 0; mu < N; ++mu) {
    for (std::size_t la = 0; la < N; ++la) {
      Poly acc;
      for (std::size_t nu = 0; nu < N; ++nu)
        if (!b.kostka[nu][mu].is_zero()) acc += b.kostka[nu][mu] * s[nu][la];
      d.g[mu][la] = std::move(acc);
    }
    Poly w;
    for (std::size_t la = 0; la < N; ++la) w += b.kostka[la][mu] * d.g[mu][la];
    if (w.is_zero()) throw Error("H_" + b.order[mu].to_string() + " has zero *-norm");
    d.w[mu] = std::move(w);
  }
  return d;
}

const StarData& star_data(int n) {
  static std::mutex m;
  static std::map<int, std::unique_ptr<StarData>> table;
  {
    std::lock_guard lock(m);
    auto it = table.find(n);
    if (it != table.end()) return *it->second;
  }
  auto built = std::make_unique<StarData>(compute_star(macdonald_basis(n)));
  std::lock_guard lock(m);
  auto [it, inserted] = table.try_emplace(n, std::move(built));
  return *it->second;
}

std::vector<RationalFunction> schur_vector(const SymFunc& f, int n) {
  const SymFunc fs = convert(f, Basis::s);
  std::vector<RationalFunction> out(partitions_of(n).size());
  for (const auto& [la, c] : fs.terms()) out[partition_index(la)] = c;
  return out;
}

}  // namespace

RationalFunction star_scalar(const SymFunc& f, const SymFunc& g) {
  const SymFunc fp = convert(f, Basis::p);
  const SymFunc gp = convert(g, Basis::p);
  std::vector<RationalFunction> parts;
  for (const auto& [la, c] : fp.terms()) {
    const RationalFunction d = gp.coefficient(la);
    if (d.is_zero()) continue;
    const int sign = (la.size() - la.length()) % 2 == 0 ? 1 : -1;
    Poly w = one_minus_power_product(la, Var::q) * one_minus_power_product(la, Var::t) * Integer(sign * z_lambda(la));
    parts.push_back(c * d * RationalFunction(std::move(w)));
  }
  return sum(parts);
}

PartitionMap to_H_basis(const SymFunc& f) {
  PartitionMap out;
  if (f.is_zero()) return out;
  const int n = f.degree();
  check_budget(n);
  const MacdonaldBasis& b = macdonald_basis(n);
  const StarData& d = star_data(n);
  const auto fv = schur_vector(f, n);
  for (std::size_t mu = 0; mu < b.order.size(); ++mu) {
    std::vector<RationalFunction> parts;
    for (std::size_t la = 0; la < fv.size(); ++la)
      if (!fv[la].is_zero() && !d.g[mu][la].is_zero()) parts.push_back(fv[la] * RationalFunction(d.g[mu][la]));
    RationalFunction c = sum(parts) / RationalFunction(d.w[mu]);
    if (!c.is_zero()) out.emplace(b.order[mu], std::move(c));
  }
  return out;
}

SymFunc from_H_basis(const PartitionMap& coeffs) {
  SymFuncBuilder out(Basis::s);
  for (const auto& [mu, c] : coeffs) {
    const MacdonaldBasis& b = macdonald_basis(mu.size());
    const std::size_t j = partition_index(mu);
    for (std::size_t i = 0; i < b.order.size(); ++i)
      if (!b.kostka[i][j].is_zero()) out.add(b.order[i], c * RationalFunction(b.kostka[i][j]));
  }
  return out.build();
}

SymFunc hall_littlewood_Hn(int n) {
  if (n < 0) throw Error("hall_littlewood_Hn needs a nonnegative degree");
  const SymFunc alphabet = SymFunc::atom(Basis::p, Partition{1}, RationalFunction::normalize(Poly(1), Poly(1) - Poly::q()));
  const SymFunc h = n == 0 ? SymFunc::constant(1, Basis::h) : SymFunc::atom(Basis::h, Partition{n});
  return convert(plethysm(h, alphabet), Basis::s) * RationalFunction(q_pochhammer(n));
}

SymFunc hall_littlewood_Hn_e_form(int n) {
  if (n < 0) throw Error("hall_littlewood_Hn needs a nonnegative degree");
  const SymFunc alphabet = SymFunc::atom(Basis::p, Partition{1}, RationalFunction::normalize(Poly(1), Poly(1) - Poly::q()));
  const SymFunc e = n == 0 ? SymFunc::constant(1, Basis::e) : SymFunc::atom(Basis::e, Partition{n});
  return convert(plethysm(e, alphabet), Basis::s) * RationalFunction(q_pochhammer(n));
}

PartitionMap dual_pieri(const Partition& mu) {
  if (mu.empty()) return {};
  const SymFunc h = macdonald_basis(mu.size()).polynomial(mu);
  const SymFunc down = p1_perp(h);
  if (mu.size() == 1) return {{Partition{}, down.constant_value().value_or(RationalFunction())}};
  return to_H_basis(down);
}

// ---------------------------------------------------------------------------
// Diagonal operators

namespace {

// Images of single Schur functions, filled in on demand.
struct ColumnCache {
  std::mutex m;
  std::map<std::pair<std::string, int>, std::map<Partition, SymFunc, PartitionOrder>> table;
};

ColumnCache& column_cache() {
  static ColumnCache c;
  return c;
}

SymFunc apply_direct(const SymFunc& part, const Eigenvalue& eigenvalue) {
  PartitionMap c = to_H_basis(part);
  for (auto& [mu, coeff] : c) coeff *= eigenvalue(mu);
  return from_H_basis(c);
}

// inputs with at most this many Schur terms go through the column cache
constexpr std::size_t kSparseSupport = 2;

}  // namespace

SymFunc apply_diagonal(const SymFunc& f, const Eigenvalue& eigenvalue, const std::string& cache_key) {
  SymFunc out(Basis::s);
  for (int n : f.degrees()) {
    const SymFunc part = f.project_degree(n);
    if (n == 0) {
      out += part * eigenvalue(Partition{});
      continue;
    }
    check_budget(n);
    if (cache_key.empty()) {
      out += apply_direct(part, eigenvalue);
      continue;
    }
    const SymFunc fs = convert(part, Basis::s);
    ColumnCache& cache = column_cache();
    std::vector<std::pair<Partition, const SymFunc*>> found;
    std::vector<Partition> missing;
    {
      std::lock_guard lock(cache.m);
      auto& cols = cache.table[{cache_key, n}];
      for (const auto& [la, c] : fs.terms()) {
        auto it = cols.find(la);
        if (it == cols.end())
          missing.push_back(la);
        else
          found.emplace_back(la, &it->second);  // map nodes are stable
      }
    }
    if (missing.size() > kSparseSupport) {
      out += apply_direct(part, eigenvalue);
      continue;
    }
    for (const Partition& la : missing) {
      SymFunc image = apply_direct(SymFunc::atom(Basis::s, la), eigenvalue);
      std::lock_guard lock(cache.m);
      auto [it, inserted] = cache.table[{cache_key, n}].try_emplace(la, std::move(image));
      found.emplace_back(la, &it->second);
    }
    for (const auto& [la, image] : found) out += *image * fs.coefficient(la);
  }
  return out;
}

}  // namespace nabla
