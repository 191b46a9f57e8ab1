#include "nabla/symfunc.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <tuple>
#include <unordered_map>

namespace nabla {

std::string_view basis_name(Basis b) {
  switch (b) {
    case Basis::p: return "p";
    case Basis::e: return "e";
    case Basis::h: return "h";
    case Basis::m: return "m";
    case Basis::s: return "s";
  }
  return "?";
}

std::optional<Basis> basis_from_name(std::string_view name) {
  if (name == "p") return Basis::p;
  if (name == "e") return Basis::e;
  if (name == "h") return Basis::h;
  if (name == "m") return Basis::m;
  if (name == "s") return Basis::s;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// SymFunc

SymFunc SymFunc::atom(Basis b, const Partition& la, const RationalFunction& c) {
  SymFunc f(b);
  f.add_term(la, c);
  return f;
}

SymFunc SymFunc::constant(const RationalFunction& c, Basis b) { return atom(b, Partition(), c); }

RationalFunction SymFunc::coefficient(const Partition& la) const {
  auto it = terms_.find(la);
  return it == terms_.end() ? RationalFunction() : it->second;
}

void SymFunc::add_term(const Partition& la, const RationalFunction& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(la, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

std::set<int> SymFunc::degrees() const {
  std::set<int> d;
  for (const auto& [la, c] : terms_) d.insert(la.size());
  return d;
}

int SymFunc::degree() const {
  auto d = degrees();
  if (d.empty()) return 0;
  if (d.size() > 1) throw Error("symmetric function is not homogeneous");
  return *d.begin();
}

int SymFunc::max_degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first.size(); }

SymFunc SymFunc::project_degree(int k) const {
  SymFunc out(basis_);
  for (const auto& [la, c] : terms_)
    if (la.size() == k) out.terms_.emplace(la, c);
  return out;
}

std::optional<RationalFunction> SymFunc::constant_value() const {
  if (terms_.empty()) return RationalFunction();
  if (terms_.size() == 1 && terms_.begin()->first.empty()) return terms_.begin()->second;
  return std::nullopt;
}

SymFunc SymFunc::operator-() const {
  SymFunc out = *this;
  for (auto& [la, c] : out.terms_) c = -c;
  return out;
}

SymFunc& SymFunc::operator+=(const SymFunc& o) {
  if (o.basis_ != basis_ && !o.is_zero()) return *this += convert(o, basis_);
  for (const auto& [la, c] : o.terms_) add_term(la, c);
  return *this;
}

SymFunc& SymFunc::operator-=(const SymFunc& o) { return *this += -o; }

SymFunc& SymFunc::operator*=(const RationalFunction& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  if (c.is_one()) return *this;
  for (auto& [la, x] : terms_) x *= c;
  return *this;
}

SymFunc operator*(const SymFunc& a, const SymFunc& b) { return multiply(a, b); }

bool operator==(const SymFunc& a, const SymFunc& b) {
  if (a.basis_ == b.basis_) return a.terms_ == b.terms_;
  return a.terms_ == convert(b, a.basis_).terms_;
}

SymFunc SymFunc::map_coefficients(const std::function<RationalFunction(const RationalFunction&)>& fn) const {
  SymFunc out(basis_);
  for (const auto& [la, c] : terms_) out.add_term(la, fn(c));
  return out;
}

namespace {

std::string render_term(const std::string& atom, const RationalFunction& c) {
  if (atom.empty()) return c.to_string();
  if (c.is_one()) return atom;
  if (c == RationalFunction(-1)) return "-" + atom;
  std::string cs = c.to_string();
  const bool simple = c.den().is_one() && c.num().is_monomial();
  if (!simple) cs = "(" + cs + ")";
  return cs + "*" + atom;
}

}  // namespace

std::string SymFunc::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [la, c] : terms_) {
    const std::string atom = la.empty() ? "" : std::string(basis_name(basis_)) + la.to_string();
    std::string t = render_term(atom, c);
    if (out.empty()) {
      out = t;
    } else if (t.front() == '-') {
      out += " - " + t.substr(1);
    } else {
      out += " + " + t;
    }
  }
  return out;
}

void SymFuncBuilder::add(const Partition& la, RationalFunction c) {
  if (c.is_zero()) return;
  pending_[la].push_back(std::move(c));
}

SymFunc SymFuncBuilder::build() const {
  SymFunc out(basis_);
  for (const auto& [la, cs] : pending_) out.add_term(la, sum(cs));
  return out;
}

// ---------------------------------------------------------------------------
// Characters, Kostka numbers, transition matrices

namespace {

Integer mn_rec(std::vector<int>& beta, const std::vector<int>& rho, std::size_t j) {
  if (j == rho.size()) return 1;
  const int k = rho[j];
  Integer total = 0;
  for (std::size_t i = 0; i < beta.size(); ++i) {
    const int b = beta[i];
    const int target = b - k;
    if (target < 0) continue;
    if (std::find(beta.begin(), beta.end(), target) != beta.end()) continue;
    int between = 0;
    for (int c : beta)
      if (c > target && c < b) ++between;
    beta[i] = target;
    Integer sub = mn_rec(beta, rho, j + 1);
    beta[i] = b;
    if (between % 2) total -= sub;
    else total += sub;
  }
  return total;
}

}  // namespace

Integer character(const Partition& la, const Partition& rho) {
  if (la.size() != rho.size()) throw Error("character needs partitions of the same size");
  std::vector<int> beta;
  const int len = la.length();
  for (int i = 0; i < len; ++i) beta.push_back(la.parts()[static_cast<std::size_t>(i)] + len - 1 - i);
  return mn_rec(beta, rho.parts(), 0);
}

Integer kostka_number(const Partition& la, const Partition& mu) {
  if (la.size() != mu.size()) return 0;
  if (mu.empty()) return 1;
  static std::mutex m;
  static std::map<std::pair<Partition, Partition>, Integer> memo;
  {
    std::lock_guard lock(m);
    auto it = memo.find({la, mu});
    if (it != memo.end()) return it->second;
  }
  std::vector<int> rest = mu.parts();
  const int last = rest.back();
  rest.pop_back();
  const Partition mu_rest(rest);
  Integer total = 0;
  for (const Partition& nu : remove_horizontal_strips(la, last)) total += kostka_number(nu, mu_rest);
  std::lock_guard lock(m);
  memo.emplace(std::make_pair(la, mu), total);
  return total;
}

std::size_t partition_index(const Partition& la) {
  static std::mutex m;
  static std::unordered_map<Partition, std::size_t, PartitionHash> index;
  std::lock_guard lock(m);
  auto it = index.find(la);
  if (it != index.end()) return it->second;
  const auto& all = partitions_of(la.size());
  for (std::size_t i = 0; i < all.size(); ++i) index.emplace(all[i], i);
  return index.at(la);
}

RationalMatrix invert(const RationalMatrix& a) {
  const std::size_t n = a.size();
  RationalMatrix m = a;
  RationalMatrix inv(n, std::vector<Rational>(n, 0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) throw Error("singular transition matrix");
    std::swap(m[piv], m[col]);
    std::swap(inv[piv], inv[col]);
    const Rational d = m[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      m[col][j] /= d;
      inv[col][j] /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      const Rational f = m[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        m[r][j] -= f * m[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

namespace {

RationalMatrix mat_mul(const RationalMatrix& a, const RationalMatrix& b) {
  const std::size_t n = a.size();
  RationalMatrix c(n, std::vector<Rational>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (b[k][j] != 0) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

RationalMatrix identity(std::size_t n) {
  RationalMatrix m(n, std::vector<Rational>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

// Matrices relating each basis to s; the p-basis goes through characters.
RationalMatrix to_s_matrix(Basis b, int n) {
  const auto& parts = partitions_of(n);
  const std::size_t N = parts.size();
  RationalMatrix m(N, std::vector<Rational>(N, 0));
  switch (b) {
    case Basis::s: return identity(N);
    case Basis::p:  // p_rho = sum chi^la(rho) s_la
      for (std::size_t r = 0; r < N; ++r)
        for (std::size_t l = 0; l < N; ++l) m[r][l] = Rational(character(parts[l], parts[r]));
      return m;
    case Basis::h:  // h_la = sum_nu K_{nu la} s_nu
      for (std::size_t l = 0; l < N; ++l)
        for (std::size_t v = 0; v < N; ++v) m[l][v] = Rational(kostka_number(parts[v], parts[l]));
      return m;
    case Basis::e:  // e_la = sum_nu K_{nu' la} s_nu
      for (std::size_t l = 0; l < N; ++l)
        for (std::size_t v = 0; v < N; ++v) m[l][v] = Rational(kostka_number(conjugate(parts[v]), parts[l]));
      return m;
    case Basis::m: {  // s = K m, so m = K^{-1} s
      RationalMatrix k(N, std::vector<Rational>(N, 0));
      for (std::size_t l = 0; l < N; ++l)
        for (std::size_t v = 0; v < N; ++v) k[l][v] = Rational(kostka_number(parts[l], parts[v]));
      return invert(k);
    }
  }
  throw Error("unknown basis");
}

struct TransitionCache {
  std::mutex mu;
  std::map<std::tuple<int, int, int>, std::unique_ptr<RationalMatrix>> table;
};

TransitionCache& transition_cache() {
  static TransitionCache c;
  return c;
}

const RationalMatrix* lookup(int from, int to, int n) {
  auto& c = transition_cache();
  std::lock_guard lock(c.mu);
  auto it = c.table.find({from, to, n});
  return it == c.table.end() ? nullptr : it->second.get();
}

const RationalMatrix& store(int from, int to, int n, RationalMatrix m) {
  auto& c = transition_cache();
  std::lock_guard lock(c.mu);
  auto [it, inserted] = c.table.try_emplace({from, to, n}, nullptr);
  if (inserted) it->second = std::make_unique<RationalMatrix>(std::move(m));
  return *it->second;
}

const RationalMatrix& basis_to_p(Basis b, int n);

const RationalMatrix& s_to_p(int n) {
  if (auto* m = lookup(static_cast<int>(Basis::s), static_cast<int>(Basis::p), n)) return *m;
  // s_la = sum_rho chi^la(rho) / z_rho p_rho
  const auto& parts = partitions_of(n);
  const std::size_t N = parts.size();
  RationalMatrix m(N, std::vector<Rational>(N, 0));
  for (std::size_t r = 0; r < N; ++r) {
    const Integer z = z_lambda(parts[r]);
    for (std::size_t l = 0; l < N; ++l) {
      m[l][r] = Rational(character(parts[l], parts[r]), z);
      m[l][r].canonicalize();
    }
  }
  return store(static_cast<int>(Basis::s), static_cast<int>(Basis::p), n, std::move(m));
}

const RationalMatrix& basis_to_p(Basis b, int n) {
  if (b == Basis::s) return s_to_p(n);
  if (auto* m = lookup(static_cast<int>(b), static_cast<int>(Basis::p), n)) return *m;
  RationalMatrix m = b == Basis::p ? identity(partitions_of(n).size()) : mat_mul(to_s_matrix(b, n), s_to_p(n));
  return store(static_cast<int>(b), static_cast<int>(Basis::p), n, std::move(m));
}

}  // namespace

const RationalMatrix& transition_matrix(Basis from, Basis to, int n) {
  if (auto* m = lookup(static_cast<int>(from), static_cast<int>(to), n)) return *m;
  RationalMatrix result;
  if (from == to) {
    result = identity(partitions_of(n).size());
  } else if (to == Basis::p) {
    return basis_to_p(from, n);
  } else if (from == Basis::p) {
    result = invert(basis_to_p(to, n));
  } else if (to == Basis::s) {
    result = to_s_matrix(from, n);
  } else {
    result = mat_mul(basis_to_p(from, n), transition_matrix(Basis::p, to, n));
  }
  return store(static_cast<int>(from), static_cast<int>(to), n, std::move(result));
}

// ---------------------------------------------------------------------------
// Operations

SymFunc convert(const SymFunc& f, Basis target) {
  if (f.basis() == target) return f;
  SymFuncBuilder out(target);
  for (int d : f.degrees()) {
    const auto& parts = partitions_of(d);
    const auto& m = transition_matrix(f.basis(), target, d);
    for (const auto& [la, c] : f.terms()) {
      if (la.size() != d) continue;
      const auto& row = m[partition_index(la)];
      for (std::size_t j = 0; j < row.size(); ++j) {
        if (row[j] == 0) continue;
        RationalFunction x = c;
        out.add(parts[j], std::move(x.scale(row[j])));
      }
    }
  }
  return out.build();
}

namespace {

Partition merge(const Partition& a, const Partition& b) {
  std::vector<int> v;
  v.reserve(static_cast<std::size_t>(a.length() + b.length()));
  std::merge(a.parts().begin(), a.parts().end(), b.parts().begin(), b.parts().end(), std::back_inserter(v),
             std::greater<>());
  return Partition(std::move(v));
}

bool multiplicative(Basis b) { return b == Basis::p || b == Basis::e || b == Basis::h; }

}  // namespace

SymFunc multiply(const SymFunc& f, const SymFunc& g) {
  if (f.is_zero() || g.is_zero()) return SymFunc(f.basis());
  if (auto c = g.constant_value()) return f * *c;
  if (auto c = f.constant_value()) {
    SymFunc r = convert(g, f.basis());
    return r *= *c;
  }
  const Basis work = multiplicative(f.basis()) ? f.basis() : Basis::p;
  const SymFunc a = convert(f, work);
  const SymFunc b = convert(g, work);
  SymFuncBuilder out(work);
  for (const auto& [la, x] : a.terms())
    for (const auto& [mu, y] : b.terms()) out.add(merge(la, mu), x * y);
  return convert(out.build(), f.basis());
}

RationalFunction hall_scalar(const SymFunc& f, const SymFunc& g) {
  std::vector<RationalFunction> acc;
  if (f.basis() == Basis::s && g.basis() == Basis::s) {
    for (const auto& [la, x] : f.terms()) {
      auto it = g.terms().find(la);
      if (it != g.terms().end()) acc.push_back(x * it->second);
    }
    return sum(acc);
  }
  const SymFunc a = convert(f, Basis::p);
  const SymFunc b = convert(g, Basis::p);
  for (const auto& [la, x] : a.terms()) {
    auto it = b.terms().find(la);
    if (it == b.terms().end()) continue;
    RationalFunction c = x * it->second;
    acc.push_back(std::move(c.scale(Rational(z_lambda(la)))));
  }
  return sum(acc);
}

namespace {

// p_k-perp on a power-sum term: k * m_k(sigma) * p_{sigma - k}.
std::optional<std::pair<Partition, int>> remove_part(const Partition& sigma, int k) {
  const int m = sigma.multiplicity(k);
  if (m == 0) return std::nullopt;
  std::vector<int> v = sigma.parts();
  v.erase(std::find(v.begin(), v.end(), k));
  return std::make_pair(Partition(std::move(v)), k * m);
}

}  // namespace

SymFunc perp_apply(const SymFunc& f, const SymFunc& g) {
  const SymFunc a = convert(f, Basis::p);
  const SymFunc b = convert(g, Basis::p);
  SymFuncBuilder out(Basis::p);
  for (const auto& [rho, x] : a.terms()) {
    for (const auto& [sigma, y] : b.terms()) {
      Partition cur = sigma;
      Integer factor = 1;
      bool ok = true;
      for (int k : rho.parts()) {
        auto r = remove_part(cur, k);
        if (!r) {
          ok = false;
          break;
        }
        cur = r->first;
        factor *= r->second;
      }
      if (!ok) continue;
      RationalFunction c = x * y;
      out.add(cur, std::move(c.scale(Rational(factor))));
    }
  }
  return convert(out.build(), g.basis());
}

SymFunc p1_perp(const SymFunc& g) { return perp_apply(SymFunc::atom(Basis::p, Partition{1}), g); }

SymFunc project_degree(const SymFunc& f, int k) { return f.project_degree(k); }

RationalFunction hilbert_of_frobenius(const SymFunc& f) {
  if (!f.is_homogeneous()) throw Error("hilbert series needs a homogeneous symmetric function");
  const int n = f.degree();
  return hall_scalar(f, SymFunc::atom(Basis::p, Partition(std::vector<int>(static_cast<std::size_t>(n), 1))));
}

}  // namespace nabla
