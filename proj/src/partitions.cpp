#include "nabla/partitions.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace nabla {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] <= 0) throw Error("partition parts must be positive");
    if (i > 0 && parts_[i] > parts_[i - 1]) throw Error("partition parts not weakly decreasing");
    size_ += parts_[i];
  }
}

Partition Partition::from_unsorted(std::vector<int> parts) {
  std::erase(parts, 0);
  std::sort(parts.begin(), parts.end(), std::greater<>());
  return Partition(std::move(parts));
}

int Partition::multiplicity(int k) const {
  return static_cast<int>(std::count(parts_.begin(), parts_.end(), k));
}

std::string Partition::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(parts_[i]);
  }
  return s + "]";
}

std::size_t PartitionHash::operator()(const Partition& p) const {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (int x : p.parts()) {
    h ^= static_cast<std::size_t>(x);
    h *= 0x100000001b3ULL;
  }
  return h;
}

Partition parse_partition(const std::string& text) {
  std::string s = text;
  std::erase_if(s, [](char c) { return c == ' ' || c == '[' || c == ']'; });
  std::vector<int> parts;
  if (!s.empty()) {
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty() || !std::all_of(item.begin(), item.end(), ::isdigit))
        throw Error("malformed partition '" + text + "'");
      parts.push_back(std::stoi(item));
    }
  }
  return Partition(std::move(parts));
}

namespace {

void generate(int remaining, int max_part, std::vector<int>& cur, std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(cur);
    return;
  }
  for (int k = std::min(remaining, max_part); k >= 1; --k) {
    cur.push_back(k);
    generate(remaining - k, k, cur, out);
    cur.pop_back();
  }
}

}  // namespace

const std::vector<Partition>& partitions_of(int n) {
  if (n < 0) throw Error("partitions_of needs n >= 0");
  static std::mutex mu;
  static std::map<int, std::vector<Partition>> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<Partition> out;
  std::vector<int> cur;
  generate(n, n, cur, out);
  return cache.emplace(n, std::move(out)).first->second;
}

Partition conjugate(const Partition& la) {
  std::vector<int> out(static_cast<std::size_t>(la[0]), 0);
  for (int part : la.parts())
    for (int j = 0; j < part; ++j) ++out[static_cast<std::size_t>(j)];
  return Partition(std::move(out));
}

bool dominance_leq(const Partition& la, const Partition& mu) {
  if (la.size() != mu.size()) throw Error("dominance compares partitions of the same size");
  int a = 0, b = 0;
  const std::size_t len = static_cast<std::size_t>(std::max(la.length(), mu.length()));
  for (std::size_t i = 0; i < len; ++i) {
    a += la[i];
    b += mu[i];
    if (a > b) return false;
  }
  return true;
}

int nstat(const Partition& mu) {
  int s = 0;
  for (int i = 0; i < mu.length(); ++i) s += i * mu.parts()[static_cast<std::size_t>(i)];
  return s;
}

Integer z_lambda(const Partition& la) {
  Integer z = 1;
  std::map<int, int> mult;
  for (int p : la.parts()) ++mult[p];
  for (auto [k, m] : mult) {
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(m));
    Integer pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(k), static_cast<unsigned long>(m));
    z *= f * pw;
  }
  return z;
}

std::vector<int> hook_lengths(const Partition& la) {
  const Partition c = conjugate(la);
  std::vector<int> h;
  for (int i = 0; i < la.length(); ++i)
    for (int j = 0; j < la.parts()[static_cast<std::size_t>(i)]; ++j)
      h.push_back(la.parts()[static_cast<std::size_t>(i)] - j - 1 + c[static_cast<std::size_t>(j)] - i);
  return h;
}

std::vector<Cell> cells(const Partition& mu) {
  std::vector<Cell> out;
  for (int b = 0; b < mu.length(); ++b)
    for (int a = 0; a < mu.parts()[static_cast<std::size_t>(b)]; ++a) out.push_back({a, b});
  return out;
}

Poly b_mu(const Partition& mu) {
  std::vector<Poly::Term> terms;
  for (const Cell& c : cells(mu)) terms.push_back({Monomial{c.a, c.b, 0}, 1});
  return Poly::from_terms(std::move(terms));
}

std::vector<std::pair<Partition, Cell>> covers_down(const Partition& mu) {
  std::vector<std::pair<Partition, Cell>> out;
  const auto& p = mu.parts();
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i + 1 < p.size() && p[i + 1] == p[i]) continue;
    std::vector<int> v = p;
    --v[i];
    if (v[i] == 0) v.pop_back();
    out.emplace_back(Partition(std::move(v)), Cell{p[i] - 1, static_cast<int>(i)});
  }
  return out;
}

std::vector<std::pair<Partition, Cell>> covers_up(const Partition& mu) {
  std::vector<std::pair<Partition, Cell>> out;
  const auto& p = mu.parts();
  for (std::size_t i = 0; i <= p.size(); ++i) {
    if (i > 0 && mu[i - 1] == mu[i]) continue;
    std::vector<int> v = p;
    if (i == v.size()) v.push_back(0);
    ++v[i];
    out.emplace_back(Partition(std::move(v)), Cell{mu[i], static_cast<int>(i)});
  }
  return out;
}

std::vector<Partition> remove_horizontal_strips(const Partition& la, int k) {
  // nu_i ranges over [la_{i+1}, la_i] with total removal k.
  std::vector<Partition> out;
  const auto& p = la.parts();
  std::vector<int> nu(p.size());
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i == p.size()) {
      if (left == 0) out.push_back(Partition::from_unsorted(nu));
      return;
    }
    const int lo = i + 1 < p.size() ? p[i + 1] : 0;
    for (int v = p[i]; v >= lo; --v) {
      const int removed = p[i] - v;
      if (removed > left) break;
      nu[i] = v;
      self(self, i + 1, left - removed);
    }
  };
  if (k >= 0) rec(rec, 0, k);
  return out;
}

std::vector<StandardTableau> standard_tableaux(const Partition& la) {
  std::vector<StandardTableau> out;
  const int n = la.size();
  std::vector<std::vector<int>> rows(static_cast<std::size_t>(la.length()));
  // Place 1..n one at a time in any row where it keeps the shape a partition.
  auto rec = [&](auto&& self, int next) -> void {
    if (next > n) {
      out.push_back({la, rows});
      return;
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const std::size_t len = rows[i].size();
      if (static_cast<int>(len) >= la.parts()[i]) continue;
      if (i > 0 && rows[i - 1].size() <= len) continue;
      rows[i].push_back(next);
      self(self, next + 1);
      rows[i].pop_back();
    }
  };
  rec(rec, 1);
  return out;
}

std::vector<int> reading_word(const StandardTableau& tau) {
  std::vector<int> w;
  for (auto it = tau.rows.rbegin(); it != tau.rows.rend(); ++it) w.insert(w.end(), it->begin(), it->end());
  return w;
}

int cocharge_word(const std::vector<int>& word) {
  const int n = static_cast<int>(word.size());
  std::vector<int> pos(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i < n; ++i) {
    const int v = word[static_cast<std::size_t>(i)];
    if (v < 1 || v > n || pos[static_cast<std::size_t>(v)] != 0) throw Error("cocharge needs a permutation word");
    pos[static_cast<std::size_t>(v)] = i + 1;
  }
  int index = 0, total = 0;
  for (int r = 2; r <= n; ++r) {
    if (pos[static_cast<std::size_t>(r)] < pos[static_cast<std::size_t>(r - 1)]) ++index;
    total += index;
  }
  return total;
}

int cocharge(const StandardTableau& tau) { return cocharge_word(reading_word(tau)); }

int sign_exponent(const Partition& la) {
  if (la.empty()) return 0;
  const int k = la[0];
  const Partition c = conjugate(la);
  int m = k * (k - 1) / 2;
  for (int i = 1; i <= k; ++i) {
    const int ci = c[static_cast<std::size_t>(i - 1)];
    if (ci < i - 1) m += i - 1 - ci;
  }
  return m;
}

int predicted_sign(const Partition& la) { return sign_exponent(la) % 2 == 0 ? 1 : -1; }

}  // namespace nabla
