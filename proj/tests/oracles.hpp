#pragma once

// Brute-force reference computations used only by the tests.  They share no
// code with the library beyond plain data types.

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <vector>

namespace oracle {

using Tuple = std::vector<std::int64_t>;

inline std::int64_t ipow(std::int64_t b, unsigned e) {
  std::int64_t r = 1;
  while (e--) r *= b;
  return r;
}

/// Calls f on every element of Z/m_1 x ... x Z/m_k.
inline void for_each_tuple(const std::vector<std::int64_t>& moduli, const std::function<void(const Tuple&)>& f) {
  Tuple x(moduli.size(), 0);
  for (;;) {
    f(x);
    std::size_t j = 0;
    while (j < x.size() && ++x[j] == moduli[j]) x[j++] = 0;
    if (j == x.size()) return;
  }
}

inline std::vector<std::int64_t> moduli(std::int64_t p, const std::vector<unsigned>& exps) {
  std::vector<std::int64_t> m;
  for (auto e : exps) m.push_back(ipow(p, e));
  return m;
}

/// Number of elements killed by n.
inline std::uint64_t count_killed_by(std::int64_t p, const std::vector<unsigned>& exps, std::int64_t n) {
  const auto m = moduli(p, exps);
  std::uint64_t c = 0;
  for_each_tuple(m, [&](const Tuple& x) {
    bool zero = true;
    for (std::size_t j = 0; j < x.size(); ++j) zero = zero && (x[j] * n) % m[j] == 0;
    c += zero;
  });
  return c;
}

/// Exponents of a finite abelian p-group recovered from element-order counts.
inline std::vector<unsigned> exponents_by_counting(std::int64_t p, const std::vector<unsigned>& exps) {
  unsigned top = 0;
  for (auto e : exps) top = std::max(top, e);
  auto lg = [p](std::uint64_t n) {
    unsigned v = 0;
    while (n > 1) n /= static_cast<std::uint64_t>(p), ++v;
    return v;
  };
  std::vector<unsigned> ge(top + 2, 0);
  for (unsigned t = 1; t <= top; ++t)
    ge[t] = lg(count_killed_by(p, exps, ipow(p, t))) - lg(count_killed_by(p, exps, ipow(p, t - 1)));
  std::vector<unsigned> out;
  for (unsigned t = top; t >= 1; --t)
    for (unsigned c = 0; c < ge[t] - ge[t + 1]; ++c) out.push_back(t);
  return out;
}

/// Cofactor expansion; fine for the 6x6 matrices used here.
inline long long det(const std::vector<std::vector<long long>>& a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  if (n == 1) return a[0][0];
  long long s = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<long long>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<long long> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(a[r][k]);
      minor.push_back(row);
    }
    s += (c % 2 ? -1 : 1) * a[0][c] * det(minor);
  }
  return s;
}

/// gcd of all k x k minors.
inline long long minor_gcd(const std::vector<std::vector<long long>>& m, std::size_t k) {
  const std::size_t rows = m.size(), cols = m.empty() ? 0 : m[0].size();
  long long g = 0;
  std::vector<std::size_t> r(k), c(k);
  std::function<void(std::size_t, std::size_t)> pick_cols;
  std::function<void(std::size_t, std::size_t)> pick_rows = [&](std::size_t i, std::size_t from) {
    if (i == k) return pick_cols(0, 0);
    for (std::size_t x = from; x < rows; ++x) r[i] = x, pick_rows(i + 1, x + 1);
  };
  pick_cols = [&](std::size_t j, std::size_t from) {
    if (j == k) {
      std::vector<std::vector<long long>> sub(k, std::vector<long long>(k));
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) sub[a][b] = m[r[a]][c[b]];
      g = std::gcd(g, std::llabs(det(sub)));
      return;
    }
    for (std::size_t x = from; x < cols; ++x) c[j] = x, pick_cols(j + 1, x + 1);
  };
  pick_rows(0, 0);
  return g;
}

/// dim G[p^i]/(pG cap G[p^i]) for i = 1..top, by enumeration.
inline std::map<unsigned, std::uint64_t> ulm_by_enumeration(std::int64_t p, const std::vector<unsigned>& exps) {
  const auto m = moduli(p, exps);
  std::vector<Tuple> elems;
  for_each_tuple(m, [&](const Tuple& x) { elems.push_back(x); });
  auto killed = [&](const Tuple& x, std::int64_t n) {
    for (std::size_t j = 0; j < x.size(); ++j)
      if ((x[j] * n) % m[j] != 0) return false;
    return true;
  };
  auto in_pg = [&](const Tuple& x) {
    for (std::size_t j = 0; j < x.size(); ++j)
      if (x[j] % p != 0) return false;
    return true;
  };
  std::map<unsigned, std::uint64_t> out;
  unsigned top = 0;
  for (auto e : exps) top = std::max(top, e);
  auto lg = [p](std::uint64_t n) {
    unsigned v = 0;
    while (n > 1) n /= static_cast<std::uint64_t>(p), ++v;
    return v;
  };
  for (unsigned i = 1; i <= top; ++i) {
    std::uint64_t a = 0, b = 0;
    for (const auto& x : elems) {
      if (!killed(x, ipow(p, i))) continue;
      ++a;
      b += in_pg(x);
    }
    out[i] = lg(a) - lg(b);
  }
  return out;
}

}  // namespace oracle
