#pragma once

// Brute-force reference computations used only by the tests. They share no
// code with the library algorithms they check.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <vector>

#include "homchains/chain.hpp"
#include "homchains/homcomplex.hpp"
#include "homchains/poset.hpp"

namespace oracle {

using homchains::big_int;
using homchains::element_id;

// Every (X_0, ..., X_{n-1}) of nonempty subsets of b such that each pair of
// representatives x in X_i, y in X_j (i < j) satisfies ok(i, j, x, y).
// Coordinates are filled left to right; a subset is kept only after checking
// it against all earlier subsets, so this is a top-down filter of the full
// product of simplices.
// domain[i], when given, lists the elements allowed in coordinate i.
inline std::set<homchains::multi_hom> pairwise_hom_cells(
    std::size_t n, std::size_t b, const std::function<bool(std::size_t, std::size_t, element_id, element_id)>& ok,
    const std::vector<std::vector<element_id>>& domain = {}) {
  std::set<homchains::multi_hom> out;
  std::vector<std::vector<element_id>> sets(n);
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == n) {
      out.insert(homchains::multi_hom{sets});
      return;
    }
    std::vector<element_id> allowed;
    if (domain.empty()) {
      for (element_id e = 0; e < b; ++e) allowed.push_back(e);
    } else {
      allowed = domain[i];
    }
    for (std::uint32_t mask = 1; mask < (1U << allowed.size()); ++mask) {
      std::vector<element_id> s;
      for (std::size_t k = 0; k < allowed.size(); ++k)
        if (mask >> k & 1U) s.push_back(allowed[k]);
      bool good = true;
      for (std::size_t j = 0; j < i && good; ++j)
        for (element_id x : sets[j])
          for (element_id y : s)
            if (!ok(j, i, x, y)) good = false;
      if (!good) continue;
      sets[i] = std::move(s);
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return out;
}

// Strict maps from the chain 0 < 1 < ... < m into p. Coordinate i can only
// hold elements with a strict chain of length i below and m - i above.
inline std::set<homchains::multi_hom> strict_chain_cells(const homchains::finite_poset& p, std::size_t m) {
  const std::size_t n = p.size();
  std::vector<std::size_t> below(n, 0), above(n, 0);
  for (std::size_t round = 0; round < n; ++round)
    for (element_id x = 0; x < n; ++x)
      for (element_id y = 0; y < n; ++y)
        if (p.less(x, y)) {
          below[y] = std::max(below[y], below[x] + 1);
          above[x] = std::max(above[x], above[y] + 1);
        }
  std::vector<std::vector<element_id>> domain(m + 1);
  for (std::size_t i = 0; i <= m; ++i)
    for (element_id x = 0; x < n; ++x)
      if (below[x] >= i && above[x] >= m - i) domain[i].push_back(x);
  return pairwise_hom_cells(
      m + 1, n, [&](std::size_t, std::size_t, element_id x, element_id y) { return p.less(x, y); }, domain);
}

// Rank over the rationals by fraction-free elimination.
inline std::size_t rational_rank(std::vector<std::vector<big_int>> a) {
  const std::size_t m = a.size(), n = m ? a[0].size() : 0;
  std::size_t r = 0;
  big_int prev = 1;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t p = r;
    while (p < m && a[p][c] == 0) ++p;
    if (p == m) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < m; ++i) {
      for (std::size_t j = c + 1; j < n; ++j) a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

inline std::vector<std::vector<big_int>> to_big(const std::vector<std::vector<std::int64_t>>& a) {
  std::vector<std::vector<big_int>> out;
  for (const auto& row : a) out.emplace_back(row.begin(), row.end());
  return out;
}

inline std::size_t rank_mod(const std::vector<std::vector<std::int64_t>>& input, std::int64_t p) {
  auto a = input;
  for (auto& row : a)
    for (auto& v : row) v = ((v % p) + p) % p;
  const std::size_t m = a.size(), n = m ? a[0].size() : 0;
  std::size_t r = 0;
  auto inv = [p](std::int64_t x) {
    std::int64_t res = 1, e = p - 2;
    while (e) {
      if (e & 1) res = res * x % p;
      x = x * x % p;
      e >>= 1;
    }
    return res;
  };
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t q = r;
    while (q < m && a[q][c] == 0) ++q;
    if (q == m) continue;
    std::swap(a[q], a[r]);
    std::int64_t iv = inv(a[r][c]);
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || a[i][c] == 0) continue;
      std::int64_t f = a[i][c] * iv % p;
      for (std::size_t j = 0; j < n; ++j) a[i][j] = ((a[i][j] - f * a[r][j]) % p + p) % p;
    }
    ++r;
  }
  return r;
}

inline big_int determinant(std::vector<std::vector<big_int>> a) {
  const std::size_t n = a.size();
  big_int sign = 1, prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a[p][k] == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      std::swap(a[p], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

// Invariant factors d_k / d_{k-1}, where d_k is the gcd of all k x k minors.
inline std::vector<big_int> invariant_factors_by_minors(const std::vector<std::vector<std::int64_t>>& a) {
  const std::size_t m = a.size(), n = m ? a[0].size() : 0;
  std::vector<big_int> out;
  big_int last = 1;
  for (std::size_t k = 1; k <= std::min(m, n); ++k) {
    big_int g = 0;
    std::vector<std::size_t> rows(k), cols(k);
    std::vector<bool> rsel(m, false), csel(n, false);
    std::fill(rsel.begin(), rsel.begin() + static_cast<std::ptrdiff_t>(k), true);
    do {
      std::fill(csel.begin(), csel.end(), false);
      std::fill(csel.begin(), csel.begin() + static_cast<std::ptrdiff_t>(k), true);
      do {
        std::vector<std::vector<big_int>> minor;
        for (std::size_t i = 0; i < m; ++i) {
          if (!rsel[i]) continue;
          std::vector<big_int> row;
          for (std::size_t j = 0; j < n; ++j)
            if (csel[j]) row.emplace_back(a[i][j]);
          minor.push_back(std::move(row));
        }
        g = gcd(g, abs(determinant(minor)));
      } while (std::prev_permutation(csel.begin(), csel.end()));
    } while (std::prev_permutation(rsel.begin(), rsel.end()));
    if (g == 0) break;
    out.push_back(g / last);
    last = g;
  }
  return out;
}

// Critical cell predicted from a word: descents are grouped into maximal
// runs {m, ..., m+q}; a run is admissible iff q mod 3 is 1 or 2; the cell
// joins (m+1, m+2), (m+4, m+5), ... inside each run.
struct predicted_cell {
  bool admissible = false;
  std::uint64_t mask = 0;
  int dimension = 0;
};

inline predicted_cell predict_critical(const homchains::word& w) {
  predicted_cell out;
  out.admissible = true;
  const std::size_t l = w.size();
  std::size_t j = 1;
  while (j < l) {
    if (!(w[j - 1] > w[j])) {
      ++j;
      continue;
    }
    std::size_t m = j;
    while (j < l && w[j - 1] > w[j]) ++j;
    std::size_t q = j - 1 - m;
    if (q % 3 == 0) out.admissible = false;
    for (std::size_t p = m + 1; p + 1 <= m + q + 1; p += 3) {
      out.mask |= std::uint64_t{1} << (p - 1);
      ++out.dimension;
    }
  }
  return out;
}

// Every directed cycle of the modified Hasse diagram of a small complex,
// found by transitive closure over all cells.
inline bool has_alternating_cycle(const homchains::cell_complex& c, const homchains::morse_matching& m) {
  const std::size_t n = c.size();
  std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
  for (homchains::cell_id x = 0; x < n; ++x)
    for (homchains::cell_id f : c.facets(x)) {
      if (m.partner[f] == x) reach[f][x] = 1;
      else reach[x][f] = 1;
    }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (reach[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (reach[k][j]) reach[i][j] = 1;
  for (std::size_t i = 0; i < n; ++i)
    if (reach[i][i]) return true;
  return false;
}

inline std::vector<std::vector<std::int64_t>> dense(const homchains::sparse_matrix& m) { return m.to_dense(); }

}  // namespace oracle
