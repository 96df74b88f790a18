#include <algorithm>
#include <queue>

#include "homchains/chain.hpp"

namespace homchains {

namespace {

struct overflow_signal {};

std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw overflow_signal{};
  return r;
}
std::int64_t sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw overflow_signal{};
  return r;
}
big_int mul(const big_int& a, const big_int& b) { return a * b; }
big_int sub(const big_int& a, const big_int& b) { return a - b; }

template <class T>
bool is_unit(const T& v) {
  return v == 1 || v == -1;
}

big_int to_big(std::int64_t v) { return big_int(v); }
const big_int& to_big(const big_int& v) { return v; }

// Largest dense remainder accepted after sparse elimination.
constexpr std::size_t dense_limit = 25'000'000;

void dense_smith(std::vector<std::vector<big_int>>& a, std::vector<big_int>& diag) {
  const std::size_t m = a.size(), n = m ? a[0].size() : 0;
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    // smallest nonzero entry of the trailing block becomes the pivot
    std::size_t pi = npos, pj = npos;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (a[i][j] != 0 && (pi == npos || abs(a[i][j]) < abs(a[pi][pj]))) pi = i, pj = j;
    if (pi == npos) break;
    std::swap(a[t], a[pi]);
    for (auto& row : a) std::swap(row[t], row[pj]);
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (a[i][t] == 0) continue;
        big_int q = a[i][t] / a[t][t];
        for (std::size_t j = t; j < n; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a[t][j] == 0) continue;
        big_int q = a[t][j] / a[t][t];
        for (std::size_t i = t; i < m; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) clean = false;
      }
      if (clean) {
        // the pivot must divide the whole trailing block
        std::size_t bad = npos;
        for (std::size_t i = t + 1; i < m && bad == npos; ++i)
          for (std::size_t j = t + 1; j < n; ++j)
            if (a[i][j] % a[t][t] != 0) {
              bad = i;
              break;
            }
        if (bad == npos) break;
        for (std::size_t j = t; j < n; ++j) a[t][j] += a[bad][j];
        continue;
      }
      // move the smallest remaining entry of row/column t to the pivot
      std::size_t bi = t, bj = t;
      for (std::size_t i = t + 1; i < m; ++i)
        if (a[i][t] != 0 && abs(a[i][t]) < abs(a[bi][bj])) bi = i, bj = t;
      for (std::size_t j = t + 1; j < n; ++j)
        if (a[t][j] != 0 && abs(a[t][j]) < abs(a[bi][bj])) bi = t, bj = j;
      std::swap(a[t], a[bi]);
      for (auto& row : a) std::swap(row[t], row[bj]);
    }
    diag.push_back(abs(a[t][t]));
  }
}

template <class T>
smith_result sparse_smith(const sparse_matrix& input) {
  using entry = std::pair<std::uint32_t, T>;
  const std::size_t n = input.cols;
  std::vector<std::vector<entry>> cols(n);
  std::vector<std::vector<std::uint32_t>> row_cols(input.rows);
  for (std::size_t j = 0; j < n; ++j) {
    for (auto [i, v] : input.columns[j]) {
      cols[j].emplace_back(i, T(v));
      row_cols[i].push_back(static_cast<std::uint32_t>(j));
    }
  }
  std::vector<char> col_dead(n, 0), row_dead(input.rows, 0);
  std::vector<std::size_t> row_count(input.rows, 0);
  for (std::size_t i = 0; i < input.rows; ++i) row_count[i] = row_cols[i].size();

  using item = std::pair<std::size_t, std::uint32_t>;  // (nonzeros, column)
  std::priority_queue<item, std::vector<item>, std::greater<>> heap;
  for (std::size_t j = 0; j < n; ++j)
    if (!cols[j].empty()) heap.emplace(cols[j].size(), static_cast<std::uint32_t>(j));

  smith_result res;
  std::vector<entry> merged;
  while (!heap.empty()) {
    auto [size, c] = heap.top();
    heap.pop();
    if (col_dead[c] || size != cols[c].size()) continue;
    // unit entry whose row is shortest
    std::size_t best = npos;
    for (std::size_t k = 0; k < cols[c].size(); ++k)
      if (is_unit(cols[c][k].second) &&
          (best == npos || row_count[cols[c][k].first] < row_count[cols[c][best].first]))
        best = k;
    if (best == npos) continue;  // parked until a later update touches it
    const std::uint32_t r = cols[c][best].first;
    const T pivot = cols[c][best].second;
    const std::vector<entry> pcol = cols[c];
    col_dead[c] = 1;
    row_dead[r] = 1;
    ++res.rank;
    for (auto [i, v] : pcol) --row_count[i];

    std::vector<std::uint32_t> touched = std::move(row_cols[r]);
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    for (std::uint32_t k : touched) {
      if (col_dead[k]) continue;
      auto& col = cols[k];
      auto it = std::lower_bound(col.begin(), col.end(), r,
                                 [](const entry& e, std::uint32_t row) { return e.first < row; });
      if (it == col.end() || it->first != r) continue;
      const T q = mul(it->second, pivot);  // pivot is a unit, so this is exact division
      merged.clear();
      std::size_t a = 0, b = 0;
      while (a < col.size() || b < pcol.size()) {
        if (b == pcol.size() || (a < col.size() && col[a].first < pcol[b].first)) {
          merged.push_back(std::move(col[a++]));
        } else if (a == col.size() || pcol[b].first < col[a].first) {
          T v = sub(T(0), mul(q, pcol[b].second));
          if (v != 0) {
            row_cols[pcol[b].first].push_back(k);
            ++row_count[pcol[b].first];
            merged.emplace_back(pcol[b].first, std::move(v));
          }
          ++b;
        } else {
          T v = sub(col[a].second, mul(q, pcol[b].second));
          if (v != 0) merged.emplace_back(col[a].first, std::move(v));
          else --row_count[col[a].first];
          ++a, ++b;
        }
      }
      col.swap(merged);
      if (!col.empty()) heap.emplace(col.size(), k);
    }
  }
  for (std::size_t k = 0; k < res.rank; ++k) res.factors.emplace_back(1);

  // dense remainder
  std::vector<std::uint32_t> rest_cols, rest_rows;
  std::vector<std::uint32_t> row_slot(input.rows, std::numeric_limits<std::uint32_t>::max());
  for (std::size_t j = 0; j < n; ++j) {
    if (col_dead[j] || cols[j].empty()) continue;
    rest_cols.push_back(static_cast<std::uint32_t>(j));
    for (const auto& [i, v] : cols[j])
      if (row_slot[i] == std::numeric_limits<std::uint32_t>::max()) {
        row_slot[i] = static_cast<std::uint32_t>(rest_rows.size());
        rest_rows.push_back(i);
      }
  }
  if (rest_cols.empty()) return res;
  if (rest_cols.size() * rest_rows.size() > dense_limit)
    throw cap_error("smith normal form: dense remainder of " + std::to_string(rest_rows.size()) + "x" +
                    std::to_string(rest_cols.size()) + " is too large");
  std::vector<std::vector<big_int>> dense(rest_rows.size(), std::vector<big_int>(rest_cols.size()));
  for (std::size_t jj = 0; jj < rest_cols.size(); ++jj)
    for (const auto& [i, v] : cols[rest_cols[jj]]) dense[row_slot[i]][jj] = to_big(v);
  std::vector<big_int> diag;
  dense_smith(dense, diag);
  // put the diagonal into divisibility order
  for (std::size_t i = 0; i < diag.size(); ++i)
    for (std::size_t j = i + 1; j < diag.size(); ++j) {
      big_int g = gcd(diag[i], diag[j]);
      big_int l = diag[i] / g * diag[j];
      diag[i] = g;
      diag[j] = l;
    }
  for (auto& d : diag) res.factors.push_back(std::move(d));
  res.rank += diag.size();
  return res;
}

}  // namespace

smith_result smith_normal_form(const sparse_matrix& m) {
  try {
    return sparse_smith<std::int64_t>(m);
  } catch (const overflow_signal&) {
    return sparse_smith<big_int>(m);
  }
}

smith_result smith_normal_form(const std::vector<std::vector<std::int64_t>>& dense) {
  return smith_normal_form(sparse_matrix::from_dense(dense));
}

}  // namespace homchains
