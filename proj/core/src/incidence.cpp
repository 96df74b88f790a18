#include <algorithm>
#include <map>
#include <ostream>

#include "homchains/chain.hpp"

namespace homchains {

int incidence(const multi_hom& tau, const multi_hom& eta) {
  if (tau.sets.size() != eta.sets.size()) return 0;
  std::size_t t = npos;
  for (std::size_t j = 0; j < eta.sets.size(); ++j) {
    if (tau.sets[j] == eta.sets[j]) continue;
    if (t != npos) return 0;
    t = j;
  }
  if (t == npos || tau.sets[t].size() + 1 != eta.sets[t].size()) return 0;
  const auto& big = eta.sets[t];
  const auto& small = tau.sets[t];
  // big and small are sorted; find the removed element
  std::size_t l = 0;
  while (l < small.size() && small[l] == big[l]) ++l;
  if (!std::equal(small.begin() + static_cast<std::ptrdiff_t>(l), small.end(),
                  big.begin() + static_cast<std::ptrdiff_t>(l) + 1))
    return 0;
  std::size_t exponent = l;
  for (std::size_t j = 0; j < t; ++j) exponent += eta.sets[j].size() - 1;
  return exponent % 2 ? -1 : 1;
}

int pair_incidence(const cell_word& cw, std::size_t t, release_order order) {
  if (t < 1 || t > static_cast<std::size_t>(cw.dimension()))
    throw input_error("pair incidence: " + cw.to_string() + " has no pair number " + std::to_string(t));
  bool odd = order == release_order::alpha ? t % 2 == 1 : t % 2 == 0;
  return odd ? -1 : 1;
}

incidence_table::incidence_table(const cell_complex& c) {
  begin_.reserve(c.size() + 1);
  begin_.push_back(0);
  for (cell_id x = 0; x < c.size(); ++x) {
    auto f = c.facets(x);
    for (std::size_t k = 0; k < f.size(); ++k) {
      int s;
      if (c.facets_in_release_order()) {
        s = pair_incidence(c.word(x), k / 2 + 1, k % 2 ? release_order::beta : release_order::alpha);
      } else {
        s = incidence(c.multihom(f[k]), c.multihom(x));
        if (s == 0) throw invariant_error("incidence: " + c.key(f[k]) + " is not a facet of " + c.key(x));
      }
      signs_.push_back(static_cast<std::int8_t>(s));
    }
    begin_.push_back(signs_.size());
  }
}

int incidence_table::sign_of(const cell_complex& c, cell_id cell, cell_id face) const {
  auto f = c.facets(cell);
  for (std::size_t k = 0; k < f.size(); ++k)
    if (f[k] == face) return sign(cell, k);
  return 0;
}

// ---------------------------------------------------------------------------

sparse_matrix sparse_matrix::from_dense(const std::vector<std::vector<std::int64_t>>& rows) {
  sparse_matrix m;
  m.rows = rows.size();
  m.cols = rows.empty() ? 0 : rows[0].size();
  m.columns.resize(m.cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols) throw input_error("matrix: ragged rows");
    for (std::size_t j = 0; j < m.cols; ++j)
      if (rows[i][j] != 0) m.columns[j].emplace_back(static_cast<std::uint32_t>(i), rows[i][j]);
  }
  return m;
}

std::vector<std::vector<std::int64_t>> sparse_matrix::to_dense() const {
  std::vector<std::vector<std::int64_t>> out(rows, std::vector<std::int64_t>(cols, 0));
  for (std::size_t j = 0; j < cols; ++j)
    for (auto [i, v] : columns[j]) out[i][j] = v;
  return out;
}

std::size_t sparse_matrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& col : columns) n += col.size();
  return n;
}

void write_coordinate_list(std::ostream& out, const sparse_matrix& m) {
  out << m.rows << ' ' << m.cols << ' ' << m.nonzeros() << '\n';
  for (std::size_t j = 0; j < m.cols; ++j)
    for (auto [i, v] : m.columns[j]) out << i << ' ' << j << ' ' << v << '\n';
}

integer_chain_complex boundary_matrices(const cell_complex& c) {
  integer_chain_complex cc;
  incidence_table signs(c);
  cc.cells = c.f_vector();
  cc.boundary.resize(cc.cells.size());
  for (int d = 1; d <= c.dimension(); ++d) {
    auto& m = cc.boundary[static_cast<std::size_t>(d)];
    m.rows = c.count_of_dim(d - 1);
    m.cols = c.count_of_dim(d);
    m.columns.resize(m.cols);
    const cell_id base = c.first_of_dim(d - 1), first = c.first_of_dim(d);
    for (std::size_t j = 0; j < m.cols; ++j) {
      cell_id x = first + static_cast<cell_id>(j);
      auto f = c.facets(x);
      auto& col = m.columns[j];
      for (std::size_t k = 0; k < f.size(); ++k) col.emplace_back(f[k] - base, signs.sign(x, k));
      std::sort(col.begin(), col.end());
      for (std::size_t k = 1; k < col.size(); ++k)
        if (col[k].first == col[k - 1].first)
          throw invariant_error("boundary: repeated facet in " + c.key(x));
    }
  }
  check_boundary_squares_to_zero(cc);
  return cc;
}

void check_boundary_squares_to_zero(const integer_chain_complex& cc) {
  for (std::size_t d = 2; d < cc.boundary.size(); ++d) {
    const auto& outer = cc.boundary[d - 1];
    const auto& inner = cc.boundary[d];
    std::map<std::uint32_t, std::int64_t> acc;
    for (std::size_t j = 0; j < inner.cols; ++j) {
      acc.clear();
      for (auto [k, v] : inner.columns[j])
        for (auto [i, w] : outer.columns[k]) acc[i] += v * w;
      for (auto [i, v] : acc)
        if (v != 0)
          throw invariant_error("boundary: d" + std::to_string(d - 1) + " d" + std::to_string(d) +
                                " is nonzero in column " + std::to_string(j));
    }
  }
}

}  // namespace homchains
