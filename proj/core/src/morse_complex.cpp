#include <algorithm>
#include <bit>
#include <unordered_map>

#include "homchains/chain.hpp"

namespace homchains {

namespace {

bool matched_up(const cell_complex& c, const morse_matching& m, cell_id x) {
  cell_id p = m.partner[x];
  return p != no_cell && c.dim(p) == c.dim(x) + 1;
}

struct path_hash {
  std::size_t operator()(const std::vector<cell_id>& v) const noexcept {
    std::uint64_t x = 1469598103934665603ULL;
    for (cell_id e : v) {
      x ^= e;
      x *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(x);
  }
};

// Position of the single pair present in `upper` but not in `lower`.
std::size_t extra_pair(const cell_word& upper, const cell_word& lower) {
  std::uint64_t diff = upper.pair_mask() & ~lower.pair_mask();
  if (std::popcount(diff) != 1) return npos;
  return static_cast<std::size_t>(std::countr_zero(diff)) + 1;
}

release_order order_at(const cell_word& lower, std::size_t p) {
  return lower.at(p) < lower.at(p + 1) ? release_order::alpha : release_order::beta;
}

release_order opposite(release_order o) {
  return o == release_order::alpha ? release_order::beta : release_order::alpha;
}

}  // namespace

namespace {

// Depth-first walk over alternating paths; `stop(a)` decides whether a facet
// ends a path.
template <class Stop>
std::vector<std::pair<alternating_path, int>> walk_paths(const cell_complex& c, const morse_matching& m,
                                                         const incidence_table& signs, cell_id sigma,
                                                         std::size_t cap, Stop stop) {
  std::vector<std::pair<alternating_path, int>> out;
  std::vector<cell_id> trail{sigma};
  auto walk = [&](auto&& self, cell_id upper, cell_id previous, int weight) -> void {
    auto f = c.facets(upper);
    for (std::size_t k = 0; k < f.size(); ++k) {
      cell_id a = f[k];
      if (a == previous) continue;
      int w = weight * signs.sign(upper, k);
      if (stop(a)) {
        if (out.size() >= cap) throw cap_error("alternating paths: more than " + std::to_string(cap));
        trail.push_back(a);
        out.emplace_back(alternating_path{trail}, w);
        trail.pop_back();
        continue;
      }
      if (!matched_up(c, m, a)) continue;
      cell_id u = m.partner[a];
      trail.push_back(a);
      trail.push_back(u);
      self(self, u, a, -w * signs.sign_of(c, u, a));
      trail.pop_back();
      trail.pop_back();
    }
  };
  walk(walk, sigma, no_cell, 1);
  return out;
}

}  // namespace

std::vector<std::pair<alternating_path, int>> alternating_paths(
    const cell_complex& c, const morse_matching& m, const incidence_table& signs, cell_id sigma,
    cell_id tau, std::size_t cap) {
  if (c.dim(sigma) != c.dim(tau) + 1) throw input_error("alternating paths: dimensions must differ by one");
  return walk_paths(c, m, signs, sigma, cap, [&](cell_id a) { return a == tau; });
}

std::vector<std::pair<alternating_path, int>> alternating_paths_from(
    const cell_complex& c, const morse_matching& m, const incidence_table& signs, cell_id sigma,
    std::size_t cap) {
  auto out = walk_paths(c, m, signs, sigma, cap, [&](cell_id a) { return !m.matched(a); });
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& x, const auto& y) { return x.first.cells.back() < y.first.cells.back(); });
  return out;
}

std::vector<cell_word> involution_partner(std::span<const cell_word> path, const partner_function& partner,
                                          std::size_t max_steps) {
  if (path.size() < 2 || path.size() % 2) return {};
  const std::size_t t = (path.size() - 2) / 2;
  const cell_word& tau = path.back();
  // step i goes from X_i (sigma for i = 0, else u(a_i)) down to path[2i+1];
  // it is a swap when it releases the pair just joined by u(a_i)
  std::size_t j = 0;
  for (std::size_t i = t; i >= 1; --i) {
    if (path[2 * i + 1].pair_mask() != path[2 * i - 1].pair_mask()) {
      j = i;
      break;
    }
  }
  const cell_word& x = path[2 * j];
  const cell_word& released = path[2 * j + 1];
  std::size_t p = extra_pair(x, released);
  if (p == npos) return {};
  std::vector<cell_word> out(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(2 * j + 1));
  cell_word next = x.released(p, opposite(order_at(released, p)));
  for (std::size_t step = 0; step < max_steps; ++step) {
    out.push_back(next);
    if (next == tau) return out;
    auto u = partner(next);
    if (!u || u->dimension() != next.dimension() + 1) return {};
    out.push_back(*u);
    std::size_t q = extra_pair(*u, next);
    if (q == npos) return {};
    next = u->released(q, opposite(order_at(next, q)));
  }
  return {};
}

std::vector<cell_id> involution_partner(const cell_complex& c, const morse_matching& m,
                                        const alternating_path& path) {
  if (!c.has_words()) return {};
  std::vector<cell_word> words;
  for (cell_id x : path.cells) words.push_back(c.word(x));
  auto partner = [&](const cell_word& w) -> std::optional<cell_word> {
    auto id = c.find(w);
    if (!id || !m.matched(*id)) return std::nullopt;
    return c.word(m.partner[*id]);
  };
  auto result = involution_partner(words, partner, c.size());
  std::vector<cell_id> out;
  for (const auto& w : result) {
    auto id = c.find(w);
    if (!id) return {};
    out.push_back(*id);
  }
  return out;
}

path_census census_paths(const cell_complex& c, const morse_matching& m,
                         std::span<const std::pair<alternating_path, int>> paths) {
  path_census census;
  std::unordered_map<std::vector<cell_id>, std::size_t, path_hash> index;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    index.emplace(paths[i].first.cells, i);
    census.weight_sum += paths[i].second;
  }
  census.paths = paths.size();
  auto fail = [&](const alternating_path& p, const std::string& why) {
    if (census.failures++ == 0) {
      std::string text;
      for (cell_id x : p.cells) text += (text.empty() ? "" : ", ") + c.key(x);
      census.first_failure = why + ": [" + text + "]";
    }
  };
  for (const auto& [path, w] : paths) {
    auto partner = involution_partner(c, m, path);
    auto it = partner.empty() ? index.end() : index.find(partner);
    if (it == index.end()) {
      fail(path, "no partner path");
      continue;
    }
    const auto& [other, w2] = paths[it->second];
    auto back = involution_partner(c, m, other);
    std::size_t t1 = path.length(), t2 = other.length();
    if (back != path.cells) fail(path, "involution is not an involution");
    else if (w * w2 != -1) fail(path, "partner has the same sign");
    else if (t1 + 1 != t2 && t2 + 1 != t1) fail(path, "partner length is not one apart");
    else ++census.paired;
  }
  return census;
}

morse_incidence_result morse_incidence(const cell_complex& c, const morse_matching& m,
                                       const incidence_table& signs, cell_id sigma, cell_id tau,
                                       std::size_t cap) {
  if (m.matched(sigma) || m.matched(tau)) throw input_error("morse incidence: both cells must be critical");
  if (c.dim(sigma) != c.dim(tau) + 1) throw input_error("morse incidence: dimensions must differ by one");
  auto paths = alternating_paths(c, m, signs, sigma, tau, cap);
  morse_incidence_result res;
  res.census = census_paths(c, m, paths);
  res.value = res.census.weight_sum;
  return res;
}

integer_chain_complex morse_complex(const cell_complex& c, const morse_matching& m,
                                    const acyclicity_certificate& cert) {
  const int top = c.dimension();
  if (cert.orders.size() != static_cast<std::size_t>(std::max(top, 0)))
    throw input_error("morse complex: certificate does not belong to this complex");
  for (int d = 0; d < top; ++d)
    if (cert.orders[static_cast<std::size_t>(d)].size() != c.count_of_dim(d) + c.count_of_dim(d + 1))
      throw input_error("morse complex: certificate does not belong to this complex");
  incidence_table signs(c);
  auto critical = critical_cells(c, m);
  integer_chain_complex out;
  for (const auto& level : critical) out.cells.push_back(level.size());
  out.boundary.resize(out.cells.size());

  std::vector<std::int64_t> x(c.size(), 0);
  std::vector<std::uint32_t> slot(c.size(), std::numeric_limits<std::uint32_t>::max());
  for (int d = 1; d <= top; ++d) {
    const auto& lower = critical[static_cast<std::size_t>(d - 1)];
    for (std::size_t i = 0; i < lower.size(); ++i) slot[lower[i]] = static_cast<std::uint32_t>(i);
    auto& mat = out.boundary[static_cast<std::size_t>(d)];
    mat.rows = lower.size();
    mat.cols = critical[static_cast<std::size_t>(d)].size();
    mat.columns.resize(mat.cols);
    const auto& order = cert.orders[static_cast<std::size_t>(d - 1)];
    for (std::size_t col = 0; col < mat.cols; ++col) {
      cell_id sigma = critical[static_cast<std::size_t>(d)][col];
      auto f = c.facets(sigma);
      for (std::size_t k = 0; k < f.size(); ++k) x[f[k]] += signs.sign(sigma, k);
      for (cell_id a : order) {
        if (c.dim(a) != d - 1 || x[a] == 0 || !matched_up(c, m, a)) continue;
        cell_id u = m.partner[a];
        const std::int64_t carry = -x[a] * signs.sign_of(c, u, a);
        auto g = c.facets(u);
        for (std::size_t k = 0; k < g.size(); ++k)
          if (g[k] != a) x[g[k]] += carry * signs.sign(u, k);
      }
      for (cell_id t : lower)
        if (x[t] != 0) mat.columns[col].emplace_back(slot[t], x[t]);
      // reset the layer
      for (cell_id a = c.first_of_dim(d - 1); a < c.first_of_dim(d); ++a) x[a] = 0;
    }
  }
  check_boundary_squares_to_zero(out);
  return out;
}

}  // namespace homchains
