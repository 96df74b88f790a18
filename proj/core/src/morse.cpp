#include "homchains/morse.hpp"

#include <algorithm>

#include "homchains/parallel.hpp"

namespace homchains {

std::vector<loop_index> loop_schedule(const chain_spec& spec) {
  std::vector<loop_index> out;
  for (int r = spec.letters(); r >= 1; --r)
    for (int s = spec.multiplicity(r); s >= 1; --s) out.push_back({r, s});
  return out;
}

std::size_t occurrence_position(const cell_word& cell, int r, int s) {
  int seen = 0;
  for (std::size_t p = 1; p <= cell.length(); ++p)
    if (cell.at(p) == r && ++seen == s) return p;
  throw input_error("cell " + cell.to_string() + " has fewer than " + std::to_string(s) +
                    " copies of " + std::to_string(r));
}

rho_value rho(const cell_word& cell, std::size_t j, int r) {
  if (j > 1 && cell.is_free(j - 1) && r < cell.at(j - 1)) return rho_value::b;
  if (j >= cell.length() || r <= cell.at(j + 1)) return rho_value::b;
  bool both_free = cell.is_free(j) && cell.is_free(j + 1);
  if (!both_free && !cell.pair_starts(j)) return rho_value::b;
  return rho_value::a;
}

cell_word fiber_partner(const cell_word& cell, std::size_t j) {
  if (cell.pair_starts(j)) return cell.released(j, release_order::beta);
  return cell.joined(j);
}

fiber_trace trace_fibers(const chain_spec& spec, const cell_word& cell) {
  if (!is_word_of(cell.letters(), spec))
    throw input_error("trace: " + cell.to_string() + " is not a cell of Hom(" + spec.to_string() + ")");
  fiber_trace t;
  t.cell = cell;
  const auto schedule = loop_schedule(spec);
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    const auto [r, s] = schedule[k];
    loop_record rec{schedule[k], occurrence_position(cell, r, s), rho_value::b};
    rec.rho = rho(cell, rec.position, r);
    t.loops.push_back(rec);
    if (rec.rho == rho_value::a) {
      t.matched_at = k;
      t.partner = fiber_partner(cell, rec.position);
      break;
    }
  }
  return t;
}

std::size_t morse_matching::matched_pairs() const {
  std::size_t n = 0;
  for (cell_id p : partner)
    if (p != no_cell) ++n;
  return n / 2;
}

morse_matching make_matching(const cell_complex& c, std::span<const std::pair<cell_id, cell_id>> pairs) {
  morse_matching m;
  m.partner.assign(c.size(), no_cell);
  m.loop.assign(c.size(), -1);
  for (auto [x, y] : pairs) {
    if (x >= c.size() || y >= c.size()) throw input_error("matching: cell id out of range");
    if (m.partner[x] != no_cell || m.partner[y] != no_cell)
      throw input_error("matching: a cell is matched twice");
    m.partner[x] = y;
    m.partner[y] = x;
  }
  return m;
}

morse_matching match_product_of_chains(const cell_complex& c, const chain_spec& spec, unsigned threads) {
  if (!c.has_words()) throw input_error("matching: the complex has no cell words");
  morse_matching m = make_matching(c);
  const auto schedule = loop_schedule(spec);
  parallel_for(c.size(), threads, [&](std::size_t i) {
    const cell_word& w = c.word(static_cast<cell_id>(i));
    for (std::size_t k = 0; k < schedule.size(); ++k) {
      const auto [r, s] = schedule[k];
      std::size_t j = occurrence_position(w, r, s);
      if (rho(w, j, r) != rho_value::a) continue;
      auto id = c.find(fiber_partner(w, j));
      if (!id) throw invariant_error("matching: partner of " + w.to_string() + " is not a cell");
      m.partner[i] = *id;
      m.loop[i] = static_cast<std::int32_t>(k);
      break;
    }
  });
  for (cell_id i = 0; i < c.size(); ++i) {
    cell_id p = m.partner[i];
    if (p == no_cell) continue;
    if (m.partner[p] != i || m.loop[p] != m.loop[i])
      throw invariant_error("matching: " + c.key(i) + " and " + c.key(p) +
                            " are not matched to each other in the same loop");
  }
  return m;
}

std::vector<std::vector<cell_id>> critical_cells(const cell_complex& c, const morse_matching& m) {
  std::vector<std::vector<cell_id>> out(static_cast<std::size_t>(std::max(c.dimension() + 1, 0)));
  for (cell_id i = 0; i < c.size(); ++i)
    if (!m.matched(i)) out[static_cast<std::size_t>(c.dim(i))].push_back(i);
  return out;
}

std::vector<std::vector<cell_word>> critical_cell_words(const cell_complex& c, const morse_matching& m) {
  std::vector<std::vector<cell_word>> out;
  for (const auto& level : critical_cells(c, m)) {
    auto& dst = out.emplace_back();
    for (cell_id i : level) dst.push_back(c.word(i));
  }
  return out;
}

// ---------------------------------------------------------------------------
// acyclicity

namespace {

void check_structure(const morse_matching& m, const cell_complex& c) {
  if (m.partner.size() != c.size()) throw input_error("matching: size does not match the complex");
  for (cell_id x = 0; x < c.size(); ++x) {
    cell_id y = m.partner[x];
    if (y == no_cell) continue;
    if (y >= c.size() || m.partner[y] != x) throw input_error("matching: pairing is not symmetric");
    cell_id lo = c.dim(x) < c.dim(y) ? x : y, hi = lo == x ? y : x;
    if (c.dim(hi) != c.dim(lo) + 1) throw input_error("matching: paired cells differ in dimension by more than one");
    auto f = c.facets(hi);
    if (std::find(f.begin(), f.end(), lo) == f.end())
      throw input_error("matching: " + c.key(lo) + " is not a facet of " + c.key(hi));
  }
}

}  // namespace

acyclicity_certificate validate_acyclic(const morse_matching& m, const cell_complex& c) {
  check_structure(m, c);
  acyclicity_certificate cert;
  for (int d = 0; d < c.dimension(); ++d) {
    const cell_id lo = c.first_of_dim(d), mid = c.first_of_dim(d + 1), hi = c.first_of_dim(d + 2);
    const std::size_t n = hi - lo;
    auto local = [lo](cell_id x) { return static_cast<std::size_t>(x - lo); };
    std::vector<std::vector<cell_id>> out(n);
    std::vector<std::size_t> indeg(n, 0);
    for (cell_id s = mid; s < hi; ++s) {
      for (cell_id t : c.facets(s)) {
        if (m.partner[s] == t) out[local(t)].push_back(s);
        else out[local(s)].push_back(t);
      }
    }
    for (const auto& edges : out)
      for (cell_id y : edges) ++indeg[local(y)];
    std::vector<cell_id> order, queue;
    for (cell_id x = lo; x < hi; ++x)
      if (indeg[local(x)] == 0) queue.push_back(x);
    while (!queue.empty()) {
      cell_id x = queue.back();
      queue.pop_back();
      order.push_back(x);
      for (cell_id y : out[local(x)])
        if (--indeg[local(y)] == 0) queue.push_back(y);
    }
    if (order.size() != n) {
      // Every leftover node has a leftover predecessor; walking backwards
      // along them must revisit a node.
      std::vector<std::vector<cell_id>> in(n);
      for (cell_id x = lo; x < hi; ++x)
        for (cell_id y : out[local(x)])
          if (indeg[local(x)] > 0 && indeg[local(y)] > 0) in[local(y)].push_back(x);
      cell_id start = lo;
      while (indeg[local(start)] == 0) ++start;
      std::vector<std::size_t> seen_at(n, npos);
      std::vector<cell_id> walk;
      cell_id x = start;
      while (seen_at[local(x)] == npos) {
        seen_at[local(x)] = walk.size();
        walk.push_back(x);
        x = in[local(x)].front();
      }
      std::vector<cell_id> cycle(walk.begin() + static_cast<std::ptrdiff_t>(seen_at[local(x)]), walk.end());
      std::reverse(cycle.begin(), cycle.end());
      std::string text;
      for (cell_id y : cycle) text += (text.empty() ? "" : " -> ") + c.key(y);
      throw matching_cycle_error("matching: alternating cycle " + text, std::move(cycle));
    }
    cert.orders.push_back(std::move(order));
  }
  return cert;
}

}  // namespace homchains
