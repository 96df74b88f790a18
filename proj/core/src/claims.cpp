#include <algorithm>

#include "homchains/morse.hpp"

namespace homchains {

namespace {

claim_report named(std::string name) {
  claim_report rep;
  rep.name = std::move(name);
  return rep;
}

void fail(claim_report& rep, std::string what) {
  if (rep.failures++ == 0) rep.first_failure = std::move(what);
}

// Number of loops a cell survives: it lies in the domain of loop k iff k < survived.
std::size_t survived(const morse_matching& m, cell_id x, std::size_t loops) {
  return m.loop[x] < 0 ? loops : static_cast<std::size_t>(m.loop[x]) + 1;
}

template <class Check>
claim_report scan_covers(std::string name, const cell_complex& c, const chain_spec& spec,
                         const morse_matching& m, Check check) {
  claim_report rep = named(std::move(name));
  const auto schedule = loop_schedule(spec);
  for (cell_id t = 0; t < c.size(); ++t) {
    for (cell_id s : c.facets(t)) {
      std::size_t both = std::min(survived(m, s, schedule.size()), survived(m, t, schedule.size()));
      for (std::size_t k = 0; k < both; ++k) {
        ++rep.checked;
        const auto [r, q] = schedule[k];
        const cell_word& tw = c.word(t);
        const cell_word& sw = c.word(s);
        std::size_t jt = occurrence_position(tw, r, q), js = occurrence_position(sw, r, q);
        if (!check(sw, js, tw, jt, r))
          fail(rep, sw.to_string() + " < " + tw.to_string() + " at loop (" + std::to_string(r) + "," +
                        std::to_string(q) + ")");
      }
    }
  }
  return rep;
}

descent_decomposition runs_of(const cell_word& w) { return decompose_descents(w.letters()); }

bool in_descents(const cell_word& w, std::size_t j) {
  return j >= 1 && j < w.length() && w.at(j) > w.at(j + 1);
}

}  // namespace

claim_report check_phi_monotone(const cell_complex& c, const chain_spec& spec, const morse_matching& m) {
  return scan_covers("phi order-preserving", c, spec, m,
                     [](const cell_word&, std::size_t js, const cell_word&, std::size_t jt, int) {
                       return js >= jt;
                     });
}

claim_report check_rho_monotone(const cell_complex& c, const chain_spec& spec, const morse_matching& m) {
  return scan_covers("rho order-preserving", c, spec, m,
                     [](const cell_word& sw, std::size_t js, const cell_word& tw, std::size_t jt, int r) {
                       if (js != jt) return true;
                       return rho(tw, jt, r) != rho_value::a || rho(sw, js, r) == rho_value::a;
                     });
}

claim_report check_patchwork(const cell_complex& c, const chain_spec& spec, const morse_matching& m) {
  claim_report rep = named("matched cells share a fiber");
  const auto schedule = loop_schedule(spec);
  for (cell_id x = 0; x < c.size(); ++x) {
    cell_id y = m.partner[x];
    if (y == no_cell || y < x) continue;
    ++rep.checked;
    if (m.loop[x] < 0 || m.loop[x] != m.loop[y]) {
      fail(rep, c.key(x) + " and " + c.key(y) + " matched in different loops");
      continue;
    }
    const auto [r, s] = schedule[static_cast<std::size_t>(m.loop[x])];
    std::size_t jx = occurrence_position(c.word(x), r, s), jy = occurrence_position(c.word(y), r, s);
    if (jx != jy || rho(c.word(x), jx, r) != rho_value::a || rho(c.word(y), jy, r) != rho_value::a)
      fail(rep, c.key(x) + " and " + c.key(y) + " lie in different fibers");
  }
  return rep;
}

claim_report check_run_start_free(std::span<const cell_word> critical) {
  claim_report rep = named("descent run starts are free");
  for (const auto& w : critical) {
    for (const auto& run : runs_of(w).runs) {
      ++rep.checked;
      if (!w.is_free(run.start)) fail(rep, w.to_string() + " at " + std::to_string(run.start));
    }
  }
  return rep;
}

claim_report check_descent_followed_by_pair(std::span<const cell_word> critical) {
  claim_report rep = named("free descent is followed by a joined pair");
  for (const auto& w : critical) {
    for (std::size_t j : descent_set(w.letters())) {
      if (!w.is_free(j)) continue;
      ++rep.checked;
      if (!w.pair_starts(j + 1) || !in_descents(w, j + 1)) fail(rep, w.to_string() + " at " + std::to_string(j));
    }
  }
  return rep;
}

claim_report check_third_descent_free(std::span<const cell_word> critical) {
  claim_report rep = named("descent three places after a free descent is free");
  for (const auto& w : critical) {
    for (std::size_t j : descent_set(w.letters())) {
      if (!w.is_free(j) || !in_descents(w, j + 3)) continue;
      ++rep.checked;
      if (!w.is_free(j + 3)) fail(rep, w.to_string() + " at " + std::to_string(j));
    }
  }
  return rep;
}

claim_report check_increasing_blocks(std::span<const cell_word> critical) {
  claim_report rep = named("free blocks increase and end above their pair");
  for (const auto& w : critical) {
    ++rep.checked;
    bool ok = true;
    for (std::size_t p = 1; p < w.length(); ++p)
      if (w.is_free(p) && w.is_free(p + 1) && w.at(p) > w.at(p + 1)) ok = false;
    for (std::size_t p : w.pair_positions())
      if (p < 2 || !w.is_free(p - 1) || w.at(p - 1) <= w.at(p)) ok = false;
    if (!ok) fail(rep, w.to_string());
  }
  return rep;
}

}  // namespace homchains
