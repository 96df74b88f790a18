#include "homchains/verify.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <unordered_set>

#include "homchains/euler.hpp"
#include "homchains/parallel.hpp"

namespace homchains {

namespace {

// Homology with trailing empty dimensions dropped.
std::pair<std::vector<std::size_t>, std::vector<std::vector<big_int>>> trimmed(const homology_report& h) {
  auto betti = h.betti;
  auto torsion = h.torsion;
  while (!betti.empty() && betti.back() == 0 && torsion.back().empty()) {
    betti.pop_back();
    torsion.pop_back();
  }
  return {betti, torsion};
}

}  // namespace

fold_report verify_fold_consequence(const finite_poset& q, const finite_poset& p, element_id x,
                                    std::size_t cap) {
  if (x >= p.size()) throw input_error("fold: element out of range");
  auto folds = find_folds(p);
  auto it = std::find_if(folds.begin(), folds.end(), [x](const cover_pair& f) { return f.first == x; });
  if (it == folds.end()) throw input_error("fold: removing " + p.label(x) + " is not a fold");
  fold_report rep;
  rep.removed = x;
  rep.dominant = it->second;
  rep.removed_label = p.label(x);
  const finite_poset smaller = p.without(x);
  const cell_complex before = hom_complex_generic(q, p, strict_order_maps(q, p), cap);
  const cell_complex after = hom_complex_generic(q, smaller, strict_order_maps(q, smaller), cap);
  rep.cells_before = before.f_vector();
  rep.cells_after = after.f_vector();
  rep.before = homology(before);
  rep.after = homology(after);
  // the Euler characteristic is implied by the Betti numbers and torsion
  rep.agree = trimmed(rep.before) == trimmed(rep.after);
  return rep;
}

bool is_chain(const finite_poset& p) {
  for (element_id a = 0; a < p.size(); ++a)
    for (element_id b = a + 1; b < p.size(); ++b)
      if (!p.comparable(a, b)) return false;
  return true;
}

std::vector<fold_report> fold_to_chain(const finite_poset& q, const finite_poset& p, std::size_t cap) {
  std::vector<fold_report> out;
  std::set<std::vector<std::string>> dead;  // label sets known to lead nowhere
  auto search = [&](auto&& self, const finite_poset& cur) -> bool {
    if (is_chain(cur)) return true;
    auto labels = cur.labels();
    std::sort(labels.begin(), labels.end());
    if (dead.contains(labels)) return false;
    std::vector<element_id> tried;
    for (auto [x, y] : find_folds(cur)) {
      if (std::find(tried.begin(), tried.end(), x) != tried.end()) continue;
      tried.push_back(x);
      out.push_back(verify_fold_consequence(q, cur, x, cap));
      if (self(self, cur.without(x))) return true;
      out.pop_back();
    }
    dead.insert(std::move(labels));
    return false;
  };
  if (!search(search, p)) throw input_error("fold: no fold sequence reaches a chain");
  return out;
}

// ---------------------------------------------------------------------------

bool verification_report::passed() const {
  return std::all_of(suites.begin(), suites.end(), [](const suite_result& s) { return s.passed; });
}

namespace {

// Shared state, built on first use.
struct context {
  chain_spec spec;
  verify_options opt;
  std::optional<cell_complex> complex;
  std::optional<morse_matching> matching;
  std::optional<acyclicity_certificate> cert;
  std::optional<homology_report> full_homology;

  const cell_complex& c() {
    if (!complex) complex = chain_product_complex(spec, opt.cap);
    return *complex;
  }
  const morse_matching& m() {
    if (!matching) matching = match_product_of_chains(c(), spec, opt.threads);
    return *matching;
  }
  const acyclicity_certificate& certificate() {
    if (!cert) cert = validate_acyclic(m(), c());
    return *cert;
  }
  const homology_report& h() {
    if (!full_homology) full_homology = homology(c());
    return *full_homology;
  }
};

template <class T>
std::string join(const std::vector<T>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    if constexpr (std::is_same_v<T, big_int>) s += v[i].str();
    else s += std::to_string(v[i]);
  }
  return s + ")";
}

suite_result cubical(context& ctx) {
  suite_result r;
  r.name = "cubical";
  const cell_complex& c = ctx.c();
  chain_product cp(ctx.spec);
  const cell_complex lattice_complex = maximal_chain_complex(cp.lattice(), ctx.opt.cap);
  if (lattice_complex.f_vector() != c.f_vector()) {
    r.detail = "f-vectors differ: " + join(lattice_complex.f_vector()) + " vs " + join(c.f_vector());
    return r;
  }
  for (cell_id x = 0; x < lattice_complex.size(); ++x, ++r.checked) {
    const multi_hom& h = lattice_complex.multihom(x);
    if (!has_cubical_pattern(h)) {
      r.detail = "not cubical: " + format_multihom(h, lattice_complex.target_labels());
      return r;
    }
    cell_word w = cp.from_multihom(h);
    if (!c.find(w) || cp.to_multihom(w) != h) {
      r.detail = "no matching cell word for " + format_multihom(h, lattice_complex.target_labels());
      return r;
    }
  }
  r.passed = true;
  r.detail = "f = " + join(c.f_vector());
  return r;
}

suite_result acyclic(context& ctx) {
  suite_result r;
  r.name = "acyclic";
  try {
    ctx.certificate();
  } catch (const matching_cycle_error& e) {
    r.detail = e.what();
    return r;
  }
  r.checked = ctx.m().matched_pairs();
  r.passed = true;
  r.detail = std::to_string(r.checked) + " matched pairs";
  return r;
}

suite_result bijection(context& ctx) {
  suite_result r;
  r.name = "bijection";
  std::set<cell_word> expected;
  for_each_word(
      ctx.spec,
      [&](const word& w) {
        auto d = decompose_descents(w);
        if (!d.valid) return;
        cell_word cw = critical_cellword_from_word(w);
        if (cw.dimension() != critical_dimension(d))
          throw invariant_error("bijection: dimension formula fails for " + format_word(w));
        expected.insert(std::move(cw));
      },
      ctx.opt.cap);
  std::set<cell_word> found;
  for (const auto& level : critical_cell_words(ctx.c(), ctx.m()))
    found.insert(level.begin(), level.end());
  r.checked = found.size();
  if (found != expected) {
    std::vector<cell_word> extra, missing;
    std::set_difference(found.begin(), found.end(), expected.begin(), expected.end(), std::back_inserter(extra));
    std::set_difference(expected.begin(), expected.end(), found.begin(), found.end(), std::back_inserter(missing));
    r.detail = std::to_string(extra.size()) + " unexpected, " + std::to_string(missing.size()) + " missing";
    if (!extra.empty()) r.detail += "; e.g. critical " + extra[0].to_string();
    if (!missing.empty()) r.detail += "; e.g. expected " + missing[0].to_string();
    return r;
  }
  r.passed = true;
  r.detail = std::to_string(found.size()) + " critical cells";
  return r;
}

suite_result zero_incidence(context& ctx) {
  suite_result r;
  r.name = "zero-incidence";
  const cell_complex& c = ctx.c();
  const morse_matching& m = ctx.m();
  ctx.certificate();
  incidence_table signs(c);
  std::vector<cell_id> sources;
  for (const auto& level : critical_cells(c, m))
    for (cell_id x : level)
      if (c.dim(x) > 0) sources.push_back(x);

  struct outcome {
    std::size_t paths = 0, pairs = 0;
    std::string failure;
  };
  std::vector<outcome> results(sources.size());
  parallel_for(sources.size(), ctx.opt.threads, [&](std::size_t i) {
    auto paths = alternating_paths_from(c, m, signs, sources[i], ctx.opt.cap);
    auto& res = results[i];
    res.paths = paths.size();
    std::span<const std::pair<alternating_path, int>> all(paths);
    for (std::size_t lo = 0; lo < paths.size();) {
      std::size_t hi = lo;
      while (hi < paths.size() && paths[hi].first.cells.back() == paths[lo].first.cells.back()) ++hi;
      ++res.pairs;
      auto census = census_paths(c, m, all.subspan(lo, hi - lo));
      if (res.failure.empty()) {
        if (census.weight_sum != 0)
          res.failure = "[" + c.key(paths[lo].first.cells.back()) + " : " + c.key(sources[i]) +
                        "] = " + std::to_string(census.weight_sum);
        else if (!census.ok())
          res.failure = census.first_failure;
      }
      lo = hi;
    }
  });
  std::size_t paths = 0, pairs = 0;
  for (const auto& res : results) {
    paths += res.paths;
    pairs += res.pairs;
    if (!res.failure.empty() && r.detail.empty()) r.detail = res.failure;
  }
  r.checked = paths;
  if (!r.detail.empty()) return r;
  auto morse = morse_complex(c, m, ctx.certificate());
  for (std::size_t d = 1; d < morse.boundary.size(); ++d)
    if (morse.boundary[d].nonzeros() != 0) {
      r.detail = "Morse boundary in dimension " + std::to_string(d) + " is nonzero";
      return r;
    }
  r.passed = true;
  r.detail = std::to_string(paths) + " alternating paths over " + std::to_string(pairs) + " connected critical pairs";
  return r;
}

suite_result torsion(context& ctx) {
  suite_result r;
  r.name = "torsion";
  const homology_report& h = ctx.h();
  r.checked = h.betti.size();
  if (!h.torsion_free()) {
    r.detail = "torsion found";
    return r;
  }
  auto morse = homology(morse_complex(ctx.c(), ctx.m(), ctx.certificate()));
  if (morse != h) {
    r.detail = "Morse homology " + join(morse.betti) + " differs from " + join(h.betti);
    return r;
  }
  r.passed = true;
  r.detail = "betti = " + join(h.betti);
  return r;
}

suite_result euler(context& ctx) {
  suite_result r;
  r.name = "euler";
  const homology_report& h = ctx.h();
  std::int64_t betti_sum = 0;
  for (std::size_t d = 0; d < h.betti.size(); ++d)
    betti_sum += (d % 2 ? -1 : 1) * static_cast<std::int64_t>(h.betti[d]);
  r.checked = 1;
  if (h.torsion_free() && betti_sum != h.euler) {
    r.detail = "alternating Betti sum " + std::to_string(betti_sum) + " != " + std::to_string(h.euler);
    return r;
  }
  if (ctx.spec.boolean()) {
    const int n = ctx.spec.letters();
    const auto f = ctx.c().f_vector();
    for (std::size_t k = 0; k < f.size(); ++k, ++r.checked)
      if (f_vector_bn(n, static_cast<int>(k)) != f[k]) {
        r.detail = "f_" + std::to_string(k) + " = " + std::to_string(f[k]) + " but the formula gives " +
                   f_vector_bn(n, static_cast<int>(k)).str();
        return r;
      }
    if (euler_formula(n) != h.euler) {
      r.detail = "chi = " + std::to_string(h.euler) + " but the formula gives " + euler_formula(n).str();
      return r;
    }
  }
  r.passed = true;
  r.detail = "chi = " + std::to_string(h.euler);
  return r;
}

}  // namespace

verification_report run_verification(const chain_spec& spec, const std::vector<std::string>& suites,
                                     const verify_options& opt) {
  std::vector<std::string> names;
  for (const auto& s : suites) {
    if (s == "all") {
      names.insert(names.end(), suite_names().begin(), suite_names().end());
      continue;
    }
    if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
      throw input_error("verify: unknown suite '" + s + "'");
    names.push_back(s);
  }
  context ctx;
  ctx.spec = spec;
  ctx.opt = opt;
  verification_report rep;
  rep.spec = spec;
  std::unordered_set<std::string> done;
  for (const auto& name : names) {
    if (!done.insert(name).second) continue;
    if (name == "cubical") rep.suites.push_back(cubical(ctx));
    else if (name == "acyclic") rep.suites.push_back(acyclic(ctx));
    else if (name == "bijection") rep.suites.push_back(bijection(ctx));
    else if (name == "zero-incidence") rep.suites.push_back(zero_incidence(ctx));
    else if (name == "torsion") rep.suites.push_back(torsion(ctx));
    else rep.suites.push_back(euler(ctx));
  }
  return rep;
}

}  // namespace homchains
