#include "homchains/homcomplex.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <unordered_set>

namespace homchains {

int multi_hom::dimension() const noexcept {
  int d = 0;
  for (const auto& s : sets) d += static_cast<int>(s.size()) - 1;
  return d;
}

std::size_t multi_hom_hash::operator()(const multi_hom& h) const noexcept {
  std::uint64_t x = 1469598103934665603ULL;
  for (const auto& s : h.sets) {
    for (element_id e : s) {
      x ^= e + 0x9e3779b97f4a7c15ULL;
      x *= 1099511628211ULL;
    }
    x ^= 0xffULL;
    x *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(x ^ (x >> 31));
}

std::string format_multihom(const multi_hom& h, const std::vector<std::string>& labels) {
  auto name = [&](element_id e) { return e < labels.size() ? labels[e] : std::to_string(e); };
  std::string out = "(";
  for (std::size_t i = 0; i < h.sets.size(); ++i) {
    if (i) out += ',';
    const auto& s = h.sets[i];
    if (s.size() == 1) {
      out += name(s[0]);
      continue;
    }
    out += '{';
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (k) out += ',';
      out += name(s[k]);
    }
    out += '}';
  }
  return out + ")";
}

bool has_cubical_pattern(const multi_hom& h) {
  for (std::size_t j = 0; j < h.sets.size(); ++j) {
    std::size_t k = h.sets[j].size();
    if (k < 1 || k > 2) return false;
    if (k == 2 && j + 1 < h.sets.size() && h.sets[j + 1].size() == 2) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// cell_complex

std::vector<std::size_t> cell_complex::f_vector() const {
  std::vector<std::size_t> f;
  for (int d = 0; d <= dimension(); ++d) f.push_back(count_of_dim(d));
  return f;
}

cell_id cell_complex::first_of_dim(int d) const {
  if (d < 0) return 0;
  if (d > dimension()) return static_cast<cell_id>(size());
  return first_[static_cast<std::size_t>(d)];
}

std::size_t cell_complex::count_of_dim(int d) const {
  if (d < 0 || d > dimension()) return 0;
  return first_[static_cast<std::size_t>(d) + 1] - first_[static_cast<std::size_t>(d)];
}

std::string cell_complex::key(cell_id c) const {
  if (has_words()) return words_.at(c).to_string();
  return format_multihom(homs_.at(c), labels_);
}

std::optional<cell_id> cell_complex::find(const cell_word& w) const {
  auto it = word_index_.find(w);
  if (it == word_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<cell_id> cell_complex::find(const multi_hom& h) const {
  auto it = hom_index_.find(h);
  if (it == hom_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<cell_id> cell_complex::find_key(std::string_view key) const {
  if (has_words()) {
    try {
      return find(cell_word::parse(key));
    } catch (const input_error&) {
      return std::nullopt;
    }
  }
  for (cell_id c = 0; c < size(); ++c)
    if (format_multihom(homs_[c], labels_) == key) return c;
  return std::nullopt;
}

// Assembles complexes from per-dimension cell lists.
class complex_builder {
 public:
  static cell_complex from_words(std::vector<std::vector<cell_word>> levels) {
    cell_complex out;
    layout(out, levels);
    out.words_.reserve(out.dims_.size());
    for (auto& level : levels)
      for (auto& w : level) out.words_.push_back(std::move(w));
    out.word_index_.reserve(out.words_.size());
    for (cell_id c = 0; c < out.words_.size(); ++c) out.word_index_.emplace(out.words_[c], c);
    out.release_order_facets_ = true;
    out.facet_begin_.assign(1, 0);
    for (cell_id c = 0; c < out.words_.size(); ++c) {
      for (const auto& f : faces(out.words_[c])) {
        auto it = out.word_index_.find(f.cell);
        if (it == out.word_index_.end())
          throw invariant_error("complex: face " + f.cell.to_string() + " of " +
                                out.words_[c].to_string() + " is missing");
        out.facets_.push_back(it->second);
      }
      out.facet_begin_.push_back(out.facets_.size());
    }
    return out;
  }

  static cell_complex from_homs(std::vector<std::vector<multi_hom>> levels,
                                std::vector<std::string> labels) {
    cell_complex out;
    layout(out, levels);
    out.labels_ = std::move(labels);
    out.homs_.reserve(out.dims_.size());
    for (auto& level : levels)
      for (auto& h : level) out.homs_.push_back(std::move(h));
    out.hom_index_.reserve(out.homs_.size());
    for (cell_id c = 0; c < out.homs_.size(); ++c) out.hom_index_.emplace(out.homs_[c], c);
    out.facet_begin_.assign(1, 0);
    multi_hom scratch;
    for (cell_id c = 0; c < out.homs_.size(); ++c) {
      const auto& h = out.homs_[c];
      std::size_t begin = out.facets_.size();
      for (std::size_t i = 0; i < h.sets.size(); ++i) {
        if (h.sets[i].size() < 2) continue;
        for (std::size_t k = 0; k < h.sets[i].size(); ++k) {
          scratch = h;
          scratch.sets[i].erase(scratch.sets[i].begin() + static_cast<std::ptrdiff_t>(k));
          auto it = out.hom_index_.find(scratch);
          if (it == out.hom_index_.end())
            throw invariant_error("complex: a face of " + format_multihom(h, out.labels_) +
                                  " is missing");
          out.facets_.push_back(it->second);
        }
      }
      std::sort(out.facets_.begin() + static_cast<std::ptrdiff_t>(begin), out.facets_.end());
      out.facet_begin_.push_back(out.facets_.size());
    }
    return out;
  }

  static void attach_words(cell_complex& c, std::vector<cell_word> words) {
    c.words_ = std::move(words);
    c.word_index_.reserve(c.words_.size());
    for (cell_id i = 0; i < c.words_.size(); ++i) c.word_index_.emplace(c.words_[i], i);
  }

 private:
  template <class T>
  static void layout(cell_complex& out, std::vector<std::vector<T>>& levels) {
    while (!levels.empty() && levels.back().empty()) levels.pop_back();
    std::size_t total = 0;
    for (auto& level : levels) {
      std::sort(level.begin(), level.end());
      out.first_.push_back(static_cast<cell_id>(total));
      total += level.size();
    }
    out.first_.push_back(static_cast<cell_id>(total));
    out.dims_.reserve(total);
    for (std::size_t d = 0; d < levels.size(); ++d)
      out.dims_.insert(out.dims_.end(), levels[d].size(), static_cast<int>(d));
  }
};

// ---------------------------------------------------------------------------
// predicates

hom_predicate strict_order_maps(const finite_poset& a, const finite_poset& b) {
  hom_predicate m;
  m.incremental = true;
  m.accepts = [&a, &b](std::span<const element_id> f) {
    const element_id i = static_cast<element_id>(f.size() - 1);
    for (element_id j = 0; j < i; ++j) {
      if (a.less(j, i) && !b.less(f[j], f[i])) return false;
      if (a.less(i, j) && !b.less(f[i], f[j])) return false;
    }
    return true;
  };
  return m;
}

hom_predicate all_maps() {
  hom_predicate m;
  m.incremental = true;
  m.accepts = [](std::span<const element_id>) { return true; };
  return m;
}

// ---------------------------------------------------------------------------
// generic construction

namespace {

struct flat_hash {
  std::size_t operator()(const std::vector<element_id>& v) const noexcept {
    std::uint64_t x = 1469598103934665603ULL;
    for (element_id e : v) {
      x ^= e + 0x9e3779b97f4a7c15ULL;
      x *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(x ^ (x >> 31));
  }
};

std::vector<std::vector<element_id>> enumerate_vertices(std::size_t na, std::size_t nb,
                                                        const hom_predicate& m, std::size_t cap) {
  std::vector<std::vector<element_id>> out;
  if (!m.incremental) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < na; ++i) {
      if (nb != 0 && total > cap / nb) throw cap_error("hom complex: |B|^|A| exceeds the cap");
      total *= nb;
    }
  }
  if (na == 0) {
    out.emplace_back();
    return out;
  }
  if (nb == 0) return out;
  std::vector<element_id> f;
  f.reserve(na);
  auto rec = [&](auto&& self) -> void {
    if (f.size() == na) {
      if (!m.incremental && !m.accepts(f)) return;
      if (out.size() >= cap) throw cap_error("hom complex: more than " + std::to_string(cap) + " vertices");
      out.push_back(f);
      return;
    }
    for (element_id b = 0; b < nb; ++b) {
      f.push_back(b);
      if (!m.incremental || m.accepts(f)) self(self);
      f.pop_back();
    }
  };
  rec(rec);
  return out;
}

}  // namespace

cell_complex hom_complex_generic(const finite_poset& a, const finite_poset& b,
                                 const hom_predicate& m, std::size_t cap) {
  const std::size_t na = a.size();
  auto vertices = enumerate_vertices(na, b.size(), m, cap);

  // For each coordinate i, the values v_i can take with the rest of v fixed.
  std::vector<std::unordered_map<std::vector<element_id>, std::vector<element_id>, flat_hash>> alternatives(na);
  for (std::size_t i = 0; i < na; ++i) {
    for (const auto& v : vertices) {
      auto k = v;
      k[i] = std::numeric_limits<element_id>::max();
      alternatives[i][std::move(k)].push_back(v[i]);
    }
    for (auto& [k, list] : alternatives[i]) std::sort(list.begin(), list.end());
  }

  std::vector<std::vector<multi_hom>> levels(1);
  levels[0].reserve(vertices.size());
  for (const auto& v : vertices) {
    multi_hom h;
    h.sets.reserve(na);
    for (element_id e : v) h.sets.push_back({e});
    levels[0].push_back(std::move(h));
  }
  std::size_t total = levels[0].size();

  while (!levels.back().empty()) {
    const auto& below = levels.back();
    std::unordered_set<multi_hom, multi_hom_hash> known(below.begin(), below.end());
    std::vector<multi_hom> next;
    std::vector<element_id> key(na);
    multi_hom facet;
    for (const auto& x : below) {
      for (std::size_t i = 0; i < na; ++i) {
        // Y = x + b at coordinate i is generated only from its canonical facet:
        // coordinates before i are singletons and b is the new maximum of Y_i.
        if (i > 0 && x.sets[i - 1].size() > 1) break;
        for (std::size_t c = 0; c < na; ++c) key[c] = x.sets[c].front();
        key[i] = std::numeric_limits<element_id>::max();
        auto it = alternatives[i].find(key);
        if (it == alternatives[i].end()) continue;
        for (element_id e : it->second) {
          if (e <= x.sets[i].back()) continue;
          multi_hom y = x;
          y.sets[i].push_back(e);
          bool ok = true;
          for (std::size_t c = 0; c < na && ok; ++c) {
            if (y.sets[c].size() < 2) continue;
            for (std::size_t k = 0; k < y.sets[c].size() && ok; ++k) {
              facet = y;
              facet.sets[c].erase(facet.sets[c].begin() + static_cast<std::ptrdiff_t>(k));
              ok = known.contains(facet);
            }
          }
          if (!ok) continue;
          if (++total > cap) throw cap_error("hom complex: more than " + std::to_string(cap) + " cells");
          next.push_back(std::move(y));
        }
      }
    }
    levels.push_back(std::move(next));
  }
  return complex_builder::from_homs(std::move(levels), b.labels());
}

cell_complex maximal_chain_complex(const graded_poset& p, std::size_t cap) {
  if (p.empty()) throw input_error("maximal chain complex: empty poset");
  graded_poset c = chain(static_cast<std::size_t>(p.rank()));
  return hom_complex_generic(c, p, strict_order_maps(c, p), cap);
}

namespace {

// Reads the parenthesized permutation of a cell of Hom(L), L = J(P), with
// base element q written as letter_of(q).
template <class LetterOf>
cell_word decode_lattice_cell(const distributive_lattice& l, const multi_hom& h, LetterOf letter_of) {
  const std::size_t m = l.base().size();
  if (h.sets.size() != m + 1) throw input_error("lattice cell: wrong number of coordinates");
  if (h.sets[0] != std::vector<element_id>{l.bottom()} || h.sets[m] != std::vector<element_id>{l.top()})
    throw input_error("lattice cell: must start at the bottom and end at the top");
  word letters;
  std::uint64_t mask = 0;
  auto single_step = [&](std::uint32_t from, std::uint32_t to) {
    if ((from & ~to) != 0 || std::popcount(to ^ from) != 1)
      throw input_error("lattice cell: consecutive ideals do not differ by one element");
    return static_cast<element_id>(std::countr_zero(to ^ from));
  };
  for (std::size_t j = 1; j <= m; ++j) {
    const auto& prev = h.sets[j - 1];
    if (prev.size() != 1) throw input_error("lattice cell: a two-element coordinate must follow a singleton");
    const std::uint32_t base = l.ideal(prev[0]);
    const auto& cur = h.sets[j];
    if (cur.size() == 1) {
      letters.push_back(static_cast<letter>(letter_of(single_step(base, l.ideal(cur[0])))));
    } else if (cur.size() == 2 && j < m && h.sets[j + 1].size() == 1) {
      element_id q1 = single_step(base, l.ideal(cur[0]));
      element_id q2 = single_step(base, l.ideal(cur[1]));
      if (l.ideal(h.sets[j + 1][0]) != (base | (1U << q1) | (1U << q2)))
        throw input_error("lattice cell: a pair must close with the union of its ideals");
      letter x = static_cast<letter>(letter_of(q1)), y = static_cast<letter>(letter_of(q2));
      letters.push_back(static_cast<letter>(std::max(x, y)));
      letters.push_back(static_cast<letter>(std::min(x, y)));
      mask |= std::uint64_t{1} << (j - 1);
      ++j;
    } else {
      throw input_error("lattice cell: coordinate sizes do not follow the cubical pattern");
    }
  }
  return cell_word(std::move(letters), mask);
}

}  // namespace

cell_complex maximal_chain_complex(const distributive_lattice& l, std::size_t cap) {
  cell_complex out = maximal_chain_complex(static_cast<const graded_poset&>(l), cap);
  std::vector<cell_word> words;
  words.reserve(out.size());
  auto eps = [&l](element_id q) { return l.epsilon_position(q) + 1; };
  for (cell_id c = 0; c < out.size(); ++c) words.push_back(decode_lattice_cell(l, out.multihom(c), eps));
  complex_builder::attach_words(out, std::move(words));
  return out;
}

cell_complex chain_product_complex(const chain_spec& spec, std::size_t cap) {
  std::vector<std::vector<cell_word>> levels(1);
  std::size_t total = 0;
  for_each_word(
      spec,
      [&](const word& x) {
        auto des = descent_set(x);
        // every set of pairwise non-adjacent descents
        auto rec = [&](auto&& self, std::size_t i, std::uint64_t mask, int dim) -> void {
          if (i == des.size()) {
            if (++total > cap) throw cap_error("chain product complex: more than " + std::to_string(cap) + " cells");
            if (levels.size() <= static_cast<std::size_t>(dim)) levels.resize(static_cast<std::size_t>(dim) + 1);
            levels[static_cast<std::size_t>(dim)].emplace_back(x, mask);
            return;
          }
          self(self, i + 1, mask, dim);
          std::size_t p = des[i];
          if (p >= 2 && (mask >> (p - 2) & 1U)) return;
          self(self, i + 1, mask | (std::uint64_t{1} << (p - 1)), dim + 1);
        };
        rec(rec, 0, 0, 0);
      },
      cap);
  return complex_builder::from_words(std::move(levels));
}

// ---------------------------------------------------------------------------
// chain_product

chain_product::chain_product(chain_spec spec)
    : spec_(std::move(spec)), lattice_(chain_product_lattice(spec_)) {
  element_id at = 0;
  for (int r = 1; r <= spec_.letters(); ++r) {
    offset_.push_back(at);
    for (int k = 0; k < spec_.multiplicity(r); ++k) letter_of_.push_back(r);
    at += static_cast<element_id>(spec_.multiplicity(r));
  }
}

element_id chain_product::base_element(int r, int occurrence) const {
  if (r < 1 || r > spec_.letters() || occurrence < 1 || occurrence > spec_.multiplicity(r))
    throw input_error("chain product: no such letter occurrence");
  return offset_[static_cast<std::size_t>(r - 1)] + static_cast<element_id>(occurrence - 1);
}

multi_hom chain_product::to_multihom(const cell_word& cw) const {
  if (!is_word_of(cw.letters(), spec_))
    throw input_error("chain product: " + cw.to_string() + " is not a word of the multiset " + spec_.to_string());
  std::vector<int> seen(static_cast<std::size_t>(spec_.letters()) + 1, 0);
  auto next_element = [&](letter r) { return base_element(r, ++seen[r]); };
  multi_hom h;
  std::uint32_t mask = 0;
  h.sets.push_back({lattice_.find(0)});
  const std::size_t n = cw.length();
  for (std::size_t p = 1; p <= n; ++p) {
    element_id q = next_element(cw.at(p));
    if (cw.pair_starts(p)) {
      element_id q2 = next_element(cw.at(p + 1));
      element_id x = lattice_.find(mask | (1U << q)), y = lattice_.find(mask | (1U << q2));
      h.sets.push_back({std::min(x, y), std::max(x, y)});
      mask |= (1U << q) | (1U << q2);
      h.sets.push_back({lattice_.find(mask)});
      ++p;
    } else {
      mask |= 1U << q;
      h.sets.push_back({lattice_.find(mask)});
    }
  }
  return h;
}

cell_word chain_product::from_multihom(const multi_hom& h) const {
  return decode_lattice_cell(lattice_, h, [this](element_id q) { return letter_of_.at(q); });
}

multi_hom cellword_to_multihom(const cell_word& cw, const chain_spec& spec) {
  return chain_product(spec).to_multihom(cw);
}

cell_word cellword_from_multihom(const multi_hom& h, const chain_spec& spec) {
  return chain_product(spec).from_multihom(h);
}

std::vector<face> faces(const cell_word& cw) {
  std::vector<face> out;
  std::size_t t = 0;
  for (std::size_t p : cw.pair_positions()) {
    ++t;
    out.push_back({cw.released(p, release_order::alpha), release_order::alpha, t});
    out.push_back({cw.released(p, release_order::beta), release_order::beta, t});
  }
  return out;
}

}  // namespace homchains
