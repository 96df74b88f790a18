#include "homchains/poset.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <functional>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>
#include <unordered_set>

namespace homchains {

namespace {

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = std::to_string(i);
  return labels;
}

inline bool test_bit(const std::vector<std::uint64_t>& bits, std::size_t i) {
  return (bits[i / 64] >> (i % 64)) & 1U;
}

inline void set_bit(std::vector<std::uint64_t>& bits, std::size_t i) {
  bits[i / 64] |= std::uint64_t{1} << (i % 64);
}

}  // namespace

// ---------------------------------------------------------------------------
// finite_poset

void finite_poset::init_adjacency(std::size_t n, std::span<const cover_pair> covers,
                                  std::vector<std::string> labels) {
  if (labels.empty()) labels = default_labels(n);
  if (labels.size() != n) throw input_error("poset: label count does not match element count");
  up_.assign(n, {});
  down_.assign(n, {});
  labels_ = std::move(labels);
  for (auto [a, b] : covers) {
    if (a >= n || b >= n) throw input_error("poset: cover refers to an unknown element");
    if (a == b) throw input_error("poset: reflexive cover " + std::to_string(a));
    up_[a].push_back(b);
    down_[b].push_back(a);
  }
  for (auto& adj : up_) {
    std::sort(adj.begin(), adj.end());
    if (std::adjacent_find(adj.begin(), adj.end()) != adj.end())
      throw input_error("poset: duplicate cover");
  }
  for (auto& adj : down_) std::sort(adj.begin(), adj.end());
  cover_count_ = covers.size();
}

finite_poset::finite_poset(trusted_tag, std::size_t n, std::span<const cover_pair> covers,
                           std::vector<std::string> labels) {
  init_adjacency(n, covers, std::move(labels));
  build_closure();
}

finite_poset::finite_poset(std::size_t n, std::span<const cover_pair> covers,
                           std::vector<std::string> labels) {
  init_adjacency(n, covers, std::move(labels));
  check_acyclic();
  build_closure();
  for (auto [a, b] : covers) {
    for (element_id c : up_[a]) {
      if (c != b && less(c, b))
        throw input_error("poset: pair (" + std::to_string(a) + "," + std::to_string(b) +
                          ") is not a cover");
    }
  }
}

finite_poset finite_poset::from_relations(std::size_t n, std::span<const cover_pair> relations,
                                          std::vector<std::string> labels) {
  // Closure over a topological order, then covers(b) = below(b) minus
  // everything below some element of below(b).
  finite_poset raw;
  raw.init_adjacency(n, {}, labels.empty() ? default_labels(n) : labels);
  std::vector<std::vector<element_id>> succ(n);
  std::vector<std::size_t> indeg(n, 0);
  for (auto [a, b] : relations) {
    if (a >= n || b >= n) throw input_error("poset: relation refers to an unknown element");
    if (a == b) throw input_error("poset: reflexive relation");
    succ[a].push_back(b);
    ++indeg[b];
  }
  std::vector<element_id> order;
  std::priority_queue<element_id, std::vector<element_id>, std::greater<>> ready;
  for (element_id x = 0; x < n; ++x)
    if (indeg[x] == 0) ready.push(x);
  while (!ready.empty()) {
    element_id x = ready.top();
    ready.pop();
    order.push_back(x);
    for (element_id y : succ[x])
      if (--indeg[y] == 0) ready.push(y);
  }
  if (order.size() != n) throw input_error("poset: relation contains a cycle");

  const std::size_t words = (n + 63) / 64;
  std::vector<std::vector<std::uint64_t>> below(n, std::vector<std::uint64_t>(words, 0));
  std::vector<std::vector<element_id>> pred(n);
  for (auto [a, b] : relations) pred[b].push_back(a);
  for (element_id b : order) {
    for (element_id a : pred[b]) {
      set_bit(below[b], a);
      for (std::size_t w = 0; w < words; ++w) below[b][w] |= below[a][w];
    }
  }
  std::vector<cover_pair> covers;
  for (element_id b = 0; b < n; ++b) {
    std::vector<std::uint64_t> indirect(words, 0);
    for (element_id c = 0; c < n; ++c)
      if (test_bit(below[b], c))
        for (std::size_t w = 0; w < words; ++w) indirect[w] |= below[c][w];
    for (element_id a = 0; a < n; ++a)
      if (test_bit(below[b], a) && !test_bit(indirect, a)) covers.emplace_back(a, b);
  }
  return finite_poset(trusted_tag{}, n, covers, raw.labels_);
}

void finite_poset::check_acyclic() const {
  const std::size_t n = size();
  std::vector<std::size_t> indeg(n);
  std::vector<element_id> stack;
  for (element_id x = 0; x < n; ++x) {
    indeg[x] = down_[x].size();
    if (indeg[x] == 0) stack.push_back(x);
  }
  std::size_t seen = 0;
  while (!stack.empty()) {
    element_id x = stack.back();
    stack.pop_back();
    ++seen;
    for (element_id y : up_[x])
      if (--indeg[y] == 0) stack.push_back(y);
  }
  if (seen != n) throw input_error("poset: covers contain a directed cycle");
}

void finite_poset::build_closure() {
  below_.clear();
  const std::size_t n = size();
  if (n > closure_limit) return;
  const std::size_t words = (n + 63) / 64;
  below_.assign(n, std::vector<std::uint64_t>(words, 0));
  for (element_id x : canonical_linear_extension(*this)) {
    for (element_id a : down_[x]) {
      set_bit(below_[x], a);
      for (std::size_t w = 0; w < words; ++w) below_[x][w] |= below_[a][w];
    }
  }
}

std::vector<cover_pair> finite_poset::covers() const {
  std::vector<cover_pair> out;
  out.reserve(cover_count_);
  for (element_id a = 0; a < size(); ++a)
    for (element_id b : up_[a]) out.emplace_back(a, b);
  return out;
}

bool finite_poset::less(element_id a, element_id b) const {
  if (a >= size() || b >= size()) throw input_error("poset: element out of range");
  if (a == b) return false;
  if (!below_.empty()) return test_bit(below_[b], a);
  std::vector<char> seen(size(), 0);
  std::vector<element_id> stack{a};
  while (!stack.empty()) {
    element_id x = stack.back();
    stack.pop_back();
    for (element_id y : up_[x]) {
      if (y == b) return true;
      if (!seen[y]) {
        seen[y] = 1;
        stack.push_back(y);
      }
    }
  }
  return false;
}

std::vector<element_id> finite_poset::minimal_elements() const {
  std::vector<element_id> out;
  for (element_id x = 0; x < size(); ++x)
    if (down_[x].empty()) out.push_back(x);
  return out;
}

std::vector<element_id> finite_poset::maximal_elements() const {
  std::vector<element_id> out;
  for (element_id x = 0; x < size(); ++x)
    if (up_[x].empty()) out.push_back(x);
  return out;
}

finite_poset finite_poset::without(element_id x) const {
  if (x >= size()) throw input_error("poset: element out of range");
  const std::size_t n = size();
  auto renumber = [x](element_id e) { return e < x ? e : e - 1; };
  std::vector<cover_pair> relations;
  for (auto [a, b] : covers())
    if (a != x && b != x) relations.emplace_back(renumber(a), renumber(b));
  for (element_id a : down_[x])
    for (element_id b : up_[x]) relations.emplace_back(renumber(a), renumber(b));
  std::vector<std::string> labels;
  for (element_id e = 0; e < n; ++e)
    if (e != x) labels.push_back(labels_[e]);
  return from_relations(n - 1, relations, std::move(labels));
}

// ---------------------------------------------------------------------------
// graded_poset

graded_poset::graded_poset(finite_poset p) : finite_poset(std::move(p)) {
  ranks_.assign(size(), 0);
  for (element_id x : canonical_linear_extension(*this))
    for (element_id a : lower_covers(x)) ranks_[x] = std::max(ranks_[x], ranks_[a] + 1);
  validate();
}

graded_poset::graded_poset(finite_poset p, std::vector<int> ranks)
    : finite_poset(std::move(p)), ranks_(std::move(ranks)) {
  validate();
}

graded_poset::graded_poset(trusted_tag tag, std::size_t n, std::span<const cover_pair> covers,
                           std::vector<std::string> labels, std::vector<int> ranks)
    : finite_poset(tag, n, covers, std::move(labels)), ranks_(std::move(ranks)) {
  validate();
}

void graded_poset::validate() {
  if (empty()) throw input_error("graded poset: no elements");
  if (ranks_.size() != size()) throw input_error("graded poset: rank count mismatch");
  for (element_id a = 0; a < size(); ++a) {
    if (ranks_[a] < 0) throw input_error("graded poset: negative rank");
    if (lower_covers(a).empty() && ranks_[a] != 0)
      throw input_error("graded poset: minimal element " + std::to_string(a) +
                        " has nonzero rank");
    for (element_id b : upper_covers(a))
      if (ranks_[b] != ranks_[a] + 1)
        throw input_error("graded poset: cover (" + std::to_string(a) + "," +
                          std::to_string(b) + ") does not raise rank by one");
  }
  top_rank_ = -1;
  for (element_id x : maximal_elements()) {
    if (top_rank_ >= 0 && ranks_[x] != top_rank_)
      throw input_error("graded poset: maximal chains have different lengths");
    top_rank_ = ranks_[x];
  }
}

std::vector<element_id> graded_poset::elements_of_rank(int r) const {
  std::vector<element_id> out;
  for (element_id x = 0; x < size(); ++x)
    if (ranks_[x] == r) out.push_back(x);
  return out;
}

// ---------------------------------------------------------------------------
// distributive_lattice

distributive_lattice::distributive_lattice(trusted_tag tag, std::size_t n,
                                           std::span<const cover_pair> covers,
                                           std::vector<std::string> labels,
                                           std::vector<int> ranks)
    : graded_poset(tag, n, covers, std::move(labels), std::move(ranks)) {}

element_id distributive_lattice::find(std::uint32_t mask) const {
  auto it = index_.find(mask);
  if (it == index_.end()) throw input_error("lattice: mask is not an order ideal");
  return it->second;
}

// ---------------------------------------------------------------------------
// chain_spec

chain_spec::chain_spec(std::vector<int> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw input_error("chain spec: empty");
  int prev = 0;
  for (int p : parts_) {
    if (p <= 0) throw input_error("chain spec: entries must be positive");
    if (p < prev) throw input_error("chain spec: entries must be nondecreasing");
    prev = p;
    length_ += p;
  }
  if (parts_.size() > 255) throw input_error("chain spec: too many letters");
  if (length_ > 63) throw input_error("chain spec: word length above 63 is not supported");
}

chain_spec chain_spec::parse(std::string_view text) {
  std::vector<int> parts;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t next = text.find(',', pos);
    if (next == std::string_view::npos) next = text.size();
    std::string_view item = text.substr(pos, next - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    int value = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size())
      throw input_error("chain spec: cannot parse '" + std::string(text) + "'");
    parts.push_back(value);
    pos = next + 1;
  }
  return chain_spec(std::move(parts));
}

bool chain_spec::boolean() const noexcept {
  return std::all_of(parts_.begin(), parts_.end(), [](int p) { return p == 1; });
}

std::string chain_spec::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(parts_[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// constructions

graded_poset chain(std::size_t m) {
  std::vector<cover_pair> covers;
  for (std::size_t i = 0; i < m; ++i)
    covers.emplace_back(static_cast<element_id>(i), static_cast<element_id>(i + 1));
  std::vector<int> ranks(m + 1);
  for (std::size_t i = 0; i <= m; ++i) ranks[i] = static_cast<int>(i);
  return graded_poset(finite_poset(m + 1, covers), std::move(ranks));
}

graded_poset product(const std::vector<graded_poset>& parts) {
  if (parts.empty()) throw input_error("product: empty list of factors");
  std::size_t n = 1;
  for (const auto& p : parts) {
    n *= p.size();
    if (n > (std::size_t{1} << 24)) throw cap_error("product: too many elements");
  }
  const std::size_t k = parts.size();
  // Mixed radix with the last coordinate varying fastest.
  std::vector<std::size_t> stride(k, 1);
  for (std::size_t i = k - 1; i-- > 0;) stride[i] = stride[i + 1] * parts[i + 1].size();

  std::vector<cover_pair> covers;
  std::vector<std::string> labels(n);
  std::vector<int> ranks(n, 0);
  std::vector<std::size_t> digit(k, 0);
  for (std::size_t id = 0; id < n; ++id) {
    std::size_t rest = id;
    std::string label = "(";
    for (std::size_t i = 0; i < k; ++i) {
      digit[i] = rest / stride[i];
      rest %= stride[i];
      ranks[id] += parts[i].rank(static_cast<element_id>(digit[i]));
      if (i) label += ',';
      label += parts[i].label(static_cast<element_id>(digit[i]));
    }
    labels[id] = label + ")";
    for (std::size_t i = 0; i < k; ++i) {
      for (element_id up : parts[i].upper_covers(static_cast<element_id>(digit[i]))) {
        std::size_t target = id + (up - digit[i]) * stride[i];
        covers.emplace_back(static_cast<element_id>(id), static_cast<element_id>(target));
      }
    }
  }
  return graded_poset(finite_poset(n, covers, std::move(labels)), std::move(ranks));
}

finite_poset disjoint_union(const std::vector<finite_poset>& parts) {
  std::vector<cover_pair> covers;
  std::size_t offset = 0;
  for (const auto& p : parts) {
    for (auto [a, b] : p.covers())
      covers.emplace_back(static_cast<element_id>(a + offset), static_cast<element_id>(b + offset));
    offset += p.size();
  }
  std::vector<std::string> labels(offset);
  for (std::size_t i = 0; i < offset; ++i) labels[i] = std::to_string(i + 1);
  return finite_poset(offset, covers, std::move(labels));
}

distributive_lattice ideal_lattice(const finite_poset& p) {
  const std::size_t n = p.size();
  if (n > 20) throw cap_error("ideal lattice: base poset has more than 20 elements");

  std::vector<element_id> eps = canonical_linear_extension(p);
  std::vector<std::size_t> eps_pos(n);
  for (std::size_t i = 0; i < n; ++i) eps_pos[eps[i]] = i;

  std::vector<std::uint32_t> down_mask(n, 0);
  for (element_id x = 0; x < n; ++x)
    for (element_id a : p.lower_covers(x)) down_mask[x] |= std::uint32_t{1} << a;

  std::unordered_set<std::uint32_t> seen{0};
  std::vector<std::uint32_t> stack{0};
  while (!stack.empty()) {
    std::uint32_t ideal = stack.back();
    stack.pop_back();
    for (element_id x = 0; x < n; ++x) {
      std::uint32_t bit = std::uint32_t{1} << x;
      if (!(ideal & bit) && (down_mask[x] & ~ideal) == 0) {
        std::uint32_t next = ideal | bit;
        if (seen.insert(next).second) stack.push_back(next);
      }
    }
  }

  auto to_eps = [&](std::uint32_t mask) {
    std::uint32_t out = 0;
    for (element_id x = 0; x < n; ++x)
      if (mask >> x & 1U) out |= std::uint32_t{1} << eps_pos[x];
    return out;
  };
  std::vector<std::uint32_t> ideals(seen.begin(), seen.end());
  // Graded lexicographic: by size, then the set holding the smallest element
  // of the symmetric difference (in epsilon order) comes first.
  std::sort(ideals.begin(), ideals.end(), [&](std::uint32_t a, std::uint32_t b) {
    int ca = std::popcount(a), cb = std::popcount(b);
    if (ca != cb) return ca < cb;
    std::uint32_t ea = to_eps(a), eb = to_eps(b);
    if (ea == eb) return false;
    std::uint32_t low = (ea ^ eb) & (~(ea ^ eb) + 1);
    return (ea & low) != 0;
  });

  std::unordered_map<std::uint32_t, element_id> index;
  for (std::size_t i = 0; i < ideals.size(); ++i) index[ideals[i]] = static_cast<element_id>(i);

  bool short_labels = std::all_of(p.labels().begin(), p.labels().end(),
                                  [](const std::string& s) { return s.size() == 1; });
  std::vector<std::string> labels(ideals.size());
  std::vector<int> ranks(ideals.size());
  std::vector<cover_pair> covers;
  for (std::size_t i = 0; i < ideals.size(); ++i) {
    std::uint32_t ideal = ideals[i];
    ranks[i] = std::popcount(ideal);
    std::string label;
    for (std::size_t pos = 0; pos < n; ++pos) {
      element_id x = eps[pos];
      if (ideal >> x & 1U) {
        if (!short_labels && !label.empty()) label += ',';
        label += p.label(x);
      }
    }
    if (label.empty()) label = "∅";
    else if (!short_labels) label = "{" + label + "}";
    labels[i] = label;
    for (element_id x = 0; x < n; ++x) {
      std::uint32_t bit = std::uint32_t{1} << x;
      if (!(ideal & bit) && (down_mask[x] & ~ideal) == 0)
        covers.emplace_back(static_cast<element_id>(i), index.at(ideal | bit));
    }
  }

  distributive_lattice lattice(distributive_lattice::trusted_tag{}, ideals.size(), covers,
                               std::move(labels), std::move(ranks));
  lattice.base_ = p;
  lattice.ideals_ = std::move(ideals);
  lattice.index_ = std::move(index);
  lattice.epsilon_ = std::move(eps);
  lattice.epsilon_position_ = std::move(eps_pos);
  return lattice;
}

distributive_lattice chain_product_lattice(const chain_spec& spec) {
  std::vector<finite_poset> chains;
  for (int part : spec.parts()) chains.push_back(chain(static_cast<std::size_t>(part - 1)));
  return ideal_lattice(disjoint_union(chains));
}

std::vector<cover_pair> find_folds(const finite_poset& p) {
  auto contains = [](std::span<const element_id> big, std::span<const element_id> small) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
  };
  std::vector<cover_pair> out;
  for (element_id x = 0; x < p.size(); ++x)
    for (element_id y = 0; y < p.size(); ++y)
      if (x != y && contains(p.upper_covers(y), p.upper_covers(x)) &&
          contains(p.lower_covers(y), p.lower_covers(x)))
        out.emplace_back(x, y);
  return out;
}

namespace {

template <class Visit>
void walk_maximal_chains(const finite_poset& p, Visit&& visit) {
  std::vector<element_id> path;
  std::function<void(element_id)> dfs = [&](element_id x) {
    path.push_back(x);
    auto up = p.upper_covers(x);
    if (up.empty()) visit(path);
    for (element_id y : up) dfs(y);
    path.pop_back();
  };
  for (element_id x : p.minimal_elements()) dfs(x);
}

}  // namespace

std::vector<std::vector<element_id>> maximal_chains(const finite_poset& p, std::size_t cap) {
  std::vector<std::vector<element_id>> out;
  walk_maximal_chains(p, [&](const std::vector<element_id>& c) {
    if (out.size() >= cap) throw cap_error("maximal chains: more than " + std::to_string(cap));
    out.push_back(c);
  });
  return out;
}

std::size_t count_maximal_chains(const finite_poset& p, std::size_t cap) {
  // Path counting over the Hasse diagram; saturates at cap.
  std::vector<std::size_t> through(p.size(), 0);
  auto order = canonical_linear_extension(p);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    element_id x = *it;
    if (p.upper_covers(x).empty()) {
      through[x] = 1;
      continue;
    }
    std::size_t total = 0;
    for (element_id y : p.upper_covers(x)) total = std::min(cap + 1, total + through[y]);
    through[x] = total;
  }
  std::size_t total = 0;
  for (element_id x : p.minimal_elements()) total = std::min(cap + 1, total + through[x]);
  if (total > cap) throw cap_error("maximal chains: more than " + std::to_string(cap));
  return total;
}

std::vector<element_id> canonical_linear_extension(const finite_poset& p) {
  std::vector<std::size_t> indeg(p.size());
  std::priority_queue<element_id, std::vector<element_id>, std::greater<>> ready;
  for (element_id x = 0; x < p.size(); ++x) {
    indeg[x] = p.lower_covers(x).size();
    if (indeg[x] == 0) ready.push(x);
  }
  std::vector<element_id> out;
  out.reserve(p.size());
  while (!ready.empty()) {
    element_id x = ready.top();
    ready.pop();
    out.push_back(x);
    for (element_id y : p.upper_covers(x))
      if (--indeg[y] == 0) ready.push(y);
  }
  return out;
}

std::vector<std::vector<element_id>> linear_extensions(const finite_poset& p, std::size_t cap) {
  std::vector<std::vector<element_id>> out;
  std::vector<std::size_t> indeg(p.size());
  for (element_id x = 0; x < p.size(); ++x) indeg[x] = p.lower_covers(x).size();
  std::vector<char> used(p.size(), 0);
  std::vector<element_id> current;
  std::function<void()> rec = [&] {
    if (current.size() == p.size()) {
      if (out.size() >= cap) throw cap_error("linear extensions: more than " + std::to_string(cap));
      out.push_back(current);
      return;
    }
    for (element_id x = 0; x < p.size(); ++x) {
      if (used[x] || indeg[x] != 0) continue;
      used[x] = 1;
      current.push_back(x);
      for (element_id y : p.upper_covers(x)) --indeg[y];
      rec();
      for (element_id y : p.upper_covers(x)) ++indeg[y];
      current.pop_back();
      used[x] = 0;
    }
  };
  rec();
  return out;
}

// ---------------------------------------------------------------------------
// text format

graded_poset read_poset_text(std::istream& in) {
  std::vector<std::pair<long, long>> elements;
  std::vector<std::pair<long, long>> cover_lines;
  bool in_covers = false;
  bool seen_element = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string first;
    if (!(fields >> first)) {
      if (seen_element) in_covers = true;
      continue;
    }
    if (first == "elements") continue;
    if (first == "covers") {
      in_covers = true;
      continue;
    }
    long a = 0, b = 0;
    std::string extra;
    try {
      std::size_t used = 0;
      a = std::stol(first, &used);
      if (used != first.size()) throw std::invalid_argument(first);
    } catch (const std::exception&) {
      throw input_error("poset file: bad token on line " + std::to_string(lineno));
    }
    if (!(fields >> b) || (fields >> extra))
      throw input_error("poset file: expected two integers on line " + std::to_string(lineno));
    if (in_covers) {
      cover_lines.emplace_back(a, b);
    } else {
      elements.emplace_back(a, b);
      seen_element = true;
    }
  }
  const std::size_t n = elements.size();
  std::vector<int> ranks(n, -1);
  for (auto [id, rank] : elements) {
    if (id < 0 || static_cast<std::size_t>(id) >= n || ranks[id] != -1)
      throw input_error("poset file: element ids must be 0..n-1 without repeats");
    if (rank < 0) throw input_error("poset file: negative rank");
    ranks[id] = static_cast<int>(rank);
  }
  std::vector<cover_pair> covers;
  for (auto [a, b] : cover_lines) {
    if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= n || static_cast<std::size_t>(b) >= n)
      throw input_error("poset file: cover refers to an unknown element");
    covers.emplace_back(static_cast<element_id>(a), static_cast<element_id>(b));
  }
  return graded_poset(finite_poset(n, covers), std::move(ranks));
}

void write_poset_text(std::ostream& out, const graded_poset& p) {
  for (element_id x = 0; x < p.size(); ++x) out << x << ' ' << p.rank(x) << '\n';
  out << '\n';
  for (auto [a, b] : p.covers()) out << a << ' ' << b << '\n';
}

}  // namespace homchains
