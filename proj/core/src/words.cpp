#include "homchains/words.hpp"

#include <algorithm>
#include <bit>

namespace homchains {

std::string format_word(const word& w) {
  std::string out;
  for (letter c : w) {
    if (c <= 9) out += static_cast<char>('0' + c);
    else out += "[" + std::to_string(c) + "]";
  }
  return out;
}

namespace {

// Reads one letter starting at text[pos]; advances pos.
letter read_letter(std::string_view text, std::size_t& pos) {
  char c = text[pos];
  if (c >= '1' && c <= '9') {
    ++pos;
    return static_cast<letter>(c - '0');
  }
  if (c == '[') {
    std::size_t close = text.find(']', pos);
    if (close == std::string_view::npos) throw input_error("word: unterminated '['");
    int value = 0;
    for (std::size_t i = pos + 1; i < close; ++i) {
      if (text[i] < '0' || text[i] > '9') throw input_error("word: bad letter inside '[]'");
      value = value * 10 + (text[i] - '0');
      if (value > 255) throw input_error("word: letter too large");
    }
    if (close == pos + 1 || value == 0) throw input_error("word: empty or zero letter");
    pos = close + 1;
    return static_cast<letter>(value);
  }
  throw input_error("word: unexpected character '" + std::string(1, c) + "'");
}

}  // namespace

word parse_word(std::string_view text) {
  word out;
  std::size_t pos = 0;
  while (pos < text.size()) out.push_back(read_letter(text, pos));
  return out;
}

bool is_word_of(const word& w, const chain_spec& spec) {
  if (static_cast<int>(w.size()) != spec.length()) return false;
  std::vector<int> seen(static_cast<std::size_t>(spec.letters()) + 1, 0);
  for (letter c : w) {
    if (c < 1 || c > spec.letters()) return false;
    ++seen[c];
  }
  for (int r = 1; r <= spec.letters(); ++r)
    if (seen[static_cast<std::size_t>(r)] != spec.multiplicity(r)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// cell_word

cell_word::cell_word(word letters, std::uint64_t pair_mask)
    : letters_(std::move(letters)), pairs_(pair_mask) {
  validate();
}

void cell_word::validate() const {
  if (letters_.size() > 63) throw input_error("cell word: longer than 63 letters");
  for (letter c : letters_)
    if (c == 0) throw input_error("cell word: letter 0");
  if (pairs_ & (pairs_ >> 1)) throw input_error("cell word: overlapping pairs");
  const std::size_t n = letters_.size();
  if (n < 2 ? pairs_ != 0 : (pairs_ >> (n - 1)) != 0)
    throw input_error("cell word: pair extends past the end");
  for (std::size_t p : pair_positions())
    if (letters_[p - 1] <= letters_[p])
      throw input_error("cell word: joined pair must be strictly descending");
}

cell_word cell_word::parse(std::string_view text) {
  word letters;
  std::uint64_t mask = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (text[pos] == '(') {
      ++pos;
      if (pos >= text.size()) throw input_error("cell word: unterminated '('");
      letter beta = read_letter(text, pos);
      if (pos >= text.size()) throw input_error("cell word: unterminated '('");
      letter alpha = read_letter(text, pos);
      if (pos >= text.size() || text[pos] != ')')
        throw input_error("cell word: a joined pair holds exactly two letters");
      ++pos;
      if (letters.size() >= 63) throw input_error("cell word: too long");
      mask |= std::uint64_t{1} << letters.size();
      letters.push_back(beta);
      letters.push_back(alpha);
    } else {
      letters.push_back(read_letter(text, pos));
    }
  }
  return cell_word(std::move(letters), mask);
}

std::string cell_word::to_string() const {
  std::string out;
  for (std::size_t p = 1; p <= letters_.size(); ++p) {
    if (pair_starts(p)) out += '(';
    out += format_word(word{letters_[p - 1]});
    if (pair_ends(p)) out += ')';
  }
  return out;
}

int cell_word::dimension() const noexcept { return std::popcount(pairs_); }

std::vector<std::size_t> cell_word::pair_positions() const {
  std::vector<std::size_t> out;
  for (std::uint64_t m = pairs_; m; m &= m - 1)
    out.push_back(static_cast<std::size_t>(std::countr_zero(m)) + 1);
  return out;
}

std::size_t cell_word::pairs_before(std::size_t position) const noexcept {
  if (position <= 2) return 0;
  // Pairs starting at p <= position - 2 end before position.
  std::size_t bits = std::min<std::size_t>(position - 2, 64);
  std::uint64_t window = bits >= 64 ? pairs_ : pairs_ & ((std::uint64_t{1} << bits) - 1);
  return static_cast<std::size_t>(std::popcount(window));
}

cell_word cell_word::joined(std::size_t position) const {
  if (position < 1 || position >= letters_.size())
    throw input_error("cell word: join position out of range");
  if (!is_free(position) || !is_free(position + 1))
    throw input_error("cell word: can only join two free entries");
  word w = letters_;
  if (w[position - 1] == w[position]) throw input_error("cell word: cannot join equal letters");
  if (w[position - 1] < w[position]) std::swap(w[position - 1], w[position]);
  return cell_word(std::move(w), pairs_ | (std::uint64_t{1} << (position - 1)));
}

cell_word cell_word::released(std::size_t position, release_order order) const {
  if (!pair_starts(position)) throw input_error("cell word: no joined pair at that position");
  word w = letters_;
  if (order == release_order::alpha) std::swap(w[position - 1], w[position]);
  return cell_word(std::move(w), pairs_ & ~(std::uint64_t{1} << (position - 1)));
}

std::size_t cell_word_hash::operator()(const cell_word& c) const noexcept {
  std::uint64_t h = 1469598103934665603ULL ^ c.pair_mask();
  for (letter x : c.letters()) {
    h ^= x;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h ^ (h >> 29));
}

// ---------------------------------------------------------------------------
// descents

std::vector<std::size_t> descent_set(const word& w) {
  std::vector<std::size_t> out;
  for (std::size_t j = 1; j < w.size(); ++j)
    if (w[j - 1] > w[j]) out.push_back(j);
  return out;
}

descent_decomposition decompose_descents(const word& w) {
  descent_decomposition d;
  auto des = descent_set(w);
  for (std::size_t i = 0; i < des.size();) {
    std::size_t k = i;
    while (k + 1 < des.size() && des[k + 1] == des[k] + 1) ++k;
    descent_run run{des[i], des[k] - des[i]};
    if (run.extent % 3 == 0) d.valid = false;
    d.runs.push_back(run);
    i = k + 1;
  }
  return d;
}

int critical_dimension(const descent_decomposition& d) {
  if (!d.valid) throw input_error("critical dimension: descent decomposition is not valid");
  int dim = 0;
  for (const auto& run : d.runs) dim += static_cast<int>((run.extent + 2) / 3);
  return dim;
}

cell_word critical_cellword_from_word(const word& w) {
  auto d = decompose_descents(w);
  if (!d.valid) throw input_error("critical cell: word " + format_word(w) +
                                  " has a descent run of length divisible by 3");
  std::uint64_t mask = 0;
  for (const auto& run : d.runs)
    for (std::size_t j = 0; j < (run.extent + 2) / 3; ++j)
      mask |= std::uint64_t{1} << (run.start + 3 * j);  // left position m + 3j + 1
  return cell_word(w, mask);
}

// ---------------------------------------------------------------------------
// enumeration

big_int multiset_permutation_count(const chain_spec& spec) {
  big_int count = 1;
  int placed = 0;
  for (int part : spec.parts()) {
    // multiply by C(placed + part, part)
    for (int i = 1; i <= part; ++i) {
      count *= placed + i;
      count /= i;
    }
    placed += part;
  }
  return count;
}

void for_each_word(const chain_spec& spec, const std::function<void(const word&)>& visit,
                   std::size_t cap) {
  if (multiset_permutation_count(spec) > cap)
    throw cap_error("words: more than " + std::to_string(cap) + " multiset permutations");
  word w;
  for (int r = 1; r <= spec.letters(); ++r) w.insert(w.end(), spec.multiplicity(r), static_cast<letter>(r));
  do {
    visit(w);
  } while (std::next_permutation(w.begin(), w.end()));
}

std::vector<word> enumerate_words(const chain_spec& spec, std::size_t cap) {
  std::vector<word> out;
  for_each_word(spec, [&](const word& w) { out.push_back(w); }, cap);
  return out;
}

// ---------------------------------------------------------------------------
// Hom(r,s,t)

namespace {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t out = 1;
  for (int i = 1; i <= k; ++i) out = out * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return out;
}

void check_rst(int r, int s, int t) {
  if (r < 1 || r > s || s > t) throw input_error("Hom(r,s,t): need 1 <= r <= s <= t");
}

}  // namespace

std::uint64_t count_critical_rst(int r, int s, int t, int k) {
  check_rst(r, s, t);
  if (k < 0 || k > r) throw input_error("Hom(r,s,t): need 0 <= k <= r");
  return binomial(r, k) * binomial(s, k) * binomial(t, k);
}

cell_word critical_cell_from_selection(int r, int s, int t, const rst_selection& sel) {
  check_rst(r, s, t);
  const std::array<int, 3> count{r, s, t};
  const std::size_t k = sel.chosen[0].size();
  for (std::size_t c = 0; c < 3; ++c) {
    const auto& list = sel.chosen[c];
    if (list.size() != k) throw input_error("selection: every letter needs k choices");
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (list[i] < 1 || list[i] > count[c]) throw input_error("selection: index out of range");
      if (i && list[i] <= list[i - 1]) throw input_error("selection: indices must increase");
    }
  }
  // Block b (0..k) receives the unselected occurrences strictly between the
  // (b-1)-th and b-th selected one. Selected 3s close their block.
  word letters;
  std::uint64_t mask = 0;
  for (std::size_t b = 0; b <= k; ++b) {
    for (std::size_t c = 0; c < 3; ++c) {
      int lo = b == 0 ? 1 : sel.chosen[c][b - 1] + 1;
      int hi = b == k ? count[c] : sel.chosen[c][b] - 1;
      for (int i = lo; i <= hi; ++i) letters.push_back(static_cast<letter>(c + 1));
      if (c == 2 && b < k) letters.push_back(3);
    }
    if (b < k) {
      mask |= std::uint64_t{1} << letters.size();
      letters.push_back(2);
      letters.push_back(1);
    }
  }
  return cell_word(std::move(letters), mask);
}

rst_selection selection_from_critical_cell(int r, int s, int t, const cell_word& cell) {
  check_rst(r, s, t);
  rst_selection sel;
  std::array<int, 3> seen{0, 0, 0};
  const auto& w = cell.letters();
  for (std::size_t p = 1; p <= w.size(); ++p) {
    letter c = w[p - 1];
    if (c < 1 || c > 3) throw input_error("selection: letters must be 1, 2 or 3");
    ++seen[c - 1];
    if (cell.pair_starts(p)) {
      if (c != 2 || w[p] != 1) throw input_error("selection: joined pairs must be (21)");
      if (p < 2 || !cell.is_free(p - 1) || w[p - 2] != 3)
        throw input_error("selection: a joined pair must follow a free 3");
      sel.chosen[1].push_back(seen[1]);
      sel.chosen[0].push_back(seen[0] + 1);
      sel.chosen[2].push_back(seen[2]);
    } else if (cell.pair_ends(p)) {
      continue;
    } else if (p > 1 && cell.is_free(p - 1) && w[p - 2] > c) {
      throw input_error("selection: free entries must be weakly increasing");
    }
  }
  if (seen != std::array<int, 3>{r, s, t}) throw input_error("selection: wrong letter counts");
  auto roundtrip = critical_cell_from_selection(r, s, t, sel);
  if (!(roundtrip == cell)) throw input_error("selection: cell is not of the critical shape");
  return sel;
}

}  // namespace homchains
