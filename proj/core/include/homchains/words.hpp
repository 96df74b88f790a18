#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "homchains/common.hpp"
#include "homchains/poset.hpp"

namespace homchains {

using letter = std::uint8_t;
/// A word over {1, ..., n}; positions are 1-based in every public API.
using word = std::vector<letter>;

/// Renders letters as digits; letters above 9 are written `[12]`.
std::string format_word(const word& w);
word parse_word(std::string_view text);

/// True if w is a permutation of the multiset {1^{i_1}, ..., n^{i_n}}.
bool is_word_of(const word& w, const chain_spec& spec);

/// The two ways of releasing a joined pair (beta alpha), beta > alpha:
/// alpha puts the smaller entry first, beta keeps the larger entry first.
enum class release_order : std::uint8_t { alpha, beta };

/// A parenthesized word: an underlying word together with disjoint adjacent
/// joined pairs, each written in strictly descending order. Pairs are stored
/// by their left position.
class cell_word {
 public:
  cell_word() = default;
  /// Bit p-1 of pair_mask marks a pair at positions (p, p+1). Throws
  /// input_error on overlapping pairs, pairs past the end, or a pair that is
  /// not strictly descending.
  explicit cell_word(word letters, std::uint64_t pair_mask = 0);

  /// Parses the text form, e.g. `3(51)42` or `[10](21)`.
  static cell_word parse(std::string_view text);
  std::string to_string() const;

  const word& letters() const noexcept { return letters_; }
  std::uint64_t pair_mask() const noexcept { return pairs_; }
  std::size_t length() const noexcept { return letters_.size(); }
  int dimension() const noexcept;

  letter at(std::size_t position) const { return letters_.at(position - 1); }
  bool pair_starts(std::size_t position) const noexcept {
    return position >= 1 && position <= 64 && (pairs_ >> (position - 1) & 1U);
  }
  bool pair_ends(std::size_t position) const noexcept { return position >= 2 && pair_starts(position - 1); }
  bool is_free(std::size_t position) const noexcept {
    return !pair_starts(position) && !pair_ends(position);
  }
  /// Left positions of the joined pairs, increasing.
  std::vector<std::size_t> pair_positions() const;
  /// Number of joined pairs that lie entirely left of position.
  std::size_t pairs_before(std::size_t position) const noexcept;

  /// Joins the free entries at (position, position+1), writing them in
  /// descending order. Throws input_error if they are not free or are equal.
  cell_word joined(std::size_t position) const;
  /// Releases the pair starting at position in the given order.
  cell_word released(std::size_t position, release_order order) const;

  friend auto operator<=>(const cell_word& a, const cell_word& b) {
    if (auto d = a.dimension() <=> b.dimension(); d != 0) return d;
    if (auto c = a.letters_ <=> b.letters_; c != 0) return c;
    return a.pairs_ <=> b.pairs_;
  }
  friend bool operator==(const cell_word&, const cell_word&) = default;

 private:
  void validate() const;
  word letters_;
  std::uint64_t pairs_ = 0;
};

struct cell_word_hash {
  std::size_t operator()(const cell_word& c) const noexcept;
};

/// Descent positions j with w_j > w_{j+1}, increasing.
std::vector<std::size_t> descent_set(const word& w);

/// A maximal run of consecutive descents {start, ..., start + extent}.
struct descent_run {
  std::size_t start = 0;
  std::size_t extent = 0;
  friend bool operator==(const descent_run&, const descent_run&) = default;
};

struct descent_decomposition {
  std::vector<descent_run> runs;
  /// True iff every extent is congruent to 1 or 2 mod 3.
  bool valid = true;
};

descent_decomposition decompose_descents(const word& w);

/// Sum over runs of ceil(extent / 3). Throws input_error if d is not valid.
int critical_dimension(const descent_decomposition& d);

/// Places joined pairs at (m + 3j + 1, m + 3j + 2) for j < ceil(q / 3) in
/// every run (m, q). Throws input_error if w has an invalid decomposition.
cell_word critical_cellword_from_word(const word& w);

/// Multinomial coefficient l! / (i_1! ... i_n!).
big_int multiset_permutation_count(const chain_spec& spec);

/// Visits every multiset permutation once, in lexicographic order. Throws
/// cap_error before visiting anything if the count exceeds cap.
void for_each_word(const chain_spec& spec, const std::function<void(const word&)>& visit,
                   std::size_t cap = default_cap);
std::vector<word> enumerate_words(const chain_spec& spec, std::size_t cap = default_cap);

/// C(r,k) C(s,k) C(t,k). Throws input_error unless k <= r <= s <= t.
std::uint64_t count_critical_rst(int r, int s, int t, int k);

/// For each letter 1, 2, 3: which occurrences (1-based, increasing) are
/// selected; every list has the same length k.
struct rst_selection {
  std::array<std::vector<int>, 3> chosen;
  friend bool operator==(const rst_selection&, const rst_selection&) = default;
};

/// The critical k-cell of Hom(r,s,t) built from a selection: selected 1s and
/// 2s form the joined pairs (21), selected 3s end the free block before them.
cell_word critical_cell_from_selection(int r, int s, int t, const rst_selection& sel);
/// Inverse of critical_cell_from_selection; throws input_error if the cell
/// does not have the critical shape.
rst_selection selection_from_critical_cell(int r, int s, int t, const cell_word& cell);

}  // namespace homchains
