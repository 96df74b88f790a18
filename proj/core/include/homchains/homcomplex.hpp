#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "homchains/common.hpp"
#include "homchains/poset.hpp"
#include "homchains/words.hpp"

namespace homchains {

using cell_id = std::uint32_t;

/// One nonempty subset of target elements per test-object element. Every
/// set is kept sorted by element id.
struct multi_hom {
  std::vector<std::vector<element_id>> sets;

  int dimension() const noexcept;
  friend auto operator<=>(const multi_hom&, const multi_hom&) = default;
  friend bool operator==(const multi_hom&, const multi_hom&) = default;
};

struct multi_hom_hash {
  std::size_t operator()(const multi_hom& h) const noexcept;
};

/// `(∅,{1,2},12,123)`: singletons print as their label, larger sets in braces.
std::string format_multihom(const multi_hom& h, const std::vector<std::string>& labels);

/// True when every coordinate has one or two elements and no two adjacent
/// coordinates both have two.
bool has_cubical_pattern(const multi_hom& h);

/// A finite regular cell complex stored by its face relation. Cells are
/// numbered by dimension and then by key, so iteration order is canonical.
class cell_complex {
 public:
  cell_complex() = default;

  std::size_t size() const noexcept { return dims_.size(); }
  /// Highest cell dimension, or -1 when empty.
  int dimension() const noexcept { return static_cast<int>(first_.size()) - 2; }
  int dim(cell_id c) const { return dims_.at(c); }
  std::span<const cell_id> facets(cell_id c) const {
    return {facets_.data() + facet_begin_.at(c), facet_begin_.at(c + 1) - facet_begin_[c]};
  }
  std::vector<std::size_t> f_vector() const;
  cell_id first_of_dim(int d) const;
  std::size_t count_of_dim(int d) const;

  bool has_words() const noexcept { return !words_.empty(); }
  bool has_multihoms() const noexcept { return !homs_.empty(); }
  const cell_word& word(cell_id c) const { return words_.at(c); }
  const multi_hom& multihom(cell_id c) const { return homs_.at(c); }
  /// Labels of the target elements, used to print multi-homomorphism keys.
  const std::vector<std::string>& target_labels() const noexcept { return labels_; }

  /// Cell word text when words are present, else the multi-homomorphism text.
  std::string key(cell_id c) const;
  std::optional<cell_id> find(const cell_word& w) const;
  std::optional<cell_id> find(const multi_hom& h) const;
  std::optional<cell_id> find_key(std::string_view key) const;

  /// The facet order is meaningful for cell-word complexes: joined pairs
  /// from left to right, each giving its alpha face then its beta face.
  bool facets_in_release_order() const noexcept { return release_order_facets_; }

 private:
  friend class complex_builder;

  std::vector<int> dims_;
  std::vector<cell_id> first_;  // first_[d] = id of the first d-cell; first_.back() = size
  std::vector<std::size_t> facet_begin_;
  std::vector<cell_id> facets_;
  std::vector<cell_word> words_;
  std::vector<multi_hom> homs_;
  std::vector<std::string> labels_;
  std::unordered_map<cell_word, cell_id, cell_word_hash> word_index_;
  std::unordered_map<multi_hom, cell_id, multi_hom_hash> hom_index_;
  bool release_order_facets_ = false;
};

/// Membership test for maps A -> B. When incremental, accepts(prefix) is
/// asked about the last entry of a prefix given that the earlier entries
/// were accepted, and a map is a homomorphism iff every prefix is accepted.
/// Otherwise accepts is only called on complete maps.
struct hom_predicate {
  std::function<bool(std::span<const element_id>)> accepts;
  bool incremental = false;
};

/// Strictly order-preserving maps: a < b in A implies f(a) < f(b) in B.
hom_predicate strict_order_maps(const finite_poset& a, const finite_poset& b);
/// Every map; the resulting complex is the full product of simplices.
hom_predicate all_maps();

/// Hom_M(A,B). Coordinates follow A's element ids. Vertices are found by
/// backtracking; cells are grown one element at a time, an enlarged cell
/// being kept iff all of its facets are cells. Throws cap_error if the
/// vertex or cell count exceeds cap, or, for a non-incremental predicate,
/// if |B|^|A| exceeds cap.
cell_complex hom_complex_generic(const finite_poset& a, const finite_poset& b,
                                 const hom_predicate& m, std::size_t cap = default_cap);

/// Hom(P) = Hom(C_m, P) for P graded of rank m.
cell_complex maximal_chain_complex(const graded_poset& p, std::size_t cap = default_cap);
/// Same complex; cells additionally carry their parenthesized permutation,
/// whose letters are epsilon positions (1-based) of the base poset.
cell_complex maximal_chain_complex(const distributive_lattice& l, std::size_t cap = default_cap);

/// Hom of the product of chains, built from cell words directly: every word of
/// the multiset with every set of disjoint joined descents.
cell_complex chain_product_complex(const chain_spec& spec, std::size_t cap = default_cap);

/// The product of chains as J(C_{i_1-1} + ... + C_{i_n-1}) together with
/// the translation between cell words and ideal-valued cells.
class chain_product {
 public:
  explicit chain_product(chain_spec spec);

  const chain_spec& spec() const noexcept { return spec_; }
  const distributive_lattice& lattice() const noexcept { return lattice_; }
  /// Base element for the occurrence-th (1-based) copy of letter r.
  element_id base_element(int r, int occurrence) const;
  /// Letter (chain index) of a base element.
  int letter_of(element_id base) const { return letter_of_.at(base); }

  /// Throws input_error if cw is not a cell word for the spec.
  multi_hom to_multihom(const cell_word& cw) const;
  /// Throws input_error if h is not a cell of Hom of the lattice.
  cell_word from_multihom(const multi_hom& h) const;

 private:
  chain_spec spec_;
  distributive_lattice lattice_;
  std::vector<element_id> offset_;
  std::vector<int> letter_of_;
};

multi_hom cellword_to_multihom(const cell_word& cw, const chain_spec& spec);
cell_word cellword_from_multihom(const multi_hom& h, const chain_spec& spec);

struct face {
  cell_word cell;
  release_order order;
  /// 1-based index of the released pair among all pairs.
  std::size_t pair_index;
};

/// The codimension-one faces: for each joined pair from left to right, the
/// alpha release and then the beta release.
std::vector<face> faces(const cell_word& cw);

}  // namespace homchains
