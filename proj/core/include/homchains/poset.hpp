#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "homchains/common.hpp"

namespace homchains {

using element_id = std::uint32_t;
using cover_pair = std::pair<element_id, element_id>;

/// A finite poset stored by its Hasse diagram. Element ids are dense,
/// 0..size()-1, and fixed at construction.
class finite_poset {
 public:
  finite_poset() = default;

  /// Builds a poset from its cover pairs (lower, upper). Throws input_error if
  /// an id is out of range, the covers contain a directed cycle, or a pair is
  /// implied by the transitivity of the others.
  finite_poset(std::size_t n, std::span<const cover_pair> covers,
               std::vector<std::string> labels = {});

  /// Builds a poset from an arbitrary strict relation; the order is its
  /// transitive closure and the covers its transitive reduction.
  static finite_poset from_relations(std::size_t n, std::span<const cover_pair> relations,
                                     std::vector<std::string> labels = {});

  std::size_t size() const noexcept { return up_.size(); }
  bool empty() const noexcept { return up_.empty(); }

  std::span<const element_id> upper_covers(element_id x) const { return up_.at(x); }
  std::span<const element_id> lower_covers(element_id x) const { return down_.at(x); }
  std::vector<cover_pair> covers() const;
  std::size_t cover_count() const noexcept { return cover_count_; }

  bool less(element_id a, element_id b) const;
  bool leq(element_id a, element_id b) const { return a == b || less(a, b); }
  bool comparable(element_id a, element_id b) const { return leq(a, b) || less(b, a); }

  const std::string& label(element_id x) const { return labels_.at(x); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  std::vector<element_id> minimal_elements() const;
  std::vector<element_id> maximal_elements() const;

  /// The induced subposet on every element except x. Remaining elements keep
  /// their relative id order and labels; covers are recomputed.
  finite_poset without(element_id x) const;

 protected:
  struct trusted_tag {};
  // Covers are taken as-is; callers guarantee they form a Hasse diagram.
  finite_poset(trusted_tag, std::size_t n, std::span<const cover_pair> covers,
               std::vector<std::string> labels);

 private:
  void init_adjacency(std::size_t n, std::span<const cover_pair> covers,
                      std::vector<std::string> labels);
  void check_acyclic() const;
  void build_closure();

  std::vector<std::vector<element_id>> up_;
  std::vector<std::vector<element_id>> down_;
  std::vector<std::string> labels_;
  std::size_t cover_count_ = 0;
  // below_[b] has bit a set iff a < b; only built for posets up to
  // closure_limit elements, otherwise less() searches the diagram.
  std::vector<std::vector<std::uint64_t>> below_;

  static constexpr std::size_t closure_limit = 8192;
};

/// A finite graded poset: every cover raises the rank by one, minimal
/// elements have rank 0 and all maximal elements share the top rank.
class graded_poset : public finite_poset {
 public:
  graded_poset() = default;
  /// Infers ranks from the covers; throws input_error if p is not graded.
  explicit graded_poset(finite_poset p);
  /// Uses the given ranks; throws input_error if they are inconsistent.
  graded_poset(finite_poset p, std::vector<int> ranks);

  int rank(element_id x) const { return ranks_.at(x); }
  /// Rank of the poset (rank of its maximal elements).
  int rank() const noexcept { return top_rank_; }
  const std::vector<int>& ranks() const noexcept { return ranks_; }
  std::vector<element_id> elements_of_rank(int r) const;

 protected:
  graded_poset(trusted_tag tag, std::size_t n, std::span<const cover_pair> covers,
               std::vector<std::string> labels, std::vector<int> ranks);

 private:
  void validate();
  std::vector<int> ranks_;
  int top_rank_ = -1;
};

/// J(Q): the lattice of lower order ideals of a poset Q ordered by inclusion.
/// Ideals are stored as bitmasks over Q's ids; lattice ids follow the graded
/// lexicographic order of ideals under the canonical linear extension of Q.
class distributive_lattice : public graded_poset {
 public:
  distributive_lattice() = default;

  const finite_poset& base() const noexcept { return base_; }
  std::uint32_t ideal(element_id x) const { return ideals_.at(x); }
  /// Lattice element for an ideal mask; throws input_error if the mask is not an ideal.
  element_id find(std::uint32_t mask) const;
  bool contains(std::uint32_t mask) const { return index_.contains(mask); }
  element_id bottom() const noexcept { return 0; }
  element_id top() const noexcept { return static_cast<element_id>(size() - 1); }
  /// Position of base element q in the linear extension epsilon.
  std::size_t epsilon_position(element_id q) const { return epsilon_position_.at(q); }
  /// Base element at position p of epsilon.
  element_id epsilon_element(std::size_t p) const { return epsilon_.at(p); }

  element_id join(element_id a, element_id b) const { return find(ideals_.at(a) | ideals_.at(b)); }
  element_id meet(element_id a, element_id b) const { return find(ideals_.at(a) & ideals_.at(b)); }

 private:
  friend distributive_lattice ideal_lattice(const finite_poset& p);
  distributive_lattice(trusted_tag tag, std::size_t n, std::span<const cover_pair> covers,
                       std::vector<std::string> labels, std::vector<int> ranks);

  finite_poset base_;
  std::vector<std::uint32_t> ideals_;
  std::unordered_map<std::uint32_t, element_id> index_;
  std::vector<element_id> epsilon_;
  std::vector<std::size_t> epsilon_position_;
};

/// Nondecreasing vector (i_1 <= ... <= i_n) of positive chain lengths.
class chain_spec {
 public:
  chain_spec() = default;
  /// Throws input_error unless parts is nonempty, positive and nondecreasing.
  explicit chain_spec(std::vector<int> parts);
  /// Parses "2,2,2".
  static chain_spec parse(std::string_view text);

  const std::vector<int>& parts() const noexcept { return parts_; }
  /// Number of distinct letters n.
  int letters() const noexcept { return static_cast<int>(parts_.size()); }
  /// Multiplicity i_r of letter r (1-based).
  int multiplicity(int r) const { return parts_.at(static_cast<std::size_t>(r - 1)); }
  /// Word length, the sum of the parts; equals the rank of the product lattice.
  int length() const noexcept { return length_; }
  bool boolean() const noexcept;
  std::string to_string() const;

  friend bool operator==(const chain_spec&, const chain_spec&) = default;

 private:
  std::vector<int> parts_;
  int length_ = 0;
};

/// C_m = {0 < 1 < ... < m}.
graded_poset chain(std::size_t m);

/// Componentwise product; tuples are numbered lexicographically (last
/// coordinate fastest). Throws input_error on an empty list.
graded_poset product(const std::vector<graded_poset>& parts);

/// Side-by-side union with no relations between parts; ids are concatenated
/// in part order and elements are labelled 1, 2, ... by global position.
finite_poset disjoint_union(const std::vector<finite_poset>& parts);

/// J(p). Throws cap_error if p has more than 20 elements.
distributive_lattice ideal_lattice(const finite_poset& p);

/// The lattice J(C_{i_1 - 1} + ... + C_{i_n - 1}) isomorphic to the product
/// of chains C_{i_1} x ... x C_{i_n}.
distributive_lattice chain_product_lattice(const chain_spec& spec);

/// All ordered pairs (x, y), x != y, whose upper and lower cover sets satisfy
/// U(y) ⊇ U(x) and D(y) ⊇ D(x); removing x is then a fold.
std::vector<cover_pair> find_folds(const finite_poset& p);

/// Maximal chains as bottom-to-top element lists. Throws cap_error past cap.
std::vector<std::vector<element_id>> maximal_chains(const finite_poset& p,
                                                    std::size_t cap = default_cap);
std::size_t count_maximal_chains(const finite_poset& p, std::size_t cap = default_cap);

/// The smallest-id-first topological order.
std::vector<element_id> canonical_linear_extension(const finite_poset& p);
std::vector<std::vector<element_id>> linear_extensions(const finite_poset& p,
                                                       std::size_t cap = default_cap);

/// Text format: element lines `id rank`, a blank line, then cover lines
/// `lower upper`. '#' starts a comment. Ids must be 0..n-1.
graded_poset read_poset_text(std::istream& in);
void write_poset_text(std::ostream& out, const graded_poset& p);

}  // namespace homchains
