#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "homchains/common.hpp"
#include "homchains/homcomplex.hpp"
#include "homchains/morse.hpp"

namespace homchains {

// ---------------------------------------------------------------------------
// incidence numbers

/// [tau : eta] for prodsimplicial cells: when tau removes the l-th smallest
/// element (0-based, by id) from coordinate t of eta, the sign is
/// (-1)^(l + sum over earlier coordinates of (|eta(j)| - 1)). Returns 0 when
/// tau is not a facet of eta.
int incidence(const multi_hom& tau, const multi_hom& eta);

/// Sign of releasing the t-th joined pair (1-based) of a cell word:
/// alpha gives (-1)^t and beta gives (-1)^(t-1). Throws input_error when t
/// is out of range.
int pair_incidence(const cell_word& cw, std::size_t t, release_order order);

/// Facet signs of a complex, aligned with cell_complex::facets.
class incidence_table {
 public:
  explicit incidence_table(const cell_complex& c);
  int sign(cell_id cell, std::size_t facet_index) const {
    return signs_[begin_[cell] + facet_index];
  }
  /// Sign of `face` in `cell`; 0 when it is not a facet.
  int sign_of(const cell_complex& c, cell_id cell, cell_id face) const;

 private:
  std::vector<std::size_t> begin_;
  std::vector<std::int8_t> signs_;
};

// ---------------------------------------------------------------------------
// chain complexes

struct sparse_matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  /// columns[j] holds (row, value) pairs sorted by row with nonzero values.
  std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>> columns;

  static sparse_matrix from_dense(const std::vector<std::vector<std::int64_t>>& rows);
  std::vector<std::vector<std::int64_t>> to_dense() const;
  std::size_t nonzeros() const;
};

/// Coordinate list: a header `rows cols nnz`, then one `row col value` line
/// per nonzero entry, ids 0-based.
void write_coordinate_list(std::ostream& out, const sparse_matrix& m);

struct integer_chain_complex {
  /// cells[d] = rank of the d-th chain group.
  std::vector<std::size_t> cells;
  /// boundary[d] maps d-chains to (d-1)-chains; boundary[0] is empty.
  std::vector<sparse_matrix> boundary;
};

/// Boundary matrices over the canonical cell order of each dimension.
/// Throws invariant_error if some composite of boundaries is nonzero.
integer_chain_complex boundary_matrices(const cell_complex& c);
/// Throws invariant_error when d_{k-1} d_k != 0 for some k.
void check_boundary_squares_to_zero(const integer_chain_complex& cc);

struct smith_result {
  /// Nonzero invariant factors d_1 | d_2 | ..., one per unit of rank.
  std::vector<big_int> factors;
  std::size_t rank = 0;
};

/// Exact Smith normal form. Eliminates unit pivots sparsely with checked
/// 64-bit arithmetic (falling back to big integers on overflow), then
/// reduces what is left densely.
smith_result smith_normal_form(const sparse_matrix& m);
smith_result smith_normal_form(const std::vector<std::vector<std::int64_t>>& dense);

struct homology_report {
  std::vector<std::size_t> betti;
  /// torsion[d] lists invariant factors > 1 of H_d.
  std::vector<std::vector<big_int>> torsion;
  /// Alternating sum of the cell counts.
  std::int64_t euler = 0;

  bool torsion_free() const;
  friend bool operator==(const homology_report&, const homology_report&) = default;
};

homology_report homology(const integer_chain_complex& cc);
homology_report homology(const cell_complex& c);

// ---------------------------------------------------------------------------
// Morse complex

/// An alternating path sigma, a_1, u(a_1), ..., a_t, u(a_t), tau stored as
/// that list of cells; its length t is (cells.size() - 2) / 2.
struct alternating_path {
  std::vector<cell_id> cells;
  std::size_t length() const noexcept { return (cells.size() - 2) / 2; }
  friend bool operator==(const alternating_path&, const alternating_path&) = default;
};

/// Census of the sign-reversing involution on alternating paths.
struct path_census {
  std::size_t paths = 0;
  std::size_t paired = 0;      // paths whose partner checks out
  std::size_t failures = 0;
  std::string first_failure;
  std::int64_t weight_sum = 0;
  bool ok() const noexcept { return failures == 0 && paired == paths; }
};

/// All alternating paths from sigma to tau, with their weights. Throws
/// cap_error past cap paths.
std::vector<std::pair<alternating_path, int>> alternating_paths(
    const cell_complex& c, const morse_matching& m, const incidence_table& signs, cell_id sigma,
    cell_id tau, std::size_t cap = default_cap);

/// Alternating paths from sigma to every critical cell one dimension down,
/// grouped by their last cell. Throws cap_error past cap paths in total.
std::vector<std::pair<alternating_path, int>> alternating_paths_from(
    const cell_complex& c, const morse_matching& m, const incidence_table& signs, cell_id sigma,
    std::size_t cap = default_cap);

/// Runs the involution over a set of paths that share both endpoints.
path_census census_paths(const cell_complex& c, const morse_matching& m,
                         std::span<const std::pair<alternating_path, int>> paths);

/// The partner of a path under the involution (release the last non-swap
/// pair in the opposite order, then follow swaps); empty when the
/// construction breaks down. Requires cell words.
std::vector<cell_id> involution_partner(const cell_complex& c, const morse_matching& m,
                                        const alternating_path& path);

/// Matched partner of a cell, if any; used by the word-level involution.
using partner_function = std::function<std::optional<cell_word>(const cell_word&)>;

/// The same involution on a path written as cell words, with the matching
/// given as a function. Empty when the construction breaks down.
std::vector<cell_word> involution_partner(std::span<const cell_word> path, const partner_function& partner,
                                          std::size_t max_steps = 10'000);

struct morse_incidence_result {
  std::int64_t value = 0;
  path_census census;
};

/// Sum of path weights between critical cells sigma and tau, dim sigma =
/// dim tau + 1, together with the involution census. Throws input_error for
/// non-critical cells or a dimension mismatch.
morse_incidence_result morse_incidence(const cell_complex& c, const morse_matching& m,
                                       const incidence_table& signs, cell_id sigma, cell_id tau,
                                       std::size_t cap = default_cap);

/// The Morse complex on the critical cells; boundary entries are summed along
/// the certificate's topological orders.
integer_chain_complex morse_complex(const cell_complex& c, const morse_matching& m,
                                    const acyclicity_certificate& cert);

}  // namespace homchains
