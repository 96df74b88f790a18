#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "homchains/common.hpp"
#include "homchains/homcomplex.hpp"
#include "homchains/words.hpp"

namespace homchains {

inline constexpr cell_id no_cell = std::numeric_limits<cell_id>::max();

/// A loop (r, s) of the matching algorithm.
struct loop_index {
  int r = 0;
  int s = 0;
  friend bool operator==(const loop_index&, const loop_index&) = default;
};

/// (n, i_n), (n, i_n - 1), ..., (n, 1), (n-1, i_{n-1}), ..., (1, 1).
std::vector<loop_index> loop_schedule(const chain_spec& spec);

/// Position (1-based) of the s-th copy of r in the underlying word.
std::size_t occurrence_position(const cell_word& cell, int r, int s);

enum class rho_value : std::uint8_t { a, b };

/// Classifies the cell in its position fiber at loop (r, s): a iff
///   (1) if position j-1 holds a free entry, r >= that entry;
///   (2) j < length and r > the entry at j+1;
///   (3) r_s and its right neighbour are both free, or joined to each other.
rho_value rho(const cell_word& cell, std::size_t j, int r);

/// The cell matched with `cell` when rho is a at position j: the join of
/// positions (j, j+1), or the descending release of the pair at j.
cell_word fiber_partner(const cell_word& cell, std::size_t j);

struct loop_record {
  loop_index loop;
  std::size_t position = 0;  // phi value
  rho_value rho = rho_value::b;
};

/// Per-loop history of one cell until it is matched or all loops are done.
struct fiber_trace {
  cell_word cell;
  std::vector<loop_record> loops;
  /// Index into the schedule of the loop that matched the cell.
  std::optional<std::size_t> matched_at;
  std::optional<cell_word> partner;
  bool critical() const noexcept { return !matched_at.has_value(); }
};

/// Throws input_error if the cell is not a cell word of the spec.
fiber_trace trace_fibers(const chain_spec& spec, const cell_word& cell);

/// A partial matching on the cells of a complex.
struct morse_matching {
  std::vector<cell_id> partner;      // no_cell when unmatched
  std::vector<std::int32_t> loop;    // schedule index of the matching loop, -1 otherwise

  bool matched(cell_id c) const { return partner.at(c) != no_cell; }
  std::size_t matched_pairs() const;
};

/// An empty matching, or one built from explicit (face, coface) pairs.
morse_matching make_matching(const cell_complex& c, std::span<const std::pair<cell_id, cell_id>> pairs = {});

/// Runs the matching algorithm on a cell-word complex of the spec. Cells are
/// processed independently; partner consistency is checked afterwards and a
/// violation throws invariant_error.
morse_matching match_product_of_chains(const cell_complex& c, const chain_spec& spec,
                                       unsigned threads = 1);

/// Unmatched cells grouped by dimension.
std::vector<std::vector<cell_id>> critical_cells(const cell_complex& c, const morse_matching& m);
std::vector<std::vector<cell_word>> critical_cell_words(const cell_complex& c, const morse_matching& m);

/// Topological orders of the modified Hasse diagram, one per pair of
/// adjacent dimensions (d, d+1), listing d- and (d+1)-cells together.
struct acyclicity_certificate {
  std::vector<std::vector<cell_id>> orders;
};

class matching_cycle_error : public error {
 public:
  matching_cycle_error(std::string what, std::vector<cell_id> cycle)
      : error(std::move(what)), cycle_(std::move(cycle)) {}
  const std::vector<cell_id>& cycle() const noexcept { return cycle_; }

 private:
  std::vector<cell_id> cycle_;
};

/// Checks that m pairs cells with their facets, each cell at most once, and
/// that no alternating cycle exists (matched covers point up, the rest
/// point down). Throws input_error on a structural problem and
/// matching_cycle_error, carrying the cycle, when the graph is cyclic.
acyclicity_certificate validate_acyclic(const morse_matching& m, const cell_complex& c);

/// Outcome of one exhaustive predicate scan.
struct claim_report {
  std::string name;
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::string first_failure;
  bool ok() const noexcept { return failures == 0; }
};

/// Position maps never increase from a cell to its facets within the
/// surviving domain of each loop.
claim_report check_phi_monotone(const cell_complex& c, const chain_spec& spec, const morse_matching& m);
/// Within a position fiber, a on a cell forces a on each facet in the fiber.
claim_report check_rho_monotone(const cell_complex& c, const chain_spec& spec, const morse_matching& m);
/// Matched cells share the loop, the position fiber and the value a.
claim_report check_patchwork(const cell_complex& c, const chain_spec& spec, const morse_matching& m);

/// Predicates on critical cells: descent-run starts are free; a free entry at
/// a descent is followed by a joined pair; three places further a descent is
/// free again; free neighbours weakly increase and each pair follows a free
/// entry larger than it.
claim_report check_run_start_free(std::span<const cell_word> critical);
claim_report check_descent_followed_by_pair(std::span<const cell_word> critical);
claim_report check_third_descent_free(std::span<const cell_word> critical);
claim_report check_increasing_blocks(std::span<const cell_word> critical);

}  // namespace homchains
