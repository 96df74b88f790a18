#pragma once

#include <string>
#include <vector>

#include "homchains/chain.hpp"
#include "homchains/poset.hpp"

namespace homchains {

struct fold_report {
  element_id removed = 0;
  element_id dominant = 0;
  std::string removed_label;
  std::vector<std::size_t> cells_before;  // f-vector of Hom(Q, P)
  std::vector<std::size_t> cells_after;   // f-vector of Hom(Q, P - x)
  homology_report before;
  homology_report after;
  bool agree = false;
};

/// Builds Hom(Q, P) and Hom(Q, P - x) from strict order maps and compares
/// their homology. Throws input_error unless some (x, y) is a fold of P.
fold_report verify_fold_consequence(const finite_poset& q, const finite_poset& p, element_id x,
                                    std::size_t cap = default_cap);

bool is_chain(const finite_poset& p);

/// A sequence of folds taking p to a chain, each checked by
/// verify_fold_consequence. Tries folds in find_folds order and backtracks
/// on dead ends; throws input_error when no sequence exists. Ids in each
/// report refer to the poset at that step.
std::vector<fold_report> fold_to_chain(const finite_poset& q, const finite_poset& p,
                                       std::size_t cap = default_cap);

// ---------------------------------------------------------------------------

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"cubical", "acyclic", "bijection", "zero-incidence", "torsion", "euler"};
  return names;
}

struct suite_result {
  std::string name;
  bool passed = false;
  std::size_t checked = 0;
  std::string detail;
};

struct verification_report {
  chain_spec spec;
  std::vector<suite_result> suites;
  bool passed() const;
};

struct verify_options {
  std::size_t cap = default_cap;
  unsigned threads = 1;
};

/// Runs the named suites (see suite_names, or "all") on Hom of the product
/// of chains. Throws input_error on an unknown suite name.
verification_report run_verification(const chain_spec& spec, const std::vector<std::string>& suites,
                                     const verify_options& opt = {});

}  // namespace homchains
