#pragma once

#include <vector>

#include "homchains/common.hpp"

namespace homchains {

// Euler characteristics of the maximal-chain complex of the Boolean lattice
// B_n. All functions throw input_error for n < 1.

/// Alternating sum over k of n!/2^k * C(n-k, k).
big_int euler_formula(int n);
/// chi_n = n chi_{n-1} - C(n,2) chi_{n-2} from chi_1 = chi_2 = 1.
big_int euler_recursion(int n);
/// With n = 4q + r: (-1/4)^q n! for r = 0, 1; half of that for r = 2; 0 for r = 3.
big_int euler_closed_form(int n);
/// Number of k-cells, n!/2^k * C(n-k, k). Throws input_error unless 0 <= k <= n/2.
big_int f_vector_bn(int n, int k);

struct euler_row {
  int n = 0;
  big_int formula;
  big_int recursion;
  big_int closed_form;
  big_int f_vector;  // alternating sum of f_vector_bn(n, k)

  bool consistent() const { return formula == recursion && recursion == closed_form && closed_form == f_vector; }
};

std::vector<euler_row> euler_table(int n_max);

}  // namespace homchains
