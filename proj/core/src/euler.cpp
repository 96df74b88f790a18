#include "homchains/euler.hpp"

#include <string>

namespace homchains {

namespace {

void check_n(int n) {
  if (n < 1) throw input_error("euler: n must be at least 1, got " + std::to_string(n));
}

big_int factorial(int n) {
  big_int f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

big_int binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  big_int b = 1;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

}  // namespace

big_int f_vector_bn(int n, int k) {
  check_n(n);
  if (k < 0 || 2 * k > n)
    throw input_error("f_vector_bn: k = " + std::to_string(k) + " is out of range for n = " + std::to_string(n));
  // n!/2^k is exact because k <= n/2
  return (factorial(n) >> k) * binomial(n - k, k);
}

big_int euler_formula(int n) {
  check_n(n);
  big_int chi = 0;
  for (int k = 0; 2 * k <= n; ++k) chi += (k % 2 ? -1 : 1) * f_vector_bn(n, k);
  return chi;
}

big_int euler_recursion(int n) {
  check_n(n);
  big_int prev = 1, cur = 1;  // chi_1, chi_2
  if (n <= 2) return 1;
  for (int m = 3; m <= n; ++m) {
    big_int next = m * cur - big_int(m) * (m - 1) / 2 * prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

big_int euler_closed_form(int n) {
  check_n(n);
  const int q = n / 4, r = n % 4;
  if (r == 3) return 0;
  big_int v = factorial(n) >> (2 * q);
  if (r == 2) v >>= 1;
  return q % 2 ? -v : v;
}

std::vector<euler_row> euler_table(int n_max) {
  check_n(n_max);
  std::vector<euler_row> rows;
  for (int n = 1; n <= n_max; ++n) {
    euler_row row;
    row.n = n;
    row.formula = euler_formula(n);
    row.recursion = euler_recursion(n);
    row.closed_form = euler_closed_form(n);
    for (int k = 0; 2 * k <= n; ++k) row.f_vector += (k % 2 ? -1 : 1) * f_vector_bn(n, k);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace homchains
