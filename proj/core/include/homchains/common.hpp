#pragma once

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace homchains {

using big_int = boost::multiprecision::cpp_int;

inline constexpr std::size_t default_cap = 10'000'000;
inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input or a violated precondition.
class input_error : public error {
 public:
  using error::error;
};

// A configured size cap would be exceeded.
class cap_error : public error {
 public:
  using error::error;
};

// An internal invariant failed (for example a boundary that does not square to zero).
class invariant_error : public error {
 public:
  using error::error;
};

}  // namespace homchains
