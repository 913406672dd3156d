#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace nhier {

/// Exact arbitrary-precision fraction, always kept canonical by GMP.
using Rational = mpq_class;

/// `num/den`, e.g. `1/1`, `0/1`, `3/8`.
std::string to_string(const Rational& r);
/// Accepts `num/den` or an integer.
Rational parse_rational(std::string_view text);

/// Solves A·x = b exactly. A must be square and non-singular; rows are scaled to
/// integers and reduced with Bareiss' fraction-free elimination.
std::vector<Rational> solve_linear_system(const std::vector<std::vector<Rational>>& a,
                                          const std::vector<Rational>& b);

}  // namespace nhier
