#pragma once

#include <cstdint>

#include "brody/types.hpp"

namespace brody {

using LongMatrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

std::int64_t gcd(std::int64_t a, std::int64_t b);

// Divides by the content and makes the first nonzero entry positive.
IntMatrix primitive_row(const IntMatrix& row);

/// Row-style Hermite normal form: zero rows removed, positive pivots, zeros
/// below each pivot and entries above each pivot reduced into [0, pivot).
/// Two integer matrices generate the same row lattice iff their HNFs agree.
IntMatrix hermite_normal_form(const IntMatrix& m);

int integer_rank(const IntMatrix& m);

/// Columns form a Z-basis of {x in Z^n : m x = 0}.
IntMatrix integer_kernel(const IntMatrix& m);

/// LLL reduction of the integer row basis `rows` with respect to the
/// quadratic form |embedding * x|^2. Works in long double; the integer rows are
/// updated exactly.
IntMatrix lll_reduce(const IntMatrix& rows, const LongMatrix& embedding, long double delta = 0.99L);

}  // namespace brody
