#pragma once

// Small dense exact linear algebra over Q (Gaussian elimination).

#include <cstddef>
#include <vector>

#include "shatter/rational.hpp"

namespace shatter {

using Vector = std::vector<Rational>;
using Matrix = std::vector<Vector>;  // row-major, all rows the same length

std::size_t rank(Matrix rows);

/// Basis of {x : A x = 0}, one vector per free column of the reduced echelon
/// form. `cols` is needed when A has no rows.
std::vector<Vector> null_space(Matrix a, std::size_t cols);

Rational dot(const Vector& a, const Vector& b);

}  // namespace shatter
