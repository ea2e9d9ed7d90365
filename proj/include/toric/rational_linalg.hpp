#pragma once

#include <optional>

#include "toric/rational.hpp"

namespace toric {

/// Exact Gaussian elimination with partial (nonzero) pivoting.
/// Returns nullopt when the matrix is singular.
std::optional<RatVec> solve_linear(RatMat a, RatVec rhs);

Rational determinant(RatMat a);

int matrix_rank(RatMat a);

/// Dimension of the affine hull of the given points (-1 for no points).
int affine_rank(const std::vector<RatVec>& points);

}  // namespace toric
