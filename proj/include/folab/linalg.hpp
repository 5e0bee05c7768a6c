#pragma once

#include <optional>
#include <vector>

#include "folab/field.hpp"

namespace folab {

using Vector = std::vector<FieldElement>;
using Matrix = std::vector<Vector>;  // row-major

/// Reduced row echelon form in place; returns pivot columns.
std::vector<int> row_reduce(Matrix& m, int ncols);

int rank(Matrix m, int ncols);

/// Basis of {x : m x = 0}.
std::vector<Vector> nullspace(Matrix m, int ncols);

/// Some solution of m x = b (free variables set to zero), or nullopt.
std::optional<Vector> solve(Matrix m, const Vector& b, int ncols);

}  // namespace folab
