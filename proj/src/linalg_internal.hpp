#pragma once

#include "cosmetic/mp.hpp"

#include <optional>
#include <vector>

namespace cosmetic::detail {

using CMatrix = std::vector<std::vector<Complex>>;

// Gaussian elimination with partial pivoting; none when a pivot vanishes.
std::optional<std::vector<Complex>> solve_linear(CMatrix a, std::vector<Complex> b);

// Inverse, or none when singular.
std::optional<CMatrix> invert(const CMatrix& a);

Real inf_norm(const CMatrix& a);

// Householder least squares for a tall matrix. Returns the solution; `rcond` receives the ratio
// of the smallest to the largest |R_ii| as a cheap conditioning estimate.
std::vector<Complex> least_squares(CMatrix a, std::vector<Complex> b, Real& rcond);

// Rank by full pivoting: pivots below tol * (largest entry) count as zero.
int numeric_rank(CMatrix a, const Real& tol);

}  // namespace cosmetic::detail
