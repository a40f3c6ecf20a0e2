#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace greyfc::linalg {

// Ordinary least squares for a tall row-major design matrix (rows x cols,
// cols small), solved through the normal equations with partial pivoting.
// The normal matrix is symmetrically equilibrated before elimination and a
// condition estimate of the equilibrated matrix above cond_limit raises
// Error(GREYFC_ERR_SINGULAR_SYSTEM).
std::vector<double> solve_ols(std::span<const double> design, std::size_t rows,
                              std::size_t cols, std::span<const double> rhs,
                              double cond_limit = 1e12);

}  // namespace greyfc::linalg
