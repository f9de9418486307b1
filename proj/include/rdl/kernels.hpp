#pragma once

#include <vector>

#include "rdl/matrix.hpp"

// Dense kernels behind the solvers. Each hot kernel has an OpenMP-parallel
// version here and a plain-loop twin in rdl::serial. Both compute every
// output slot with the same per-slot code and accumulate in index order, so
// their results are bitwise identical; tests and the benchmark rely on that.

namespace rdl {

/// MᵀM for a matrix with columns m_j: G(i,j) = m_i · m_j.
Matrix gram_columns(const Matrix& m);

/// Plain matrix product A * B.
Matrix matmul(const Matrix& a, const Matrix& b);

Matrix transpose(const Matrix& m);

/// Returns a copy of m with column j multiplied by factors[j].
Matrix scale_columns(const Matrix& m, const std::vector<double>& factors);

/// Per-sample squared residual norms ‖x_i − D a_i‖₂².
std::vector<double> residual_sq_norms(const Matrix& x, const Matrix& d,
                                      const Matrix& a);

/// Per-column ℓ1 norms of a coefficient matrix.
std::vector<double> column_l1_norms(const Matrix& a);

namespace serial {
Matrix gram_columns(const Matrix& m);
Matrix matmul(const Matrix& a, const Matrix& b);
std::vector<double> residual_sq_norms(const Matrix& x, const Matrix& d,
                                      const Matrix& a);
}  // namespace serial

}  // namespace rdl
