#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rdl/matrix.hpp"

namespace rdl {

struct LassoSettings {
  std::size_t max_iters = 1000;  // coordinate-descent sweeps
  double tol = 1e-7;             // max absolute coefficient change per sweep
};

struct LassoResult {
  std::vector<double> coeffs;
  bool converged = true;
  std::size_t sweeps = 0;
};

/// Solves min_a 0.5*‖x − D a‖₂² + lambda_eff*‖a‖₁ by cyclic coordinate
/// descent with soft-thresholding, warm-startable via `start`. Atoms with
/// ‖d_j‖ < 1e-12 are skipped and their coefficient forced to 0. If the sweep
/// budget runs out the best iterate is returned with converged = false.
LassoResult lasso(const Matrix& dict, std::span<const double> x, double lambda_eff,
                  const LassoSettings& settings,
                  std::span<const double> start = {});

/// Codes every column of X against `dict` with per-sample regularization
/// lambda / s_j. Samples with s_j <= s_min get a zero column (the limit of
/// infinite regularization). Columns are independent and processed in
/// parallel; the result does not depend on scheduling. `warm_start`, when
/// non-null, must be k x n and seeds each column's solve.
CoeffMatrix sparse_code_all(const Matrix& dict, const Matrix& x, double lambda,
                            const std::vector<double>& weights, double s_min,
                            const LassoSettings& settings,
                            const CoeffMatrix* warm_start = nullptr);

namespace serial {
CoeffMatrix sparse_code_all(const Matrix& dict, const Matrix& x, double lambda,
                            const std::vector<double>& weights, double s_min,
                            const LassoSettings& settings,
                            const CoeffMatrix* warm_start = nullptr);
}  // namespace serial

}  // namespace rdl
