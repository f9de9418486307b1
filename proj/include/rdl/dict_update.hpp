#pragma once

#include <cstddef>
#include <vector>

#include "rdl/matrix.hpp"

namespace rdl {

/// Weighted dictionary update under the unit-norm atom constraint. Columns
/// of X and A are first scaled by sqrt(s_i); with B = ÃÃᵀ and C = X̃Ãᵀ each
/// sweep walks the atoms doing u_j = d_j + (c_j − D b_j) / B_jj followed by
/// projection onto the unit sphere, which is the exact block minimizer.
/// The weighted objective 0.5 * Σ_i ‖x̃_i − D ã_i‖₂² never increases.
///
/// Atoms with B_jj <= 1e-12 carry no coefficient energy; each is replaced by
/// the normalized data sample with the largest current weighted residual
/// (distinct samples for distinct atoms, lowest index on ties). If no atom
/// carries energy the objective does not depend on D and the input is
/// returned unchanged.
Dictionary update_dictionary(const Dictionary& dict, const Matrix& x,
                             const CoeffMatrix& coeffs,
                             const std::vector<double>& weights,
                             std::size_t sweeps = 1);

/// The weighted quadratic 0.5 * Σ_i s_i ‖x_i − D a_i‖₂², the quantity
/// update_dictionary is descending on.
double weighted_quadratic_objective(const Matrix& x, const Dictionary& dict,
                                    const CoeffMatrix& coeffs,
                                    const std::vector<double>& weights);

}  // namespace rdl
