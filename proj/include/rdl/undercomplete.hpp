#pragma once

#include <cstddef>
#include <vector>

#include "rdl/matrix.hpp"
#include "rdl/robust_dl.hpp"

namespace rdl {

struct UndercompleteInit {
  Dictionary dictionary;        // d x k, every column unit-norm
  std::vector<double> weights;  // average of the batch weight vectors
  std::vector<std::vector<double>> batch_weights;  // per batch, pre-averaging
};

/// Initialization for overcomplete fits (k > d): the k atoms are learned in
/// ceil(k / b) batches of b < d atoms each (the last batch takes the
/// remainder), every batch being one single-refresh run of fit() on the full
/// data with uniform starting weights and a seed derived from settings.seed
/// and the batch index. The learned atoms fill the corresponding dictionary
/// columns and the returned weights are the arithmetic mean of the batch
/// weight vectors. An undercomplete batch cannot approximate off-subspace
/// samples, so outliers come out with small averaged weights.
///
/// Uses settings.batch_atoms as b (0 selects floor(d/2)); requires k > d and
/// b < d.
UndercompleteInit undercomplete_init(const DataMatrix& x, std::size_t k,
                                     const FitSettings& settings);

/// Effective batch size: explicit value, or floor(d/2) clamped to [1, d-1].
std::size_t resolve_batch_atoms(std::size_t batch_atoms, std::size_t d);

}  // namespace rdl
