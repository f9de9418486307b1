#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rdl/robust_dl.hpp"

namespace rdl {

/// Sweep definition for the 32-dimensional dictionary-data experiments.
/// sweep_var is one of "k" (fitted dictionary size), "n" (sample count) or
/// "outlier_pct" (outlier percentage); the remaining knobs stay fixed.
struct SweepConfig {
  std::string sweep_var;
  std::vector<double> values;
  std::size_t d = 32;
  std::size_t k = 64;       // fitted atoms when not the sweep variable
  std::size_t k_true = 64;  // generator dictionary size
  std::size_t n = 1000;
  std::size_t nnz = 5;
  double outlier_ratio = 0.10;
  double noise_sigma = 0.05;
  // moderately-separated outliers: far enough to be detectable at low
  // ratios, close enough that heavy contamination degrades the fit
  double outlier_gain = 2.0;
};

std::vector<std::string> sweep_preset_names();
SweepConfig sweep_preset(std::string_view name);  // throws on unknown name

/// Fit configuration used for all 32-dimensional sweep cells.
FitSettings sweep_fit_settings(std::size_t k, InitStrategy init, std::uint64_t seed);

/// Fit configuration for the 2D two-Gaussian benchmark (k = 2 atoms).
FitSettings two_gaussian_fit_settings(const ConcavePenalty& penalty,
                                      std::uint64_t seed);

/// AUROC of outlier scores for one sweep cell, one value per seed. Data and
/// fit seeds derive from master_seed and value_index only, so runs with
/// different init strategies are paired sample-for-sample. When
/// `dictionaries` is non-null the fitted dictionary of every run is appended
/// to it (the acceptance suite audits their atom norms).
std::vector<double> sweep_cell_aurocs(const SweepConfig& cfg, std::size_t value_index,
                                      InitStrategy init, std::size_t n_seeds,
                                      std::uint64_t master_seed,
                                      std::vector<Dictionary>* dictionaries = nullptr);

}  // namespace rdl
