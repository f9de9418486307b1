#pragma once

#include <cstdint>
#include <vector>

#include "rdl/matrix.hpp"

namespace rdl {

struct LabeledDataset {
  DataMatrix x;                          // d x n, one sample per column
  std::vector<std::uint8_t> is_outlier;  // length n
  // Ground truth when generated from a dictionary; empty otherwise.
  Dictionary true_dictionary;
  CoeffMatrix true_coeffs;
};

/// Two isotropic 2D Gaussian clusters (means (-4, 0) and (4, 0), std dev
/// `spread`) of n_per_cluster points each, plus n_outliers points placed
/// uniformly on a ring of radius outlier_radius around the inlier centroid.
/// Sample order is cluster one, cluster two, outliers.
LabeledDataset gen_two_gaussians(std::size_t n_per_cluster, std::size_t n_outliers,
                                 std::uint64_t seed, double spread = 1.0,
                                 double outlier_radius = 10.0);

/// Dictionary-generated data: a ground-truth dictionary of k_true unit-norm
/// Gaussian atoms, inliers D a + N(0, noise_sigma²) with nnz standard-normal
/// coefficients at uniform-random positions, and floor(outlier_ratio * n)
/// samples replaced by isotropic Gaussian vectors rescaled to outlier_gain
/// times the median inlier norm.
LabeledDataset gen_dictionary_data(std::size_t d, std::size_t k_true, std::size_t n,
                                   std::size_t nnz, double outlier_ratio,
                                   double noise_sigma, std::uint64_t seed,
                                   double outlier_gain = 3.0);

}  // namespace rdl
