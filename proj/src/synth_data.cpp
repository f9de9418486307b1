#include "rdl/synth_data.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rdl/rng.hpp"
#include "rdl/robust_dl.hpp"

namespace rdl {

LabeledDataset gen_two_gaussians(std::size_t n_per_cluster, std::size_t n_outliers,
                                 std::uint64_t seed, double spread,
                                 double outlier_radius) {
  if (!(spread >= 0.0) || !(outlier_radius >= 0.0))
    throw std::invalid_argument("gen_two_gaussians: spread and radius must be >= 0");

  const std::size_t n_inliers = 2 * n_per_cluster;
  const std::size_t n = n_inliers + n_outliers;
  LabeledDataset ds;
  ds.x = DataMatrix(2, n);
  ds.is_outlier.assign(n, 0);

  Rng rng(seed);
  const double means[2][2] = {{-4.0, 0.0}, {4.0, 0.0}};
  for (std::size_t c = 0; c < 2; ++c)
    for (std::size_t i = 0; i < n_per_cluster; ++i) {
      const std::size_t idx = c * n_per_cluster + i;
      ds.x(0, idx) = means[c][0] + spread * rng.gaussian();
      ds.x(1, idx) = means[c][1] + spread * rng.gaussian();
    }

  double cx = 0.0, cy = 0.0;
  if (n_inliers > 0) {
    for (std::size_t i = 0; i < n_inliers; ++i) {
      cx += ds.x(0, i);
      cy += ds.x(1, i);
    }
    cx /= static_cast<double>(n_inliers);
    cy /= static_cast<double>(n_inliers);
  }

  for (std::size_t i = 0; i < n_outliers; ++i) {
    const std::size_t idx = n_inliers + i;
    const double angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
    ds.x(0, idx) = cx + outlier_radius * std::cos(angle);
    ds.x(1, idx) = cy + outlier_radius * std::sin(angle);
    ds.is_outlier[idx] = 1;
  }
  return ds;
}

LabeledDataset gen_dictionary_data(std::size_t d, std::size_t k_true, std::size_t n,
                                   std::size_t nnz, double outlier_ratio,
                                   double noise_sigma, std::uint64_t seed,
                                   double outlier_gain) {
  if (d < 1) throw std::invalid_argument("gen_dictionary_data: d must be >= 1");
  if (!(outlier_ratio >= 0.0 && outlier_ratio < 1.0))
    throw std::domain_error("gen_dictionary_data: outlier_ratio must be in [0, 1)");
  if (nnz < 1 || nnz > k_true)
    throw std::invalid_argument("gen_dictionary_data: nnz must be in [1, k_true]");
  if (!(noise_sigma >= 0.0))
    throw std::invalid_argument("gen_dictionary_data: noise_sigma must be >= 0");

  Rng rng(seed);
  LabeledDataset ds;
  ds.true_dictionary = random_unit_atoms(d, k_true, rng);
  ds.true_coeffs = CoeffMatrix(k_true, n);
  ds.x = DataMatrix(d, n);
  ds.is_outlier.assign(n, 0);

  std::vector<std::size_t> positions(k_true);
  for (std::size_t i = 0; i < n; ++i) {
    // nnz distinct support positions via partial Fisher-Yates
    for (std::size_t j = 0; j < k_true; ++j) positions[j] = j;
    for (std::size_t j = 0; j < nnz; ++j) {
      const std::size_t pick = j + rng.uniform_index(k_true - j);
      std::swap(positions[j], positions[pick]);
    }
    auto xi = ds.x.col(i);
    for (std::size_t j = 0; j < nnz; ++j) {
      const double coeff = rng.gaussian();
      ds.true_coeffs(positions[j], i) = coeff;
      auto atom = ds.true_dictionary.col(positions[j]);
      for (std::size_t r = 0; r < d; ++r) xi[r] += coeff * atom[r];
    }
    for (std::size_t r = 0; r < d; ++r) xi[r] += noise_sigma * rng.gaussian();
  }

  const std::size_t n_out = static_cast<std::size_t>(outlier_ratio * static_cast<double>(n));
  if (n_out == 0) return ds;

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  for (std::size_t i = 0; i < n_out; ++i) {
    const std::size_t pick = i + rng.uniform_index(n - i);
    std::swap(order[i], order[pick]);
  }
  for (std::size_t i = 0; i < n_out; ++i) ds.is_outlier[order[i]] = 1;

  std::vector<double> inlier_norms;
  inlier_norms.reserve(n - n_out);
  for (std::size_t i = 0; i < n; ++i)
    if (!ds.is_outlier[i]) inlier_norms.push_back(norm2(ds.x.col(i)));
  std::sort(inlier_norms.begin(), inlier_norms.end());
  const double median =
      inlier_norms.empty() ? 1.0 : inlier_norms[inlier_norms.size() / 2];
  const double target = median * outlier_gain;

  for (std::size_t i = 0; i < n_out; ++i) {
    auto xi = ds.x.col(order[i]);
    double nrm = 0.0;
    do {
      rng.fill_gaussian(xi);
      nrm = norm2(xi);
    } while (nrm < 1e-12);
    for (double& v : xi) v *= target / nrm;
    for (std::size_t j = 0; j < k_true; ++j) ds.true_coeffs(j, order[i]) = 0.0;
  }
  return ds;
}

}  // namespace rdl
