#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "rdl/matrix.hpp"
#include "rdl/synth_data.hpp"

using rdl::Matrix;

TEST_CASE("two-gaussian counts and labels") {
  const auto ds = rdl::gen_two_gaussians(250, 50, 7);
  CHECK(ds.x.rows() == 2);
  CHECK(ds.x.cols() == 550);
  std::size_t n_out = 0;
  for (auto l : ds.is_outlier) n_out += l;
  CHECK(n_out == 50);
  for (std::size_t i = 0; i < 500; ++i) CHECK_FALSE(ds.is_outlier[i]);
  CHECK(ds.true_dictionary.empty());
}

TEST_CASE("empty two-gaussian dataset") {
  const auto ds = rdl::gen_two_gaussians(0, 0, 1);
  CHECK(ds.x.cols() == 0);
  CHECK(ds.is_outlier.empty());
}

TEST_CASE("outliers sit on the ring, far from both cluster means") {
  const auto ds = rdl::gen_two_gaussians(200, 40, 3);
  const double means[2][2] = {{-4.0, 0.0}, {4.0, 0.0}};
  double min_dist = 1e300;
  for (std::size_t i = 0; i < ds.x.cols(); ++i) {
    if (!ds.is_outlier[i]) continue;
    for (const auto& m : means) {
      const double dx = ds.x(0, i) - m[0], dy = ds.x(1, i) - m[1];
      min_dist = std::min(min_dist, std::hypot(dx, dy));
    }
  }
  CHECK(min_dist > 3.0);  // beyond 3 cluster standard deviations at defaults
}

TEST_CASE("generation is deterministic under a fixed seed") {
  const auto a = rdl::gen_two_gaussians(50, 10, 42);
  const auto b = rdl::gen_two_gaussians(50, 10, 42);
  CHECK(a.x == b.x);
  CHECK(a.is_outlier == b.is_outlier);

  const auto c = rdl::gen_dictionary_data(8, 16, 60, 3, 0.1, 0.05, 42);
  const auto d = rdl::gen_dictionary_data(8, 16, 60, 3, 0.1, 0.05, 42);
  CHECK(c.x == d.x);
  CHECK(c.true_dictionary == d.true_dictionary);
  CHECK(c.true_coeffs == d.true_coeffs);
  CHECK(c.is_outlier == d.is_outlier);
}

TEST_CASE("dictionary data: counts, unit atoms, exact outlier number") {
  const auto ds = rdl::gen_dictionary_data(32, 64, 1000, 5, 0.10, 0.05, 11);
  CHECK(ds.x.rows() == 32);
  CHECK(ds.x.cols() == 1000);
  std::size_t n_out = 0;
  for (auto l : ds.is_outlier) n_out += l;
  CHECK(n_out == 100);
  CHECK(rdl::max_unit_norm_deviation(ds.true_dictionary) <= 1e-12);

  const auto none = rdl::gen_dictionary_data(8, 16, 50, 3, 0.0, 0.05, 11);
  for (auto l : none.is_outlier) CHECK_FALSE(l);
}

TEST_CASE("inliers reconstruct from their true supports to noise level") {
  const std::size_t d = 16, n = 80, nnz = 4;
  const double sigma = 0.03;
  const auto ds = rdl::gen_dictionary_data(d, 32, n, nnz, 0.1, sigma, 5);

  for (std::size_t i = 0; i < n; ++i) {
    if (ds.is_outlier[i]) {
      for (std::size_t j = 0; j < 32; ++j) CHECK(ds.true_coeffs(j, i) == 0.0);
      continue;
    }
    // least squares on the known support
    std::vector<std::size_t> support;
    for (std::size_t j = 0; j < 32; ++j)
      if (ds.true_coeffs(j, i) != 0.0) support.push_back(j);
    REQUIRE(support.size() == nnz);

    Matrix sub(d, support.size());
    for (std::size_t j = 0; j < support.size(); ++j) {
      auto src = ds.true_dictionary.col(support[j]);
      std::copy(src.begin(), src.end(), sub.col(j).begin());
    }
    rdl::Rng dummy(0);
    // project x onto span(sub) via normal equations solved by gradient steps
    std::vector<double> a(support.size(), 0.0);
    for (int it = 0; it < 4000; ++it) {
      std::vector<double> r(ds.x.col(i).begin(), ds.x.col(i).end());
      for (std::size_t j = 0; j < support.size(); ++j)
        for (std::size_t row = 0; row < d; ++row) r[row] -= a[j] * sub(row, j);
      for (std::size_t j = 0; j < support.size(); ++j)
        a[j] += 0.2 * rdl::dot(sub.col(j), r);
    }
    std::vector<double> r(ds.x.col(i).begin(), ds.x.col(i).end());
    for (std::size_t j = 0; j < support.size(); ++j)
      for (std::size_t row = 0; row < d; ++row) r[row] -= a[j] * sub(row, j);
    // residual after projecting on the true support is pure noise
    CHECK(rdl::norm2(r) <= sigma * std::sqrt(static_cast<double>(d)) * 3.0);
  }
}

TEST_CASE("outliers are norm-matched to the scaled median inlier norm") {
  const double gain = 3.0;
  const auto ds = rdl::gen_dictionary_data(16, 32, 200, 4, 0.2, 0.05, 9, gain);
  std::vector<double> inlier_norms;
  for (std::size_t i = 0; i < 200; ++i)
    if (!ds.is_outlier[i]) inlier_norms.push_back(rdl::norm2(ds.x.col(i)));
  std::sort(inlier_norms.begin(), inlier_norms.end());
  const double median = inlier_norms[inlier_norms.size() / 2];
  for (std::size_t i = 0; i < 200; ++i)
    if (ds.is_outlier[i])
      CHECK(rdl::norm2(ds.x.col(i)) == doctest::Approx(median * gain).epsilon(1e-9));
}

TEST_CASE("generator parameter validation") {
  CHECK_THROWS_AS(rdl::gen_dictionary_data(8, 16, 50, 3, 1.5, 0.05, 1), std::domain_error);
  CHECK_THROWS_AS(rdl::gen_dictionary_data(8, 16, 50, 3, -0.1, 0.05, 1), std::domain_error);
  CHECK_THROWS_AS(rdl::gen_dictionary_data(8, 16, 50, 0, 0.1, 0.05, 1), std::invalid_argument);
  CHECK_THROWS_AS(rdl::gen_dictionary_data(8, 16, 50, 17, 0.1, 0.05, 1), std::invalid_argument);
  CHECK_THROWS_AS(rdl::gen_two_gaussians(10, 5, 1, -1.0), std::invalid_argument);
}
