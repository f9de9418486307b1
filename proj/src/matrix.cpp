#include "rdl/matrix.hpp"

#include <cmath>

namespace rdl {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm_sq(std::span<const double> a) {
  double s = 0.0;
  for (double v : a) s += v * v;
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(norm_sq(a)); }

double l1_norm(std::span<const double> a) {
  double s = 0.0;
  for (double v : a) s += std::abs(v);
  return s;
}

bool all_finite(std::span<const double> v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

bool all_finite(const Matrix& m) {
  return all_finite(std::span<const double>{m.data(), m.size()});
}

double max_unit_norm_deviation(const Matrix& m) {
  double worst = 0.0;
  for (std::size_t j = 0; j < m.cols(); ++j)
    worst = std::max(worst, std::abs(norm2(m.col(j)) - 1.0));
  return worst;
}

}  // namespace rdl
