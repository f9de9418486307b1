#include "rdl/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace rdl {

namespace {

// Shared per-slot routines. Parallel and serial entry points both call
// these, which keeps the two paths bitwise identical.

void gram_column(const Matrix& m, std::size_t j, Matrix& g) {
  for (std::size_t i = 0; i <= j; ++i) {
    const double v = dot(m.col(i), m.col(j));
    g(i, j) = v;
    g(j, i) = v;
  }
}

void matmul_column(const Matrix& a, const Matrix& b, std::size_t j, Matrix& c) {
  auto out = c.col(j);
  for (std::size_t l = 0; l < a.cols(); ++l) {
    const double blj = b(l, j);
    if (blj == 0.0) continue;
    auto al = a.col(l);
    for (std::size_t i = 0; i < a.rows(); ++i) out[i] += blj * al[i];
  }
}

double residual_sq_norm_one(const Matrix& x, const Matrix& d, const Matrix& a,
                            std::size_t i, std::vector<double>& tmp) {
  auto xi = x.col(i);
  tmp.assign(xi.begin(), xi.end());
  for (std::size_t j = 0; j < d.cols(); ++j) {
    const double aji = a(j, i);
    if (aji == 0.0) continue;
    auto dj = d.col(j);
    for (std::size_t r = 0; r < d.rows(); ++r) tmp[r] -= aji * dj[r];
  }
  return norm_sq(tmp);
}

void check_residual_shapes(const Matrix& x, const Matrix& d, const Matrix& a) {
  if (d.rows() != x.rows() || a.rows() != d.cols() || a.cols() != x.cols())
    throw std::invalid_argument("residual_sq_norms: shape mismatch");
}

}  // namespace

Matrix gram_columns(const Matrix& m) {
  Matrix g(m.cols(), m.cols());
#pragma omp parallel for schedule(dynamic)
  for (long j = 0; j < static_cast<long>(m.cols()); ++j)
    gram_column(m, static_cast<std::size_t>(j), g);
  return g;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matmul: shape mismatch");
  Matrix c(a.rows(), b.cols());
#pragma omp parallel for schedule(static)
  for (long j = 0; j < static_cast<long>(b.cols()); ++j)
    matmul_column(a, b, static_cast<std::size_t>(j), c);
  return c;
}

Matrix transpose(const Matrix& m) {
  Matrix t(m.cols(), m.rows());
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) t(j, i) = m(i, j);
  return t;
}

Matrix scale_columns(const Matrix& m, const std::vector<double>& factors) {
  if (factors.size() != m.cols())
    throw std::invalid_argument("scale_columns: factor count != column count");
  Matrix out = m;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    auto c = out.col(j);
    for (double& v : c) v *= factors[j];
  }
  return out;
}

std::vector<double> residual_sq_norms(const Matrix& x, const Matrix& d,
                                      const Matrix& a) {
  check_residual_shapes(x, d, a);
  std::vector<double> out(x.cols());
#pragma omp parallel
  {
    std::vector<double> tmp(x.rows());
#pragma omp for schedule(static)
    for (long i = 0; i < static_cast<long>(x.cols()); ++i)
      out[i] = residual_sq_norm_one(x, d, a, static_cast<std::size_t>(i), tmp);
  }
  return out;
}

std::vector<double> column_l1_norms(const Matrix& a) {
  std::vector<double> out(a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) out[j] = l1_norm(a.col(j));
  return out;
}

namespace serial {

Matrix gram_columns(const Matrix& m) {
  Matrix g(m.cols(), m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) gram_column(m, j, g);
  return g;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matmul: shape mismatch");
  Matrix c(a.rows(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) matmul_column(a, b, j, c);
  return c;
}

std::vector<double> residual_sq_norms(const Matrix& x, const Matrix& d,
                                      const Matrix& a) {
  check_residual_shapes(x, d, a);
  std::vector<double> out(x.cols());
  std::vector<double> tmp(x.rows());
  for (std::size_t i = 0; i < x.cols(); ++i)
    out[i] = residual_sq_norm_one(x, d, a, i, tmp);
  return out;
}

}  // namespace serial

}  // namespace rdl
