#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rdl {

/// Dense column-major matrix of doubles. Columns are contiguous, so a
/// column of samples or atoms can be handed out as a span without copying.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return data_[j * rows_ + i]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[j * rows_ + i]; }

  std::span<double> col(std::size_t j) { return {data_.data() + j * rows_, rows_}; }
  std::span<const double> col(std::size_t j) const {
    return {data_.data() + j * rows_, rows_};
  }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Semantic aliases used throughout: samples are columns of a d x n
// DataMatrix, atoms are unit-norm columns of a d x k dictionary, and a
// CoeffMatrix is k x n with one coefficient column per sample.
using DataMatrix = Matrix;
using Dictionary = Matrix;
using CoeffMatrix = Matrix;

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);
double norm_sq(std::span<const double> a);
double l1_norm(std::span<const double> a);

bool all_finite(const Matrix& m);
bool all_finite(std::span<const double> v);

/// Largest |norm(col) - 1| over all columns; 0 for an empty matrix.
double max_unit_norm_deviation(const Matrix& m);

}  // namespace rdl
