#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "linbench/errors.hpp"

namespace linbench {

/// Column-major dense matrix of doubles. Element (i, j) lives at offset
/// j * rows + i. Dimensions are fixed except through reshape, which only
/// reinterprets the storage.
class DenseMatrix {
 public:
  DenseMatrix() = default;

  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols) {
    if (rows == 0 || cols == 0) {
      throw invalid_argument("DenseMatrix: dimensions must be positive, got " +
                             std::to_string(rows) + "x" + std::to_string(cols));
    }
    data_.assign(rows * cols, fill);
  }

  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> column_major)
      : rows_(rows), cols_(cols), data_(std::move(column_major)) {
    if (rows == 0 || cols == 0) {
      throw invalid_argument("DenseMatrix: dimensions must be positive");
    }
    if (data_.size() != rows * cols) {
      throw invalid_argument("DenseMatrix: data length " + std::to_string(data_.size()) +
                             " does not match " + std::to_string(rows) + "x" +
                             std::to_string(cols));
    }
  }

  /// Builds from nested rows, written row by row.
  static DenseMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    DenseMatrix m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != c) throw invalid_argument("from_rows: ragged rows");
      std::size_t j = 0;
      for (double v : row) m(i, j++) = v;
      ++i;
    }
    return m;
  }

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static DenseMatrix diagonal(std::span<const double> d) {
    DenseMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  static DenseMatrix diagonal(std::initializer_list<double> d) {
    return diagonal(std::span<const double>(d.begin(), d.size()));
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool is_square() const noexcept { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[j * rows_ + i]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[j * rows_ + i]; }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

  std::span<double> column(std::size_t j) noexcept { return {data_.data() + j * rows_, rows_}; }
  std::span<const double> column(std::size_t j) const noexcept {
    return {data_.data() + j * rows_, rows_};
  }

  /// Moves the storage out, leaving an empty 0x0 matrix.
  std::vector<double> release() && {
    rows_ = cols_ = 0;
    return std::move(data_);
  }

  bool operator==(const DenseMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

inline double frobenius_norm(const DenseMatrix& a) {
  double s = 0.0;
  for (double v : a.data()) s += v * v;
  return std::sqrt(s);
}

inline double max_abs(const DenseMatrix& a) {
  double m = 0.0;
  for (double v : a.data()) m = std::max(m, std::abs(v));
  return m;
}

inline DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw invalid_argument("matrix difference: dimension mismatch");
  }
  DenseMatrix out = a;
  auto o = out.data();
  auto bd = b.data();
  for (std::size_t k = 0; k < o.size(); ++k) o[k] -= bd[k];
  return out;
}

/// ‖a − b‖_F / ‖b‖_F, or the absolute difference norm when b is zero.
inline double relative_frobenius(const DenseMatrix& a, const DenseMatrix& b) {
  const double denom = frobenius_norm(b);
  const double diff = frobenius_norm(a - b);
  return denom == 0.0 ? diff : diff / denom;
}

/// Fixed-length complex vector, the carrier for FFT input and output.
class ComplexVector {
 public:
  using value_type = std::complex<double>;

  ComplexVector() = default;
  explicit ComplexVector(std::size_t n) : values_(n) {}
  ComplexVector(std::initializer_list<value_type> init) : values_(init) {}
  explicit ComplexVector(std::vector<value_type> values) : values_(std::move(values)) {}

  std::size_t size() const noexcept { return values_.size(); }
  value_type& operator[](std::size_t k) noexcept { return values_[k]; }
  const value_type& operator[](std::size_t k) const noexcept { return values_[k]; }

  std::span<value_type> values() noexcept { return values_; }
  std::span<const value_type> values() const noexcept { return values_; }

  auto begin() noexcept { return values_.begin(); }
  auto end() noexcept { return values_.end(); }
  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

 private:
  std::vector<value_type> values_;
};

}  // namespace linbench
