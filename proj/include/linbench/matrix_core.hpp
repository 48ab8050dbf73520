#pragma once

// Matrix storage helpers and the element-manipulation kernels: generation,
// transposition, reshaping, element-wise power, cross-product, sorting.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "linbench/dense_matrix.hpp"
#include "linbench/errors.hpp"
#include "linbench/rng.hpp"

namespace linbench {

struct Shape {
  std::size_t rows;
  std::size_t cols;
  bool operator==(const Shape&) const = default;
};

inline Shape shape_of(const DenseMatrix& a) { return {a.rows(), a.cols()}; }

/// n×m matrix of standard-normal draws divided by `scale`, filled in storage
/// order. Consumes exactly n·m normal draws.
inline DenseMatrix randn_matrix(RngStream& rng, std::size_t n, std::size_t m, double scale) {
  if (n == 0 || m == 0) {
    throw invalid_argument("randn_matrix: zero dimension " + std::to_string(n) + "x" +
                           std::to_string(m));
  }
  if (scale == 0.0) throw invalid_argument("randn_matrix: scale must be non-zero");
  DenseMatrix a(n, m);
  for (double& v : a.data()) v = rng.normal() / scale;
  return a;
}

/// Cache-blocked transpose.
inline DenseMatrix transpose(const DenseMatrix& a) {
  constexpr std::size_t kTile = 32;
  const std::size_t r = a.rows();
  const std::size_t c = a.cols();
  DenseMatrix out(c, r);
  const double* src = a.data().data();
  double* dst = out.data().data();
  for (std::size_t jb = 0; jb < c; jb += kTile) {
    const std::size_t je = std::min(jb + kTile, c);
    for (std::size_t ib = 0; ib < r; ib += kTile) {
      const std::size_t ie = std::min(ib + kTile, r);
      for (std::size_t j = jb; j < je; ++j) {
        for (std::size_t i = ib; i < ie; ++i) dst[i * c + j] = src[j * r + i];
      }
    }
  }
  return out;
}

/// Transpose written as the textbook double loop over the result's rows
/// then columns, assigning one element at a time. Writes stride through
/// column-major storage; kept so the harness can time the anti-pattern.
inline DenseMatrix transpose_naive(const DenseMatrix& a) {
  DenseMatrix b(a.cols(), a.rows());
  for (std::size_t i = 0; i < b.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      b(i, j) = a(j, i);
    }
  }
  return b;
}

/// Reinterprets the column-major data sequence with new dimensions.
inline DenseMatrix reshape(DenseMatrix a, std::size_t new_rows, std::size_t new_cols) {
  if (new_rows * new_cols != a.rows() * a.cols() || new_rows == 0 || new_cols == 0) {
    throw invalid_argument("reshape: cannot view " + std::to_string(a.rows()) + "x" +
                           std::to_string(a.cols()) + " as " + std::to_string(new_rows) +
                           "x" + std::to_string(new_cols));
  }
  return DenseMatrix(new_rows, new_cols, std::move(a).release());
}

/// C = A·B, column-major j-k-i loop order.
inline DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) throw invalid_argument("matmul: inner dimension mismatch");
  const std::size_t n = a.rows();
  const std::size_t inner = a.cols();
  DenseMatrix c(n, b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    double* cj = c.column(j).data();
    for (std::size_t k = 0; k < inner; ++k) {
      const double bkj = b(k, j);
      if (bkj == 0.0) continue;
      const double* ak = a.column(k).data();
      for (std::size_t i = 0; i < n; ++i) cj[i] += ak[i] * bkj;
    }
  }
  return c;
}

/// Aᵗ·A. Only the upper triangle is computed; the lower is mirrored, so the
/// result is exactly symmetric.
inline DenseMatrix crossprod(const DenseMatrix& a) {
  const std::size_t p = a.cols();
  const std::size_t n = a.rows();
  DenseMatrix c(p, p);
  for (std::size_t j = 0; j < p; ++j) {
    const double* aj = a.column(j).data();
    for (std::size_t i = 0; i <= j; ++i) {
      const double* ai = a.column(i).data();
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += ai[k] * aj[k];
      c(i, j) = s;
      c(j, i) = s;
    }
  }
  return c;
}

/// Transposes `a` (n×n, n even), views the result as (n/2)×(2n) and
/// transposes back. `transposer` selects the transpose kernel. When `trace`
/// is given it receives the shape after each step, starting with the input.
template <class Transposer = DenseMatrix (*)(const DenseMatrix&)>
DenseMatrix modify_matrix(DenseMatrix a, Transposer transposer = &transpose,
                          std::vector<Shape>* trace = nullptr) {
  const std::size_t n = a.rows();
  if (!a.is_square() || n < 2 || n % 2 != 0) {
    throw invalid_argument("modify_matrix: need an even square matrix, got " +
                           std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
  if (trace) trace->push_back(shape_of(a));
  DenseMatrix b = reshape(transposer(a), n / 2, n * 2);
  if (trace) trace->push_back(shape_of(b));
  a = transposer(b);
  if (trace) trace->push_back(shape_of(a));
  return a;
}

/// Creation, transposition and deformation of an n×n matrix: draw a scaled
/// normal matrix (divided by 10) and run modify_matrix on it.
template <class Transposer = DenseMatrix (*)(const DenseMatrix&)>
DenseMatrix create_modify(RngStream& rng, std::size_t n, Transposer transposer = &transpose,
                          std::vector<Shape>* trace = nullptr) {
  if (n < 2 || n % 2 != 0) {
    throw invalid_argument("create_modify: n must be even and >= 2, got " + std::to_string(n));
  }
  return modify_matrix(randn_matrix(rng, n, n, 10.0), transposer, trace);
}

/// Returns 0 on success, mirroring the benchmark functions' contract.
inline int create_modify_task(RngStream& rng, std::size_t n, std::vector<Shape>* trace = nullptr) {
  (void)create_modify(rng, n, &transpose, trace);
  return 0;
}

/// n×n matrix of |N(0,1)| / 2 entries.
inline DenseMatrix abs_normal_matrix(RngStream& rng, std::size_t n) {
  DenseMatrix a = randn_matrix(rng, n, n, 1.0);
  for (double& v : a.data()) v = std::abs(v) / 2.0;
  return a;
}

/// Raises every element to `exponent`.
inline DenseMatrix elementwise_power(DenseMatrix a, double exponent) {
  for (double& v : a.data()) v = std::pow(v, exponent);
  return a;
}

inline int elementwise_power_task(RngStream& rng, std::size_t n, double exponent) {
  (void)elementwise_power(abs_normal_matrix(rng, n), exponent);
  return 0;
}

/// Ascending sort. NaN has no place in a total order, so it is rejected.
inline std::vector<double> sort_values(std::vector<double> v) {
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (std::isnan(v[k])) {
      throw invalid_argument("sort_values: NaN at position " + std::to_string(k));
    }
  }
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace linbench
