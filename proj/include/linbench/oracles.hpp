#pragma once

// Independent reference computations used to check the kernels. Each one
// takes the slow, definitional route (triple loops, cofactor expansion,
// direct DFT sums, trial division) and shares no code with the kernel it
// checks beyond DenseMatrix storage.

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <vector>

#include "linbench/dense_matrix.hpp"

namespace linbench::oracle {

/// C = A·B, i-j-k order with a running dot product.
inline DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  }
  return c;
}

inline DenseMatrix transposed(const DenseMatrix& a) {
  DenseMatrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  }
  return t;
}

inline double trace(const DenseMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i) s += a(i, i);
  return s;
}

/// Laplace expansion along the first row. O(n!), meant for n ≤ 8.
inline double cofactor_determinant(const DenseMatrix& a) {
  const std::size_t n = a.rows();
  if (n == 1) return a(0, 0);
  if (n == 2) return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  double det = 0.0;
  for (std::size_t col = 0; col < n; ++col) {
    DenseMatrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i) {
      std::size_t mj = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == col) continue;
        minor(i - 1, mj++) = a(i, j);
      }
    }
    const double sign = col % 2 == 0 ? 1.0 : -1.0;
    det += sign * a(0, col) * oracle::cofactor_determinant(minor);
  }
  return det;
}

/// Direct O(N²) DFT. The angle index jk is reduced mod N before scaling so
/// twiddles stay exact to rounding for every k.
inline std::vector<std::complex<double>> dft(const std::vector<std::complex<double>>& v) {
  const std::size_t n = v.size();
  std::vector<std::complex<double>> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t idx = (j * k) % n;
      const double angle = -2.0 * std::numbers::pi * static_cast<double>(idx) / static_cast<double>(n);
      s += v[j] * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    out[k] = s;
  }
  return out;
}

inline std::vector<double> insertion_sort(std::vector<double> v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    const double key = v[i];
    std::size_t j = i;
    while (j > 0 && v[j - 1] > key) {
      v[j] = v[j - 1];
      --j;
    }
    v[j] = key;
  }
  return v;
}

/// F(0) = 0, F(1) = 1 by repeated addition. Exact for a ≤ 93.
inline std::uint64_t fibonacci_iterative(unsigned a) {
  std::uint64_t prev = 0, cur = 1;
  if (a == 0) return 0;
  for (unsigned k = 1; k < a; ++k) {
    const std::uint64_t next = prev + cur;
    prev = cur;
    cur = next;
  }
  return cur;
}

/// Largest d dividing both, found by counting down from min(a, b).
inline std::uint64_t gcd_trial_division(std::uint64_t a, std::uint64_t b) {
  for (std::uint64_t d = std::min(a, b); d > 1; --d) {
    if (a % d == 0 && b % d == 0) return d;
  }
  return 1;
}

inline double hilbert_entry(std::size_t i1, std::size_t j1) {
  return 1.0 / (static_cast<double>(i1) + static_cast<double>(j1) - 1.0);
}

inline double toeplitz_entry(std::size_t i1, std::size_t j1) {
  return std::abs(static_cast<double>(i1) - static_cast<double>(j1)) + 1.0;
}

/// Columns standardized to mean 0 and unit sample variance.
inline DenseMatrix standardized(const DenseMatrix& x) {
  const std::size_t n = x.rows();
  DenseMatrix z(n, x.cols());
  for (std::size_t j = 0; j < x.cols(); ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += x(i, j);
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (std::size_t i = 0; i < n; ++i) var += (x(i, j) - mean) * (x(i, j) - mean);
    var /= static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) z(i, j) = (x(i, j) - mean) / std::sqrt(var);
  }
  return z;
}

/// RV from explicitly formed correlation blocks and matrix products:
/// tr(Cxy·Cyx) / √(tr(Cxx·Cxx)·tr(Cyy·Cyy)).
inline double rv_coefficient(const DenseMatrix& x, const DenseMatrix& y) {
  const DenseMatrix zx = oracle::standardized(x);
  const DenseMatrix zy = oracle::standardized(y);
  const double denom = static_cast<double>(x.rows() - 1);
  auto corr = [&](const DenseMatrix& a, const DenseMatrix& b) {
    DenseMatrix c = oracle::matmul(oracle::transposed(a), b);
    for (double& v : c.data()) v /= denom;
    return c;
  };
  const DenseMatrix cxx = corr(zx, zx);
  const DenseMatrix cyy = corr(zy, zy);
  const DenseMatrix cxy = corr(zx, zy);
  const DenseMatrix cyx = corr(zy, zx);
  const double num = oracle::trace(oracle::matmul(cxy, cyx));
  const double xx = oracle::trace(oracle::matmul(cxx, cxx));
  const double yy = oracle::trace(oracle::matmul(cyy, cyy));
  return num / std::sqrt(xx * yy);
}

inline DenseMatrix select_columns(const DenseMatrix& x, const std::vector<std::size_t>& cols0) {
  DenseMatrix out(x.rows(), cols0.size());
  for (std::size_t k = 0; k < cols0.size(); ++k) {
    for (std::size_t i = 0; i < x.rows(); ++i) out(i, k) = x(i, cols0[k]);
  }
  return out;
}

struct EscoufierTrace {
  std::vector<std::size_t> ordering;  // 1-based
  std::vector<double> rv;
};

/// Greedy selection recomputed from the RV definition at every step:
/// each candidate subset is materialized and compared against all columns.
/// Candidates within 1e-12 of the best so far lose to the lower index.
inline EscoufierTrace escoufier(const DenseMatrix& data) {
  const std::size_t p = data.cols();
  EscoufierTrace out;
  std::vector<std::size_t> chosen0;
  std::vector<bool> used(p, false);
  for (std::size_t step = 0; step < p; ++step) {
    std::size_t best = p;
    double best_rv = -1.0;
    for (std::size_t v = 0; v < p; ++v) {
      if (used[v]) continue;
      auto cand = chosen0;
      cand.push_back(v);
      const double rv = oracle::rv_coefficient(oracle::select_columns(data, cand), data);
      if (best == p || rv > best_rv + 1e-12) {
        best_rv = rv;
        best = v;
      }
    }
    used[best] = true;
    chosen0.push_back(best);
    out.ordering.push_back(best + 1);
    out.rv.push_back(best_rv);
  }
  return out;
}

/// Balassa index of one cell, margins recomputed from scratch:
/// (x_cp / Σ_c x_cp) / (Σ_p x_cp / Σ_c Σ_p x_cp).
inline double balassa_cell(const DenseMatrix& x, std::size_t c, std::size_t p) {
  double product_total = 0.0;
  for (std::size_t i = 0; i < x.rows(); ++i) product_total += x(i, p);
  double country_total = 0.0;
  for (std::size_t j = 0; j < x.cols(); ++j) country_total += x(c, j);
  double world = 0.0;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t j = 0; j < x.cols(); ++j) world += x(i, j);
  }
  return (x(c, p) / product_total) / (country_total / world);
}

}  // namespace linbench::oracle
