#pragma once

// Scalar and structural tasks: Fibonacci by Binet's formula, Hilbert and
// Toeplitz construction, the RV coefficient with Escoufier's greedy
// variable selection, and Euclid's gcd over random pairs.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "linbench/dense_matrix.hpp"
#include "linbench/errors.hpp"
#include "linbench/matrix_core.hpp"
#include "linbench/rng.hpp"

namespace linbench {

/// Binet's closed form (φᵃ − (−φ)⁻ᵃ)/√5. Exact after rounding up to a ≈ 70.
inline double binet(double a) {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  return (std::pow(phi, a) - std::pow(-phi, -a)) / std::sqrt(5.0);
}

/// Exponents floor(1000·u) for `count` uniform draws u in [0, 1).
inline std::vector<double> fibonacci_exponents(RngStream& rng, std::size_t count) {
  if (count == 0) throw invalid_argument("fibonacci_vector: count must be >= 1");
  std::vector<double> a(count);
  for (double& x : a) x = std::floor(1000.0 * rng.uniform());
  return a;
}

inline std::vector<double> binet_values(std::vector<double> exponents) {
  for (double& x : exponents) x = binet(x);
  return exponents;
}

/// `count` Binet values at random integer exponents in [0, 1000).
inline std::vector<double> fibonacci_vector(RngStream& rng, std::size_t count) {
  return binet_values(fibonacci_exponents(rng, count));
}

/// H(i, j) = 1/(i + j − 1), 1-based.
inline DenseMatrix hilbert_matrix(std::size_t n) {
  DenseMatrix h(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) h(i, j) = 1.0 / static_cast<double>(i + j + 1);
  }
  return h;
}

/// T(i, j) = |i − j| + 1.
inline DenseMatrix toeplitz_matrix(std::size_t n) {
  DenseMatrix t(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      t(i, j) = static_cast<double>(i > j ? i - j : j - i) + 1.0;
    }
  }
  return t;
}

/// Centers each column and scales it to unit sample variance.
inline DenseMatrix standardize_columns(const DenseMatrix& x) {
  const std::size_t n = x.rows();
  if (n < 2) throw invalid_argument("standardize_columns: need at least 2 observations");
  DenseMatrix z(n, x.cols());
  for (std::size_t j = 0; j < x.cols(); ++j) {
    auto col = x.column(j);
    double mean = 0.0;
    for (double v : col) mean += v;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : col) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    if (!(sd > 0.0)) {
      throw invalid_argument("standardize_columns: column " + std::to_string(j) +
                             " has zero variance");
    }
    auto out = z.column(j);
    for (std::size_t i = 0; i < n; ++i) out[i] = (col[i] - mean) / sd;
  }
  return z;
}

namespace detail {

// Σ over entries of (ZaᵗZb)², i.e. ‖Cab‖²_F up to the common (n−1)² factor
// that cancels in the RV ratio.
inline double cross_mass(const DenseMatrix& za, const DenseMatrix& zb) {
  double s = 0.0;
  for (std::size_t i = 0; i < za.cols(); ++i) {
    auto ci = za.column(i);
    for (std::size_t j = 0; j < zb.cols(); ++j) {
      auto cj = zb.column(j);
      double d = 0.0;
      for (std::size_t k = 0; k < ci.size(); ++k) d += ci[k] * cj[k];
      s += d * d;
    }
  }
  return s;
}

}  // namespace detail

/// RV = tr(Cxy·Cyx) / √(tr(Cxx²)·tr(Cyy²)) over the correlation blocks of
/// the column-standardized inputs. Uses tr(Cxy·Cyx) = ‖Cxy‖²_F and
/// tr(Cxx²) = ‖Cxx‖²_F.
inline double rv_coefficient(const DenseMatrix& x, const DenseMatrix& y) {
  if (x.rows() != y.rows()) throw invalid_argument("rv_coefficient: observation counts differ");
  const DenseMatrix zx = standardize_columns(x);
  const DenseMatrix zy = standardize_columns(y);
  const double num = detail::cross_mass(zx, zy);
  return num / std::sqrt(detail::cross_mass(zx, zx) * detail::cross_mass(zy, zy));
}

struct EscoufierResult {
  std::vector<std::size_t> ordering;  // 1-based variable indices
  std::vector<double> rv_trajectory;  // RV after each selection
};

/// RV values closer than this count as tied.
inline constexpr double kEscoufierTieTolerance = 1e-12;

/// Greedy forward selection: each step adds the variable that maximizes
/// RV(selected ∪ {v}, all variables). Ties, including those that differ
/// only by rounding, go to the lowest index.
///
/// Works on the full correlation matrix R: for a subset S,
/// RV(S, all) = Σ_{i∈S,j} R_ij² / √(Σ_{i,j∈S} R_ij² · Σ_{i,j} R_ij²),
/// and both sums are updated incrementally as S grows.
inline EscoufierResult escoufier_select(const DenseMatrix& data) {
  const std::size_t p = data.cols();
  const DenseMatrix r = crossprod(standardize_columns(data));

  std::vector<double> row_mass(p, 0.0);
  double total_mass = 0.0;
  for (std::size_t j = 0; j < p; ++j) {
    for (std::size_t i = 0; i < p; ++i) row_mass[i] += r(i, j) * r(i, j);
  }
  for (double m : row_mass) total_mass += m;

  EscoufierResult out;
  std::vector<bool> chosen(p, false);
  double numerator = 0.0;
  double inner = 0.0;
  for (std::size_t step = 0; step < p; ++step) {
    std::size_t best = p;
    double best_rv = -1.0;
    double best_inner = 0.0;
    for (std::size_t v = 0; v < p; ++v) {
      if (chosen[v]) continue;
      double added = r(v, v) * r(v, v);
      for (std::size_t s : out.ordering) added += 2.0 * r(s - 1, v) * r(s - 1, v);
      const double cand_inner = inner + added;
      const double rv = (numerator + row_mass[v]) / std::sqrt(cand_inner * total_mass);
      if (best == p || rv > best_rv + kEscoufierTieTolerance) {
        best_rv = rv;
        best = v;
        best_inner = cand_inner;
      }
    }
    chosen[best] = true;
    numerator += row_mass[best];
    inner = best_inner;
    out.ordering.push_back(best + 1);
    out.rv_trajectory.push_back(best_rv);
  }
  return out;
}

/// Euclid's algorithm.
constexpr std::uint64_t gcd_euclid(std::uint64_t a, std::uint64_t b) noexcept {
  while (b != 0) {
    const std::uint64_t r = a % b;
    a = b;
    b = r;
  }
  return a;
}

using IntPair = std::pair<std::uint64_t, std::uint64_t>;

inline std::vector<IntPair> draw_pairs(RngStream& rng, std::size_t count, std::uint64_t max_value) {
  if (count == 0 || max_value == 0) {
    throw invalid_argument("draw_pairs: count and max_value must be >= 1");
  }
  std::vector<IntPair> pairs(count);
  for (auto& [a, b] : pairs) {
    a = rng.uniform_int(1, max_value);
    b = rng.uniform_int(1, max_value);
  }
  return pairs;
}

inline std::vector<std::uint64_t> gcd_pairs(RngStream& rng, std::size_t count,
                                            std::uint64_t max_value) {
  const auto pairs = draw_pairs(rng, count, max_value);
  std::vector<std::uint64_t> out(pairs.size());
  for (std::size_t k = 0; k < pairs.size(); ++k) out[k] = gcd_euclid(pairs[k].first, pairs[k].second);
  return out;
}

}  // namespace linbench
