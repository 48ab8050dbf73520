#pragma once

// Decomposition and transform kernels: LU (determinant, inverse, linear
// solves), Cholesky, Householder least squares, cyclic Jacobi for symmetric
// eigenproblems, and a radix-2 FFT.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "linbench/dense_matrix.hpp"
#include "linbench/errors.hpp"
#include "linbench/matrix_core.hpp"
#include "linbench/rng.hpp"

namespace linbench {

/// P·A = L·U with L unit lower triangular. `lu` stores L strictly below the
/// diagonal and U on and above it. Row k of P·A is row `perm[k]` of A.
struct LuFactors {
  DenseMatrix lu;
  std::vector<std::size_t> perm;
  int sign = 1;

  std::size_t size() const noexcept { return lu.rows(); }
  DenseMatrix lower() const;
  DenseMatrix upper() const;
  /// Rows of `a` reordered by `perm`.
  DenseMatrix permute_rows(const DenseMatrix& a) const;
};

inline DenseMatrix LuFactors::lower() const {
  const std::size_t n = size();
  DenseMatrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    l(j, j) = 1.0;
    for (std::size_t i = j + 1; i < n; ++i) l(i, j) = lu(i, j);
  }
  return l;
}

inline DenseMatrix LuFactors::upper() const {
  const std::size_t n = size();
  DenseMatrix u(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i <= j; ++i) u(i, j) = lu(i, j);
  }
  return u;
}

inline DenseMatrix LuFactors::permute_rows(const DenseMatrix& a) const {
  DenseMatrix out(a.rows(), a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (std::size_t k = 0; k < perm.size(); ++k) out(k, j) = a(perm[k], j);
  }
  return out;
}

namespace detail {

inline void swap_rows(DenseMatrix& a, std::size_t r1, std::size_t r2) {
  if (r1 == r2) return;
  for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(r1, j), a(r2, j));
}

// Blocked right-looking LU with partial pivoting, in place. A zero pivot
// column is left as is and reported through the return value, so callers
// that only need the determinant can still finish.
inline bool lu_in_place(DenseMatrix& a, std::vector<std::size_t>& perm, int& sign) {
  constexpr std::size_t kBlock = 48;
  const std::size_t n = a.rows();
  perm.resize(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  sign = 1;
  bool nonsingular = true;

  for (std::size_t kb = 0; kb < n; kb += kBlock) {
    const std::size_t ke = std::min(kb + kBlock, n);

    // Panel.
    for (std::size_t k = kb; k < ke; ++k) {
      double* ck = a.column(k).data();
      std::size_t p = k;
      double best = std::abs(ck[k]);
      for (std::size_t i = k + 1; i < n; ++i) {
        if (std::abs(ck[i]) > best) {
          best = std::abs(ck[i]);
          p = i;
        }
      }
      if (p != k) {
        swap_rows(a, k, p);
        std::swap(perm[k], perm[p]);
        sign = -sign;
      }
      const double pivot = ck[k];
      if (pivot == 0.0) {
        nonsingular = false;
        continue;
      }
      const double inv = 1.0 / pivot;
      for (std::size_t i = k + 1; i < n; ++i) ck[i] *= inv;
      for (std::size_t j = k + 1; j < ke; ++j) {
        double* cj = a.column(j).data();
        const double t = cj[k];
        if (t == 0.0) continue;
        for (std::size_t i = k + 1; i < n; ++i) cj[i] -= ck[i] * t;
      }
    }

    // U12 = L11⁻¹ A12, then A22 -= L21 U12.
    for (std::size_t j = ke; j < n; ++j) {
      double* cj = a.column(j).data();
      for (std::size_t k = kb; k < ke; ++k) {
        const double t = cj[k];
        if (t == 0.0) continue;
        const double* ck = a.column(k).data();
        for (std::size_t i = k + 1; i < ke; ++i) cj[i] -= ck[i] * t;
      }
      for (std::size_t k = kb; k < ke; ++k) {
        const double t = cj[k];
        if (t == 0.0) continue;
        const double* ck = a.column(k).data();
        for (std::size_t i = ke; i < n; ++i) cj[i] -= ck[i] * t;
      }
    }
  }
  return nonsingular;
}

inline void require_square(const DenseMatrix& a, const char* who) {
  if (!a.is_square()) {
    throw invalid_argument(std::string(who) + ": matrix must be square, got " +
                           std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
}

inline void require_symmetric(const DenseMatrix& a, const char* who) {
  require_square(a, who);
  const double tol = 1e-10 * std::max(1.0, max_abs(a));
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (std::size_t i = j + 1; i < a.rows(); ++i) {
      if (std::abs(a(i, j) - a(j, i)) > tol) {
        throw invalid_argument(std::string(who) + ": matrix is not symmetric at (" +
                               std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }
}

}  // namespace detail

inline LuFactors lu_decompose(const DenseMatrix& a) {
  detail::require_square(a, "lu_decompose");
  LuFactors f{a, {}, 1};
  if (!detail::lu_in_place(f.lu, f.perm, f.sign)) {
    throw singular_matrix_error("lu_decompose: matrix is singular (zero pivot)");
  }
  return f;
}

/// max|u_ii| / min|u_ii|. A cheap stand-in for the condition number, used
/// to decide whether accuracy assertions apply to a random draw.
inline double condition_estimate(const LuFactors& f) {
  double lo = std::abs(f.lu(0, 0));
  double hi = lo;
  for (std::size_t i = 1; i < f.size(); ++i) {
    lo = std::min(lo, std::abs(f.lu(i, i)));
    hi = std::max(hi, std::abs(f.lu(i, i)));
  }
  return lo == 0.0 ? std::numeric_limits<double>::infinity() : hi / lo;
}

/// Solves (P·A)·X = P·B in place on a copy of B, processing right-hand
/// sides in column blocks so each factor column is reused from cache.
inline DenseMatrix lu_solve(const LuFactors& f, const DenseMatrix& b) {
  const std::size_t n = f.size();
  if (b.rows() != n) throw invalid_argument("lu_solve: right-hand side has wrong row count");
  constexpr std::size_t kRhsBlock = 16;
  DenseMatrix x = f.permute_rows(b);
  const DenseMatrix& lu = f.lu;
  for (std::size_t jb = 0; jb < x.cols(); jb += kRhsBlock) {
    const std::size_t je = std::min(jb + kRhsBlock, x.cols());
    for (std::size_t k = 0; k < n; ++k) {
      const double* lk = lu.column(k).data();
      for (std::size_t j = jb; j < je; ++j) {
        double* xj = x.column(j).data();
        const double t = xj[k];
        if (t == 0.0) continue;
        for (std::size_t i = k + 1; i < n; ++i) xj[i] -= lk[i] * t;
      }
    }
    for (std::size_t k = n; k-- > 0;) {
      const double* uk = lu.column(k).data();
      const double ukk = uk[k];
      for (std::size_t j = jb; j < je; ++j) {
        double* xj = x.column(j).data();
        xj[k] /= ukk;
        const double t = xj[k];
        if (t == 0.0) continue;
        for (std::size_t i = 0; i < k; ++i) xj[i] -= uk[i] * t;
      }
    }
  }
  return x;
}

inline double determinant(const DenseMatrix& a) {
  detail::require_square(a, "determinant");
  DenseMatrix work = a;
  std::vector<std::size_t> perm;
  int sign = 1;
  detail::lu_in_place(work, perm, sign);
  double det = sign;
  for (std::size_t i = 0; i < work.rows(); ++i) det *= work(i, i);
  return det;
}

inline DenseMatrix inverse(const DenseMatrix& a) {
  const LuFactors f = lu_decompose(a);
  return lu_solve(f, DenseMatrix::identity(a.rows()));
}

/// Lower-triangular L with L·Lᵗ = A. Only the lower triangle of A is read
/// after the symmetry check.
inline DenseMatrix cholesky(const DenseMatrix& a) {
  detail::require_symmetric(a, "cholesky");
  const std::size_t n = a.rows();
  DenseMatrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double* lj = l.column(j).data();
    const double* aj = a.column(j).data();
    for (std::size_t i = j; i < n; ++i) lj[i] = aj[i];
    for (std::size_t k = 0; k < j; ++k) {
      const double* lk = l.column(k).data();
      const double t = lk[j];
      if (t == 0.0) continue;
      for (std::size_t i = j; i < n; ++i) lj[i] -= lk[i] * t;
    }
    const double d = lj[j];
    if (!(d > 0.0)) {
      throw not_positive_definite_error("cholesky: non-positive pivot at column " +
                                        std::to_string(j));
    }
    const double root = std::sqrt(d);
    lj[j] = root;
    for (std::size_t i = j + 1; i < n; ++i) lj[i] /= root;
  }
  return l;
}

/// Minimizes ‖a·x − b‖_F by Householder QR. Requires rows ≥ cols and full
/// column rank; |R_jj| < 1e-12·‖a‖_F counts as rank deficient.
inline DenseMatrix least_squares(const DenseMatrix& a, const DenseMatrix& b) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (m < n) throw invalid_argument("least_squares: need rows >= cols");
  if (b.rows() != m) throw invalid_argument("least_squares: right-hand side row mismatch");

  const double rank_tol = 1e-12 * frobenius_norm(a);
  DenseMatrix r = a;
  DenseMatrix qtb = b;
  std::vector<double> v(m);

  auto reflect = [&](double* col, std::size_t j, double vtv) {
    double s = 0.0;
    for (std::size_t i = j; i < m; ++i) s += v[i] * col[i];
    const double f = 2.0 * s / vtv;
    for (std::size_t i = j; i < m; ++i) col[i] -= f * v[i];
  };

  for (std::size_t j = 0; j < n; ++j) {
    double* rj = r.column(j).data();
    double norm = 0.0;
    for (std::size_t i = j; i < m; ++i) norm += rj[i] * rj[i];
    norm = std::sqrt(norm);
    if (norm <= rank_tol) {
      throw rank_deficient_error("least_squares: rank deficient at column " + std::to_string(j));
    }
    const double alpha = rj[j] > 0.0 ? -norm : norm;
    for (std::size_t i = j; i < m; ++i) v[i] = rj[i];
    v[j] -= alpha;
    double vtv = 0.0;
    for (std::size_t i = j; i < m; ++i) vtv += v[i] * v[i];
    if (vtv > 0.0) {
      for (std::size_t c = j + 1; c < n; ++c) reflect(r.column(c).data(), j, vtv);
      for (std::size_t c = 0; c < qtb.cols(); ++c) reflect(qtb.column(c).data(), j, vtv);
    }
    rj[j] = alpha;
    for (std::size_t i = j + 1; i < m; ++i) rj[i] = 0.0;
    if (std::abs(alpha) < rank_tol) {
      throw rank_deficient_error("least_squares: rank deficient at column " + std::to_string(j));
    }
  }

  DenseMatrix x(n, b.cols());
  for (std::size_t c = 0; c < b.cols(); ++c) {
    const double* y = qtb.column(c).data();
    double* xc = x.column(c).data();
    for (std::size_t k = n; k-- > 0;) {
      double s = y[k];
      for (std::size_t i = k + 1; i < n; ++i) s -= r(k, i) * xc[i];
      xc[k] = s / r(k, k);
    }
  }
  return x;
}

struct SymmetricEigen {
  std::vector<double> values;  // ascending
  DenseMatrix vectors;         // column k pairs with values[k]
  int sweeps = 0;
};

/// Cyclic Jacobi rotations on a symmetric matrix, accumulating the
/// eigenvectors. Stops when the off-diagonal Frobenius mass drops below
/// 1e-15·‖A‖_F.
inline SymmetricEigen eigen_sym(const DenseMatrix& input) {
  detail::require_symmetric(input, "eigen_sym");
  const std::size_t n = input.rows();
  DenseMatrix a = input;
  DenseMatrix v = DenseMatrix::identity(n);
  const double target = 1e-15 * frobenius_norm(input);
  constexpr int kMaxSweeps = 100;

  int sweep = 0;
  for (; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t q = 1; q < n; ++q) {
      for (std::size_t p = 0; p < q; ++p) off += 2.0 * a(p, q) * a(p, q);
    }
    if (std::sqrt(off) <= target) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double app = a(p, p);
        const double aqq = a(q, q);
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::hypot(theta, 1.0));
        const double c = 1.0 / std::hypot(t, 1.0);
        const double s = t * c;

        double* cp = a.column(p).data();
        double* cq = a.column(q).data();
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = cp[k];
          const double akq = cq[k];
          cp[k] = c * akp - s * akq;
          cq[k] = s * akp + c * akq;
          a(p, k) = cp[k];
          a(q, k) = cq[k];
        }
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;

        double* vp = v.column(p).data();
        double* vq = v.column(q).data();
        for (std::size_t k = 0; k < n; ++k) {
          const double x = vp[k];
          const double y = vq[k];
          vp[k] = c * x - s * y;
          vq[k] = s * x + c * y;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });
  SymmetricEigen out{std::vector<double>(n), DenseMatrix(n, n), sweep};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    auto src = v.column(order[k]);
    std::copy(src.begin(), src.end(), out.vectors.column(k).begin());
  }
  return out;
}

inline std::vector<double> eigenvalues_sym(const DenseMatrix& a) { return eigen_sym(a).values; }

/// (A + Aᵗ)/2.
inline DenseMatrix symmetrize(const DenseMatrix& a) {
  detail::require_square(a, "symmetrize");
  DenseMatrix s(a.rows(), a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (std::size_t i = 0; i < a.rows(); ++i) s(i, j) = 0.5 * (a(i, j) + a(j, i));
  }
  return s;
}

constexpr bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

/// Largest power of two not exceeding n (n ≥ 1).
constexpr std::size_t floor_power_of_two(std::size_t n) noexcept {
  std::size_t p = 1;
  while (p <= n / 2) p *= 2;
  return p;
}

/// Unnormalized forward DFT, out[k] = Σ v[j]·exp(−2πi·jk/N), by iterative
/// radix-2 Cooley–Tukey. Twiddles are evaluated directly rather than by
/// recurrence to keep the error at rounding level.
inline ComplexVector fft(const ComplexVector& input) {
  const std::size_t n = input.size();
  if (!is_power_of_two(n)) {
    throw invalid_argument("fft: length must be a power of two, got " + std::to_string(n));
  }
  ComplexVector out = input;
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(out[i], out[j]);
  }
  std::vector<std::complex<double>> twiddle(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k) {
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    twiddle[k] = {std::cos(angle), std::sin(angle)};
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = n / len;
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const std::complex<double> t = twiddle[k * stride] * out[start + k + half];
        const std::complex<double> u = out[start + k];
        out[start + k] = u + t;
        out[start + k + half] = u - t;
      }
    }
  }
  return out;
}

/// AX = B with optional ground truth X.
struct LinearSystem {
  DenseMatrix a;
  DenseMatrix b;
  std::optional<DenseMatrix> x_true;
};

/// Random A and X_true (standard normal), then B = A·X_true.
inline LinearSystem make_planted_system(RngStream& rng, std::size_t n, std::size_t m) {
  if (n == 0 || m == 0) throw invalid_argument("make_planted_system: n and m must be >= 1");
  DenseMatrix a = randn_matrix(rng, n, n, 1.0);
  DenseMatrix x = randn_matrix(rng, n, m, 1.0);
  DenseMatrix b = matmul(a, x);
  return {std::move(a), std::move(b), std::move(x)};
}

inline void require_system_shape(const LinearSystem& sys, const char* who) {
  detail::require_square(sys.a, who);
  if (sys.b.rows() != sys.a.rows()) {
    throw invalid_argument(std::string(who) + ": B must have as many rows as A");
  }
}

/// Factor A once, then forward/back substitution per column of B.
inline DenseMatrix solve_smart(const LinearSystem& sys) {
  require_system_shape(sys, "solve_smart");
  return lu_solve(lu_decompose(sys.a), sys.b);
}

/// X = A⁻¹·B through an explicit inverse.
inline DenseMatrix solve_naive(const LinearSystem& sys) {
  require_system_shape(sys, "solve_naive");
  return matmul(inverse(sys.a), sys.b);
}

}  // namespace linbench
