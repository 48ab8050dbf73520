#pragma once

// Correctness sweep: every kernel checked against its oracle on random
// small inputs, one reported line per oracle.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <functional>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "linbench/balassa.hpp"
#include "linbench/dense_matrix.hpp"
#include "linbench/linalg.hpp"
#include "linbench/matrix_core.hpp"
#include "linbench/oracles.hpp"
#include "linbench/prog.hpp"
#include "linbench/rng.hpp"

namespace linbench {

/// The kernels under test. Defaults are the library's own; tests swap one
/// out to confirm the sweep notices.
struct KernelSet {
  std::function<LuFactors(const DenseMatrix&)> lu = lu_decompose;
  std::function<double(const DenseMatrix&)> determinant = linbench::determinant;
  std::function<DenseMatrix(const DenseMatrix&)> inverse = linbench::inverse;
  std::function<DenseMatrix(const DenseMatrix&)> cholesky = linbench::cholesky;
  std::function<DenseMatrix(const DenseMatrix&, const DenseMatrix&)> least_squares =
      linbench::least_squares;
  std::function<SymmetricEigen(const DenseMatrix&)> eigen = eigen_sym;
  std::function<ComplexVector(const ComplexVector&)> fft = linbench::fft;
  std::function<DenseMatrix(const DenseMatrix&)> transpose = linbench::transpose;
  std::function<DenseMatrix(const DenseMatrix&)> transpose_naive = linbench::transpose_naive;
  std::function<DenseMatrix(const DenseMatrix&)> crossprod = linbench::crossprod;
  std::function<std::vector<double>(std::vector<double>)> sort = sort_values;
  std::function<double(double)> binet = linbench::binet;
  std::function<std::uint64_t(std::uint64_t, std::uint64_t)> gcd = gcd_euclid;
  std::function<DenseMatrix(std::size_t)> hilbert = hilbert_matrix;
  std::function<DenseMatrix(std::size_t)> toeplitz = toeplitz_matrix;
  std::function<double(const DenseMatrix&, const DenseMatrix&)> rv = rv_coefficient;
  std::function<EscoufierResult(const DenseMatrix&)> escoufier = escoufier_select;
  std::function<DenseMatrix(const DenseMatrix&)> balassa = [](const DenseMatrix& x) {
    return balassa_indices(x).b;
  };
  std::function<DenseMatrix(const LinearSystem&)> solve_smart = linbench::solve_smart;
  std::function<DenseMatrix(const LinearSystem&)> solve_naive = linbench::solve_naive;
};

struct OracleOutcome {
  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  double worst = 0.0;      // largest observed error (mismatch count for exact checks)
  double tolerance = 0.0;
  std::string detail;      // first failure or exception message
};

namespace detail {

class OracleCheck {
 public:
  OracleCheck(std::string name, double tolerance) {
    out_.name = std::move(name);
    out_.tolerance = tolerance;
  }

  void record(double err, const std::string& context) {
    ++out_.cases;
    const bool bad = !(err <= out_.tolerance);
    out_.worst = std::isnan(err) || std::isnan(out_.worst) ? std::nan("") : std::max(out_.worst, err);
    if (bad && out_.passed) {
      out_.passed = false;
      char buf[64];
      std::snprintf(buf, sizeof buf, "error %.3e", err);
      out_.detail = context + ": " + buf;
    }
  }

  void fail(const std::string& what) {
    if (out_.passed) out_.detail = what;
    out_.passed = false;
  }

  OracleOutcome result() const { return out_; }

 private:
  OracleOutcome out_;
};

inline std::size_t size_in(RngStream& rng, std::size_t lo, std::size_t hi) {
  return static_cast<std::size_t>(rng.uniform_int(lo, hi));
}

inline double one_norm(const DenseMatrix& a) {
  double best = 0.0;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    double s = 0.0;
    for (double v : a.column(j)) s += std::abs(v);
    best = std::max(best, s);
  }
  return best;
}

/// κ₁(A) = ‖A‖₁·‖A⁻¹‖₁, infinite for singular input.
inline double condition_one(const DenseMatrix& a) {
  try {
    return one_norm(a) * one_norm(inverse(a));
  } catch (const singular_matrix_error&) {
    return std::numeric_limits<double>::infinity();
  }
}

constexpr double kConditionLimit = 1e6;

/// Draws `make()` until the result has κ₁ ≤ 1e6.
template <class Make>
DenseMatrix well_conditioned(Make make) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    DenseMatrix a = make();
    if (condition_one(a) <= kConditionLimit) return a;
  }
  throw singular_matrix_error("validation: no well-conditioned draw in 100 attempts");
}

inline double vector_norm(const DenseMatrix& a) { return frobenius_norm(a); }

inline std::string case_label(std::size_t seed, std::size_t n) {
  return "seed " + std::to_string(seed) + ", n=" + std::to_string(n);
}

template <class Body>
OracleOutcome run_oracle(const char* name, double tolerance, std::size_t seeds,
                         std::uint64_t base_seed, Body body) {
  OracleCheck check(name, tolerance);
  for (std::size_t s = 0; s < seeds; ++s) {
    RngStream rng(derive_seed(base_seed, name, s));
    try {
      body(rng, s, check);
    } catch (const std::exception& e) {
      check.fail("seed " + std::to_string(s) + ": " + e.what());
    }
  }
  return check.result();
}

}  // namespace detail

/// Runs every oracle `seeds` times. Each (oracle, seed) pair draws from its
/// own stream, so results do not depend on which oracles ran before.
inline std::vector<OracleOutcome> run_validation(std::size_t seeds, const KernelSet& k = {},
                                                 std::uint64_t base_seed = 20240601) {
  using detail::OracleCheck;
  using detail::case_label;
  using detail::size_in;
  std::vector<OracleOutcome> out;
  auto add = [&](const char* name, double tol, auto body) {
    out.push_back(detail::run_oracle(name, tol, seeds, base_seed, body));
  };

  add("lu_reconstruction", 1e-10, [&](RngStream& rng, std::size_t s, OracleCheck& c) {
    const std::size_t n = size_in(rng, 2, 80);
    const DenseMatrix a = randn_matrix(rng, n, n, 1.0);
    const LuFactors f = k.lu(a);
    c.record(relative_frobenius(oracle::matmul(f.lower(), f.upper()), f.permute_rows(a)),
             case_label(s, n));
  });

  add("determinant_cofactor", 1e-8, [&](RngStream& rng, std::size_t s, OracleCheck& c) {
    const std::size_t n = size_in(rng, 2, 8);
    const DenseMatrix a = detail::well_conditioned([&] { return randn_matrix(rng, n, n, 1.0); });
    const double expected = oracle::cofactor_determinant(a);
    c.record(std::abs(k.determinant(a) - expected) / std::abs(expected), case_label(s, n));
  });

  add("inverse_identity", 1e-8, [&](RngStream& rng, std::size_t s, OracleCheck& c) {
    const std::size_t n = size_in(rng, 2, 80);
    const DenseMatrix a = detail::well_conditioned([&] { return randn_matrix(rng, n, n, 1.0); });
    const DenseMatrix prod = oracle::matmul(a, k.inverse(a));
    c.record(max_abs(prod - DenseMatrix::identity(n)), case_label(s, n));
  });

  add("cholesky_reconstruction", 1e-9, [&](RngStream& rng, std::size_t s, OracleCheck& c) {
    const std::size_t n = size_in(rng, 2, 80);
    const DenseMatrix g = randn_matrix(rng, n + 3, n, 1.0);
    DenseMatrix a = oracle::matmul(oracle::transposed(g), g);
    for (std::size_t i = 0; i < n; ++i) a(i, i) += static_cast<double>(n);
    const DenseMatrix l = k.cholesky(a);
    double above = 0.0;
    for (std::size_t j = 1; j < n; ++j) {
      for (std::size_t i = 0; i < j; ++i) above = std::max(above, std::abs(l(i, j)));
    }
    if (above != 0.0) c.fail(case_label(s, n) + ": factor is not lower triangular");
    c.record(relative_frobenius(oracle::matmul(l, oracle::transposed(l)), a), case_label(s, n));
  });

  add("least_squares_planted", 1e-8, [&](RngStream& rng, std::size_t s, OracleCheck& c) {
    const std::size_t n = size_in(rng, 1, 40);
    const std::size_t m = size_in(rng, n, 80);
    const DenseMatrix a = randn_matrix(rng, m, n, 1.0);
    const DenseMatrix x0 = randn_matrix(rng, n, 1, 1.0);
    const DenseMatrix x = k.least_squares(a, oracle::matmul(a, x0));
    c.record(relative_frobenius(x, x0), case_label(s, n) + ", m=" + std::to_string(m));
  });

  add("least_squares_orthogonality", 1e-6, [&](RngStream& rng, std::size_t s, OracleCheck& c) {
    const std::size_t n = size_in(rng, 1, 40);
    const std::size_t m = size_in(rng, n, 80);
    const DenseMatrix a = randn_matrix(rng, m, n, 1.0);
    const DenseMatrix b = randn_matrix(rng, m, 1, 1.0);
    const DenseMatrix r = oracle::matmul(a, k.least_squares(a, b)) - b;
    const double normal = detail::vector_norm(oracle::matmul(oracle::transposed(a), r));
    c.record(normal / (frobenius_norm(a) * frobenius_norm(b)),
             case_label(s, n) + ", m=" + std::to_string(m));
  });

  // The eigenvalue sum is compared against the trace relative to Σ|λ|, which
  // bounds |trace| and keeps the ratio meaningful when the trace is near zero.
  add("eigen_trace", 1e-8, [&](RngStream& rng, std::size_t s, OracleCheck& c) {
    const std::size_t n = size_in(rng, 2, 80);
    const DenseMatrix a = symmetrize(randn_matrix(rng, n, n, 1.0));
    const SymmetricEigen e = k.eigen(a);
    double sum = 0.0, mass = 0.0;
    for (double v : e.values) {
      sum += v;
      mass += std::abs(v);
    }
    c.record(std::abs(sum - oracle::trace(a)) / mass, case_label(s, n));
  });

  add("eigen_determinant", 1e-6, [&](RngStream& rng, std::size_t s, OracleCheck& c) {
    const std::size_t n = size_in(rng, 2, 80);
    const DenseMatrix a =
        detail::well_conditioned([&] { return symmetrize(randn_matrix(rng, n, n, 1.0)); });
    const SymmetricEigen e = k.eigen(a);
    double prod = 1.0;
    for (double v : e.values) prod *= v;
    const double det = determinant(a);
    c.record(std::abs(prod - det) / std::abs(det), case_label(s, n));
  });

  add("eigen_residual", 1e-8, [&](RngStream& rng, std::size_t s, OracleCheck& c) {
    const std::size_t n = size_in(rng, 2, 80);
    const DenseMatrix a = symmetrize(randn_matrix(rng, n, n, 1.0));
    const SymmetricEigen e = k.eigen(a);
    const double scale = frobenius_norm(a);
    double worst = 0.0;
    for (std::size_t q = 0; q < n; ++q) {
      double ss = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        double av = 0.0;
        for (std::size_t j = 0; j < n; ++j) av += a(i, j) * e.vectors(j, q);
        const double d = av - e.values[q] * e.vectors(i, q);
        ss += d * d;
      }
      worst = std::max(worst, std::sqrt(ss) / scale);
    }
    c.record(worst, case_label(s, n));
  });

  auto complex_input = [](RngStream& rng, std::size_t n) {
    std::vector<std::complex<double>> v(n);
    for (auto& z : v) {
      const double re = rng.normal();
      z = {re, rng.normal()};
    }
    return v;
  };

  add("fft_vs_dft", 1e-9, [&](RngStream& rng, std::size_t s, OracleCheck& c) {
    const auto x = complex_input(rng, 1024);
    const ComplexVector got = k.fft(ComplexVector(x));
    const auto expected = oracle::dft(x);
    double worst = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) worst = std::max(worst, std::abs(got[i] - expected[i]));
    c.record(worst, case_label(s, 1024));
  });

  add("fft_parseval", 1e-9, [&](RngStream& rng, std::size_t s, OracleCheck& c) {
    const auto x = complex_input(rng, 1024);
    const ComplexVector got = k.fft(ComplexVector(x));
    double time_energy = 0.0, freq_energy = 0.0;
    for (const auto& z : x) time_energy += std::norm(z);
    for (const auto& z : got) freq_energy += std::norm(z);
    freq_energy /= static_cast<double>(x.size());
    c.record(std::abs(freq_energy - time_energy) / time_energy, case_label(s, 1024));
  });

  auto mismatches = [](const DenseMatrix& a, const DenseMatrix& b) -> double {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return static_cast<double>(a.size() + b.size());
    double count = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) count += a.data()[i] != b.data()[i] ? 1.0 : 0.0;
    return count;
  };

  add("transpose_equivalence", 0.0, [&](RngStream& rng, std::size_t s, OracleCheck& c) {
    const std::size_t r = size_in(rng, 1, 80);
    const std::size_t cols = size_in(rng, 1, 80);
    const DenseMatrix a = randn_matrix(rng, r, cols, 1.0);
    const DenseMatrix expected = oracle::transposed(a);
    c.record(mismatches(k.transpose_naive(a), expected) + mismatches(k.transpose(a), expected),
             case_label(s, r) + ", m=" + std::to_string(cols));
  });

  add("reshape_roundtrip", 0.0, [&](RngStream& rng, std::size_t s, OracleCheck& c) {
    const std::size_t r = size_in(rng, 1, 80);
    const std::size_t cols = size_in(rng, 1, 80);
    const DenseMatrix a = randn_matrix(rng, r, cols, 1.0);
    DenseMatrix viewed = reshape(a, cols, r);
    double bad = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) bad += viewed.data()[i] != a.data()[i] ? 1.0 : 0.0;
    c.record(bad + mismatches(reshape(std::move(viewed), r, cols), a),
             case_label(s, r) + ", m=" + std::to_string(cols));
  });

  add("sort_insertion", 0.0, [&](RngStream& rng, std::size_t s, OracleCheck& c) {
    const std::size_t n = size_in(rng, 2, 2000);
    std::vector<double> v(n);
    // Coarse values force plenty of duplicates.
    for (double& x : v) x = std::floor(rng.normal() * 10.0) / 4.0;
    const auto got = k.sort(v);
    const auto expected = oracle::insertion_sort(v);
    double bad = got.size() == expected.size() ? 0.0 : 1.0;
    for (std::size_t i = 0; bad == 0.0 && i < n; ++i) bad += got[i] != expected[i] ? 1.0 : 0.0;
    c.record(bad, case_label(s, n));
  });

  add("fibonacci_binet", 0.0, [&](RngStream& rng, std::size_t s, OracleCheck& c) {
    double bad = 0.0;
    std::vector<unsigned> exps;
    for (unsigned a = 0; a <= 70; ++a) exps.push_back(a);
    for (int t = 0; t < 100; ++t) exps.push_back(static_cast<unsigned>(rng.uniform_int(0, 70)));
    for (unsigned a : exps) {
      const double v = k.binet(static_cast<double>(a));
      if (static_cast<std::uint64_t>(std::llround(v)) != oracle::fibonacci_iterative(a)) bad += 1.0;
    }
    c.record(bad, "seed " + std::to_string(s));
  });

  add("gcd_trial_division", 0.0, [&](RngStream& rng, std::size_t s, OracleCheck& c) {
    double bad = 0.0;
    for (int t = 0; t < 10000; ++t) {
      const std::uint64_t a = rng.uniform_int(1, 1000);
      const std::uint64_t b = rng.uniform_int(1, 1000);
      if (k.gcd(a, b) != oracle::gcd_trial_division(a, b)) bad += 1.0;
    }
    c.record(bad, "seed " + std::to_string(s));
  });

  add("hilbert_formula", 0.0, [&](RngStream& rng, std::size_t s, OracleCheck& c) {
    const std::size_t n = size_in(rng, 1, 80);
    const DenseMatrix h = k.hilbert(n);
    double bad = h.rows() == n && h.cols() == n ? 0.0 : 1.0;
    for (std::size_t j = 0; bad == 0.0 && j < n; ++j) {
      for (std::size_t i = 0; i < n; ++i) bad += h(i, j) != oracle::hilbert_entry(i + 1, j + 1);
    }
    c.record(bad, case_label(s, n));
  });

  add("toeplitz_formula", 0.0, [&](RngStream& rng, std::size_t s, OracleCheck& c) {
    const std::size_t n = size_in(rng, 1, 80);
    const DenseMatrix t = k.toeplitz(n);
    double bad = t.rows() == n && t.cols() == n ? 0.0 : 1.0;
    for (std::size_t j = 0; bad == 0.0 && j < n; ++j) {
      for (std::size_t i = 0; i < n; ++i) bad += t(i, j) != oracle::toeplitz_entry(i + 1, j + 1);
    }
    c.record(bad, case_label(s, n));
  });

  add("rv_definition", 1e-10, [&](RngStream& rng, std::size_t s, OracleCheck& c) {
    const std::size_t n = size_in(rng, 3, 80);
    const DenseMatrix x = randn_matrix(rng, n, size_in(rng, 1, 8), 1.0);
    const DenseMatrix y = randn_matrix(rng, n, size_in(rng, 1, 8), 1.0);
    c.record(std::abs(k.rv(x, y) - oracle::rv_coefficient(x, y)), case_label(s, n));
  });

  add("rv_self", 1e-10, [&](RngStream& rng, std::size_t s, OracleCheck& c) {
    const std::size_t n = size_in(rng, 3, 80);
    const DenseMatrix x = randn_matrix(rng, n, size_in(rng, 1, 10), 1.0);
    c.record(std::abs(k.rv(x, x) - 1.0), case_label(s, n));
  });

  add("escoufier_exhaustive", 1e-10, [&](RngStream& rng, std::size_t s, OracleCheck& c) {
    const std::size_t p = size_in(rng, 2, 5);
    const std::size_t n = size_in(rng, p + 1, 80);
    const DenseMatrix x = randn_matrix(rng, n, p, 1.0);
    const EscoufierResult got = k.escoufier(x);
    const oracle::EscoufierTrace expected = oracle::escoufier(x);
    if (got.ordering != expected.ordering) {
      c.fail(case_label(s, n) + ": ordering differs from the per-step oracle");
    }
    double worst = got.rv_trajectory.size() == expected.rv.size() ? 0.0 : 1.0;
    for (std::size_t i = 0; worst < 1.0 && i < expected.rv.size(); ++i) {
      worst = std::max(worst, std::abs(got.rv_trajectory[i] - expected.rv[i]));
    }
    c.record(worst, case_label(s, n) + ", p=" + std::to_string(p));
  });

  add("crossprod_product", 1e-12, [&](RngStream& rng, std::size_t s, OracleCheck& c) {
    const std::size_t n = size_in(rng, 1, 80);
    const DenseMatrix a = randn_matrix(rng, n, size_in(rng, 1, 80), 1.0);
    const DenseMatrix got = k.crossprod(a);
    double asym = 0.0;
    for (std::size_t j = 0; j < got.cols(); ++j) {
      for (std::size_t i = 0; i < j; ++i) asym += got(i, j) != got(j, i) ? 1.0 : 0.0;
    }
    if (asym != 0.0) c.fail(case_label(s, n) + ": cross-product is not exactly symmetric");
    c.record(relative_frobenius(got, oracle::matmul(oracle::transposed(a), a)), case_label(s, n));
  });

  add("balassa_cellwise", 1e-12, [&](RngStream& rng, std::size_t s, OracleCheck& c) {
    DenseMatrix x(20, 30);
    for (double& v : x.data()) v = 0.01 + 100.0 * rng.uniform();
    const DenseMatrix b = k.balassa(x);
    double worst = 0.0;
    for (std::size_t j = 0; j < x.cols(); ++j) {
      for (std::size_t i = 0; i < x.rows(); ++i) {
        const double expected = oracle::balassa_cell(x, i, j);
        worst = std::max(worst, std::abs(b(i, j) - expected) / std::abs(expected));
      }
    }
    c.record(worst, "seed " + std::to_string(s) + ", 20x30");
  });

  add("solve_planted", 1e-6, [&](RngStream& rng, std::size_t s, OracleCheck& c) {
    const std::size_t n = size_in(rng, 2, 80);
    const std::size_t m = size_in(rng, 1, 10);
    LinearSystem sys;
    sys.a = detail::well_conditioned([&] { return randn_matrix(rng, n, n, 1.0); });
    sys.x_true = randn_matrix(rng, n, m, 1.0);
    sys.b = oracle::matmul(sys.a, *sys.x_true);
    const DenseMatrix smart = k.solve_smart(sys);
    const DenseMatrix naive = k.solve_naive(sys);
    const double err = std::max({relative_frobenius(smart, *sys.x_true),
                                 relative_frobenius(naive, *sys.x_true),
                                 relative_frobenius(smart, naive)});
    c.record(err, case_label(s, n) + ", m=" + std::to_string(m));
  });

  return out;
}

inline bool all_passed(const std::vector<OracleOutcome>& outcomes) {
  return std::all_of(outcomes.begin(), outcomes.end(),
                     [](const OracleOutcome& o) { return o.passed; });
}

/// One line per oracle: `PASS name  (cases=20 worst=1.2e-15 limit=1e-10)`.
inline void print_validation(const std::vector<OracleOutcome>& outcomes, std::ostream& os) {
  for (const auto& o : outcomes) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s %-28s (cases=%zu worst=%.2e limit=%.0e)",
                  o.passed ? "PASS" : "FAIL", o.name.c_str(), o.cases, o.worst, o.tolerance);
    os << buf;
    if (!o.passed) os << "  " << o.detail;
    os << '\n';
  }
}

}  // namespace linbench
