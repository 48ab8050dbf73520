#pragma once

// The built-in task catalogue: fifteen ATT-style tasks at local base sizes,
// the naive/smart linear-system experiment, and the Balassa task.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "linbench/balassa.hpp"
#include "linbench/bench.hpp"
#include "linbench/linalg.hpp"
#include "linbench/matrix_core.hpp"
#include "linbench/prog.hpp"

namespace linbench {

namespace groups {
inline constexpr const char* kMatrixCalculation = "Matrix calculation";
inline constexpr const char* kMatrixFunctions = "Matrix functions";
inline constexpr const char* kProgrammation = "Programmation";
inline constexpr const char* kSolving = "Solving linear systems";
inline constexpr const char* kBalassa = "Balassa indices";
}  // namespace groups

/// Preset multiplier for cluster-sized runs: rows and columns times five.
inline constexpr double kClusterMultiplier = 5.0;

/// Upper bound for gcd operands.
inline constexpr std::uint64_t kGcdMaxValue = 1000;

/// 1234567 -> "1,234,567".
inline std::string with_commas(std::size_t n) {
  const std::string digits = std::to_string(n);
  std::string out;
  for (std::size_t k = 0; k < digits.size(); ++k) {
    if (k != 0 && (digits.size() - k) % 3 == 0) out.push_back(',');
    out.push_back(digits[k]);
  }
  return out;
}

inline std::string square_dims(std::size_t n) {
  return with_commas(n) + " × " + with_commas(n);
}

namespace detail {

// Wraps a (prepare → work) pair where prepare returns a state object held
// in a shared_ptr so the returned closure stays copyable.
template <class Prepare, class Work>
std::function<PreparedRun(RngStream&, const TaskParams&)> staged(Prepare prepare, Work work) {
  return [prepare, work](RngStream& rng, const TaskParams& p) -> PreparedRun {
    auto state = std::make_shared<decltype(prepare(rng, p))>(prepare(rng, p));
    return [state, work, p]() { return work(*state, p); };
  };
}

inline KernelOutput ok(double checksum) { return {0, checksum}; }

inline TaskParams base(std::size_t size) { return TaskParams{size, std::nullopt, 1.0}; }

inline TaskParams base(std::size_t size, std::size_t secondary) {
  return TaskParams{size, secondary, 1.0};
}

inline DenseMatrix random_square(RngStream& rng, const TaskParams& p) {
  return randn_matrix(rng, p.size, p.size, 1.0);
}

}  // namespace detail

/// Registers every built-in task with its variants. Throws
/// invalid_argument if any task id is already present.
inline TaskRegistry& register_builtin_suite(TaskRegistry& registry) {
  using detail::ok;
  using detail::staged;

  // ---- Matrix calculation ----
  registry.add_task({"power", groups::kMatrixCalculation, detail::base(2400), SizeRule::linear, true,
                     [](const TaskParams& p) { return square_dims(p.size) + " matrix^1,000"; },
                     {{"power", "reference",
                       staged([](RngStream& rng, const TaskParams& p) { return abs_normal_matrix(rng, p.size); },
                              [](DenseMatrix& a, const TaskParams&) {
                                return ok(checksum(elementwise_power(std::move(a), 1000.0)));
                              })}}});

  registry.add_task({"crossprod", groups::kMatrixCalculation, detail::base(2800), SizeRule::linear, true,
                     [](const TaskParams& p) { return square_dims(p.size) + " cross-product matrix"; },
                     {{"crossprod", "reference",
                       staged(detail::random_square, [](const DenseMatrix& a, const TaskParams&) {
                         return ok(checksum(crossprod(a)));
                       })}}});

  // Transposition lives with the creation/modification task: "reference"
  // is the full transpose-reshape-transpose kernel; "builtin" and
  // "naive-loop" time one transpose of the same draw through the blocked
  // kernel and through the element-by-element double loop.
  registry.add_task(
      {"create_modify", groups::kMatrixCalculation, detail::base(2500), SizeRule::even_linear, true,
       [](const TaskParams& p) { return "Creation and modification of a " + square_dims(p.size) + " matrix"; },
       {{"create_modify", "reference",
         staged([](RngStream& rng, const TaskParams& p) { return randn_matrix(rng, p.size, p.size, 10.0); },
                [](DenseMatrix& a, const TaskParams&) {
                  return ok(checksum(modify_matrix(std::move(a))));
                })},
        {"create_modify", "builtin",
         staged([](RngStream& rng, const TaskParams& p) { return randn_matrix(rng, p.size, p.size, 10.0); },
                [](const DenseMatrix& a, const TaskParams&) { return ok(checksum(transpose(a))); })},
        {"create_modify", "naive-loop",
         staged([](RngStream& rng, const TaskParams& p) { return randn_matrix(rng, p.size, p.size, 10.0); },
                [](const DenseMatrix& a, const TaskParams&) {
                  return ok(checksum(transpose_naive(a)));
                })}}});

  registry.add_task(
      {"regression", groups::kMatrixCalculation, detail::base(3000), SizeRule::linear, true,
       [](const TaskParams& p) { return "Linear regression over a " + square_dims(p.size) + " matrix"; },
       {{"regression", "reference",
         staged(
             [](RngStream& rng, const TaskParams& p) {
               DenseMatrix a = randn_matrix(rng, p.size, p.size, 1.0);
               DenseMatrix y = randn_matrix(rng, p.size, 1, 1.0);
               return std::pair{std::move(a), std::move(y)};
             },
             [](const std::pair<DenseMatrix, DenseMatrix>& in, const TaskParams&) {
               return ok(checksum(least_squares(in.first, in.second)));
             })}}});

  registry.add_task(
      {"sort", groups::kMatrixCalculation, detail::base(7'000'000), SizeRule::count, true,
       [](const TaskParams& p) { return "Sorting of " + with_commas(p.size) + " values"; },
       {{"sort", "reference",
         staged(
             [](RngStream& rng, const TaskParams& p) {
               std::vector<double> v(p.size);
               for (double& x : v) x = rng.uniform();
               return v;
             },
             [](std::vector<double>& v, const TaskParams&) {
               const auto sorted = sort_values(std::move(v));
               return ok(sorted.front() + sorted[sorted.size() / 2] + sorted.back());
             })}}});

  // ---- Matrix functions ----
  registry.add_task(
      {"cholesky", groups::kMatrixFunctions, detail::base(3000), SizeRule::linear, true,
       [](const TaskParams& p) { return "Cholesky decomposition of a " + square_dims(p.size) + " matrix"; },
       {{"cholesky", "reference",
         staged(
             [](RngStream& rng, const TaskParams& p) {
               DenseMatrix a = crossprod(randn_matrix(rng, p.size, p.size, 1.0));
               for (std::size_t i = 0; i < p.size; ++i) a(i, i) += static_cast<double>(p.size);
               return a;
             },
             [](const DenseMatrix& a, const TaskParams&) { return ok(checksum(cholesky(a))); })}}});

  registry.add_task(
      {"determinant", groups::kMatrixFunctions, detail::base(2500), SizeRule::linear, true,
       [](const TaskParams& p) { return "Determinant of a " + square_dims(p.size) + " matrix"; },
       {{"determinant", "reference",
         staged(detail::random_square,
                [](const DenseMatrix& a, const TaskParams&) { return ok(determinant(a)); })}}});

  registry.add_task(
      {"eigenvalues", groups::kMatrixFunctions, detail::base(640), SizeRule::linear, true,
       [](const TaskParams& p) { return "Eigenvalues of a " + square_dims(p.size) + " matrix"; },
       {{"eigenvalues", "reference",
         staged([](RngStream& rng, const TaskParams& p) { return symmetrize(detail::random_square(rng, p)); },
                [](const DenseMatrix& a, const TaskParams&) {
                  double s = 0.0;
                  for (double l : eigenvalues_sym(a)) s += l;
                  return ok(s);
                })}}});

  registry.add_task(
      {"fft", groups::kMatrixFunctions, detail::base(2'400'000), SizeRule::power_of_two_count, true,
       [](const TaskParams& p) { return "Fast Fourier Transform over " + with_commas(p.size) + " values"; },
       {{"fft", "reference",
         staged(
             [](RngStream& rng, const TaskParams& p) {
               ComplexVector v(p.size);
               for (auto& z : v) z = {rng.uniform(), 0.0};
               return v;
             },
             [](const ComplexVector& v, const TaskParams&) {
               const ComplexVector f = fft(v);
               double s = 0.0;
               for (const auto& z : f) s += std::abs(z);
               return ok(s);
             })}}});

  registry.add_task(
      {"inverse", groups::kMatrixFunctions, detail::base(1600), SizeRule::linear, true,
       [](const TaskParams& p) { return "Inverse of a " + square_dims(p.size) + " matrix"; },
       {{"inverse", "reference",
         staged(detail::random_square,
                [](const DenseMatrix& a, const TaskParams&) { return ok(checksum(inverse(a))); })}}});

  // ---- Programmation ----
  registry.add_task(
      {"fibonacci", groups::kProgrammation, detail::base(3'500'000), SizeRule::count, true,
       [](const TaskParams& p) { return with_commas(p.size) + " Fibonacci numbers calculation"; },
       {{"fibonacci", "reference",
         staged([](RngStream& rng, const TaskParams& p) { return fibonacci_exponents(rng, p.size); },
                [](std::vector<double>& a, const TaskParams&) {
                  double s = 0.0;
                  for (double x : binet_values(std::move(a))) s += x;
                  return ok(s);
                })}}});

  registry.add_task(
      {"hilbert", groups::kProgrammation, detail::base(3000), SizeRule::linear, true,
       [](const TaskParams& p) { return "Creation of a " + square_dims(p.size) + " Hilbert matrix"; },
       {{"hilbert", "reference", [](RngStream&, const TaskParams& p) -> PreparedRun {
           return [p]() { return ok(checksum(hilbert_matrix(p.size))); };
         }}}});

  registry.add_task(
      {"toeplitz", groups::kProgrammation, detail::base(500), SizeRule::linear, true,
       [](const TaskParams& p) { return "Creation of a " + square_dims(p.size) + " Toeplitz matrix"; },
       {{"toeplitz", "reference", [](RngStream&, const TaskParams& p) -> PreparedRun {
           return [p]() { return ok(checksum(toeplitz_matrix(p.size))); };
         }}}});

  registry.add_task(
      {"escoufier", groups::kProgrammation, detail::base(45), SizeRule::linear, true,
       [](const TaskParams& p) { return "Escoufier's method on a " + square_dims(p.size) + " matrix"; },
       {{"escoufier", "reference",
         staged(
             [](RngStream& rng, const TaskParams& p) {
               const std::size_t n = std::max<std::size_t>(2, p.size);
               DenseMatrix d = randn_matrix(rng, n, n, 1.0);
               for (double& v : d.data()) v = std::abs(v);
               return d;
             },
             [](const DenseMatrix& d, const TaskParams&) {
               const auto r = escoufier_select(d);
               double s = 0.0;
               for (std::size_t k = 0; k < r.ordering.size(); ++k) {
                 s += static_cast<double>(r.ordering[k] * (k + 1)) + r.rv_trajectory[k];
               }
               return ok(s);
             })}}});

  registry.add_task(
      {"gcd", groups::kProgrammation, detail::base(400'000), SizeRule::count, true,
       [](const TaskParams& p) { return "Grand common divisors of " + with_commas(p.size) + " pairs"; },
       {{"gcd", "reference",
         staged([](RngStream& rng, const TaskParams& p) { return draw_pairs(rng, p.size, kGcdMaxValue); },
                [](const std::vector<IntPair>& pairs, const TaskParams&) {
                  std::uint64_t s = 0;
                  for (const auto& [a, b] : pairs) s += gcd_euclid(a, b);
                  return ok(static_cast<double>(s));
                })}}});

  // ---- Linear systems: A is n×n, B is n×m ----
  auto solve_label = [](const TaskParams& p) {
    return "Solving AX = B, A " + square_dims(p.size) + ", B " + with_commas(p.size) + " × " +
           with_commas(p.secondary_size.value_or(1));
  };
  auto planted = [](RngStream& rng, const TaskParams& p) {
    return make_planted_system(rng, p.size, p.secondary_size.value_or(1));
  };
  registry.add_task(
      {"solve", groups::kSolving, detail::base(30'000, 1'000), SizeRule::linear, false, solve_label,
       {{"solve", "reference",
         staged(planted, [](const LinearSystem& s, const TaskParams&) { return ok(checksum(solve_smart(s))); })},
        {"solve", "naive",
         staged(planted, [](const LinearSystem& s, const TaskParams&) { return ok(checksum(solve_naive(s))); })}}});

  // ---- Balassa: C countries × P products of positive synthetic exports ----
  registry.add_task(
      {"balassa", groups::kBalassa, detail::base(234, 5386), SizeRule::linear, false,
       [](const TaskParams& p) {
         return "Balassa indices, " + with_commas(p.size) + " countries × " +
                with_commas(p.secondary_size.value_or(1)) + " products";
       },
       {{"balassa", "reference",
         staged(
             [](RngStream& rng, const TaskParams& p) {
               DenseMatrix x = randn_matrix(rng, p.size, p.secondary_size.value_or(1), 1.0);
               for (double& v : x.data()) v = std::abs(v) * 1000.0;
               return x;
             },
             [](const DenseMatrix& x, const TaskParams&) {
               return ok(checksum(balassa_indices(x).s));
             })},
        {"balassa", "cellwise",
         staged(
             [](RngStream& rng, const TaskParams& p) {
               DenseMatrix x = randn_matrix(rng, p.size, p.secondary_size.value_or(1), 1.0);
               for (double& v : x.data()) v = std::abs(v) * 1000.0;
               return x;
             },
             [](const DenseMatrix& x, const TaskParams&) {
               return ok(checksum(threshold_indicator(balassa_cellwise(x))));
             })}}});

  return registry;
}

/// Task ids belonging to a named suite: "att", "solve", "balassa", "all".
inline std::vector<std::string> suite_tasks(const std::string& suite) {
  if (suite == "all") return {};
  if (suite == "solve") return {"solve"};
  if (suite == "balassa") return {"balassa"};
  if (suite == "att") {
    return {"power", "crossprod", "create_modify", "regression", "sort",
            "cholesky", "determinant", "eigenvalues", "fft", "inverse",
            "fibonacci", "hilbert", "toeplitz", "escoufier", "gcd"};
  }
  throw invalid_argument("unknown suite '" + suite + "'");
}

}  // namespace linbench
