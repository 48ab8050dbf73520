#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "linbench/linalg.hpp"
#include "linbench/matrix_core.hpp"
#include "linbench/oracles.hpp"
#include "test_support.hpp"

using linbench::DenseMatrix;
using linbench::RngStream;
using linbench::Shape;
using testing_support::random_matrix;

TEST(RandnMatrix, SmallScaledDrawIsReproducible) {
  RngStream r1(42), r2(42);
  const DenseMatrix a = linbench::randn_matrix(r1, 2, 2, 10.0);
  EXPECT_EQ(a, linbench::randn_matrix(r2, 2, 2, 10.0));
  // N(0, 0.01): four draws beyond 0.6 in magnitude would be a six-sigma event.
  for (double v : a.data()) EXPECT_LT(std::abs(v), 0.6);
}

TEST(RandnMatrix, SampleMeanNearZero) {
  RngStream r(1);
  const DenseMatrix a = linbench::randn_matrix(r, 1000, 1, 1.0);
  double mean = 0.0;
  for (double v : a.data()) mean += v;
  EXPECT_LT(std::abs(mean / 1000.0), 0.1);
}

TEST(RandnMatrix, RejectsBadArguments) {
  RngStream r(7);
  EXPECT_THROW(linbench::randn_matrix(r, 0, 3, 10.0), linbench::invalid_argument);
  EXPECT_THROW(linbench::randn_matrix(r, 3, 3, 0.0), linbench::invalid_argument);
}

TEST(Transpose, TwoByTwo) {
  const DenseMatrix a = DenseMatrix::from_rows({{1, 2}, {3, 4}});
  const DenseMatrix expected = DenseMatrix::from_rows({{1, 3}, {2, 4}});
  EXPECT_EQ(linbench::transpose(a), expected);
  EXPECT_EQ(linbench::transpose_naive(a), expected);
}

TEST(Transpose, IdentityAndScalar) {
  EXPECT_EQ(linbench::transpose(DenseMatrix::identity(5)), DenseMatrix::identity(5));
  const DenseMatrix c = DenseMatrix::from_rows({{7.5}});
  EXPECT_EQ(linbench::transpose_naive(c), c);
}

TEST(Transpose, InvolutionAndNaiveAgreementOverSeeds) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    RngStream r(seed);
    const std::size_t n = r.uniform_int(1, 90);
    const std::size_t m = r.uniform_int(1, 90);
    const DenseMatrix a = linbench::randn_matrix(r, n, m, 1.0);
    const DenseMatrix t = linbench::transpose(a);
    EXPECT_EQ(linbench::transpose(t), a) << "seed " << seed;
    EXPECT_EQ(linbench::transpose_naive(a), t) << "seed " << seed;
    EXPECT_EQ(linbench::oracle::transposed(a), t) << "seed " << seed;
  }
}

TEST(Reshape, FollowsColumnMajorSequence) {
  const DenseMatrix a = DenseMatrix::from_rows({{1, 3}, {2, 4}});
  const DenseMatrix r = linbench::reshape(a, 1, 4);
  EXPECT_EQ(r, DenseMatrix::from_rows({{1, 2, 3, 4}}));
}

TEST(Reshape, RejectsSizeMismatch) {
  EXPECT_THROW(linbench::reshape(DenseMatrix(3, 3), 2, 4), linbench::invalid_argument);
}

TEST(Reshape, PreservesDataSequence) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const DenseMatrix a = random_matrix(seed, 6, 10);
    const DenseMatrix r = linbench::reshape(a, 15, 4);
    EXPECT_TRUE(std::equal(a.data().begin(), a.data().end(), r.data().begin()));
    EXPECT_EQ(linbench::reshape(r, 6, 10), a);
  }
}

TEST(CreateModify, ShapeTraceOnTinyInput) {
  RngStream r(1);
  std::vector<Shape> trace;
  EXPECT_EQ(linbench::create_modify_task(r, 4, &trace), 0);
  ASSERT_EQ(trace.size(), 3u);
  EXPECT_EQ(trace[0], (Shape{4, 4}));
  EXPECT_EQ(trace[1], (Shape{2, 8}));
  EXPECT_EQ(trace[2], (Shape{8, 2}));
}

TEST(CreateModify, RejectsOddSize) {
  RngStream r(1);
  EXPECT_THROW(linbench::create_modify_task(r, 3), linbench::invalid_argument);
}

TEST(CreateModify, TransposeVariantsAgree) {
  RngStream r1(9), r2(9);
  const DenseMatrix a = linbench::create_modify(r1, 10, &linbench::transpose);
  const DenseMatrix b = linbench::create_modify(r2, 10, &linbench::transpose_naive);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.rows(), 20u);
  EXPECT_EQ(a.cols(), 5u);
}

TEST(CreateModify, BaseSizeCompletes) {
  RngStream r(1);
  EXPECT_EQ(linbench::create_modify_task(r, 2500), 0);
}

TEST(ElementwisePower, SquaresAndBaseSize) {
  const DenseMatrix a = DenseMatrix::from_rows({{2}});
  EXPECT_EQ(linbench::elementwise_power(a, 2.0), DenseMatrix::from_rows({{4}}));
  RngStream r(1);
  EXPECT_EQ(linbench::elementwise_power_task(r, 2400, 1000.0), 0);
}

TEST(ElementwisePower, InputsAreHalfAbsoluteNormals) {
  RngStream r(3);
  const DenseMatrix a = linbench::abs_normal_matrix(r, 50);
  for (double v : a.data()) EXPECT_GE(v, 0.0);
}

TEST(Matmul, MatchesOracleAndChecksShapes) {
  const DenseMatrix a = random_matrix(1, 7, 5);
  const DenseMatrix b = random_matrix(2, 5, 3);
  EXPECT_LT(linbench::relative_frobenius(linbench::matmul(a, b), linbench::oracle::matmul(a, b)),
            1e-14);
  EXPECT_THROW(linbench::matmul(a, a), linbench::invalid_argument);
}

TEST(Crossprod, Examples) {
  EXPECT_EQ(linbench::crossprod(DenseMatrix::identity(3)), DenseMatrix::identity(3));
  EXPECT_EQ(linbench::crossprod(DenseMatrix::from_rows({{1}, {2}})), DenseMatrix::from_rows({{5}}));
}

TEST(Crossprod, SymmetricAndPositiveSemidefinite) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    RngStream r(seed);
    const std::size_t n = r.uniform_int(1, 50);
    const std::size_t p = r.uniform_int(1, 50);
    const DenseMatrix c = linbench::crossprod(linbench::randn_matrix(r, n, p, 1.0));
    const DenseMatrix ct = linbench::transpose(c);
    EXPECT_LE(linbench::max_abs(c - ct), 1e-12 * linbench::max_abs(c));
    for (double ev : linbench::eigenvalues_sym(c)) EXPECT_GE(ev, -1e-9) << "seed " << seed;
  }
}

TEST(SortValues, Examples) {
  EXPECT_EQ(linbench::sort_values({3, 1, 2}), (std::vector<double>{1, 2, 3}));
  EXPECT_EQ(linbench::sort_values({-1, 0, 0, 5}), (std::vector<double>{-1, 0, 0, 5}));
  EXPECT_TRUE(linbench::sort_values({}).empty());
  EXPECT_THROW(linbench::sort_values({1.0, std::nan(""), 0.0}), linbench::invalid_argument);
}

TEST(SortValues, MatchesInsertionSortOnTenThousand) {
  RngStream r(11);
  std::vector<double> v(10'000);
  for (double& x : v) x = r.uniform();
  EXPECT_EQ(linbench::sort_values(v), linbench::oracle::insertion_sort(v));
}
