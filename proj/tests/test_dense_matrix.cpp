#include <gtest/gtest.h>

#include "linbench/dense_matrix.hpp"
#include "linbench/errors.hpp"

using linbench::ComplexVector;
using linbench::DenseMatrix;

TEST(DenseMatrix, StoresColumnMajor) {
  const DenseMatrix a = DenseMatrix::from_rows({{1, 2, 3}, {4, 5, 6}});
  ASSERT_EQ(a.rows(), 2u);
  ASSERT_EQ(a.cols(), 3u);
  const std::vector<double> expected{1, 4, 2, 5, 3, 6};
  for (std::size_t k = 0; k < expected.size(); ++k) EXPECT_EQ(a.data()[k], expected[k]);
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (std::size_t i = 0; i < a.rows(); ++i) EXPECT_EQ(a.data()[j * a.rows() + i], a(i, j));
  }
}

TEST(DenseMatrix, ColumnViewIsContiguous) {
  const DenseMatrix a = DenseMatrix::from_rows({{1, 2}, {3, 4}, {5, 6}});
  auto c1 = a.column(1);
  ASSERT_EQ(c1.size(), 3u);
  EXPECT_EQ(c1[0], 2);
  EXPECT_EQ(c1[2], 6);
}

TEST(DenseMatrix, RejectsZeroDimensions) {
  EXPECT_THROW(DenseMatrix(0, 3), linbench::invalid_argument);
  EXPECT_THROW(DenseMatrix(3, 0), linbench::invalid_argument);
  EXPECT_THROW(DenseMatrix(2, 2, std::vector<double>{1, 2, 3}), linbench::invalid_argument);
  EXPECT_THROW(DenseMatrix::from_rows({{1, 2}, {3}}), linbench::invalid_argument);
}

TEST(DenseMatrix, IdentityAndDiagonal) {
  const DenseMatrix i3 = DenseMatrix::identity(3);
  const DenseMatrix d = DenseMatrix::diagonal({1, 1, 1});
  EXPECT_EQ(i3, d);
  EXPECT_EQ(DenseMatrix::diagonal({2, 3})(1, 1), 3);
  EXPECT_EQ(DenseMatrix::diagonal({2, 3})(0, 1), 0);
}

TEST(DenseMatrix, NormsAndDifference) {
  const DenseMatrix a = DenseMatrix::from_rows({{3, 0}, {0, -4}});
  EXPECT_DOUBLE_EQ(linbench::frobenius_norm(a), 5.0);
  EXPECT_DOUBLE_EQ(linbench::max_abs(a), 4.0);
  const DenseMatrix z = a - a;
  EXPECT_EQ(linbench::max_abs(z), 0.0);
  EXPECT_THROW(a - DenseMatrix(3, 2), linbench::invalid_argument);
}

TEST(DenseMatrix, RelativeFrobenius) {
  const DenseMatrix a = DenseMatrix::from_rows({{1, 0}, {0, 1}});
  const DenseMatrix b = DenseMatrix::from_rows({{1, 0}, {0, 2}});
  EXPECT_NEAR(linbench::relative_frobenius(a, b), 1.0 / std::sqrt(5.0), 1e-15);
  // Against a zero reference the absolute difference is reported.
  EXPECT_DOUBLE_EQ(linbench::relative_frobenius(a, DenseMatrix(2, 2)), std::sqrt(2.0));
}

TEST(DenseMatrix, ReleaseHandsOverStorage) {
  DenseMatrix a = DenseMatrix::from_rows({{1, 2}});
  const std::vector<double> v = std::move(a).release();
  EXPECT_EQ(v, (std::vector<double>{1, 2}));
}

TEST(ComplexVector, Basics) {
  ComplexVector v{{1, 2}, {3, -1}};
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(v[1], std::complex<double>(3, -1));
  ComplexVector z(4);
  for (const auto& c : z) EXPECT_EQ(c, std::complex<double>(0, 0));
}
