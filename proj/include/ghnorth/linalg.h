/* Copyright 2026 The ghnorth Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef GHNORTH_LINALG_H_
#define GHNORTH_LINALG_H_

#include <cstdint>
#include <span>
#include <vector>

namespace ghnorth::linalg {

// Dense row-major f64 matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::int64_t rows, std::int64_t cols);
  Matrix(std::int64_t rows, std::int64_t cols, std::vector<double> data);

  static Matrix Identity(std::int64_t n);

  std::int64_t rows() const { return rows_; }
  std::int64_t cols() const { return cols_; }

  double& operator()(std::int64_t r, std::int64_t c) { return data_[r * cols_ + c]; }
  double operator()(std::int64_t r, std::int64_t c) const { return data_[r * cols_ + c]; }

  std::span<const double> data() const { return data_; }
  std::span<double> mutable_data() { return data_; }
  std::vector<double> release() && { return std::move(data_); }

  double MaxAbs() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::int64_t rows_ = 0;
  std::int64_t cols_ = 0;
  std::vector<double> data_;
};

Matrix Multiply(const Matrix& a, const Matrix& b);
Matrix Transpose(const Matrix& a);
// max |a_ij - b_ij|; shapes must agree.
double MaxAbsDiff(const Matrix& a, const Matrix& b);

struct QrResult {
  Matrix q;  // rows x cols, orthonormal columns
  Matrix r;  // cols x cols, upper triangular
};

// Thin QR by Householder reflections. The diagonal of R carries whatever
// sign the reflections produce; see SignAdjust. Columns that are already
// zero below the diagonal get the identity reflection, so Q stays
// orthonormal for rank-deficient input.
//
// Errors: kShapeError when rows < cols or the matrix is empty.
QrResult QrDecompose(const Matrix& a);

// Multiplies column j of q by sign(r_jj), with sign(0) taken as +1.
// Errors: kShapeError unless r is square with q.cols() == r.rows().
Matrix SignAdjust(const Matrix& q, const Matrix& r);

struct SymmetricEigenResult {
  std::vector<double> values;  // descending
  Matrix vectors;              // column i pairs with values[i]
};

// Cyclic Jacobi eigensolver for a symmetric matrix.
SymmetricEigenResult SymmetricEigen(const Matrix& a);

struct PcaResult {
  Matrix components;                    // k x d, orthonormal rows
  Matrix projected;                     // n x k
  std::vector<double> explained_variance;  // k, non-increasing
  std::vector<double> mean;             // d
  double total_variance = 0.0;          // trace of the sample covariance
};

// Projects the rows of x (n samples of dimension d) onto the top-k principal
// directions of the sample covariance (1/(n-1) normalization). Each component
// is oriented so that its largest-magnitude entry is positive.
//
// Errors: kDegenerateInput when n < 2 or k is outside [1, min(n-1, d)].
PcaResult PcaProject(const Matrix& x, std::int64_t k);

}  // namespace ghnorth::linalg

#endif  // GHNORTH_LINALG_H_
