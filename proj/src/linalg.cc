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

#include "ghnorth/linalg.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ghnorth/error.h"

namespace ghnorth::linalg {
namespace {

// x[1..len) . y[1..len) with four partial sums.
double TailDot(const double* x, const double* y, std::int64_t len) {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  std::int64_t i = 1;
  for (; i + 3 < len; i += 4) {
    s0 += x[i] * y[i];
    s1 += x[i + 1] * y[i + 1];
    s2 += x[i + 2] * y[i + 2];
    s3 += x[i + 3] * y[i + 3];
  }
  for (; i < len; ++i) s0 += x[i] * y[i];
  return (s0 + s1) + (s2 + s3);
}

}  // namespace

Matrix::Matrix(std::int64_t rows, std::int64_t cols)
    : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols), 0.0) {}

Matrix::Matrix(std::int64_t rows, std::int64_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (static_cast<std::int64_t>(data_.size()) != rows * cols) {
    throw Error(ErrorCode::kShapeError, "matrix data size does not match " +
                                            std::to_string(rows) + "x" + std::to_string(cols));
  }
}

Matrix Matrix::Identity(std::int64_t n) {
  Matrix m(n, n);
  for (std::int64_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

double Matrix::MaxAbs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

Matrix Multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::kShapeError, "inner dimensions differ");
  Matrix c(a.rows(), b.cols());
  for (std::int64_t i = 0; i < a.rows(); ++i) {
    for (std::int64_t t = 0; t < a.cols(); ++t) {
      const double ait = a(i, t);
      if (ait == 0.0) continue;
      for (std::int64_t j = 0; j < b.cols(); ++j) c(i, j) += ait * b(t, j);
    }
  }
  return c;
}

Matrix Transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::int64_t i = 0; i < a.rows(); ++i) {
    for (std::int64_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  }
  return t;
}

double MaxAbsDiff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::kShapeError, "matrix shapes differ");
  }
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) {
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  }
  return m;
}

QrResult QrDecompose(const Matrix& a) {
  const std::int64_t m = a.rows();
  const std::int64_t n = a.cols();
  if (n < 1 || m < n) {
    throw Error(ErrorCode::kShapeError, "thin QR needs rows >= cols >= 1, got " +
                                            std::to_string(m) + "x" + std::to_string(n));
  }

  // Column-major working copy; reflector k is stored below the diagonal of
  // column k with an implicit leading 1.
  std::vector<double> w(static_cast<std::size_t>(m * n));
  for (std::int64_t i = 0; i < m; ++i) {
    for (std::int64_t j = 0; j < n; ++j) w[j * m + i] = a(i, j);
  }
  std::vector<double> tau(n, 0.0);

  for (std::int64_t k = 0; k < n; ++k) {
    double* x = w.data() + k * m + k;
    const std::int64_t len = m - k;
    const double tail = TailDot(x, x, len);
    if (tail == 0.0) continue;  // H_k = I, r_kk = x[0]

    const double alpha = x[0];
    const double norm = std::sqrt(alpha * alpha + tail);
    const double beta = alpha >= 0.0 ? -norm : norm;
    tau[k] = (beta - alpha) / beta;
    const double scale = 1.0 / (alpha - beta);
    for (std::int64_t i = 1; i < len; ++i) x[i] *= scale;
    x[0] = beta;

    for (std::int64_t j = k + 1; j < n; ++j) {
      double* y = w.data() + j * m + k;
      const double dot = tau[k] * (y[0] + TailDot(x, y, len));
      y[0] -= dot;
      for (std::int64_t i = 1; i < len; ++i) y[i] -= dot * x[i];
    }
  }

  QrResult out{Matrix(m, n), Matrix(n, n)};
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t j = i; j < n; ++j) out.r(i, j) = w[j * m + i];
  }

  // Q = H_0 ... H_{n-1} applied to the first n columns of I, accumulated
  // backwards so step k only touches columns k..n-1.
  std::vector<double> q(static_cast<std::size_t>(m * n), 0.0);
  for (std::int64_t j = 0; j < n; ++j) q[j * m + j] = 1.0;
  for (std::int64_t k = n - 1; k >= 0; --k) {
    if (tau[k] == 0.0) continue;
    const double* v = w.data() + k * m + k;
    const std::int64_t len = m - k;
    for (std::int64_t j = k; j < n; ++j) {
      double* y = q.data() + j * m + k;
      const double dot = tau[k] * (y[0] + TailDot(v, y, len));
      y[0] -= dot;
      for (std::int64_t i = 1; i < len; ++i) y[i] -= dot * v[i];
    }
  }
  for (std::int64_t i = 0; i < m; ++i) {
    for (std::int64_t j = 0; j < n; ++j) out.q(i, j) = q[j * m + i];
  }
  return out;
}

Matrix SignAdjust(const Matrix& q, const Matrix& r) {
  if (r.rows() != r.cols() || q.cols() != r.rows()) {
    throw Error(ErrorCode::kShapeError, "sign adjustment needs q.cols == r.rows == r.cols");
  }
  Matrix out = q;
  for (std::int64_t j = 0; j < q.cols(); ++j) {
    if (r(j, j) >= 0.0) continue;
    for (std::int64_t i = 0; i < q.rows(); ++i) out(i, j) = -out(i, j);
  }
  return out;
}

SymmetricEigenResult SymmetricEigen(const Matrix& input) {
  const std::int64_t n = input.rows();
  if (n != input.cols()) throw Error(ErrorCode::kShapeError, "eigensolver needs a square matrix");
  Matrix a = input;
  Matrix v = Matrix::Identity(n);

  double frob = 0.0;
  for (double x : a.data()) frob += x * x;
  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::int64_t p = 0; p < n; ++p) {
      for (std::int64_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    }
    if (off <= 1e-30 * frob || off == 0.0) break;

    for (std::int64_t p = 0; p < n; ++p) {
      for (std::int64_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(1.0 + theta * theta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (std::int64_t i = 0; i < n; ++i) {
          const double aip = a(i, p);
          const double aiq = a(i, q);
          a(i, p) = c * aip - s * aiq;
          a(i, q) = s * aip + c * aiq;
        }
        for (std::int64_t i = 0; i < n; ++i) {
          const double api = a(p, i);
          const double aqi = a(q, i);
          a(p, i) = c * api - s * aqi;
          a(q, i) = s * api + c * aqi;
        }
        for (std::int64_t i = 0; i < n; ++i) {
          const double vip = v(i, p);
          const double viq = v(i, q);
          v(i, p) = c * vip - s * viq;
          v(i, q) = s * vip + c * viq;
        }
      }
    }
  }

  std::vector<std::int64_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&a](std::int64_t x, std::int64_t y) { return a(x, x) > a(y, y); });
  SymmetricEigenResult out{std::vector<double>(n), Matrix(n, n)};
  for (std::int64_t j = 0; j < n; ++j) {
    out.values[j] = a(order[j], order[j]);
    for (std::int64_t i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
  }
  return out;
}

PcaResult PcaProject(const Matrix& x, std::int64_t k) {
  const std::int64_t n = x.rows();
  const std::int64_t d = x.cols();
  if (n < 2) {
    throw Error(ErrorCode::kDegenerateInput, "need at least 2 samples, got " + std::to_string(n));
  }
  if (k < 1 || k > std::min(n - 1, d)) {
    throw Error(ErrorCode::kDegenerateInput,
                "k=" + std::to_string(k) + " outside [1, " + std::to_string(std::min(n - 1, d)) +
                    "]");
  }

  PcaResult out;
  out.mean.assign(d, 0.0);
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t j = 0; j < d; ++j) out.mean[j] += x(i, j);
  }
  for (double& m : out.mean) m /= static_cast<double>(n);

  Matrix centered(n, d);
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t j = 0; j < d; ++j) centered(i, j) = x(i, j) - out.mean[j];
  }

  Matrix cov(d, d);
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t p = 0; p < d; ++p) {
      const double xp = centered(i, p);
      for (std::int64_t q = p; q < d; ++q) cov(p, q) += xp * centered(i, q);
    }
  }
  for (std::int64_t p = 0; p < d; ++p) {
    for (std::int64_t q = p; q < d; ++q) {
      cov(p, q) /= static_cast<double>(n - 1);
      cov(q, p) = cov(p, q);
    }
    out.total_variance += cov(p, p);
  }

  const SymmetricEigenResult eig = SymmetricEigen(cov);
  out.components = Matrix(k, d);
  out.explained_variance.resize(k);
  for (std::int64_t c = 0; c < k; ++c) {
    out.explained_variance[c] = std::max(0.0, eig.values[c]);
    std::int64_t pivot = 0;
    for (std::int64_t j = 1; j < d; ++j) {
      if (std::abs(eig.vectors(j, c)) > std::abs(eig.vectors(pivot, c))) pivot = j;
    }
    const double sign = eig.vectors(pivot, c) < 0.0 ? -1.0 : 1.0;
    for (std::int64_t j = 0; j < d; ++j) out.components(c, j) = sign * eig.vectors(j, c);
  }
  out.projected = Multiply(centered, Transpose(out.components));
  return out;
}

}  // namespace ghnorth::linalg
