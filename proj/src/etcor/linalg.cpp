// Copyright 2026 The etcor Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "etcor/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

#include "etcor/error.hpp"

namespace etcor {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_finite(std::span<const double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw DomainError("matrix entries must be finite");
    }
  }
}

void require_square(const Matrix& a, const char* what) {
  if (a.empty() || !a.is_square()) {
    throw DimensionError(std::string(what) + ": matrix must be square, got " +
                         std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()));
  }
}

std::string shape(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

}  // namespace

// ---------------------------------------------------------------------------
// Matrix

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {
  if (rows == 0 || cols == 0) {
    throw DimensionError("matrix dimensions must be positive");
  }
  if (!std::isfinite(fill)) {
    throw DomainError("matrix entries must be finite");
  }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  if (rows_ == 0 || cols_ == 0) {
    throw DimensionError("matrix dimensions must be positive");
  }
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) {
      throw DimensionError("ragged matrix literal");
    }
    data_.insert(data_.end(), r.begin(), r.end());
  }
  require_finite(data_);
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
  if (rows == 0 || cols == 0) {
    throw DimensionError("matrix dimensions must be positive");
  }
  if (data_.size() != rows * cols) {
    throw DimensionError("matrix data size does not match " +
                         std::to_string(rows) + "x" + std::to_string(cols));
  }
  require_finite(data_);
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::column(std::span<const double> values) {
  return Matrix(values.size(), 1,
                std::vector<double>(values.begin(), values.end()));
}

Matrix Matrix::row(std::span<const double> values) {
  return Matrix(1, values.size(),
                std::vector<double>(values.begin(), values.end()));
}

Matrix Matrix::diagonal(std::span<const double> values) {
  Matrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

Matrix Matrix::block_diagonal(std::span<const Matrix> blocks) {
  std::size_t r = 0;
  std::size_t c = 0;
  for (const auto& b : blocks) {
    r += b.rows();
    c += b.cols();
  }
  Matrix m(r, c);
  r = 0;
  c = 0;
  for (const auto& b : blocks) {
    m.set_block(r, c, b);
    r += b.rows();
    c += b.cols();
  }
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr,
                     std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) {
    throw DimensionError("block exceeds matrix bounds");
  }
  Matrix b(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
  if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) {
    throw DimensionError("block exceeds matrix bounds");
  }
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

std::vector<double> Matrix::vec() const {
  std::vector<double> v;
  v.reserve(data_.size());
  for (std::size_t j = 0; j < cols_; ++j)
    for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
  return v;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double Matrix::frobenius_norm() const {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return std::sqrt(s);
}

double Matrix::norm2() const {
  if (empty()) return 0.0;
  if (rows_ == 1 || cols_ == 1) return frobenius_norm();
  const Matrix t = transpose();
  const Matrix gram = rows_ >= cols_ ? t * (*this) : (*this) * t;
  double largest = 0.0;
  for (const auto& ev : eigenvalues(gram).eigenvalues) {
    largest = std::max(largest, ev.real());
  }
  return std::sqrt(largest);
}

double Matrix::trace() const {
  double s = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i);
  return s;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) {
    throw DimensionError("matrix sum of " + shape(*this) + " and " + shape(o));
  }
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) {
    throw DimensionError("matrix difference of " + shape(*this) + " and " +
                         shape(o));
  }
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) {
    throw DimensionError("matrix product of " + shape(a) + " and " + shape(b));
  }
  Matrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

std::vector<double> multiply(const Matrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) {
    throw DimensionError("matrix-vector product of " + shape(a) +
                         " and vector of length " + std::to_string(x.size()));
  }
  std::vector<double> y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

Matrix kronecker(const Matrix& a, const Matrix& b) {
  Matrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t p = 0; p < b.rows(); ++p)
        for (std::size_t q = 0; q < b.cols(); ++q)
          k(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
  return k;
}

Matrix power(const Matrix& a, unsigned k) {
  require_square(a, "power");
  Matrix p = Matrix::identity(a.rows());
  for (unsigned i = 0; i < k; ++i) p = p * a;
  return p;
}

// ---------------------------------------------------------------------------
// Spectrum

double Spectrum::spectral_abscissa() const {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& ev : eigenvalues) m = std::max(m, ev.real());
  return m;
}

double Spectrum::min_real() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& ev : eigenvalues) m = std::min(m, ev.real());
  return m;
}

double Spectrum::max_abs() const {
  double m = 0.0;
  for (const auto& ev : eigenvalues) m = std::max(m, std::abs(ev));
  return m;
}

namespace {

// Diagonal similarity scaling by powers of two; leaves the spectrum intact
// and improves the accuracy of the QR sweep on badly scaled input.
void balance(Matrix& a) {
  const std::size_t n = a.rows();
  constexpr double radix = 2.0;
  constexpr double sqrdx = radix * radix;
  bool done = false;
  while (!done) {
    done = true;
    for (std::size_t i = 0; i < n; ++i) {
      double r = 0.0;
      double c = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / radix;
      double f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= radix;
        c *= sqrdx;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= sqrdx;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        g = 1.0 / f;
        for (std::size_t j = 0; j < n; ++j) a(i, j) *= g;
        for (std::size_t j = 0; j < n; ++j) a(j, i) *= f;
      }
    }
  }
}

void reduce_to_hessenberg(Matrix& a) {
  const std::size_t n = a.rows();
  if (n < 3) return;
  std::vector<double> v(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double alpha = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) alpha += a(i, k) * a(i, k);
    alpha = std::sqrt(alpha);
    if (alpha == 0.0) continue;
    if (a(k + 1, k) > 0.0) alpha = -alpha;
    std::fill(v.begin(), v.end(), 0.0);
    for (std::size_t i = k + 1; i < n; ++i) v[i] = a(i, k);
    v[k + 1] -= alpha;
    double vnorm = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) vnorm += v[i] * v[i];
    if (vnorm == 0.0) continue;
    // A <- (I - 2vv^T/|v|^2) A (I - 2vv^T/|v|^2)
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t i = k + 1; i < n; ++i) s += v[i] * a(i, j);
      s *= 2.0 / vnorm;
      for (std::size_t i = k + 1; i < n; ++i) a(i, j) -= s * v[i];
    }
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) s += a(i, j) * v[j];
      s *= 2.0 / vnorm;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= s * v[j];
    }
    a(k + 1, k) = alpha;
    for (std::size_t i = k + 2; i < n; ++i) a(i, k) = 0.0;
  }
}

double sign_of(double magnitude, double s) {
  return s >= 0.0 ? std::abs(magnitude) : -std::abs(magnitude);
}

// Francis double-shift QR on an upper Hessenberg matrix (EISPACK hqr).
std::vector<Complex> hessenberg_qr(Matrix& a) {
  const int n = static_cast<int>(a.rows());
  std::vector<Complex> wri(static_cast<std::size_t>(n));
  constexpr int kMaxIterations = 60;

  double anorm = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = std::max(i - 1, 0); j < n; ++j) anorm += std::abs(a(i, j));

  int nn = n - 1;
  double t = 0.0;
  double p = 0.0, q = 0.0, r = 0.0, s = 0.0, w = 0.0, x = 0.0, y = 0.0,
         z = 0.0;
  while (nn >= 0) {
    int its = 0;
    int l = 0;
    do {
      for (l = nn; l > 0; --l) {
        s = std::abs(a(l - 1, l - 1)) + std::abs(a(l, l));
        if (s == 0.0) s = anorm;
        if (std::abs(a(l, l - 1)) <= kEps * s) {
          a(l, l - 1) = 0.0;
          break;
        }
      }
      x = a(nn, nn);
      if (l == nn) {
        wri[nn--] = x + t;
      } else {
        y = a(nn - 1, nn - 1);
        w = a(nn, nn - 1) * a(nn - 1, nn);
        if (l == nn - 1) {
          p = 0.5 * (y - x);
          q = p * p + w;
          z = std::sqrt(std::abs(q));
          x += t;
          if (q >= 0.0) {
            z = p + sign_of(z, p);
            wri[nn - 1] = wri[nn] = x + z;
            if (z != 0.0) wri[nn] = x - w / z;
          } else {
            wri[nn] = Complex(x + p, -z);
            wri[nn - 1] = std::conj(wri[nn]);
          }
          nn -= 2;
        } else {
          if (its == kMaxIterations) {
            throw ConvergenceError(
                "eigenvalue QR iteration did not converge after " +
                std::to_string(kMaxIterations) + " sweeps");
          }
          if (its > 0 && its % 10 == 0) {
            // Exceptional shift.
            t += x;
            for (int i = 0; i <= nn; ++i) a(i, i) -= x;
            s = std::abs(a(nn, nn - 1)) + std::abs(a(nn - 1, nn - 2));
            y = x = 0.75 * s;
            w = -0.4375 * s * s;
          }
          ++its;
          int m = nn - 2;
          for (; m >= l; --m) {
            z = a(m, m);
            r = x - z;
            s = y - z;
            p = (r * s - w) / a(m + 1, m) + a(m, m + 1);
            q = a(m + 1, m + 1) - z - r - s;
            r = a(m + 2, m + 1);
            s = std::abs(p) + std::abs(q) + std::abs(r);
            p /= s;
            q /= s;
            r /= s;
            if (m == l) break;
            const double u = std::abs(a(m, m - 1)) * (std::abs(q) + std::abs(r));
            const double v = std::abs(p) * (std::abs(a(m - 1, m - 1)) +
                                            std::abs(z) +
                                            std::abs(a(m + 1, m + 1)));
            if (u <= kEps * v) break;
          }
          for (int i = m; i < nn - 1; ++i) {
            a(i + 2, i) = 0.0;
            if (i != m) a(i + 2, i - 1) = 0.0;
          }
          for (int k = m; k < nn; ++k) {
            if (k != m) {
              p = a(k, k - 1);
              q = a(k + 1, k - 1);
              r = 0.0;
              if (k + 1 != nn) r = a(k + 2, k - 1);
              if ((x = std::abs(p) + std::abs(q) + std::abs(r)) != 0.0) {
                p /= x;
                q /= x;
                r /= x;
              }
            }
            if ((s = sign_of(std::sqrt(p * p + q * q + r * r), p)) != 0.0) {
              if (k == m) {
                if (l != m) a(k, k - 1) = -a(k, k - 1);
              } else {
                a(k, k - 1) = -s * x;
              }
              p += s;
              x = p / s;
              y = q / s;
              z = r / s;
              q /= p;
              r /= p;
              for (int j = k; j <= nn; ++j) {
                p = a(k, j) + q * a(k + 1, j);
                if (k + 1 != nn) {
                  p += r * a(k + 2, j);
                  a(k + 2, j) -= p * z;
                }
                a(k + 1, j) -= p * y;
                a(k, j) -= p * x;
              }
              const int mmin = nn < k + 3 ? nn : k + 3;
              for (int i = l; i <= mmin; ++i) {
                p = x * a(i, k) + y * a(i, k + 1);
                if (k + 1 != nn) {
                  p += z * a(i, k + 2);
                  a(i, k + 2) -= p * r;
                }
                a(i, k + 1) -= p * q;
                a(i, k) -= p;
              }
            }
          }
        }
      }
    } while (l + 1 < nn);
  }
  return wri;
}

}  // namespace

Spectrum eigenvalues(const Matrix& a) {
  require_square(a, "eigenvalues");
  Matrix h = a;
  if (h.rows() == 1) {
    return Spectrum{{Complex(h(0, 0), 0.0)}};
  }
  balance(h);
  reduce_to_hessenberg(h);
  return Spectrum{hessenberg_qr(h)};
}

// ---------------------------------------------------------------------------
// Definiteness and rank

bool is_symmetric(const Matrix& a, double rel_tol) {
  if (a.empty() || !a.is_square()) return false;
  const double scale = std::max(1.0, a.max_abs());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j)
      if (std::abs(a(i, j) - a(j, i)) > rel_tol * scale) return false;
  return true;
}

bool is_positive_definite(const Matrix& a) {
  require_square(a, "is_positive_definite");
  if (!is_symmetric(a)) {
    throw DomainError("positive-definiteness test requires a symmetric matrix");
  }
  const std::size_t n = a.rows();
  Matrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > 0.0)) return false;
    l(j, j) = std::sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }
  return true;
}

bool is_hurwitz(const Matrix& a) {
  return eigenvalues(a).spectral_abscissa() < 0.0;
}

namespace {

template <typename T>
std::size_t full_pivot_rank(std::vector<std::vector<T>> m, double rel_tol) {
  const std::size_t rows = m.size();
  if (rows == 0) return 0;
  const std::size_t cols = m.front().size();
  double scale = 0.0;
  for (const auto& r : m)
    for (const auto& v : r) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return 0;
  const double threshold = rel_tol * scale;
  std::size_t rank = 0;
  std::vector<std::size_t> col_order(cols);
  std::iota(col_order.begin(), col_order.end(), 0);
  for (std::size_t k = 0; k < std::min(rows, cols); ++k) {
    std::size_t pr = k;
    std::size_t pc = k;
    double best = 0.0;
    for (std::size_t i = k; i < rows; ++i)
      for (std::size_t j = k; j < cols; ++j)
        if (std::abs(m[i][col_order[j]]) > best) {
          best = std::abs(m[i][col_order[j]]);
          pr = i;
          pc = j;
        }
    if (best <= threshold) break;
    std::swap(m[k], m[pr]);
    std::swap(col_order[k], col_order[pc]);
    const T pivot = m[k][col_order[k]];
    for (std::size_t i = k + 1; i < rows; ++i) {
      const T factor = m[i][col_order[k]] / pivot;
      for (std::size_t j = k; j < cols; ++j)
        m[i][col_order[j]] -= factor * m[k][col_order[j]];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

std::size_t rank(const Matrix& a, double rel_tol) {
  std::vector<std::vector<double>> m(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const auto r = a.row_span(i);
    m[i].assign(r.begin(), r.end());
  }
  return full_pivot_rank(std::move(m), rel_tol);
}

std::size_t rank(const std::vector<std::vector<Complex>>& a, double rel_tol) {
  return full_pivot_rank(a, rel_tol);
}

// ---------------------------------------------------------------------------
// LU

LuDecomposition::LuDecomposition(const Matrix& a) : lu_(a) {
  require_square(a, "LU decomposition");
  const std::size_t n = a.rows();
  perm_.resize(n);
  std::iota(perm_.begin(), perm_.end(), 0);
  const double scale = a.max_abs();
  if (scale == 0.0) {
    throw SingularityError("LU decomposition of the zero matrix");
  }
  double min_pivot = std::numeric_limits<double>::infinity();
  double max_pivot = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(lu_(i, k)) > std::abs(lu_(p, k))) p = i;
    const double pivot = std::abs(lu_(p, k));
    if (pivot <= 1e-14 * scale) {
      throw SingularityError("matrix is numerically singular (pivot " +
                             std::to_string(k) + ")");
    }
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(p, j));
      std::swap(perm_[k], perm_[p]);
      sign_ = -sign_;
    }
    min_pivot = std::min(min_pivot, pivot);
    max_pivot = std::max(max_pivot, pivot);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = lu_(i, k) / lu_(k, k);
      lu_(i, k) = f;
      if (f == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= f * lu_(k, j);
    }
  }
  pivot_ratio_ = min_pivot / max_pivot;
}

Matrix LuDecomposition::solve(const Matrix& rhs) const {
  const std::size_t n = lu_.rows();
  if (rhs.rows() != n) {
    throw DimensionError("LU solve: right-hand side has " +
                         std::to_string(rhs.rows()) + " rows, expected " +
                         std::to_string(n));
  }
  Matrix x(n, rhs.cols());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < rhs.cols(); ++j) x(i, j) = rhs(perm_[i], j);
  for (std::size_t c = 0; c < rhs.cols(); ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = x(i, c);
      for (std::size_t k = 0; k < i; ++k) s -= lu_(i, k) * x(k, c);
      x(i, c) = s;
    }
    for (std::size_t ii = n; ii-- > 0;) {
      double s = x(ii, c);
      for (std::size_t k = ii + 1; k < n; ++k) s -= lu_(ii, k) * x(k, c);
      x(ii, c) = s / lu_(ii, ii);
    }
  }
  return x;
}

std::vector<double> LuDecomposition::solve(std::span<const double> rhs) const {
  return solve(Matrix::column(rhs)).vec();
}

double LuDecomposition::determinant() const {
  double d = sign_;
  for (std::size_t i = 0; i < lu_.rows(); ++i) d *= lu_(i, i);
  return d;
}

Matrix solve(const Matrix& a, const Matrix& rhs) {
  return LuDecomposition(a).solve(rhs);
}

Matrix inverse(const Matrix& a) {
  require_square(a, "inverse");
  return LuDecomposition(a).solve(Matrix::identity(a.rows()));
}

double determinant(const Matrix& a) {
  require_square(a, "determinant");
  try {
    return LuDecomposition(a).determinant();
  } catch (const SingularityError&) {
    return 0.0;
  }
}

// ---------------------------------------------------------------------------
// Sylvester and Lyapunov

Matrix solve_sylvester(const Matrix& a, const Matrix& b, const Matrix& c) {
  require_square(a, "solve_sylvester (A)");
  require_square(b, "solve_sylvester (B)");
  const std::size_t n = a.rows();
  const std::size_t m = b.rows();
  if (c.rows() != n || c.cols() != m) {
    throw DimensionError("solve_sylvester: C is " + shape(c) + ", expected " +
                         std::to_string(n) + "x" + std::to_string(m));
  }

  const Spectrum sa = eigenvalues(a);
  const Spectrum sb = eigenvalues(b);
  const double scale = std::max({1.0, sa.max_abs(), sb.max_abs()});
  for (const auto& la : sa.eigenvalues) {
    for (const auto& lb : sb.eigenvalues) {
      if (std::abs(la - lb) < 1e-8 * scale) {
        throw SingularityError(
            "solve_sylvester: A and B share the eigenvalue (" +
            std::to_string(la.real()) + ", " + std::to_string(la.imag()) + ")");
      }
    }
  }

  // (B^T kron I_n - I_m kron A) vec(X) = vec(C)
  const Matrix system =
      kronecker(b.transpose(), Matrix::identity(n)) -
      kronecker(Matrix::identity(m), a);
  const std::vector<double> x = LuDecomposition(system).solve(c.vec());

  Matrix out(n, m);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < n; ++i) out(i, j) = x[i + j * n];
  return out;
}

Matrix solve_lyapunov(const Matrix& a, const Matrix& r) {
  require_square(a, "solve_lyapunov (A)");
  require_square(r, "solve_lyapunov (R)");
  if (r.rows() != a.rows()) {
    throw DimensionError("solve_lyapunov: R is " + shape(r) + ", A is " +
                         shape(a));
  }
  if (!is_symmetric(r)) {
    throw DomainError("solve_lyapunov: R must be symmetric");
  }
  if (!is_hurwitz(a)) {
    throw DomainError("solve_lyapunov: A is not Hurwitz");
  }
  // P A - (-A^T) P = -R
  Matrix p = solve_sylvester(-a.transpose(), a, -r);
  Matrix sym = p + p.transpose();
  sym *= 0.5;
  return sym;
}

// ---------------------------------------------------------------------------
// Minimal polynomial

std::vector<double> minimal_polynomial(const Matrix& s, double tol) {
  require_square(s, "minimal_polynomial");
  if (!(tol > 0.0)) {
    throw DomainError("minimal_polynomial: tolerance must be positive");
  }
  const std::size_t n = s.rows();
  const double scale = s.frobenius_norm();
  if (scale == 0.0) return {0.0};

  // Krylov sequence of the normalised matrix, orthogonalised incrementally.
  const Matrix sn = s * (1.0 / scale);
  std::vector<std::vector<double>> basis;
  Matrix r_factor(n + 1, n + 1);
  Matrix power_k = Matrix::identity(n);

  for (std::size_t k = 0; k <= n; ++k) {
    const std::vector<double> w = power_k.vec();
    std::vector<double> residual = w;
    std::vector<double> coeff(basis.size(), 0.0);
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j = 0; j < basis.size(); ++j) {
        double d = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) d += basis[j][i] * residual[i];
        coeff[j] += d;
        for (std::size_t i = 0; i < w.size(); ++i) residual[i] -= d * basis[j][i];
      }
    }
    double wnorm = 0.0;
    double rnorm = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      wnorm += w[i] * w[i];
      rnorm += residual[i] * residual[i];
    }
    wnorm = std::sqrt(wnorm);
    rnorm = std::sqrt(rnorm);

    if (k > 0 && rnorm <= tol * wnorm) {
      // S_n^k = sum_j c_j S_n^j with R c = coeff.
      std::vector<double> c(k, 0.0);
      for (std::size_t ii = k; ii-- > 0;) {
        double acc = coeff[ii];
        for (std::size_t j = ii + 1; j < k; ++j) acc -= r_factor(ii, j) * c[j];
        c[ii] = acc / r_factor(ii, ii);
      }
      std::vector<double> a(k);
      for (std::size_t j = 0; j < k; ++j) {
        a[j] = -c[j] * std::pow(scale, static_cast<double>(k - j));
      }
      return a;
    }
    for (std::size_t j = 0; j < basis.size(); ++j) r_factor(j, k) = coeff[j];
    r_factor(k, k) = rnorm;
    for (double& v : residual) v /= rnorm;
    basis.push_back(std::move(residual));
    power_k = power_k * sn;
  }
  // Cayley-Hamilton guarantees dependence by degree n; reaching this point
  // means the tolerance is too tight for the conditioning of S.
  throw ConvergenceError(
      "minimal_polynomial: Krylov sequence never became dependent; tolerance "
      "too small");
}

Matrix evaluate_monic(std::span<const double> coefficients, const Matrix& s) {
  require_square(s, "evaluate_monic");
  const std::size_t l = coefficients.size();
  // Horner: ((S + a_{l-1}) S + a_{l-2}) S + ... + a_0
  Matrix acc = Matrix::identity(s.rows());
  const Matrix eye = Matrix::identity(s.rows());
  for (std::size_t k = l; k-- > 0;) {
    acc = acc * s + eye * coefficients[k];
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Spectral structure

bool is_semisimple(const Matrix& s) {
  require_square(s, "is_semisimple");
  const std::size_t n = s.rows();
  const Spectrum spec = eigenvalues(s);
  const double scale = std::max(1.0, s.max_abs());
  std::vector<bool> used(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (used[i]) continue;
    std::vector<std::size_t> cluster;
    for (std::size_t j = i; j < n; ++j) {
      if (!used[j] &&
          std::abs(spec.eigenvalues[j] - spec.eigenvalues[i]) <= 1e-6 * scale) {
        cluster.push_back(j);
        used[j] = true;
      }
    }
    Complex centre(0.0, 0.0);
    for (auto j : cluster) centre += spec.eigenvalues[j];
    centre /= static_cast<double>(cluster.size());

    std::vector<std::vector<Complex>> shifted(n, std::vector<Complex>(n));
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        shifted[r][c] = Complex(s(r, c), 0.0) - (r == c ? centre : Complex{});
    const std::size_t geometric = n - rank(shifted, 1e-8);
    if (geometric != cluster.size()) return false;
  }
  return true;
}

bool has_semisimple_imaginary_spectrum(const Matrix& s) {
  const Spectrum spec = eigenvalues(s);
  const double scale = std::max(1.0, s.max_abs());
  for (const auto& ev : spec.eigenvalues) {
    if (std::abs(ev.real()) > 1e-8 * scale) return false;
  }
  return is_semisimple(s);
}

}  // namespace etcor
