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

#pragma once

// Small dense linear algebra. Every matrix handled by the toolkit is at most a
// few dozen rows, so the routines favour robustness and readability over
// blocking or vectorisation.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace etcor {

using Complex = std::complex<double>;

/// Dense real matrix, row-major. A default-constructed matrix is empty (0x0)
/// and only serves as a placeholder; every other constructor enforces
/// rows >= 1, cols >= 1 and finite entries.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> row_major);

  static Matrix identity(std::size_t n);
  static Matrix column(std::span<const double> values);
  static Matrix row(std::span<const double> values);
  static Matrix diagonal(std::span<const double> values);
  static Matrix block_diagonal(std::span<const Matrix> blocks);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }
  bool is_square() const noexcept { return rows_ == cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }
  std::span<const double> row_span(std::size_t r) const {
    return std::span<const double>(data_).subspan(r * cols_, cols_);
  }

  Matrix transpose() const;
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr,
               std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b);

  /// Column-major flattening (vec operator).
  std::vector<double> vec() const;

  double max_abs() const;
  double frobenius_norm() const;
  /// Induced 2-norm (largest singular value).
  double norm2() const;
  double trace() const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(double s);

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, double s) { return a *= s; }
  friend Matrix operator*(double s, Matrix a) { return a *= s; }
  friend Matrix operator-(Matrix a) { return a *= -1.0; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

std::vector<double> multiply(const Matrix& a, std::span<const double> x);
Matrix kronecker(const Matrix& a, const Matrix& b);
Matrix power(const Matrix& a, unsigned k);

/// Eigenvalues of a square matrix together with the tolerance used when
/// classifying them (real-part sign tests, clustering).
struct Spectrum {
  std::vector<Complex> eigenvalues;
  double tolerance = 1e-8;

  std::size_t size() const noexcept { return eigenvalues.size(); }
  double spectral_abscissa() const;
  double min_real() const;
  double max_abs() const;
};

/// All eigenvalues via balancing, Householder Hessenberg reduction and the
/// Francis double-shift QR iteration. Complex pairs of a real matrix come out
/// adjacent and exactly conjugate.
Spectrum eigenvalues(const Matrix& a);

/// Cholesky-based test; throws DomainError for asymmetric input.
bool is_positive_definite(const Matrix& a);
bool is_symmetric(const Matrix& a, double rel_tol = 1e-12);
bool is_hurwitz(const Matrix& a);

/// Numerical rank by Gaussian elimination with full pivoting; a pivot counts
/// when it exceeds rel_tol * max|a_ij|.
std::size_t rank(const Matrix& a, double rel_tol = 1e-10);
std::size_t rank(const std::vector<std::vector<Complex>>& a,
                 double rel_tol = 1e-10);

/// Dense LU with partial pivoting.
class LuDecomposition {
 public:
  explicit LuDecomposition(const Matrix& a);

  Matrix solve(const Matrix& rhs) const;
  std::vector<double> solve(std::span<const double> rhs) const;
  double determinant() const;
  /// Reciprocal condition estimate: min|pivot| / max|pivot|.
  double pivot_ratio() const noexcept { return pivot_ratio_; }

 private:
  Matrix lu_;
  std::vector<std::size_t> perm_;
  int sign_ = 1;
  double pivot_ratio_ = 0.0;
};

Matrix solve(const Matrix& a, const Matrix& rhs);
Matrix inverse(const Matrix& a);
double determinant(const Matrix& a);

/// Solves X*B - A*X = C for X (n x m). Throws SingularityError when A and B
/// share an eigenvalue (separation below 1e-8).
Matrix solve_sylvester(const Matrix& a, const Matrix& b, const Matrix& c);

/// Solves A^T P + P A = -R for a Hurwitz A. Result is symmetrised.
Matrix solve_lyapunov(const Matrix& a, const Matrix& r);

/// Monic minimal polynomial lambda^l + a_{l-1} lambda^{l-1} + ... + a_0,
/// returned as [a_0, ..., a_{l-1}].
std::vector<double> minimal_polynomial(const Matrix& s, double tol = 1e-9);

/// Evaluates p(S) for the monic polynomial with the given low-order
/// coefficients.
Matrix evaluate_monic(std::span<const double> coefficients, const Matrix& s);

/// True when every eigenvalue is semi-simple (geometric == algebraic
/// multiplicity).
bool is_semisimple(const Matrix& s);

/// True when every eigenvalue lies on the imaginary axis and is semi-simple.
bool has_semisimple_imaginary_spectrum(const Matrix& s);

}  // namespace etcor
