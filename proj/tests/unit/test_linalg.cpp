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


#include <algorithm>
#include <complex>
#include <random>

#include "doctest.h"
#include "etcor/error.hpp"
#include "etcor/linalg.hpp"
#include "oracle.hpp"

using namespace etcor;
using etcor::test::from_eigen;
using etcor::test::max_diff;
using etcor::test::random_matrix;
using etcor::test::to_eigen;

namespace {

std::vector<Complex> sorted(std::vector<Complex> v) {
  std::sort(v.begin(), v.end(), [](Complex a, Complex b) {
    if (std::abs(a.real() - b.real()) > 1e-9) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return v;
}

Matrix harmonic(double sigma) { return Matrix{{0.0, sigma}, {-sigma, 0.0}}; }

}  // namespace

TEST_CASE("matrix construction and shape checks") {
  Matrix a{{1, 2, 3}, {4, 5, 6}};
  CHECK(a.rows() == 2);
  CHECK(a.cols() == 3);
  CHECK(a(1, 2) == 6);
  CHECK(a.transpose()(2, 1) == 6);
  CHECK(a.vec() == std::vector<double>{1, 4, 2, 5, 3, 6});
  CHECK_THROWS_AS((Matrix{{1, 2}, {3}}), DimensionError);
  CHECK_THROWS_AS(Matrix(0, 2), DimensionError);
  CHECK_THROWS_AS(a * a, DimensionError);
  CHECK_THROWS_AS(a + a.transpose(), DimensionError);
  CHECK(Matrix::identity(3).trace() == 3.0);
}

TEST_CASE("block helpers") {
  const Matrix b = Matrix::block_diagonal(
      std::vector<Matrix>{Matrix{{1.0, 2.0}}, Matrix{{3.0}, {4.0}}});
  CHECK(b.rows() == 3);
  CHECK(b.cols() == 3);
  CHECK(b(0, 1) == 2.0);
  CHECK(b(2, 2) == 4.0);
  CHECK(b(1, 0) == 0.0);
  const Matrix k = kronecker(Matrix{{1, 2}}, Matrix::identity(2));
  CHECK(k == Matrix{{1, 0, 2, 0}, {0, 1, 0, 2}});
  CHECK(power(harmonic(2.0), 2) == Matrix{{-4, 0}, {0, -4}});
}

TEST_CASE("products and norms agree with the reference") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix a = random_matrix(rng, 4, 3);
    const Matrix b = random_matrix(rng, 3, 5);
    CHECK(max_diff(a * b, to_eigen(a) * to_eigen(b)) < 1e-14);
    const double s = Eigen::JacobiSVD<Eigen::MatrixXd>(to_eigen(a))
                         .singularValues()(0);
    CHECK(a.norm2() == doctest::Approx(s).epsilon(1e-10));
    CHECK(a.frobenius_norm() ==
          doctest::Approx(to_eigen(a).norm()).epsilon(1e-14));
  }
}

TEST_CASE("eigenvalues agree with the reference") {
  std::mt19937 rng(11);
  for (std::size_t n : {1u, 2u, 3u, 5u, 8u, 12u}) {
    for (int trial = 0; trial < 10; ++trial) {
      const Matrix a = random_matrix(rng, n, n, 3.0);
      const auto mine = sorted(eigenvalues(a).eigenvalues);
      Eigen::EigenSolver<Eigen::MatrixXd> es(to_eigen(a));
      std::vector<Complex> ref(es.eigenvalues().data(),
                               es.eigenvalues().data() + n);
      ref = sorted(ref);
      REQUIRE(mine.size() == n);
      for (std::size_t k = 0; k < n; ++k) {
        CHECK(std::abs(mine[k] - ref[k]) < 1e-8 * (1.0 + std::abs(ref[k])));
      }
    }
  }
}

TEST_CASE("eigenvalues of structured matrices") {
  const auto s = eigenvalues(harmonic(2.0));
  CHECK(s.size() == 2);
  CHECK(std::abs(s.eigenvalues[0].real()) < 1e-14);
  CHECK(std::abs(std::abs(s.eigenvalues[0].imag()) - 2.0) < 1e-12);
  CHECK(s.eigenvalues[0] == std::conj(s.eigenvalues[1]));
  const auto m = eigenvalues(Matrix{{0, 1}, {-25, -10}});
  for (const auto& l : m.eigenvalues) {
    CHECK(std::abs(l - Complex(-5.0, 0.0)) < 1e-6);
  }
  CHECK(is_hurwitz(Matrix{{0, 1}, {-25, -10}}));
  CHECK_FALSE(is_hurwitz(harmonic(1.0)));
  CHECK_THROWS_AS(eigenvalues(Matrix{{1, 2}}), DimensionError);
}

TEST_CASE("linear solves, inverse, determinant") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix a = random_matrix(rng, 6, 6) + 3.0 * Matrix::identity(6);
    const Matrix b = random_matrix(rng, 6, 2);
    CHECK(max_diff(solve(a, b), to_eigen(a).partialPivLu().solve(to_eigen(b))) <
          1e-12);
    CHECK(max_diff(inverse(a), to_eigen(a).inverse()) < 1e-12);
    CHECK(determinant(a) ==
          doctest::Approx(to_eigen(a).determinant()).epsilon(1e-12));
  }
  CHECK_THROWS_AS(inverse(Matrix{{1, 2}, {2, 4}}), SingularityError);
}

TEST_CASE("rank") {
  CHECK(rank(Matrix{{1, 2}, {2, 4}}) == 1);
  CHECK(rank(Matrix::identity(4)) == 4);
  CHECK(rank(Matrix{{0.0, 0.0}}) == 0);
  std::mt19937 rng(5);
  const Matrix u = random_matrix(rng, 5, 2);
  const Matrix v = random_matrix(rng, 2, 5);
  CHECK(rank(u * v) == 2);
}

TEST_CASE("positive definiteness and symmetry") {
  CHECK(is_positive_definite(Matrix{{2, -1}, {-1, 2}}));
  CHECK_FALSE(is_positive_definite(Matrix{{1, 2}, {2, 1}}));
  CHECK_THROWS_AS(is_positive_definite(Matrix{{1, 2}, {0, 1}}), DomainError);
  CHECK(is_symmetric(Matrix{{1, 2}, {2, 1}}));
  CHECK_FALSE(is_symmetric(Matrix{{1, 2}, {2.1, 1}}));
}

TEST_CASE("Sylvester solver agrees with the Kronecker reference") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const std::size_t m = 1 + (trial / 4) % 3;
    // A stable, B on the imaginary axis: spectra are separated.
    const Matrix a = random_matrix(rng, n, n) - 3.0 * Matrix::identity(n);
    Matrix b = m == 1 ? Matrix{{0.0}} : Matrix::identity(m) * 0.0;
    if (m >= 2) b.set_block(0, 0, harmonic(0.5 + trial * 0.1));
    const Matrix c = random_matrix(rng, n, m);
    const Matrix x = solve_sylvester(a, b, c);
    CHECK(max_diff(x, etcor::test::sylvester_oracle(to_eigen(a), to_eigen(b),
                                                    to_eigen(c))) < 1e-10);
    CHECK((x * b - a * x - c).max_abs() < 1e-12);
  }
}

TEST_CASE("Sylvester solver agrees with spectral diagonalisation") {
  // With A = V D V^-1 and B = W L W^-1 diagonalisable, X solves
  // (V^-1 X W)_ij (l_j - d_i) = (V^-1 C W)_ij.
  std::mt19937 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix a = random_matrix(rng, 3, 3) - 2.0 * Matrix::identity(3);
    const Matrix b = harmonic(1.0 + trial);
    const Matrix c = random_matrix(rng, 3, 2);
    Eigen::EigenSolver<Eigen::MatrixXd> ea(to_eigen(a)), eb(to_eigen(b));
    const Eigen::MatrixXcd V = ea.eigenvectors(), W = eb.eigenvectors();
    const Eigen::MatrixXcd Ct = V.inverse() * to_eigen(c).cast<Complex>() * W;
    Eigen::MatrixXcd Xt(3, 2);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 2; ++j) {
        Xt(i, j) = Ct(i, j) / (eb.eigenvalues()(j) - ea.eigenvalues()(i));
      }
    }
    const Eigen::MatrixXcd X = V * Xt * W.inverse();
    CHECK(X.imag().cwiseAbs().maxCoeff() < 1e-10);
    CHECK(max_diff(solve_sylvester(a, b, c), X.real()) < 1e-10);
  }
}

TEST_CASE("Sylvester solver rejects shared eigenvalues") {
  CHECK_THROWS_AS(solve_sylvester(harmonic(1.0), harmonic(1.0),
                                  Matrix::identity(2)),
                  SingularityError);
  CHECK_THROWS_AS(solve_sylvester(Matrix::identity(2), harmonic(1.0),
                                  Matrix::identity(3)),
                  DimensionError);
}

TEST_CASE("Lyapunov solver") {
  std::mt19937 rng(29);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix a = random_matrix(rng, 4, 4) - 3.0 * Matrix::identity(4);
    if (!is_hurwitz(a)) continue;
    const Matrix r = 2.0 * Matrix::identity(4);
    const Matrix p = solve_lyapunov(a, r);
    CHECK((a.transpose() * p + p * a + r).max_abs() < 1e-11);
    CHECK(is_symmetric(p));
    CHECK(is_positive_definite(p));
    const Eigen::MatrixXd ref = etcor::test::sylvester_oracle(
        -to_eigen(a).transpose(), to_eigen(a), -to_eigen(r));
    CHECK(max_diff(p, ref) < 1e-10);
  }
  CHECK_THROWS_AS(solve_lyapunov(harmonic(1.0), Matrix::identity(2)),
                  DomainError);
  CHECK_THROWS_AS(solve_lyapunov(-Matrix::identity(2), Matrix{{1, 2}, {0, 1}}),
                  DomainError);
}

TEST_CASE("minimal polynomial") {
  for (double sigma : {0.5, 1.0, 2.0, 7.0}) {
    const auto p = minimal_polynomial(harmonic(sigma));
    REQUIRE(p.size() == 2);
    CHECK(p[0] == doctest::Approx(sigma * sigma).epsilon(1e-12));
    CHECK(std::abs(p[1]) < 1e-10);
    CHECK(evaluate_monic(p, harmonic(sigma)).max_abs() < 1e-10);
  }
  // Repeated eigenvalue: diag(1, 1, 2) has minimal polynomial
  // (l - 1)(l - 2) = l^2 - 3 l + 2.
  Matrix d{{1, 0, 0}, {0, 1, 0}, {0, 0, 2}};
  std::mt19937 rng(31);
  const Matrix t = random_matrix(rng, 3, 3) + 2.0 * Matrix::identity(3);
  const Matrix similar = t * d * inverse(t);
  const auto p = minimal_polynomial(similar);
  REQUIRE(p.size() == 2);
  CHECK(p[0] == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(p[1] == doctest::Approx(-3.0).epsilon(1e-8));
  // A Jordan block needs the full characteristic polynomial.
  CHECK(minimal_polynomial(Matrix{{0, 1}, {0, 0}}).size() == 2);
  // Block diagonal of two harmonics: (l^2 + 1)(l^2 + 4).
  const Matrix two = Matrix::block_diagonal(
      std::vector<Matrix>{harmonic(1.0), harmonic(2.0)});
  const auto q = minimal_polynomial(two);
  REQUIRE(q.size() == 4);
  CHECK(q[0] == doctest::Approx(4.0));
  CHECK(q[2] == doctest::Approx(5.0));
  CHECK(std::abs(q[1]) < 1e-9);
  CHECK(std::abs(q[3]) < 1e-9);
}

TEST_CASE("semi-simple imaginary spectrum") {
  CHECK(has_semisimple_imaginary_spectrum(harmonic(2.0)));
  CHECK(has_semisimple_imaginary_spectrum(Matrix{{0.0}}));
  CHECK_FALSE(has_semisimple_imaginary_spectrum(Matrix{{0, 1}, {0, 0}}));
  CHECK_FALSE(has_semisimple_imaginary_spectrum(Matrix{{0.1, 2}, {-2, 0.1}}));
  CHECK(is_semisimple(Matrix{{1, 0}, {0, 1}}));
  CHECK_FALSE(is_semisimple(Matrix{{1, 1}, {0, 1}}));
  const Matrix rep = Matrix::block_diagonal(
      std::vector<Matrix>{harmonic(1.0), harmonic(1.0)});
  CHECK(has_semisimple_imaginary_spectrum(rep));
  Matrix jordan = rep;
  jordan(0, 2) = 1.0;
  jordan(1, 3) = 0.0;
  CHECK_FALSE(has_semisimple_imaginary_spectrum(jordan));
}
