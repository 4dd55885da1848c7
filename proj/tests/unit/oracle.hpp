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

// Conversions between etcor::Matrix and Eigen, which serves as the
// independent reference implementation in the tests.

#include <Eigen/Dense>
#include <random>

#include "etcor/linalg.hpp"

namespace etcor::test {

inline Eigen::MatrixXd to_eigen(const Matrix& m) {
  Eigen::MatrixXd e(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) e(r, c) = m(r, c);
  }
  return e;
}

inline Matrix from_eigen(const Eigen::MatrixXd& e) {
  Matrix m(e.rows(), e.cols());
  for (Eigen::Index r = 0; r < e.rows(); ++r) {
    for (Eigen::Index c = 0; c < e.cols(); ++c) m(r, c) = e(r, c);
  }
  return m;
}

inline double max_diff(const Matrix& a, const Eigen::MatrixXd& b) {
  return (to_eigen(a) - b).cwiseAbs().maxCoeff();
}

inline Matrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c,
                            double scale = 1.0) {
  std::uniform_real_distribution<double> d(-scale, scale);
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  }
  return m;
}

// Solves X B - A X = C through the Kronecker form
// (B^T (x) I - I (x) A) vec X = vec C with Eigen's full-pivot LU.
inline Eigen::MatrixXd sylvester_oracle(const Eigen::MatrixXd& a,
                                        const Eigen::MatrixXd& b,
                                        const Eigen::MatrixXd& c) {
  const Eigen::Index n = a.rows(), m = b.rows();
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(n * m, n * m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      k.block(i * n, j * n, n, n) +=
          b(j, i) * Eigen::MatrixXd::Identity(n, n);
    }
    k.block(i * n, i * n, n, n) -= a;
  }
  Eigen::VectorXd vc = Eigen::Map<const Eigen::VectorXd>(c.data(), n * m);
  Eigen::VectorXd vx = k.fullPivLu().solve(vc);
  return Eigen::Map<Eigen::MatrixXd>(vx.data(), n, m);
}

}  // namespace etcor::test
