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

#include "etcor/regulator.hpp"

#include <algorithm>
#include <string>

#include "etcor/error.hpp"

namespace etcor {

CompanionPair companion_pair(std::span<const double> coefficients) {
  const std::size_t l = coefficients.size();
  if (l == 0) {
    throw DimensionError("companion_pair: empty coefficient list");
  }
  Matrix phi(l, l);
  for (std::size_t i = 0; i + 1 < l; ++i) phi(i, i + 1) = 1.0;
  for (std::size_t j = 0; j < l; ++j) phi(l - 1, j) = -coefficients[j];
  Matrix gamma(1, l);
  gamma(0, 0) = 1.0;
  return CompanionPair{std::move(phi), std::move(gamma)};
}

InternalModelPair::InternalModelPair(Matrix m, Matrix q)
    : m_(std::move(m)), q_(std::move(q)) {
  if (m_.empty() || !m_.is_square()) {
    throw DimensionError("internal model M must be square");
  }
  if (q_.rows() != m_.rows() || q_.cols() != 1) {
    throw DimensionError("internal model Q must be " +
                         std::to_string(m_.rows()) + "x1");
  }
  if (!is_hurwitz(m_)) {
    throw DomainError("internal model M must be Hurwitz");
  }
  const std::size_t l = m_.rows();
  Matrix ctrb(l, l);
  Matrix col = q_;
  for (std::size_t k = 0; k < l; ++k) {
    ctrb.set_block(0, k, col);
    col = m_ * col;
  }
  if (rank(ctrb) < l) {
    throw DomainError("internal model pair (M, Q) is not controllable");
  }
}

InternalModelPair default_internal_model() {
  return InternalModelPair(Matrix{{0.0, 1.0}, {-25.0, -10.0}},
                           Matrix{{0.0}, {1.0}});
}

InternalModelTransform compute_T_and_psi(const CompanionPair& cp,
                                         const InternalModelPair& im) {
  if (cp.degree() != im.dim()) {
    throw DimensionError("companion degree " + std::to_string(cp.degree()) +
                         " differs from internal model dimension " +
                         std::to_string(im.dim()));
  }
  // T Phi - M T = Q Gamma
  Matrix t = solve_sylvester(im.M(), cp.Phi, im.Q() * cp.Gamma);
  LuDecomposition lu = [&] {
    try {
      return LuDecomposition(t);
    } catch (const SingularityError&) {
      throw SynthesisError("T is singular; (Gamma, Phi) is not observable");
    }
  }();
  if (lu.pivot_ratio() < 1e-12) {
    throw SynthesisError("T is numerically singular");
  }
  Matrix t_inv = lu.solve(Matrix::identity(t.rows()));
  Matrix psi = cp.Gamma * t_inv;
  return InternalModelTransform{std::move(t), std::move(t_inv), std::move(psi)};
}

RegulatorSolution solve_regulator_equations(const AgentPlant& p,
                                            const Exosystem& e,
                                            const CompanionPair& cp,
                                            const InternalModelPair& im) {
  if (p.exo_dim() != e.dim() || e.F.cols() != e.dim()) {
    throw DimensionError("plant E / exosystem F do not match dim(v)");
  }
  const std::size_t l = cp.degree();

  // Pi S - A1 Pi = A2 F + E0
  Matrix pi = solve_sylvester(p.A1(), e.S, p.A2() * e.F + p.E0());

  Matrix u = p.A3() * pi + p.A4() * e.F + p.E1() - e.F * e.S;
  u *= -1.0 / p.input_gain();

  Matrix upsilon(l, e.dim());
  Matrix row = u;
  for (std::size_t k = 0; k < l; ++k) {
    upsilon.set_block(k, 0, row);
    row = row * e.S;
  }

  InternalModelTransform tr = compute_T_and_psi(cp, im);
  Matrix upsilon_bar = tr.T * upsilon;
  return RegulatorSolution{std::move(pi),          std::move(u),
                           std::move(upsilon),     std::move(upsilon_bar),
                           std::move(tr.T),        std::move(tr.Psi)};
}

double RegulatorResiduals::max() const noexcept {
  return std::max({zero_dynamics, output_row, companion, transform,
                   estimate_target});
}

RegulatorResiduals regulator_residuals(const RegulatorSolution& sol,
                                       const AgentPlant& p, const Exosystem& e,
                                       const CompanionPair& cp,
                                       const InternalModelPair& im) {
  RegulatorResiduals r;
  r.zero_dynamics =
      (sol.Pi * e.S - p.A1() * sol.Pi - p.A2() * e.F - p.E0()).frobenius_norm();
  r.output_row = (sol.U - cp.Gamma * sol.Upsilon).frobenius_norm();
  r.companion = (sol.Upsilon * e.S - cp.Phi * sol.Upsilon).frobenius_norm();
  r.transform =
      (sol.T * cp.Phi - im.M() * sol.T - im.Q() * cp.Gamma).frobenius_norm();
  r.estimate_target = (sol.U - sol.Psi * sol.Upsilon_bar).frobenius_norm();
  return r;
}

Synthesis synthesize(std::span<const AgentPlant> plants, const Exosystem& e,
                     const InternalModelPair& im) {
  Synthesis s;
  s.minimal_polynomial = minimal_polynomial(e.S);
  if (s.minimal_polynomial.size() != im.dim()) {
    throw SynthesisError(
        "internal model dimension " + std::to_string(im.dim()) +
        " must equal the minimal-polynomial degree " +
        std::to_string(s.minimal_polynomial.size()));
  }
  s.companion = companion_pair(s.minimal_polynomial);
  s.transform = compute_T_and_psi(s.companion, im);
  for (const auto& p : plants) {
    s.agents.push_back(solve_regulator_equations(p, e, s.companion, im));
    s.residuals.push_back(
        regulator_residuals(s.agents.back(), p, e, s.companion, im));
  }
  return s;
}

double beta_for_accuracy(const Topology& t, double kappa_max, double epsilon) {
  if (!(kappa_max >= 0.0 && kappa_max < 1.0)) {
    throw DomainError("kappa_max must lie in [0, 1)");
  }
  if (!(epsilon > 0.0)) {
    throw DomainError("accuracy epsilon must be positive");
  }
  if (!check_assumptions(t).all()) {
    throw DomainError("topology violates the connectivity assumption");
  }
  const Matrix h = compute_h_matrix(t);
  const double lambda_min = eigenvalues(h * h).min_real();
  return epsilon * lambda_min * (1.0 - kappa_max) /
         static_cast<double>(t.agent_count());
}

}  // namespace etcor
