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

// Internal-model synthesis. Everything here is computed from the TRUE plant
// and exosystem parameters and is used only for verification (assumption
// checks, augmented coordinates, Lyapunov diagnostics). The controller never
// reads these quantities.

#include <cstddef>
#include <span>
#include <vector>

#include "etcor/graph.hpp"
#include "etcor/linalg.hpp"
#include "etcor/plant.hpp"

namespace etcor {

/// Companion matrix Phi of a monic polynomial and the output row
/// Gamma = [1 0 ... 0].
struct CompanionPair {
  Matrix Phi;
  Matrix Gamma;

  std::size_t degree() const noexcept { return Phi.rows(); }
};

/// `coefficients` are [a_0, ..., a_{l-1}] of lambda^l + ... + a_0.
CompanionPair companion_pair(std::span<const double> coefficients);

/// Controllable pair (M, Q) with M Hurwitz, driving the internal model
/// eta' = M eta + Q u.
class InternalModelPair {
 public:
  InternalModelPair() = default;
  /// Throws DimensionError on shape mismatch and DomainError when M is not
  /// Hurwitz or (M, Q) is not controllable.
  InternalModelPair(Matrix m, Matrix q);

  const Matrix& M() const noexcept { return m_; }
  const Matrix& Q() const noexcept { return q_; }
  std::size_t dim() const noexcept { return m_.rows(); }

  friend bool operator==(const InternalModelPair&,
                         const InternalModelPair&) = default;

 private:
  Matrix m_, q_;
};

/// M = [[0, 1], [-25, -10]], Q = [0, 1]^T.
InternalModelPair default_internal_model();

/// Solution T of T Phi - M T = Q Gamma, its inverse, and Psi = Gamma T^-1.
struct InternalModelTransform {
  Matrix T;
  Matrix T_inv;
  Matrix Psi;  // 1 x l
};

InternalModelTransform compute_T_and_psi(const CompanionPair& cp,
                                         const InternalModelPair& im);

struct RegulatorSolution {
  Matrix Pi;           // (n-1) x q
  Matrix U;            // 1 x q
  Matrix Upsilon;      // l x q, rows U S^k
  Matrix Upsilon_bar;  // l x q, T Upsilon
  Matrix T;            // l x l
  Matrix Psi;          // 1 x l
};

RegulatorSolution solve_regulator_equations(const AgentPlant& p,
                                            const Exosystem& e,
                                            const CompanionPair& cp,
                                            const InternalModelPair& im);

/// Frobenius-norm residuals of the synthesis chain for one agent.
struct RegulatorResiduals {
  double zero_dynamics = 0.0;    // Pi S - A1 Pi - A2 F - E0
  double output_row = 0.0;       // U - Gamma Upsilon
  double companion = 0.0;        // Upsilon S - Phi Upsilon
  double transform = 0.0;        // T Phi - M T - Q Gamma
  double estimate_target = 0.0;  // U - Psi Upsilon_bar

  double max() const noexcept;
};

RegulatorResiduals regulator_residuals(const RegulatorSolution& sol,
                                       const AgentPlant& p, const Exosystem& e,
                                       const CompanionPair& cp,
                                       const InternalModelPair& im);

/// Full chain for a group of agents sharing one exosystem and internal model.
struct Synthesis {
  std::vector<double> minimal_polynomial;
  CompanionPair companion;
  InternalModelTransform transform;
  std::vector<RegulatorSolution> agents;
  std::vector<RegulatorResiduals> residuals;
};

/// Throws SynthesisError when the internal-model dimension differs from the
/// degree of the minimal polynomial of S.
Synthesis synthesize(std::span<const AgentPlant> plants, const Exosystem& e,
                     const InternalModelPair& im);

/// Largest beta_max whose tracking-error ultimate bound stays within epsilon:
/// epsilon * lambda_min(H^2) * (1 - kappa_max) / N.
double beta_for_accuracy(const Topology& t, double kappa_max, double epsilon);

}  // namespace etcor
