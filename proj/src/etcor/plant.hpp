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

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "etcor/linalg.hpp"

namespace etcor {

/// Single-input single-output agent x' = A x + B u + E v, y = C x, held in
/// normal form with unity relative degree: C = [0 ... 0 1], so the last state
/// is the output and the leading n-1 states are the zero dynamics.
class AgentPlant {
 public:
  AgentPlant() = default;
  /// Throws DimensionError on inconsistent shapes and DomainError when C is
  /// not [0 ... 0 1] or the input gain is not positive. Minimum phase is not
  /// enforced here; see is_minimum_phase().
  AgentPlant(Matrix a, Matrix b, Matrix c, Matrix e);

  std::size_t order() const noexcept { return a_.rows(); }
  std::size_t exo_dim() const noexcept { return e_.cols(); }

  const Matrix& A() const noexcept { return a_; }
  const Matrix& B() const noexcept { return b_; }
  const Matrix& C() const noexcept { return c_; }
  const Matrix& E() const noexcept { return e_; }

  /// Normal-form blocks.
  Matrix A1() const;  // (n-1)x(n-1)
  Matrix A2() const;  // (n-1)x1
  Matrix A3() const;  // 1x(n-1)
  double A4() const;
  Matrix E0() const;  // (n-1)xq
  Matrix E1() const;  // 1xq
  double input_gain() const;  // b_i > 0

  friend bool operator==(const AgentPlant&, const AgentPlant&) = default;

 private:
  Matrix a_, b_, c_, e_;
};

/// A x + B u + E v.
std::vector<double> agent_derivative(const AgentPlant& p,
                                     std::span<const double> x, double u,
                                     std::span<const double> v);

/// Assumption that the zero dynamics A1 are Hurwitz.
bool is_minimum_phase(const AgentPlant& p);

/// Autonomous signal generator v' = S v, y0 = F v.
struct Exosystem {
  double sigma = 0.0;
  Matrix S;
  Matrix F;

  std::size_t dim() const noexcept { return S.rows(); }

  /// S = [[0, sigma], [-sigma, 0]], F = [1, 0].
  static Exosystem harmonic(double sigma);

  friend bool operator==(const Exosystem&, const Exosystem&) = default;
};

std::vector<double> exosystem_derivative(const Exosystem& e,
                                         std::span<const double> v);

/// Eigenvalues of S semi-simple with zero real parts.
bool exosystem_assumption_holds(const Exosystem& e);

/// Parameterised agent families of the bundled example. The parameter vector
/// c = c_nominal + w fills the structural pattern of each family.
enum class AgentFamily { kThirdOrder, kFourthOrder };

std::optional<AgentFamily> parse_agent_family(std::string_view name);
std::string_view agent_family_name(AgentFamily f);

inline constexpr std::array<double, 4> kNominalFamilyParameters{-2.0, -2.0,
                                                                -2.0, 2.0};

/// Builds the family member with c = nominal + w and E = 0 (n x q).
AgentPlant make_family_agent(AgentFamily family,
                             std::span<const double, 4> nominal,
                             std::span<const double, 4> w, std::size_t q);

/// Realised uncertainty of the bundled example: one 4-vector per agent plus
/// the exosystem frequency.
struct UncertaintyVector {
  std::vector<std::array<double, 4>> w;
  double sigma = 0.0;
};

UncertaintyVector example_uncertainty();

}  // namespace etcor
