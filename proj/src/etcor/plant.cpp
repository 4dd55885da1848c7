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

#include "etcor/plant.hpp"

#include <string>

#include "etcor/error.hpp"

namespace etcor {

AgentPlant::AgentPlant(Matrix a, Matrix b, Matrix c, Matrix e)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), e_(std::move(e)) {
  const std::size_t n = a_.rows();
  if (a_.empty() || !a_.is_square()) {
    throw DimensionError("agent A must be square");
  }
  if (n < 2) {
    throw DimensionError("agent order must be at least 2");
  }
  if (b_.rows() != n || b_.cols() != 1) {
    throw DimensionError("agent B must be " + std::to_string(n) + "x1");
  }
  if (c_.rows() != 1 || c_.cols() != n) {
    throw DimensionError("agent C must be 1x" + std::to_string(n));
  }
  if (e_.rows() != n || e_.empty()) {
    throw DimensionError("agent E must have " + std::to_string(n) + " rows");
  }
  for (std::size_t j = 0; j + 1 < n; ++j) {
    if (c_(0, j) != 0.0) {
      throw DomainError("agent C must be [0 ... 0 1] (normal form)");
    }
  }
  if (c_(0, n - 1) != 1.0) {
    throw DomainError("agent C must be [0 ... 0 1] (normal form)");
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (b_(i, 0) != 0.0) {
      throw DomainError("agent B must only act on the output state");
    }
  }
  if (!(b_(n - 1, 0) > 0.0)) {
    throw DomainError("agent input gain b_i must be positive");
  }
}

Matrix AgentPlant::A1() const {
  return a_.block(0, 0, order() - 1, order() - 1);
}
Matrix AgentPlant::A2() const { return a_.block(0, order() - 1, order() - 1, 1); }
Matrix AgentPlant::A3() const { return a_.block(order() - 1, 0, 1, order() - 1); }
double AgentPlant::A4() const { return a_(order() - 1, order() - 1); }
Matrix AgentPlant::E0() const { return e_.block(0, 0, order() - 1, exo_dim()); }
Matrix AgentPlant::E1() const { return e_.block(order() - 1, 0, 1, exo_dim()); }
double AgentPlant::input_gain() const { return b_(order() - 1, 0); }

std::vector<double> agent_derivative(const AgentPlant& p,
                                     std::span<const double> x, double u,
                                     std::span<const double> v) {
  if (x.size() != p.order() || v.size() != p.exo_dim()) {
    throw DimensionError("agent_derivative: state or exogenous signal size");
  }
  std::vector<double> dx = multiply(p.A(), x);
  const std::vector<double> ev = multiply(p.E(), v);
  for (std::size_t i = 0; i < dx.size(); ++i) {
    dx[i] += p.B()(i, 0) * u + ev[i];
  }
  return dx;
}

bool is_minimum_phase(const AgentPlant& p) { return is_hurwitz(p.A1()); }

Exosystem Exosystem::harmonic(double sigma) {
  return Exosystem{sigma, Matrix{{0.0, sigma}, {-sigma, 0.0}},
                   Matrix{{1.0, 0.0}}};
}

std::vector<double> exosystem_derivative(const Exosystem& e,
                                         std::span<const double> v) {
  if (v.size() != e.dim()) {
    throw DimensionError("exosystem_derivative: state size");
  }
  return multiply(e.S, v);
}

bool exosystem_assumption_holds(const Exosystem& e) {
  return has_semisimple_imaginary_spectrum(e.S);
}

std::optional<AgentFamily> parse_agent_family(std::string_view name) {
  if (name == "third_order") return AgentFamily::kThirdOrder;
  if (name == "fourth_order") return AgentFamily::kFourthOrder;
  return std::nullopt;
}

std::string_view agent_family_name(AgentFamily f) {
  return f == AgentFamily::kThirdOrder ? "third_order" : "fourth_order";
}

AgentPlant make_family_agent(AgentFamily family,
                             std::span<const double, 4> nominal,
                             std::span<const double, 4> w, std::size_t q) {
  std::array<double, 4> c{};
  for (std::size_t k = 0; k < 4; ++k) c[k] = nominal[k] + w[k];
  if (family == AgentFamily::kThirdOrder) {
    return AgentPlant(Matrix{{c[0], 1.0, 0.0}, {0.0, -1.0, 1.0}, {1.0, c[1], c[2]}},
                      Matrix{{0.0}, {0.0}, {c[3]}}, Matrix{{0.0, 0.0, 1.0}},
                      Matrix(3, q));
  }
  return AgentPlant(Matrix{{c[0], 0.0, 0.0, 1.0},
                           {0.0, -1.0, 0.0, 1.0},
                           {0.0, 0.0, -2.0, 1.0},
                           {1.0, 1.0, c[1], c[2]}},
                    Matrix{{0.0}, {0.0}, {0.0}, {c[3]}},
                    Matrix{{0.0, 0.0, 0.0, 1.0}}, Matrix(4, q));
}

UncertaintyVector example_uncertainty() {
  return UncertaintyVector{{{0.5, 1.0, -1.0, 0.1},
                            {-0.5, 0.5, -1.5, 1.5},
                            {0.2, 0.5, -0.5, 1.0},
                            {0.1, 1.0, -1.0, 1.5}},
                           2.0};
}

}  // namespace etcor
