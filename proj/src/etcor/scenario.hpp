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
#include <string>
#include <vector>

#include "etcor/controller.hpp"
#include "etcor/graph.hpp"
#include "etcor/plant.hpp"
#include "etcor/regulator.hpp"

namespace etcor {

struct AgentInitial {
  std::vector<double> x0;
  std::vector<double> eta0;
  std::vector<double> psi_hat0;
  double gain0 = 10.0;
  double trigger_var0 = 1.0;

  friend bool operator==(const AgentInitial&, const AgentInitial&) = default;
};

/// Family and uncertainty vector of a family-generated agent. Scenario files
/// store these instead of the expanded matrices.
struct AgentFamilySpec {
  AgentFamily family = AgentFamily::kThirdOrder;
  std::array<double, 4> nominal = kNominalFamilyParameters;
  std::array<double, 4> w{};

  friend bool operator==(const AgentFamilySpec&,
                         const AgentFamilySpec&) = default;
};

struct AgentSetup {
  AgentPlant plant;
  ControllerParams params;
  AgentInitial init;
  std::optional<AgentFamilySpec> family;

  friend bool operator==(const AgentSetup&, const AgentSetup&) = default;
};

struct IntegratorSettings {
  double dt = 1e-3;
  double horizon = 30.0;
  std::size_t decimate = 10;

  /// Number of fixed steps covering the horizon.
  std::size_t steps() const;

  friend bool operator==(const IntegratorSettings&,
                         const IntegratorSettings&) = default;
};

/// Complete experiment description: plants, exosystem, graph, controller
/// gains, initial conditions and integrator settings.
struct Scenario {
  std::string name;
  Exosystem exosystem;
  std::vector<double> v0;
  Topology topology;
  InternalModelPair internal_model;
  std::vector<AgentSetup> agents;
  IntegratorSettings integrator;

  std::size_t agent_count() const noexcept { return agents.size(); }

  /// Structural validation: dimensions, gain ranges, integrator settings.
  /// Throws DimensionError / DomainError. Assumption checks are separate.
  void validate() const;

  void set_mode(TriggerMode mode);
  void set_beta(double beta);
  /// Switches every agent to periodic sampling with its own period.
  void set_periods(std::span<const double> periods);

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Two third-order and two fourth-order agents, sigma = 2, harmonic
/// exosystem, default topology and the tuned gains of the reference example.
Scenario build_example_scenario();

/// Executable assumption checks plus the regulator synthesis chain.
struct AssumptionReport {
  bool exosystem_semisimple_imaginary = false;
  std::vector<bool> minimum_phase;  // per agent
  TopologyReport topology;
  bool internal_model_matches = false;  // dim(M) == degree of min poly
  std::optional<Synthesis> synthesis;
  std::string synthesis_error;

  bool all_minimum_phase() const;
  bool all() const;
  /// Largest synthesis residual over all agents, NaN without synthesis.
  double max_residual() const;
};

AssumptionReport check_scenario(const Scenario& s);

}  // namespace etcor
