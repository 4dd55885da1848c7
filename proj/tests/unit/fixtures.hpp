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

#include "etcor/scenario.hpp"

namespace etcor::test {

// One nominal third-order agent fed directly by the leader, sigma = 1.
inline Scenario single_agent_scenario() {
  Scenario s;
  s.name = "single";
  s.exosystem = Exosystem::harmonic(1.0);
  s.v0 = {0.0, 1.0};
  s.topology = Topology(1, {{0, 1}});
  s.internal_model = default_internal_model();
  AgentSetup a;
  const std::array<double, 4> w{};
  a.family = AgentFamilySpec{AgentFamily::kThirdOrder,
                             kNominalFamilyParameters, w};
  a.plant = make_family_agent(AgentFamily::kThirdOrder,
                              kNominalFamilyParameters, w, 2);
  a.params.beta = 0.01;
  a.init.x0 = {1.0, -1.0, 0.5};
  a.init.eta0 = {0.0, 0.0};
  a.init.psi_hat0 = {15.0, 10.0};
  s.agents.push_back(a);
  s.integrator = IntegratorSettings{1e-3, 30.0, 10};
  return s;
}

}  // namespace etcor::test
