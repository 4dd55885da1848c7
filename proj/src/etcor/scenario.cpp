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

#include "etcor/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "etcor/error.hpp"

namespace etcor {

std::size_t IntegratorSettings::steps() const {
  return static_cast<std::size_t>(std::llround(horizon / dt));
}

void Scenario::validate() const {
  const std::size_t q = exosystem.dim();
  if (exosystem.S.empty() || !exosystem.S.is_square()) {
    throw DimensionError("exosystem S must be square");
  }
  if (exosystem.F.rows() != 1 || exosystem.F.cols() != q) {
    throw DimensionError("exosystem F must be 1x" + std::to_string(q));
  }
  if (v0.size() != q) {
    throw DimensionError("v0 must have " + std::to_string(q) + " entries");
  }
  if (agents.empty()) throw DimensionError("scenario has no agents");
  if (topology.agent_count() != agents.size()) {
    throw DimensionError("topology has " +
                         std::to_string(topology.agent_count()) +
                         " agents, scenario has " +
                         std::to_string(agents.size()));
  }
  const std::size_t l = internal_model.dim();
  if (l == 0) throw DimensionError("internal model is missing");
  for (std::size_t i = 0; i < agents.size(); ++i) {
    const auto& a = agents[i];
    const std::string who = "agent " + std::to_string(i + 1) + ": ";
    if (a.plant.exo_dim() != q) {
      throw DimensionError(who + "E must have " + std::to_string(q) +
                           " columns");
    }
    if (a.init.x0.size() != a.plant.order()) {
      throw DimensionError(who + "x0 must have " +
                           std::to_string(a.plant.order()) + " entries");
    }
    if (a.init.eta0.size() != l || a.init.psi_hat0.size() != l) {
      throw DimensionError(who + "eta0 and psi_hat0 must have " +
                           std::to_string(l) + " entries");
    }
    if (!(a.init.gain0 > 0.0)) throw DomainError(who + "K0 must be positive");
    if (!(a.init.trigger_var0 > 0.0)) {
      throw DomainError(who + "h0 must be positive");
    }
    try {
      a.params.validate(l);
    } catch (const DomainError& e) {
      throw DomainError(who + e.what());
    }
  }
  if (!(integrator.dt > 0.0) || !std::isfinite(integrator.dt)) {
    throw DomainError("dt must be positive");
  }
  if (!(integrator.horizon >= integrator.dt * (1.0 - 1e-12)) ||
      !std::isfinite(integrator.horizon)) {
    throw DomainError("horizon must be at least dt");
  }
  if (integrator.decimate == 0) throw DomainError("decimate must be >= 1");
}

void Scenario::set_mode(TriggerMode mode) {
  for (auto& a : agents) a.params.mode = mode;
}

void Scenario::set_beta(double beta) {
  for (auto& a : agents) a.params.beta = beta;
}

void Scenario::set_periods(std::span<const double> periods) {
  if (periods.size() != agents.size()) {
    throw DimensionError("expected one period per agent");
  }
  for (std::size_t i = 0; i < agents.size(); ++i) {
    if (!(periods[i] > 0.0)) throw DomainError("periods must be positive");
    agents[i].params.mode = TriggerMode::kPeriodic;
    agents[i].params.period = periods[i];
  }
}

Scenario build_example_scenario() {
  const UncertaintyVector unc = example_uncertainty();
  Scenario s;
  s.name = "four-agent heterogeneous example";
  s.exosystem = Exosystem::harmonic(unc.sigma);
  s.v0 = {0.2, 1.0};
  s.topology = default_topology();
  s.internal_model = default_internal_model();

  const std::array<AgentFamily, 4> families{
      AgentFamily::kThirdOrder, AgentFamily::kThirdOrder,
      AgentFamily::kFourthOrder, AgentFamily::kFourthOrder};
  const std::array<std::vector<double>, 4> x0{
      std::vector<double>{-2.0, 1.0, -1.0}, std::vector<double>{1.0, -1.0, -2.0},
      std::vector<double>{0.0, 2.0, -1.0, 2.0},
      std::vector<double>{-2.0, 2.0, 0.0, 1.0}};
  const std::array<std::vector<double>, 4> eta0{
      std::vector<double>{-1.0, -2.0}, std::vector<double>{3.0, 2.0},
      std::vector<double>{4.0, 6.0}, std::vector<double>{-2.0, -4.0}};
  const std::array<double, 4> gamma{80.0, 10.0, 10.0, 10.0};

  for (std::size_t i = 0; i < 4; ++i) {
    AgentSetup a;
    a.family = AgentFamilySpec{families[i], kNominalFamilyParameters, unc.w[i]};
    a.plant = make_family_agent(families[i], a.family->nominal, a.family->w,
                                s.exosystem.dim());
    a.params.gamma = gamma[i];
    a.params.delta = 5.0;
    a.params.kappa = 0.9;
    a.params.beta = 0.6;
    a.params.alpha = 1.0;
    a.params.mode = TriggerMode::kDynamic;
    // Second entry of the estimate is the known 10.
    a.params.adapt_mask = {true, false};
    a.init.x0 = x0[i];
    a.init.eta0 = eta0[i];
    a.init.psi_hat0 = {15.0, 10.0};
    a.init.gain0 = 10.0;
    a.init.trigger_var0 = 1.0;
    s.agents.push_back(std::move(a));
  }
  s.integrator = IntegratorSettings{1e-3, 30.0, 10};
  return s;
}

bool AssumptionReport::all_minimum_phase() const {
  return std::all_of(minimum_phase.begin(), minimum_phase.end(),
                     [](bool b) { return b; });
}

bool AssumptionReport::all() const {
  return exosystem_semisimple_imaginary && all_minimum_phase() &&
         topology.all() && internal_model_matches && synthesis.has_value();
}

double AssumptionReport::max_residual() const {
  if (!synthesis) return std::numeric_limits<double>::quiet_NaN();
  double m = 0.0;
  for (const auto& r : synthesis->residuals) m = std::max(m, r.max());
  return m;
}

AssumptionReport check_scenario(const Scenario& s) {
  s.validate();
  AssumptionReport r;
  r.exosystem_semisimple_imaginary = exosystem_assumption_holds(s.exosystem);
  for (const auto& a : s.agents) {
    r.minimum_phase.push_back(is_minimum_phase(a.plant));
  }
  r.topology = check_assumptions(s.topology);
  r.internal_model_matches =
      minimal_polynomial(s.exosystem.S).size() == s.internal_model.dim();
  std::vector<AgentPlant> plants;
  for (const auto& a : s.agents) plants.push_back(a.plant);
  try {
    r.synthesis = synthesize(plants, s.exosystem, s.internal_model);
  } catch (const Error& e) {
    r.synthesis_error = e.what();
  }
  return r;
}

}  // namespace etcor
