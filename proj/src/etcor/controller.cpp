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

#include "etcor/controller.hpp"

#include <cmath>
#include <string>

#include "etcor/error.hpp"

namespace etcor {

std::string_view trigger_mode_name(TriggerMode m) {
  switch (m) {
    case TriggerMode::kDynamic:
      return "dynamic";
    case TriggerMode::kStatic:
      return "static";
    case TriggerMode::kPeriodic:
      return "periodic";
  }
  return "unknown";
}

std::optional<TriggerMode> parse_trigger_mode(std::string_view name) {
  if (name == "dynamic") return TriggerMode::kDynamic;
  if (name == "static") return TriggerMode::kStatic;
  if (name == "periodic") return TriggerMode::kPeriodic;
  return std::nullopt;
}

void ControllerParams::validate(std::size_t estimate_dim) const {
  if (!(gamma > 0.0)) throw DomainError("gamma must be positive");
  if (!(delta > 0.0)) throw DomainError("delta must be positive");
  if (!(kappa > 0.0 && kappa < 1.0)) {
    throw DomainError("kappa must lie in (0, 1)");
  }
  if (!(beta > 0.0)) throw DomainError("beta must be positive");
  if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
  if (mode == TriggerMode::kPeriodic && !(period > 0.0)) {
    throw DomainError("periodic mode requires a positive period");
  }
  if (!adapt_mask.empty() && adapt_mask.size() != estimate_dim) {
    throw DimensionError("adapt mask has " + std::to_string(adapt_mask.size()) +
                         " entries, expected " + std::to_string(estimate_dim));
  }
}

double compute_ev(std::span<const double> outputs, const Topology& t,
                  std::size_t i) {
  if (outputs.size() != t.agent_count() + 1) {
    throw DimensionError("compute_ev: expected outputs y_0..y_N");
  }
  if (i == 0 || i > t.agent_count()) {
    throw DimensionError("compute_ev: agent index out of range");
  }
  double ev = 0.0;
  for (std::size_t j : t.in_neighbors(i)) ev += outputs[i] - outputs[j];
  return ev;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

void controller_vector_field(std::span<const double> eta,
                             double trigger_var, double u, double adapt_ev,
                             std::span<const double> adapt_eta, double f,
                             const ControllerParams& p,
                             const InternalModelPair& im,
                             std::span<double> eta_dot,
                             std::span<double> psi_hat_dot, double& gain_dot,
                             double& trigger_var_dot) {
  const Matrix& m = im.M();
  const Matrix& q = im.Q();
  const std::size_t l = eta.size();
  for (std::size_t r = 0; r < l; ++r) {
    double s = q(r, 0) * u;
    for (std::size_t c = 0; c < l; ++c) s += m(r, c) * eta[c];
    eta_dot[r] = s;
    psi_hat_dot[r] = p.adapts(r) ? -p.gamma * adapt_ev * adapt_eta[r] : 0.0;
  }
  gain_dot = p.delta * adapt_ev * adapt_ev;
  trigger_var_dot = -p.alpha * trigger_var - f;
}

ControllerDerivatives controller_derivatives(const ControllerState& s,
                                             double u, double e_v, double f,
                                             const ControllerParams& p,
                                             const InternalModelPair& im) {
  const std::size_t l = s.eta.size();
  if (s.psi_hat.size() != l || im.dim() != l) {
    throw DimensionError("controller state does not match the internal model");
  }
  ControllerDerivatives d;
  d.eta_dot.resize(l);
  d.psi_hat_dot.resize(l);
  controller_vector_field(s.eta, s.trigger_var, u, e_v, s.eta, f, p, im,
                          d.eta_dot, d.psi_hat_dot, d.gain_dot,
                          d.trigger_var_dot);
  return d;
}

TriggerDecision trigger_evaluate(const ControllerState& s, double current_k_ev,
                                 double current_psi_eta, double e_v,
                                 const ControllerParams& p, double t) {
  TriggerDecision d;
  d.zeta1 = s.held_fb_term - current_k_ev;
  d.zeta2 = s.held_u_term - current_psi_eta;
  d.f_value = trigger_function(d.zeta1, d.zeta2, e_v, p.kappa, p.beta);
  switch (p.mode) {
    case TriggerMode::kDynamic:
      d.fired = d.f_value >= s.trigger_var;
      break;
    case TriggerMode::kStatic:
      d.fired = d.f_value >= 0.0;
      break;
    case TriggerMode::kPeriodic:
      d.fired = (t - s.last_trigger_time) >= p.period * (1.0 - 1e-9);
      break;
  }
  return d;
}

ControllerState on_trigger(ControllerState s, double current_k_ev,
                           double current_psi_eta, double e_v, double t) {
  s.held_fb_term = current_k_ev;
  s.held_u_term = current_psi_eta;
  s.held_ev = e_v;
  s.held_eta = s.eta;
  s.last_trigger_time = t;
  ++s.trigger_count;
  return s;
}

}  // namespace etcor
