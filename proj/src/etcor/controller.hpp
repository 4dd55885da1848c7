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

// Distributed event-triggered adaptive controller. Each agent only sees its
// own relative output error e_v (built from in-neighbour outputs) and its own
// controller state; none of the operations below take plant parameters,
// exosystem parameters, graph spectra or the agent count.

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "etcor/graph.hpp"
#include "etcor/regulator.hpp"

namespace etcor {

enum class TriggerMode { kDynamic, kStatic, kPeriodic };

std::string_view trigger_mode_name(TriggerMode m);
std::optional<TriggerMode> parse_trigger_mode(std::string_view name);

struct ControllerParams {
  double gamma = 10.0;  // estimator adaptation gain
  double delta = 5.0;   // coupling-gain adaptation gain
  double kappa = 0.9;   // in (0, 1)
  double beta = 0.6;    // > 0
  double alpha = 1.0;   // decay of the dynamic trigger variable
  TriggerMode mode = TriggerMode::kDynamic;
  double period = 0.0;  // sampling period, periodic mode only
  /// Components of the estimate that adapt; empty means all of them. Fixed
  /// components keep their initial value.
  std::vector<bool> adapt_mask;
  /// Periodic mode only: drive the adaptation laws with the sampled e_v and
  /// eta instead of the continuous signals.
  bool sampled_adaptation = false;

  /// Throws DomainError when a gain is out of range. `estimate_dim` is the
  /// internal-model dimension l.
  void validate(std::size_t estimate_dim) const;
  bool adapts(std::size_t k) const {
    return adapt_mask.empty() || adapt_mask[k];
  }

  friend bool operator==(const ControllerParams&,
                         const ControllerParams&) = default;
};

struct ControllerState {
  std::vector<double> eta;      // internal model state
  std::vector<double> psi_hat;  // estimate of Psi, 1 x l
  double gain = 0.0;            // adaptive coupling gain K
  double trigger_var = 0.0;     // dynamic trigger variable h

  // Zero-order-hold samples taken at the last trigger.
  double held_u_term = 0.0;   // psi_hat(t_k) . eta(t_k)
  double held_fb_term = 0.0;  // K(t_k) e_v(t_k)
  double held_ev = 0.0;
  std::vector<double> held_eta;
  double last_trigger_time = 0.0;
  std::size_t trigger_count = 0;
};

struct TriggerDecision {
  bool fired = false;
  double f_value = 0.0;
  double zeta1 = 0.0;
  double zeta2 = 0.0;
};

struct ControllerDerivatives {
  std::vector<double> eta_dot;
  std::vector<double> psi_hat_dot;
  double gain_dot = 0.0;
  double trigger_var_dot = 0.0;
};

/// e_vi = sum_j a_ij (y_i - y_j) over in-neighbours, outputs indexed 0..N
/// with outputs[0] = y_0.
double compute_ev(std::span<const double> outputs, const Topology& t,
                  std::size_t i);

double dot(std::span<const double> a, std::span<const double> b);

/// Held control u = psi_hat(t_k) eta(t_k) - K(t_k) e_v(t_k).
inline double control_input(const ControllerState& s) {
  return s.held_u_term - s.held_fb_term;
}

/// f = zeta1^2 + zeta2^2 - kappa e_v^2 - beta.
inline double trigger_function(double zeta1, double zeta2, double e_v,
                               double kappa, double beta) {
  return zeta1 * zeta1 + zeta2 * zeta2 - kappa * e_v * e_v - beta;
}

/// Right-hand side of the controller states. `adapt_ev` / `adapt_eta` are the
/// signals driving the adaptation laws (continuous ones unless sampled
/// adaptation is selected). Output spans must have size l.
void controller_vector_field(std::span<const double> eta,
                             double trigger_var, double u, double adapt_ev,
                             std::span<const double> adapt_eta, double f,
                             const ControllerParams& p,
                             const InternalModelPair& im,
                             std::span<double> eta_dot,
                             std::span<double> psi_hat_dot, double& gain_dot,
                             double& trigger_var_dot);

ControllerDerivatives controller_derivatives(const ControllerState& s,
                                             double u, double e_v, double f,
                                             const ControllerParams& p,
                                             const InternalModelPair& im);

TriggerDecision trigger_evaluate(const ControllerState& s, double current_k_ev,
                                 double current_psi_eta, double e_v,
                                 const ControllerParams& p, double t);

/// Samples the current signals into the hold and counts the event.
ControllerState on_trigger(ControllerState s, double current_k_ev,
                           double current_psi_eta, double e_v, double t);

}  // namespace etcor
