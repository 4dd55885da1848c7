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

// Post-hoc metrics over traces and the Lyapunov-function diagnostic.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "etcor/linalg.hpp"
#include "etcor/scenario.hpp"
#include "etcor/sim.hpp"

namespace etcor {

/// N beta_max / (lambda_min(H^2) (1 - kappa_max)). Throws DomainError for
/// kappa_max >= 1 and when H is not positive definite.
double ultimate_bound(const Topology& t, std::span<const double> kappas,
                      std::span<const double> betas);
double ultimate_bound(const Scenario& s);

struct AgentEventStats {
  std::size_t count = 0;
  std::optional<double> min_gap;
  std::optional<double> avg_gap;  // mean of consecutive inter-event times
  std::optional<double> max_gap;
};

struct EventStats {
  std::vector<AgentEventStats> agents;
  std::size_t total = 0;
  std::optional<double> min_gap;  // over all agents
};

/// Statistics of the events with t <= window_end (all events when absent).
EventStats event_stats(std::span<const TriggerEvent> events,
                       std::size_t agent_count,
                       std::optional<double> window_end = std::nullopt);
EventStats event_stats(const Trace& tr,
                       std::optional<double> window_end = std::nullopt);

/// Per-agent max |e_i| over samples with t >= horizon (1 - tail_fraction).
/// Throws DomainError unless 0 < tail_fraction <= 1.
std::vector<double> tracking_metrics(const Trace& tr, double tail_fraction);

struct AugmentedCoordinates {
  std::vector<double> z_bar;
  double xi_bar = 0.0;
  std::vector<double> eta_bar;
};

/// z_bar = z - Pi v, xi_bar = xi - F v, eta_bar = eta - Upsilon_bar v -
/// Q xi_bar / b for every agent of a flat closed-loop state.
std::vector<AugmentedCoordinates> augmented_transform(
    const Scenario& s, std::span<const double> state,
    std::span<const RegulatorSolution> reg);

struct LyapunovCertificate {
  Matrix P1;  // block diagonal, A1_i^T P + P A1_i = -2I
  Matrix P2;  // block diagonal, M^T P + P M = -2I
  Matrix H;
  Matrix Psi;  // 1 x l
  double mu0 = 0.0;
  double mu1 = 0.0;
  double K0 = 0.0;
  double b_min = 0.0;
  std::vector<double> b;
  Synthesis synthesis;
};

/// Single-point certificate at the scenario's own plant parameters. Throws
/// CertificateError when the synthesis fails or P1, P2, H are not positive
/// definite.
LyapunovCertificate build_certificate(const Scenario& s);

struct LyapunovDiagnostic {
  std::vector<double> t;
  std::vector<double> V;
  /// Norm sum |z_bar|^2 + |eta_bar|^2 + |e_v|^2 at each sample.
  std::vector<double> norm_sum;
  double threshold = 0.0;  // N beta_max / (1 - kappa_max)
  std::size_t intervals_checked = 0;
  std::size_t intervals_skipped = 0;  // an event lies strictly inside
  std::vector<double> violation_times;
  /// Largest |e_v - H xi_bar| over all samples.
  double max_identity_residual = 0.0;
};

/// Evaluates V at every sample and checks the sign of dV/dt between
/// consecutive samples whose end points both satisfy the norm condition.
/// A violation is dV/dt >= rel_tol * max(V_k, V_k+1).
LyapunovDiagnostic lyapunov_diagnostic(const Trace& tr, const Scenario& s,
                                       const LyapunovCertificate& cert,
                                       double rel_tol = 1e-3);

}  // namespace etcor
