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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "etcor/scenario.hpp"

namespace etcor {

/// Offsets of the per-agent blocks in the flat closed-loop state
/// [v | x_1 eta_1 psi_1 K_1 h_1 | x_2 ... ].
struct AgentSlots {
  std::size_t x = 0;
  std::size_t order = 0;
  std::size_t eta = 0;
  std::size_t psi = 0;
  std::size_t gain = 0;
  std::size_t trigger_var = 0;
  std::size_t end = 0;
};

struct StateLayout {
  std::size_t exo_dim = 0;
  std::size_t model_dim = 0;
  std::vector<AgentSlots> agents;
  std::size_t size = 0;

  static StateLayout of(const Scenario& s);
  /// 1-based agent owning a flat index, 0 for the exosystem block.
  std::size_t owner(std::size_t index) const;
};

struct TraceSample {
  double t = 0.0;
  std::vector<double> state;
  std::vector<double> input;   // u_i per agent
  std::vector<double> f;       // trigger function per agent
};

struct TriggerEvent {
  std::size_t agent = 0;  // 1-based
  double t = 0.0;
  double zeta1 = 0.0;
  double zeta2 = 0.0;
};

struct Divergence {
  double t = 0.0;
  std::size_t agent = 0;  // 1-based, 0 = exosystem
  bool numeric = false;   // NaN/Inf rather than the magnitude guard
};

struct TraceMetadata {
  std::uint64_t scenario_hash = 0;
  double dt = 0.0;
  double horizon = 0.0;
  std::size_t decimate = 1;
  std::string mode;
  bool unchecked = false;
};

class Trace {
 public:
  StateLayout layout;
  Matrix output_map;  // F of the exosystem
  std::vector<TraceSample> samples;
  std::vector<TriggerEvent> events;
  std::vector<std::size_t> trigger_counts;  // per agent
  TraceMetadata metadata;
  std::optional<Divergence> divergence;
  /// Last time the integration reached (horizon, or the divergence time).
  double end_time = 0.0;

  std::size_t agent_count() const noexcept { return layout.agents.size(); }
  bool diverged() const noexcept { return divergence.has_value(); }

  // Signal accessors; `agent` is 1-based.
  double y0(const TraceSample& s) const;
  double y(const TraceSample& s, std::size_t agent) const;
  double e(const TraceSample& s, std::size_t agent) const;
  double u(const TraceSample& s, std::size_t agent) const;
  double gain(const TraceSample& s, std::size_t agent) const;
  double trigger_var(const TraceSample& s, std::size_t agent) const;
  double f(const TraceSample& s, std::size_t agent) const;
  std::span<const double> v(const TraceSample& s) const;
  std::span<const double> x(const TraceSample& s, std::size_t agent) const;
  std::span<const double> eta(const TraceSample& s, std::size_t agent) const;
  std::span<const double> psi_hat(const TraceSample& s,
                                  std::size_t agent) const;

  /// Events of one agent in time order.
  std::vector<TriggerEvent> events_of(std::size_t agent) const;
};

struct RunOptions {
  /// Skip the assumption checks. The trace is flagged as unchecked.
  bool unchecked = false;
  /// Overrides the scenario decimation when set.
  std::optional<std::size_t> decimate;
};

/// Runs the closed loop and returns the trace. A tripped divergence guard or
/// a non-finite state ends the run early and is reported in
/// Trace::divergence instead of being thrown. Throws DomainError when the
/// assumption checks fail and the run is not unchecked.
Trace simulate(const Scenario& s, const RunOptions& opts = {});

/// As simulate, but a divergence raises DivergedError and a non-finite state
/// NumericError.
Trace run(const Scenario& s, const RunOptions& opts = {});

/// Same engine with periodic sampling, one period per agent.
Trace run_baseline(const Scenario& s, std::span<const double> periods,
                   const RunOptions& opts = {});

/// Divergence guard on the infinity norm of the closed-loop state.
inline constexpr double kDivergenceLimit = 1e9;

}  // namespace etcor
