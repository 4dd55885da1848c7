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

// Dynamic vs static vs periodic triggering on one scenario.

#include <optional>
#include <vector>

#include "etcor/analysis.hpp"
#include "etcor/sim.hpp"

namespace etcor {

struct CompareOptions {
  double window = 4.0;  // event counting window [0, window]
  double tail_fraction = 1.0 / 6.0;
  bool include_periodic = true;
  bool unchecked = false;
  std::optional<std::size_t> decimate;
};

struct ModeRun {
  TriggerMode mode = TriggerMode::kDynamic;
  Trace trace;
  EventStats window_stats;
  std::vector<double> tail_errors;  // empty when the run diverged
};

struct Comparison {
  CompareOptions options;
  double ultimate_bound = 0.0;
  ModeRun dynamic;
  ModeRun static_mode;
  std::optional<ModeRun> periodic;
  /// Periodic sampling periods: the dynamic run's mean inter-event times
  /// over the window.
  std::vector<double> periods;

  bool dynamic_not_more_than_static() const {
    return dynamic.window_stats.total <= static_mode.window_stats.total;
  }
};

/// Runs dynamic and static triggering concurrently, then the periodic
/// baseline. Divergence is recorded in the traces, not thrown.
Comparison compare_modes(const Scenario& s, const CompareOptions& opts = {});

}  // namespace etcor
