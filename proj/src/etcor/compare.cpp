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


#include "etcor/compare.hpp"

#include <future>

#include "etcor/error.hpp"

namespace etcor {

namespace {

ModeRun finish(TriggerMode mode, Trace tr, const CompareOptions& opts) {
  ModeRun r;
  r.mode = mode;
  r.window_stats = event_stats(tr, opts.window);
  if (!tr.diverged()) r.tail_errors = tracking_metrics(tr, opts.tail_fraction);
  r.trace = std::move(tr);
  return r;
}

}  // namespace

Comparison compare_modes(const Scenario& s, const CompareOptions& opts) {
  if (!(opts.window > 0.0)) throw DomainError("window must be positive");
  Comparison c;
  c.options = opts;
  c.ultimate_bound = ultimate_bound(s);
  const RunOptions ro{opts.unchecked, opts.decimate};

  auto launch = [&](TriggerMode mode) {
    return std::async(std::launch::async, [&s, ro, mode] {
      Scenario copy = s;
      copy.set_mode(mode);
      return simulate(copy, ro);
    });
  };
  auto dyn = launch(TriggerMode::kDynamic);
  auto sta = launch(TriggerMode::kStatic);
  c.dynamic = finish(TriggerMode::kDynamic, dyn.get(), opts);
  c.static_mode = finish(TriggerMode::kStatic, sta.get(), opts);

  if (opts.include_periodic) {
    for (const auto& a : c.dynamic.window_stats.agents) {
      if (!a.avg_gap) {
        throw DomainError(
            "periodic baseline needs at least two dynamic events per agent "
            "inside the window");
      }
      c.periods.push_back(*a.avg_gap);
    }
    Scenario copy = s;
    copy.set_periods(c.periods);
    c.periodic = finish(TriggerMode::kPeriodic, simulate(copy, ro), opts);
  }
  return c;
}

}  // namespace etcor
