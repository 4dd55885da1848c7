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

// CSV writers and plain-text reports. Every CSV file starts with one
// comment line naming its schema and version.

#include <filesystem>
#include <ostream>
#include <string>

#include "etcor/compare.hpp"
#include "etcor/scenario.hpp"
#include "etcor/sim.hpp"

namespace etcor {

/// t, then y_i, e_i, u_i, K_i, h_i for every agent.
void write_trace_csv(const Trace& tr, std::ostream& out);
/// agent, t_k, zeta1, zeta2.
void write_events_csv(const Trace& tr, std::ostream& out);
/// Per-agent counts, gap statistics, tail errors and the ultimate bound.
void write_summary_csv(const Trace& tr, const Scenario& s, std::ostream& out);

/// Writes trace.csv, events.csv and summary.csv into `dir` (created when
/// missing). Throws IoError.
void write_run_files(const Trace& tr, const Scenario& s,
                     const std::filesystem::path& dir);

std::string check_report(const Scenario& s, const AssumptionReport& r);

enum class ReportFormat { kText, kCsv };
std::string regulator_report(const Scenario& s, const Synthesis& syn,
                             ReportFormat format);

std::string summary_text(const Trace& tr, const Scenario& s);

std::string compare_table(const Comparison& c);
/// mode, agent, count, gap statistics, tail error, bound, divergence; the
/// ordering check is written as a final row of mode "check".
void write_compare_csv(const Comparison& c, std::ostream& out);
void write_compare_files(const Comparison& c, const std::filesystem::path& dir);

}  // namespace etcor
