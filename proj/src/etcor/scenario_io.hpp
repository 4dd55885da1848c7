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

// Scenario files: a small TOML-style format with [sections], [[agent]]
// tables, numbers, strings, booleans and nested arrays. See
// docs/scenario_format.md for the schema.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "etcor/scenario.hpp"

namespace etcor {

inline constexpr std::string_view kScenarioSchema = "etcor-scenario/1";

/// Throws ParseError (with the offending line where known) for malformed
/// input, unknown keys and structurally invalid scenarios.
Scenario parse_scenario(std::string_view text);

/// Throws IoError when the file cannot be read, otherwise as parse_scenario.
Scenario load_scenario(const std::filesystem::path& path);

/// Canonical text form; parse_scenario(to_text(s)) == s.
std::string to_text(const Scenario& s);

/// FNV-1a of the canonical text.
std::uint64_t scenario_hash(const Scenario& s);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double x);

}  // namespace etcor
