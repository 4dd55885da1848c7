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


// Command-line front end. Talks to the library only through the C API.
//
// Exit codes: 0 ok, 1 assumption failure, 2 parse or usage error,
// 3 divergence.

#include <cstdio>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "etcor/etcor.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAssumption = 1;
constexpr int kExitParse = 2;
constexpr int kExitDiverged = 3;

struct ScenarioDeleter {
  void operator()(etcor_scenario* s) const { etcor_scenario_free(s); }
};
struct TraceDeleter {
  void operator()(etcor_trace* t) const { etcor_trace_free(t); }
};
struct ComparisonDeleter {
  void operator()(etcor_comparison* c) const { etcor_comparison_free(c); }
};
struct TextDeleter {
  void operator()(etcor_text* t) const { etcor_text_free(t); }
};
using ScenarioPtr = std::unique_ptr<etcor_scenario, ScenarioDeleter>;
using TracePtr = std::unique_ptr<etcor_trace, TraceDeleter>;
using ComparisonPtr = std::unique_ptr<etcor_comparison, ComparisonDeleter>;
using TextPtr = std::unique_ptr<etcor_text, TextDeleter>;

struct Options {
  std::string scenario;
  std::string mode;
  std::optional<double> dt;
  std::optional<double> horizon;
  std::string out = "etcor-out";
  std::optional<std::size_t> decimate;
  bool unchecked = false;
  std::vector<double> periods;
  double window = 4.0;
  bool no_periodic = false;
  std::string format = "text";
};

// Thrown inside a command to leave with a given exit code.
struct Exit {
  int code;
};

void print_error(etcor_status st) {
  const char* msg = etcor_last_error();
  std::fprintf(stderr, "etcor: %s%s%s\n", etcor_status_string(st),
               *msg ? ": " : "", msg);
}

void print_text(const TextPtr& t, std::FILE* f = stdout) {
  std::fwrite(etcor_text_data(t.get()), 1, etcor_text_size(t.get()), f);
}

// Errors while loading or configuring the scenario are input errors.
void require_input(etcor_status st) {
  if (st != ETCOR_OK) {
    print_error(st);
    throw Exit{kExitParse};
  }
}

int exit_code_for(etcor_status st) {
  switch (st) {
    case ETCOR_OK:
      return kExitOk;
    case ETCOR_ERR_DIVERGED:
    case ETCOR_ERR_NUMERIC:
      return kExitDiverged;
    case ETCOR_ERR_PARSE:
    case ETCOR_ERR_IO:
    case ETCOR_ERR_INVALID_ARGUMENT:
      return kExitParse;
    default:
      return kExitAssumption;
  }
}

ScenarioPtr load(const Options& o) {
  etcor_scenario* raw = nullptr;
  require_input(etcor_scenario_load(o.scenario.c_str(), &raw));
  ScenarioPtr s(raw);
  if (!o.periods.empty()) {
    require_input(etcor_scenario_set_periods(s.get(), o.periods.data(),
                                             o.periods.size()));
  }
  if (!o.mode.empty()) {
    etcor_mode m;
    require_input(etcor_parse_mode(o.mode.c_str(), &m));
    require_input(etcor_scenario_set_mode(s.get(), m));
  }
  if (o.dt) require_input(etcor_scenario_set_dt(s.get(), *o.dt));
  if (o.horizon) require_input(etcor_scenario_set_horizon(s.get(), *o.horizon));
  if (o.decimate) {
    require_input(etcor_scenario_set_decimate(s.get(), *o.decimate));
  }
  return s;
}

// Prints the check report to stderr and exits 1 unless all assumptions hold.
void require_assumptions(const ScenarioPtr& s) {
  etcor_check_result r{};
  etcor_text* raw = nullptr;
  const etcor_status st = etcor_check(s.get(), &r, &raw);
  TextPtr report(raw);
  if (st != ETCOR_OK) {
    print_error(st);
    throw Exit{exit_code_for(st)};
  }
  if (!r.all_passed) {
    print_text(report, stderr);
    std::fprintf(stderr, "etcor: assumption check failed (use --unchecked to "
                         "run anyway)\n");
    throw Exit{kExitAssumption};
  }
}

int cmd_check(const Options& o) {
  ScenarioPtr s = load(o);
  etcor_check_result r{};
  etcor_text* raw = nullptr;
  const etcor_status st = etcor_check(s.get(), &r, &raw);
  TextPtr report(raw);
  if (st != ETCOR_OK) {
    print_error(st);
    return exit_code_for(st);
  }
  print_text(report);
  return r.all_passed ? kExitOk : kExitAssumption;
}

int cmd_run(const Options& o) {
  ScenarioPtr s = load(o);
  if (!o.unchecked) require_assumptions(s);
  etcor_run_options ro{o.unchecked ? 1 : 0, 0};
  etcor_trace* raw = nullptr;
  const etcor_status st = etcor_run(s.get(), &ro, &raw);
  const std::string run_error = etcor_last_error();
  TracePtr tr(raw);
  if (!tr) {
    print_error(st);
    return exit_code_for(st);
  }
  const etcor_status wst = etcor_trace_write(tr.get(), s.get(), o.out.c_str());
  if (wst != ETCOR_OK) {
    print_error(wst);
    return kExitParse;
  }
  etcor_text* sum = nullptr;
  if (etcor_trace_summary(tr.get(), s.get(), &sum) == ETCOR_OK) {
    print_text(TextPtr(sum));
  }
  std::printf("wrote %s/trace.csv, events.csv, summary.csv\n", o.out.c_str());
  if (st != ETCOR_OK) {
    std::fprintf(stderr, "etcor: %s: %s\n", etcor_status_string(st),
                 run_error.c_str());
    return exit_code_for(st);
  }
  return kExitOk;
}

int cmd_compare(const Options& o) {
  ScenarioPtr s = load(o);
  if (!o.unchecked) require_assumptions(s);
  etcor_compare_options co{};
  co.window = o.window;
  co.tail_fraction = 0.0;
  co.include_periodic = o.no_periodic ? 0 : 1;
  co.unchecked = o.unchecked ? 1 : 0;
  etcor_comparison* raw = nullptr;
  const etcor_status st = etcor_compare(s.get(), &co, &raw);
  ComparisonPtr c(raw);
  if (st != ETCOR_OK) {
    print_error(st);
    return st == ETCOR_ERR_DOMAIN ? kExitParse : exit_code_for(st);
  }
  etcor_text* rep = nullptr;
  if (etcor_comparison_report(c.get(), &rep) == ETCOR_OK) {
    print_text(TextPtr(rep));
  }
  const etcor_status wst = etcor_comparison_write(c.get(), o.out.c_str());
  if (wst != ETCOR_OK) {
    print_error(wst);
    return kExitParse;
  }
  std::printf("wrote %s/compare.csv, compare.txt\n", o.out.c_str());
  // Divergence of the periodic baseline is an expected outcome; divergence
  // of the event-triggered runs is not.
  double t = 0.0;
  for (etcor_mode m : {ETCOR_MODE_DYNAMIC, ETCOR_MODE_STATIC}) {
    if (etcor_comparison_diverged(c.get(), m, &t)) {
      std::fprintf(stderr, "etcor: %s run diverged at t=%g\n",
                   m == ETCOR_MODE_DYNAMIC ? "dynamic" : "static", t);
      return kExitDiverged;
    }
  }
  return kExitOk;
}

int cmd_regulator(const Options& o) {
  ScenarioPtr s = load(o);
  const bool csv = o.format == "csv";
  etcor_text* raw = nullptr;
  const etcor_status st = etcor_regulator_report(s.get(), csv ? 1 : 0, &raw);
  TextPtr rep(raw);
  if (st != ETCOR_OK) {
    print_error(st);
    return exit_code_for(st);
  }
  print_text(rep);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Event-triggered cooperative output regulation toolkit"};
  app.set_version_flag("--version", std::string(etcor_version()));
  app.require_subcommand(1);
  Options o;

  auto add_scenario = [&](CLI::App* cmd) {
    cmd->add_option("--scenario", o.scenario, "Scenario file")
        ->required()
        ->check(CLI::ExistingFile);
  };
  auto add_overrides = [&](CLI::App* cmd) {
    cmd->add_option("--mode", o.mode, "dynamic, static or periodic");
    cmd->add_option("--dt", o.dt, "Integration step [s]");
    cmd->add_option("--horizon", o.horizon, "Simulated time [s]");
    cmd->add_option("--decimate", o.decimate, "Record every k-th step");
    cmd->add_option("--periods", o.periods,
                    "Per-agent sampling periods for periodic mode [s]")
        ->delimiter(',');
    cmd->add_option("--out", o.out, "Output directory")
        ->capture_default_str();
    cmd->add_flag("--unchecked", o.unchecked,
                  "Run even when assumption checks fail");
  };

  CLI::App* check = app.add_subcommand("check", "Check assumptions");
  add_scenario(check);
  CLI::App* run = app.add_subcommand("run", "Simulate one scenario");
  add_scenario(run);
  add_overrides(run);
  CLI::App* compare =
      app.add_subcommand("compare", "Dynamic vs static vs periodic triggering");
  add_scenario(compare);
  add_overrides(compare);
  compare->add_option("--window", o.window, "Event counting window [s]")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  compare->add_flag("--no-periodic", o.no_periodic,
                    "Skip the periodic baseline");
  CLI::App* regulator =
      app.add_subcommand("regulator", "Print the regulator synthesis");
  add_scenario(regulator);
  regulator->add_option("--format", o.format, "text or csv")
      ->check(CLI::IsMember({"text", "csv"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  try {
    if (check->parsed()) return cmd_check(o);
    if (run->parsed()) return cmd_run(o);
    if (compare->parsed()) return cmd_compare(o);
    if (regulator->parsed()) return cmd_regulator(o);
  } catch (const Exit& e) {
    return e.code;
  }
  return kExitParse;
}
