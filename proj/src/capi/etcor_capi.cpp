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


#include "etcor/etcor.h"

#include <cmath>
#include <exception>
#include <new>
#include <string>
#include <utility>

#include "etcor/analysis.hpp"
#include "etcor/compare.hpp"
#include "etcor/error.hpp"
#include "etcor/report.hpp"
#include "etcor/scenario_io.hpp"
#include "etcor/sim.hpp"

struct etcor_scenario {
  etcor::Scenario value;
};

struct etcor_trace {
  etcor::Trace value;
};

struct etcor_comparison {
  etcor::Comparison value;
};

struct etcor_text {
  std::string value;
};

namespace {

thread_local std::string g_last_error;

etcor_status status_of(etcor::ErrorKind k) {
  using etcor::ErrorKind;
  switch (k) {
    case ErrorKind::kDimension:
      return ETCOR_ERR_DIMENSION;
    case ErrorKind::kDomain:
      return ETCOR_ERR_DOMAIN;
    case ErrorKind::kSingularity:
      return ETCOR_ERR_SINGULAR;
    case ErrorKind::kConvergence:
      return ETCOR_ERR_CONVERGENCE;
    case ErrorKind::kSynthesis:
      return ETCOR_ERR_SYNTHESIS;
    case ErrorKind::kParse:
      return ETCOR_ERR_PARSE;
    case ErrorKind::kDiverged:
      return ETCOR_ERR_DIVERGED;
    case ErrorKind::kNumeric:
      return ETCOR_ERR_NUMERIC;
    case ErrorKind::kCertificate:
      return ETCOR_ERR_CERTIFICATE;
    case ErrorKind::kIo:
      return ETCOR_ERR_IO;
  }
  return ETCOR_ERR_INTERNAL;
}

etcor_status fail(etcor_status st, std::string what) {
  g_last_error = std::move(what);
  return st;
}

// Runs `f`, translating exceptions into status codes.
template <typename F>
etcor_status guarded(F&& f) {
  try {
    g_last_error.clear();
    return f();
  } catch (const etcor::Error& e) {
    return fail(status_of(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(ETCOR_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(ETCOR_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(ETCOR_ERR_INTERNAL, "unknown exception");
  }
}

etcor_status null_arg(const char* name) {
  return fail(ETCOR_ERR_INVALID_ARGUMENT, std::string(name) + " is NULL");
}

etcor::TriggerMode to_mode(etcor_mode m) {
  switch (m) {
    case ETCOR_MODE_STATIC:
      return etcor::TriggerMode::kStatic;
    case ETCOR_MODE_PERIODIC:
      return etcor::TriggerMode::kPeriodic;
    case ETCOR_MODE_DYNAMIC:
    default:
      return etcor::TriggerMode::kDynamic;
  }
}

etcor_status give_text(std::string s, etcor_text** out) {
  *out = new etcor_text{std::move(s)};
  return ETCOR_OK;
}

const etcor::ModeRun* mode_run(const etcor::Comparison& c, etcor_mode m) {
  switch (m) {
    case ETCOR_MODE_DYNAMIC:
      return &c.dynamic;
    case ETCOR_MODE_STATIC:
      return &c.static_mode;
    case ETCOR_MODE_PERIODIC:
      return c.periodic ? &*c.periodic : nullptr;
  }
  return nullptr;
}

}  // namespace

extern "C" {

const char* etcor_version(void) { return "1.0.0"; }

const char* etcor_status_string(etcor_status status) {
  switch (status) {
    case ETCOR_OK:
      return "ok";
    case ETCOR_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case ETCOR_ERR_DIMENSION:
      return "dimension mismatch";
    case ETCOR_ERR_DOMAIN:
      return "domain error";
    case ETCOR_ERR_SINGULAR:
      return "singular system";
    case ETCOR_ERR_CONVERGENCE:
      return "no convergence";
    case ETCOR_ERR_SYNTHESIS:
      return "synthesis failed";
    case ETCOR_ERR_PARSE:
      return "parse error";
    case ETCOR_ERR_DIVERGED:
      return "diverged";
    case ETCOR_ERR_NUMERIC:
      return "numeric error";
    case ETCOR_ERR_CERTIFICATE:
      return "certificate error";
    case ETCOR_ERR_IO:
      return "i/o error";
    case ETCOR_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* etcor_last_error(void) { return g_last_error.c_str(); }

const char* etcor_text_data(const etcor_text* text) {
  return text ? text->value.c_str() : "";
}

size_t etcor_text_size(const etcor_text* text) {
  return text ? text->value.size() : 0;
}

void etcor_text_free(etcor_text* text) { delete text; }

etcor_status etcor_scenario_load(const char* path, etcor_scenario** out) {
  if (!path) return null_arg("path");
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = new etcor_scenario{etcor::load_scenario(path)};
    return ETCOR_OK;
  });
}

etcor_status etcor_scenario_parse(const char* text, size_t size,
                                  etcor_scenario** out) {
  if (!text) return null_arg("text");
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = new etcor_scenario{
        etcor::parse_scenario(std::string_view(text, size))};
    return ETCOR_OK;
  });
}

etcor_status etcor_scenario_example(etcor_scenario** out) {
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = new etcor_scenario{etcor::build_example_scenario()};
    return ETCOR_OK;
  });
}

etcor_status etcor_scenario_clone(const etcor_scenario* s,
                                  etcor_scenario** out) {
  if (!s) return null_arg("scenario");
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = new etcor_scenario{s->value};
    return ETCOR_OK;
  });
}

void etcor_scenario_free(etcor_scenario* s) { delete s; }

size_t etcor_scenario_agent_count(const etcor_scenario* s) {
  return s ? s->value.agent_count() : 0;
}

etcor_status etcor_scenario_to_text(const etcor_scenario* s,
                                    etcor_text** out) {
  if (!s) return null_arg("scenario");
  if (!out) return null_arg("out");
  return guarded([&] { return give_text(etcor::to_text(s->value), out); });
}

etcor_status etcor_parse_mode(const char* name, etcor_mode* out) {
  if (!name) return null_arg("name");
  if (!out) return null_arg("out");
  const auto m = etcor::parse_trigger_mode(name);
  if (!m) {
    return fail(ETCOR_ERR_INVALID_ARGUMENT,
                std::string("unknown mode '") + name +
                    "' (expected dynamic, static or periodic)");
  }
  switch (*m) {
    case etcor::TriggerMode::kDynamic:
      *out = ETCOR_MODE_DYNAMIC;
      break;
    case etcor::TriggerMode::kStatic:
      *out = ETCOR_MODE_STATIC;
      break;
    case etcor::TriggerMode::kPeriodic:
      *out = ETCOR_MODE_PERIODIC;
      break;
  }
  g_last_error.clear();
  return ETCOR_OK;
}

etcor_status etcor_scenario_set_mode(etcor_scenario* s, etcor_mode mode) {
  if (!s) return null_arg("scenario");
  return guarded([&] {
    etcor::Scenario copy = s->value;
    copy.set_mode(to_mode(mode));
    copy.validate();
    s->value = std::move(copy);
    return ETCOR_OK;
  });
}

etcor_status etcor_scenario_set_periods(etcor_scenario* s,
                                        const double* periods, size_t count) {
  if (!s) return null_arg("scenario");
  if (!periods) return null_arg("periods");
  return guarded([&] {
    s->value.set_periods(std::span<const double>(periods, count));
    return ETCOR_OK;
  });
}

etcor_status etcor_scenario_set_dt(etcor_scenario* s, double dt) {
  if (!s) return null_arg("scenario");
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    return fail(ETCOR_ERR_DOMAIN, "dt must be positive");
  }
  s->value.integrator.dt = dt;
  g_last_error.clear();
  return ETCOR_OK;
}

etcor_status etcor_scenario_set_horizon(etcor_scenario* s, double horizon) {
  if (!s) return null_arg("scenario");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    return fail(ETCOR_ERR_DOMAIN, "horizon must be positive");
  }
  s->value.integrator.horizon = horizon;
  g_last_error.clear();
  return ETCOR_OK;
}

etcor_status etcor_scenario_set_decimate(etcor_scenario* s, size_t decimate) {
  if (!s) return null_arg("scenario");
  if (decimate == 0) return fail(ETCOR_ERR_DOMAIN, "decimate must be >= 1");
  s->value.integrator.decimate = decimate;
  g_last_error.clear();
  return ETCOR_OK;
}

etcor_status etcor_scenario_set_beta(etcor_scenario* s, double beta) {
  if (!s) return null_arg("scenario");
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    return fail(ETCOR_ERR_DOMAIN, "beta must be positive");
  }
  s->value.set_beta(beta);
  g_last_error.clear();
  return ETCOR_OK;
}

etcor_status etcor_scenario_ultimate_bound(const etcor_scenario* s,
                                           double* out) {
  if (!s) return null_arg("scenario");
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = etcor::ultimate_bound(s->value);
    return ETCOR_OK;
  });
}

etcor_status etcor_check(const etcor_scenario* s, etcor_check_result* result,
                         etcor_text** report) {
  if (!s) return null_arg("scenario");
  if (!result) return null_arg("result");
  return guarded([&] {
    const etcor::AssumptionReport r = etcor::check_scenario(s->value);
    result->exosystem_semisimple = r.exosystem_semisimple_imaginary;
    result->minimum_phase = r.all_minimum_phase();
    result->spanning_tree = r.topology.spanning_tree_rooted_at_0;
    result->subgraph_undirected = r.topology.subgraph_undirected;
    result->h_positive_definite = r.topology.h_positive_definite;
    result->internal_model_valid = r.internal_model_matches;
    result->regulator_solved = r.synthesis.has_value();
    result->max_residual = r.max_residual();
    result->all_passed = r.all();
    if (report) give_text(etcor::check_report(s->value, r), report);
    return ETCOR_OK;
  });
}

etcor_status etcor_regulator_report(const etcor_scenario* s, int csv,
                                    etcor_text** out) {
  if (!s) return null_arg("scenario");
  if (!out) return null_arg("out");
  return guarded([&] {
    const etcor::AssumptionReport r = etcor::check_scenario(s->value);
    if (!r.synthesis) throw etcor::SynthesisError(r.synthesis_error);
    return give_text(
        etcor::regulator_report(
            s->value, *r.synthesis,
            csv ? etcor::ReportFormat::kCsv : etcor::ReportFormat::kText),
        out);
  });
}

etcor_status etcor_run(const etcor_scenario* s,
                       const etcor_run_options* options, etcor_trace** out) {
  if (!s) return null_arg("scenario");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    etcor::RunOptions ro;
    if (options) {
      ro.unchecked = options->unchecked != 0;
      if (options->decimate) ro.decimate = options->decimate;
    }
    auto* t = new etcor_trace{etcor::simulate(s->value, ro)};
    *out = t;
    if (const auto& d = t->value.divergence) {
      if (d->numeric) {
        return fail(ETCOR_ERR_NUMERIC, "non-finite state at t=" +
                                           std::to_string(d->t) + " (agent " +
                                           std::to_string(d->agent) + ")");
      }
      return fail(ETCOR_ERR_DIVERGED,
                  etcor::DivergedError(d->t, d->agent).what());
    }
    return ETCOR_OK;
  });
}

void etcor_trace_free(etcor_trace* t) { delete t; }

size_t etcor_trace_agent_count(const etcor_trace* t) {
  return t ? t->value.agent_count() : 0;
}

size_t etcor_trace_sample_count(const etcor_trace* t) {
  return t ? t->value.samples.size() : 0;
}

size_t etcor_trace_event_count(const etcor_trace* t) {
  return t ? t->value.events.size() : 0;
}

int etcor_trace_diverged(const etcor_trace* t, double* time, size_t* agent) {
  if (!t || !t->value.divergence) return 0;
  if (time) *time = t->value.divergence->t;
  if (agent) *agent = t->value.divergence->agent;
  return 1;
}

etcor_status etcor_trace_time(const etcor_trace* t, size_t sample,
                              double* out) {
  if (!t) return null_arg("trace");
  if (!out) return null_arg("out");
  if (sample >= t->value.samples.size()) {
    return fail(ETCOR_ERR_INVALID_ARGUMENT, "sample index out of range");
  }
  *out = t->value.samples[sample].t;
  g_last_error.clear();
  return ETCOR_OK;
}

etcor_status etcor_trace_signal(const etcor_trace* t, size_t sample,
                                size_t agent, etcor_signal signal,
                                double* out) {
  if (!t) return null_arg("trace");
  if (!out) return null_arg("out");
  const etcor::Trace& tr = t->value;
  if (sample >= tr.samples.size()) {
    return fail(ETCOR_ERR_INVALID_ARGUMENT, "sample index out of range");
  }
  if (agent == 0 || agent > tr.agent_count()) {
    return fail(ETCOR_ERR_INVALID_ARGUMENT, "agent index out of range");
  }
  const auto& smp = tr.samples[sample];
  switch (signal) {
    case ETCOR_SIGNAL_Y:
      *out = tr.y(smp, agent);
      break;
    case ETCOR_SIGNAL_E:
      *out = tr.e(smp, agent);
      break;
    case ETCOR_SIGNAL_U:
      *out = tr.u(smp, agent);
      break;
    case ETCOR_SIGNAL_K:
      *out = tr.gain(smp, agent);
      break;
    case ETCOR_SIGNAL_H:
      *out = tr.trigger_var(smp, agent);
      break;
    case ETCOR_SIGNAL_F:
      *out = tr.f(smp, agent);
      break;
    default:
      return fail(ETCOR_ERR_INVALID_ARGUMENT, "unknown signal");
  }
  g_last_error.clear();
  return ETCOR_OK;
}

etcor_status etcor_trace_event(const etcor_trace* t, size_t index,
                               etcor_event* out) {
  if (!t) return null_arg("trace");
  if (!out) return null_arg("out");
  if (index >= t->value.events.size()) {
    return fail(ETCOR_ERR_INVALID_ARGUMENT, "event index out of range");
  }
  const auto& e = t->value.events[index];
  *out = etcor_event{e.agent, e.t, e.zeta1, e.zeta2};
  g_last_error.clear();
  return ETCOR_OK;
}

etcor_status etcor_trace_event_stats(const etcor_trace* t, double window,
                                     size_t agent, etcor_event_stats* out) {
  if (!t) return null_arg("trace");
  if (!out) return null_arg("out");
  if (agent == 0 || agent > t->value.agent_count()) {
    return fail(ETCOR_ERR_INVALID_ARGUMENT, "agent index out of range");
  }
  return guarded([&] {
    const auto st = etcor::event_stats(
        t->value, window > 0.0 ? std::optional<double>(window) : std::nullopt);
    const auto& a = st.agents[agent - 1];
    out->count = a.count;
    out->has_gaps = a.avg_gap.has_value();
    out->min_gap = a.min_gap.value_or(NAN);
    out->avg_gap = a.avg_gap.value_or(NAN);
    out->max_gap = a.max_gap.value_or(NAN);
    return ETCOR_OK;
  });
}

etcor_status etcor_trace_tail_errors(const etcor_trace* t,
                                     double tail_fraction, double* out,
                                     size_t count) {
  if (!t) return null_arg("trace");
  if (!out) return null_arg("out");
  if (count < t->value.agent_count()) {
    return fail(ETCOR_ERR_INVALID_ARGUMENT, "output buffer too small");
  }
  return guarded([&] {
    const auto e = etcor::tracking_metrics(t->value, tail_fraction);
    std::copy(e.begin(), e.end(), out);
    return ETCOR_OK;
  });
}

etcor_status etcor_trace_write(const etcor_trace* t, const etcor_scenario* s,
                               const char* dir) {
  if (!t) return null_arg("trace");
  if (!s) return null_arg("scenario");
  if (!dir) return null_arg("dir");
  return guarded([&] {
    etcor::write_run_files(t->value, s->value, dir);
    return ETCOR_OK;
  });
}

etcor_status etcor_trace_summary(const etcor_trace* t, const etcor_scenario* s,
                                 etcor_text** out) {
  if (!t) return null_arg("trace");
  if (!s) return null_arg("scenario");
  if (!out) return null_arg("out");
  return guarded(
      [&] { return give_text(etcor::summary_text(t->value, s->value), out); });
}

etcor_status etcor_compare(const etcor_scenario* s,
                           const etcor_compare_options* options,
                           etcor_comparison** out) {
  if (!s) return null_arg("scenario");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    etcor::CompareOptions co;
    if (options) {
      if (options->window > 0.0) co.window = options->window;
      if (options->tail_fraction > 0.0) co.tail_fraction = options->tail_fraction;
      co.include_periodic = options->include_periodic != 0;
      co.unchecked = options->unchecked != 0;
      if (options->decimate) co.decimate = options->decimate;
    }
    *out = new etcor_comparison{etcor::compare_modes(s->value, co)};
    return ETCOR_OK;
  });
}

void etcor_comparison_free(etcor_comparison* c) { delete c; }

etcor_status etcor_comparison_report(const etcor_comparison* c,
                                     etcor_text** out) {
  if (!c) return null_arg("comparison");
  if (!out) return null_arg("out");
  return guarded([&] { return give_text(etcor::compare_table(c->value), out); });
}

etcor_status etcor_comparison_write(const etcor_comparison* c,
                                    const char* dir) {
  if (!c) return null_arg("comparison");
  if (!dir) return null_arg("dir");
  return guarded([&] {
    etcor::write_compare_files(c->value, dir);
    return ETCOR_OK;
  });
}

etcor_status etcor_comparison_totals(const etcor_comparison* c,
                                     size_t* dynamic, size_t* static_mode,
                                     size_t* periodic) {
  if (!c) return null_arg("comparison");
  if (dynamic) *dynamic = c->value.dynamic.window_stats.total;
  if (static_mode) *static_mode = c->value.static_mode.window_stats.total;
  if (periodic) {
    *periodic = c->value.periodic ? c->value.periodic->window_stats.total : 0;
  }
  g_last_error.clear();
  return ETCOR_OK;
}

int etcor_comparison_ordering_holds(const etcor_comparison* c) {
  return c && c->value.dynamic_not_more_than_static();
}

int etcor_comparison_diverged(const etcor_comparison* c, etcor_mode mode,
                              double* time) {
  if (!c) return 0;
  const etcor::ModeRun* r = mode_run(c->value, mode);
  if (!r || !r->trace.divergence) return 0;
  if (time) *time = r->trace.divergence->t;
  return 1;
}

}  // extern "C"
