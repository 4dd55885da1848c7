/*
 * Copyright 2026 The etcor Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef ETCOR_ETCOR_H_
#define ETCOR_ETCOR_H_

/*
 * C interface of the etcor library: scenario loading, assumption checks,
 * closed-loop simulation of event-triggered cooperative output regulation,
 * and mode comparison.
 *
 * Every function returning etcor_status leaves a description of the last
 * failure in etcor_last_error() (per thread). Objects returned through
 * out-pointers are owned by the caller and released with the matching
 * *_free function; *_free accepts NULL.
 */

#include <stddef.h>

#if defined(_WIN32)
#if defined(ETCOR_BUILDING)
#define ETCOR_API __declspec(dllexport)
#else
#define ETCOR_API __declspec(dllimport)
#endif
#else
#define ETCOR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum etcor_status {
  ETCOR_OK = 0,
  ETCOR_ERR_INVALID_ARGUMENT = 1,
  ETCOR_ERR_DIMENSION = 2,
  ETCOR_ERR_DOMAIN = 3,
  ETCOR_ERR_SINGULAR = 4,
  ETCOR_ERR_CONVERGENCE = 5,
  ETCOR_ERR_SYNTHESIS = 6,
  ETCOR_ERR_PARSE = 7,
  ETCOR_ERR_DIVERGED = 8,
  ETCOR_ERR_NUMERIC = 9,
  ETCOR_ERR_CERTIFICATE = 10,
  ETCOR_ERR_IO = 11,
  ETCOR_ERR_INTERNAL = 12
} etcor_status;

typedef enum etcor_mode {
  ETCOR_MODE_DYNAMIC = 0,
  ETCOR_MODE_STATIC = 1,
  ETCOR_MODE_PERIODIC = 2
} etcor_mode;

typedef struct etcor_scenario etcor_scenario;
typedef struct etcor_trace etcor_trace;
typedef struct etcor_comparison etcor_comparison;
typedef struct etcor_text etcor_text;

ETCOR_API const char* etcor_version(void);
ETCOR_API const char* etcor_status_string(etcor_status status);
/* Message of the last failed call on this thread; "" when none. */
ETCOR_API const char* etcor_last_error(void);

/* Owned text buffers (reports, canonical scenario text). */
ETCOR_API const char* etcor_text_data(const etcor_text* text);
ETCOR_API size_t etcor_text_size(const etcor_text* text);
ETCOR_API void etcor_text_free(etcor_text* text);

/* ---- scenarios ---- */

ETCOR_API etcor_status etcor_scenario_load(const char* path,
                                           etcor_scenario** out);
ETCOR_API etcor_status etcor_scenario_parse(const char* text, size_t size,
                                            etcor_scenario** out);
/* Bundled four-agent example. */
ETCOR_API etcor_status etcor_scenario_example(etcor_scenario** out);
ETCOR_API etcor_status etcor_scenario_clone(const etcor_scenario* s,
                                            etcor_scenario** out);
ETCOR_API void etcor_scenario_free(etcor_scenario* s);

ETCOR_API size_t etcor_scenario_agent_count(const etcor_scenario* s);
ETCOR_API etcor_status etcor_scenario_to_text(const etcor_scenario* s,
                                              etcor_text** out);
ETCOR_API etcor_status etcor_parse_mode(const char* name, etcor_mode* out);
/* Periodic mode needs positive periods, see etcor_scenario_set_periods. */
ETCOR_API etcor_status etcor_scenario_set_mode(etcor_scenario* s,
                                               etcor_mode mode);
/* One period per agent; switches every agent to periodic sampling. */
ETCOR_API etcor_status etcor_scenario_set_periods(etcor_scenario* s,
                                                  const double* periods,
                                                  size_t count);
ETCOR_API etcor_status etcor_scenario_set_dt(etcor_scenario* s, double dt);
ETCOR_API etcor_status etcor_scenario_set_horizon(etcor_scenario* s,
                                                  double horizon);
ETCOR_API etcor_status etcor_scenario_set_decimate(etcor_scenario* s,
                                                   size_t decimate);
ETCOR_API etcor_status etcor_scenario_set_beta(etcor_scenario* s,
                                               double beta);
ETCOR_API etcor_status etcor_scenario_ultimate_bound(const etcor_scenario* s,
                                                     double* out);

/* ---- assumption checks and regulator synthesis ---- */

typedef struct etcor_check_result {
  int exosystem_semisimple;  /* S semi-simple, imaginary-axis spectrum */
  int minimum_phase;         /* every agent */
  int spanning_tree;
  int subgraph_undirected;
  int h_positive_definite;
  int internal_model_valid;  /* dim(M) equals the minimal polynomial degree */
  int regulator_solved;
  double max_residual;       /* NaN when the regulator equations failed */
  int all_passed;
} etcor_check_result;

/* `report` may be NULL. A failed assumption is not an error: the call
 * returns ETCOR_OK with all_passed == 0. */
ETCOR_API etcor_status etcor_check(const etcor_scenario* s,
                                   etcor_check_result* result,
                                   etcor_text** report);
/* csv != 0 selects the CSV form. */
ETCOR_API etcor_status etcor_regulator_report(const etcor_scenario* s,
                                              int csv, etcor_text** out);

/* ---- simulation ---- */

typedef struct etcor_run_options {
  int unchecked;    /* skip the assumption checks */
  size_t decimate;  /* 0 keeps the scenario setting */
} etcor_run_options;

/* On divergence the partial trace is still returned through `out` and the
 * call returns ETCOR_ERR_DIVERGED (or ETCOR_ERR_NUMERIC for NaN/Inf).
 * `options` may be NULL. */
ETCOR_API etcor_status etcor_run(const etcor_scenario* s,
                                 const etcor_run_options* options,
                                 etcor_trace** out);
ETCOR_API void etcor_trace_free(etcor_trace* t);

ETCOR_API size_t etcor_trace_agent_count(const etcor_trace* t);
ETCOR_API size_t etcor_trace_sample_count(const etcor_trace* t);
ETCOR_API size_t etcor_trace_event_count(const etcor_trace* t);
/* Returns 1 and fills time/agent (either may be NULL) when the run
 * diverged; agent 0 denotes the exosystem block. */
ETCOR_API int etcor_trace_diverged(const etcor_trace* t, double* time,
                                   size_t* agent);

typedef enum etcor_signal {
  ETCOR_SIGNAL_Y = 0,
  ETCOR_SIGNAL_E = 1,
  ETCOR_SIGNAL_U = 2,
  ETCOR_SIGNAL_K = 3,
  ETCOR_SIGNAL_H = 4,
  ETCOR_SIGNAL_F = 5
} etcor_signal;

/* Agents are 1-based. */
ETCOR_API etcor_status etcor_trace_time(const etcor_trace* t, size_t sample,
                                        double* out);
ETCOR_API etcor_status etcor_trace_signal(const etcor_trace* t, size_t sample,
                                          size_t agent, etcor_signal signal,
                                          double* out);

typedef struct etcor_event {
  size_t agent;
  double time;
  double zeta1;
  double zeta2;
} etcor_event;

ETCOR_API etcor_status etcor_trace_event(const etcor_trace* t, size_t index,
                                         etcor_event* out);

typedef struct etcor_event_stats {
  size_t count;
  int has_gaps; /* gap fields are valid only with two or more events */
  double min_gap;
  double avg_gap;
  double max_gap;
} etcor_event_stats;

/* Events with t <= window; window <= 0 takes all events. */
ETCOR_API etcor_status etcor_trace_event_stats(const etcor_trace* t,
                                               double window, size_t agent,
                                               etcor_event_stats* out);
/* Per-agent max |e_i| over the last tail_fraction of the horizon; `out`
 * must hold agent_count values. */
ETCOR_API etcor_status etcor_trace_tail_errors(const etcor_trace* t,
                                               double tail_fraction,
                                               double* out, size_t count);
/* trace.csv, events.csv and summary.csv in `dir`. */
ETCOR_API etcor_status etcor_trace_write(const etcor_trace* t,
                                         const etcor_scenario* s,
                                         const char* dir);
ETCOR_API etcor_status etcor_trace_summary(const etcor_trace* t,
                                           const etcor_scenario* s,
                                           etcor_text** out);

/* ---- mode comparison ---- */

typedef struct etcor_compare_options {
  double window;        /* event counting window [0, window]; <= 0 -> 4 s */
  double tail_fraction; /* <= 0 -> 1/6 */
  int include_periodic;
  int unchecked;
  size_t decimate;      /* 0 keeps the scenario setting */
} etcor_compare_options;

ETCOR_API etcor_status etcor_compare(const etcor_scenario* s,
                                     const etcor_compare_options* options,
                                     etcor_comparison** out);
ETCOR_API void etcor_comparison_free(etcor_comparison* c);
ETCOR_API etcor_status etcor_comparison_report(const etcor_comparison* c,
                                               etcor_text** out);
/* compare.csv and compare.txt in `dir`. */
ETCOR_API etcor_status etcor_comparison_write(const etcor_comparison* c,
                                              const char* dir);
/* Window totals; `periodic` is set to 0 when no baseline ran. Any pointer
 * may be NULL. */
ETCOR_API etcor_status etcor_comparison_totals(const etcor_comparison* c,
                                               size_t* dynamic,
                                               size_t* static_mode,
                                               size_t* periodic);
ETCOR_API int etcor_comparison_ordering_holds(const etcor_comparison* c);
/* Returns 1 when the given mode's run diverged, filling time if non-NULL. */
ETCOR_API int etcor_comparison_diverged(const etcor_comparison* c,
                                        etcor_mode mode, double* time);

#ifdef __cplusplus
}
#endif

#endif /* ETCOR_ETCOR_H_ */
