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


#include "etcor/report.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "etcor/analysis.hpp"
#include "etcor/error.hpp"
#include "etcor/scenario_io.hpp"

namespace etcor {

namespace {

std::string hex64(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

std::string opt(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

std::string fixed(double v, const char* fmt = "%.6g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

std::string header_fields(const Trace& tr) {
  return "scenario=" + hex64(tr.metadata.scenario_hash) +
         " mode=" + tr.metadata.mode + " dt=" + format_double(tr.metadata.dt) +
         " horizon=" + format_double(tr.metadata.horizon) +
         " decimate=" + std::to_string(tr.metadata.decimate) +
         (tr.metadata.unchecked ? " unchecked" : "");
}

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + p.string());
  return out;
}

void make_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
}

const char* pass(bool b) { return b ? "PASS" : "FAIL"; }

}  // namespace

void write_trace_csv(const Trace& tr, std::ostream& out) {
  out << "# etcor-trace/1 " << header_fields(tr) << "\n";
  out << "t";
  for (std::size_t i = 1; i <= tr.agent_count(); ++i) {
    out << ",y_" << i << ",e_" << i << ",u_" << i << ",K_" << i << ",h_" << i;
  }
  out << "\n";
  for (const auto& s : tr.samples) {
    out << format_double(s.t);
    for (std::size_t i = 1; i <= tr.agent_count(); ++i) {
      out << ',' << format_double(tr.y(s, i)) << ','
          << format_double(tr.e(s, i)) << ',' << format_double(tr.u(s, i))
          << ',' << format_double(tr.gain(s, i)) << ','
          << format_double(tr.trigger_var(s, i));
    }
    out << "\n";
  }
}

void write_events_csv(const Trace& tr, std::ostream& out) {
  out << "# etcor-events/1 " << header_fields(tr) << "\n";
  out << "agent,t_k,zeta1,zeta2\n";
  for (const auto& e : tr.events) {
    out << e.agent << ',' << format_double(e.t) << ','
        << format_double(e.zeta1) << ',' << format_double(e.zeta2) << "\n";
  }
}

void write_summary_csv(const Trace& tr, const Scenario& s, std::ostream& out) {
  out << "# etcor-summary/1 " << header_fields(tr);
  if (tr.divergence) {
    out << " diverged_at=" << format_double(tr.divergence->t)
        << " diverged_agent=" << tr.divergence->agent;
  }
  out << "\n";
  out << "agent,count,min_gap,avg_gap,max_gap,tail_max_abs_e,ultimate_bound,"
         "within_bound\n";
  const EventStats st = event_stats(tr);
  const double bound = ultimate_bound(s);
  std::vector<double> tail;
  if (!tr.diverged()) tail = tracking_metrics(tr, 1.0 / 6.0);
  for (std::size_t i = 0; i < tr.agent_count(); ++i) {
    const auto& a = st.agents[i];
    out << (i + 1) << ',' << a.count << ',' << opt(a.min_gap) << ','
        << opt(a.avg_gap) << ',' << opt(a.max_gap) << ',';
    if (!tail.empty()) {
      out << format_double(tail[i]) << ',' << format_double(bound) << ','
          << (tail[i] <= bound ? "true" : "false");
    } else {
      out << ',' << format_double(bound) << ',';
    }
    out << "\n";
  }
  out << "total," << st.total << ',' << opt(st.min_gap) << ",,,,"
      << format_double(bound) << ",\n";
}

void write_run_files(const Trace& tr, const Scenario& s,
                     const std::filesystem::path& dir) {
  make_dir(dir);
  {
    auto out = open_out(dir / "trace.csv");
    write_trace_csv(tr, out);
  }
  {
    auto out = open_out(dir / "events.csv");
    write_events_csv(tr, out);
  }
  {
    auto out = open_out(dir / "summary.csv");
    write_summary_csv(tr, s, out);
  }
}

std::string check_report(const Scenario& s, const AssumptionReport& r) {
  std::ostringstream o;
  o << "scenario: " << (s.name.empty() ? "(unnamed)" : s.name) << "\n";
  o << pass(r.exosystem_semisimple_imaginary)
    << "  exosystem: eigenvalues of S semi-simple on the imaginary axis\n";
  for (std::size_t i = 0; i < r.minimum_phase.size(); ++i) {
    o << pass(r.minimum_phase[i]) << "  agent " << (i + 1)
      << ": minimum phase (A1 Hurwitz)\n";
  }
  o << pass(r.topology.spanning_tree_rooted_at_0)
    << "  topology: spanning tree rooted at the leader\n";
  o << pass(r.topology.subgraph_undirected)
    << "  topology: follower subgraph undirected\n";
  o << pass(r.topology.h_positive_definite)
    << "  topology: H positive definite\n";
  o << pass(r.internal_model_matches)
    << "  internal model: dimension equals degree of the minimal polynomial\n";
  o << pass(r.synthesis.has_value()) << "  regulator equations solvable";
  if (!r.synthesis) o << " (" << r.synthesis_error << ")";
  o << "\n";
  if (r.synthesis) {
    for (std::size_t i = 0; i < r.synthesis->residuals.size(); ++i) {
      const auto& res = r.synthesis->residuals[i];
      o << "      agent " << (i + 1)
        << " residuals: zero_dynamics=" << fixed(res.zero_dynamics, "%.3e")
        << " output=" << fixed(res.output_row, "%.3e")
        << " companion=" << fixed(res.companion, "%.3e")
        << " transform=" << fixed(res.transform, "%.3e")
        << " estimate=" << fixed(res.estimate_target, "%.3e") << "\n";
    }
  }
  o << (r.all() ? "all assumptions hold\n" : "assumption check failed\n");
  return o.str();
}

namespace {

std::string matrix_text(const Matrix& m) {
  std::string s = "[";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (r) s += "; ";
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) s += ", ";
      s += fixed(m(r, c), "%.10g");
    }
  }
  return s + "]";
}

void csv_matrix(std::ostream& o, const std::string& agent,
                const std::string& name, const Matrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      o << agent << ',' << name << ',' << r << ',' << c << ','
        << format_double(m(r, c)) << "\n";
    }
  }
}

}  // namespace

std::string regulator_report(const Scenario& s, const Synthesis& syn,
                             ReportFormat format) {
  std::ostringstream o;
  if (format == ReportFormat::kCsv) {
    o << "# etcor-regulator/1 scenario=" << hex64(scenario_hash(s)) << "\n";
    o << "agent,quantity,row,col,value\n";
    Matrix mp(1, syn.minimal_polynomial.size(),
              std::vector<double>(syn.minimal_polynomial));
    csv_matrix(o, "all", "minimal_polynomial", mp);
    csv_matrix(o, "all", "Phi", syn.companion.Phi);
    csv_matrix(o, "all", "Gamma", syn.companion.Gamma);
    csv_matrix(o, "all", "T", syn.transform.T);
    csv_matrix(o, "all", "T_inv", syn.transform.T_inv);
    csv_matrix(o, "all", "Psi", syn.transform.Psi);
    for (std::size_t i = 0; i < syn.agents.size(); ++i) {
      const std::string a = std::to_string(i + 1);
      const auto& sol = syn.agents[i];
      csv_matrix(o, a, "Pi", sol.Pi);
      csv_matrix(o, a, "U", sol.U);
      csv_matrix(o, a, "Upsilon", sol.Upsilon);
      csv_matrix(o, a, "Upsilon_bar", sol.Upsilon_bar);
      const auto& res = syn.residuals[i];
      o << a << ",residual_zero_dynamics,0,0," << format_double(res.zero_dynamics) << "\n";
      o << a << ",residual_output,0,0," << format_double(res.output_row) << "\n";
      o << a << ",residual_companion,0,0," << format_double(res.companion) << "\n";
      o << a << ",residual_transform,0,0," << format_double(res.transform) << "\n";
      o << a << ",residual_estimate,0,0," << format_double(res.estimate_target) << "\n";
    }
    return o.str();
  }
  o << "minimal polynomial: lambda^" << syn.minimal_polynomial.size();
  for (std::size_t k = syn.minimal_polynomial.size(); k-- > 0;) {
    const double c = syn.minimal_polynomial[k];
    if (c == 0.0) continue;
    o << (c < 0 ? " - " : " + ") << fixed(std::abs(c), "%.10g");
    if (k > 0) o << " lambda^" << k;
  }
  o << "\n";
  o << "Phi   = " << matrix_text(syn.companion.Phi) << "\n";
  o << "Gamma = " << matrix_text(syn.companion.Gamma) << "\n";
  o << "T     = " << matrix_text(syn.transform.T) << "\n";
  o << "T^-1  = " << matrix_text(syn.transform.T_inv) << "\n";
  o << "Psi   = " << matrix_text(syn.transform.Psi) << "\n";
  for (std::size_t i = 0; i < syn.agents.size(); ++i) {
    const auto& sol = syn.agents[i];
    o << "agent " << (i + 1) << "\n";
    o << "  Pi          = " << matrix_text(sol.Pi) << "\n";
    o << "  U           = " << matrix_text(sol.U) << "\n";
    o << "  Upsilon_bar = " << matrix_text(sol.Upsilon_bar) << "\n";
    o << "  max residual " << fixed(syn.residuals[i].max(), "%.3e") << "\n";
  }
  return o.str();
}

std::string summary_text(const Trace& tr, const Scenario& s) {
  std::ostringstream o;
  const EventStats st = event_stats(tr);
  const double bound = ultimate_bound(s);
  o << "mode " << tr.metadata.mode << ", dt " << format_double(tr.metadata.dt)
    << " s, horizon " << format_double(tr.metadata.horizon) << " s\n";
  std::vector<double> tail;
  if (tr.diverged()) {
    o << "diverged at t=" << fixed(tr.divergence->t) << " s (agent "
      << tr.divergence->agent << ")\n";
  } else {
    tail = tracking_metrics(tr, 1.0 / 6.0);
  }
  for (std::size_t i = 0; i < tr.agent_count(); ++i) {
    const auto& a = st.agents[i];
    o << "agent " << (i + 1) << ": " << a.count << " updates";
    if (a.avg_gap) {
      o << ", gaps min " << fixed(*a.min_gap) << " avg " << fixed(*a.avg_gap)
        << " max " << fixed(*a.max_gap) << " s";
    }
    if (!tail.empty()) o << ", tail max|e| " << fixed(tail[i]);
    o << "\n";
  }
  o << "total updates " << st.total << ", ultimate bound " << fixed(bound)
    << "\n";
  return o.str();
}

std::string compare_table(const Comparison& c) {
  std::ostringstream o;
  const std::size_t n = c.dynamic.trace.agent_count();
  char buf[160];
  std::snprintf(buf, sizeof buf, "updates over [0, %s] s\n",
                fixed(c.options.window).c_str());
  o << buf;
  o << "agent    dynamic     static";
  if (c.periodic) o << "   periodic";
  o << "\n";
  auto row = [&](const std::string& label, auto get) {
    std::snprintf(buf, sizeof buf, "%-6s %9zu  %9zu", label.c_str(),
                  get(c.dynamic), get(c.static_mode));
    o << buf;
    if (c.periodic) {
      std::snprintf(buf, sizeof buf, "  %9zu", get(*c.periodic));
      o << buf;
    }
    o << "\n";
  };
  for (std::size_t i = 0; i < n; ++i) {
    row(std::to_string(i + 1),
        [i](const ModeRun& r) { return r.window_stats.agents[i].count; });
  }
  row("total", [](const ModeRun& r) { return r.window_stats.total; });

  o << "\nmean inter-event time [s]\n";
  for (std::size_t i = 0; i < n; ++i) {
    auto g = [i](const ModeRun& r) {
      const auto& a = r.window_stats.agents[i].avg_gap;
      return a ? fixed(*a, "%.4f") : std::string("-");
    };
    std::snprintf(buf, sizeof buf, "%-6zu %9s  %9s", i + 1,
                  g(c.dynamic).c_str(), g(c.static_mode).c_str());
    o << buf << "\n";
  }

  o << "\ntail max|e| (last " << fixed(c.options.tail_fraction * 100.0, "%.4g")
    << "% of the horizon), bound " << fixed(c.ultimate_bound) << "\n";
  for (std::size_t i = 0; i < n; ++i) {
    auto g = [i](const ModeRun& r) {
      return r.tail_errors.empty() ? std::string("-")
                                   : fixed(r.tail_errors[i], "%.4f");
    };
    std::snprintf(buf, sizeof buf, "%-6zu %9s  %9s", i + 1,
                  g(c.dynamic).c_str(), g(c.static_mode).c_str());
    o << buf << "\n";
  }
  for (const ModeRun* r : {&c.dynamic, &c.static_mode}) {
    if (r->trace.diverged()) {
      o << trigger_mode_name(r->mode) << " run diverged at t="
        << fixed(r->trace.divergence->t) << " s\n";
    }
  }
  if (c.periodic) {
    o << "\nperiodic baseline, periods";
    for (double p : c.periods) o << ' ' << fixed(p, "%.4f");
    o << " s: ";
    if (c.periodic->trace.diverged()) {
      o << "diverged at t=" << fixed(c.periodic->trace.divergence->t)
        << " s (agent " << c.periodic->trace.divergence->agent << ")\n";
    } else {
      o << "stayed bounded\n";
    }
  }
  o << "\n" << pass(c.dynamic_not_more_than_static())
    << "  dynamic total (" << c.dynamic.window_stats.total
    << ") <= static total (" << c.static_mode.window_stats.total << ")\n";
  return o.str();
}

void write_compare_csv(const Comparison& c, std::ostream& out) {
  out << "# etcor-compare/1 scenario="
      << hex64(c.dynamic.trace.metadata.scenario_hash)
      << " dt=" << format_double(c.dynamic.trace.metadata.dt)
      << " window=" << format_double(c.options.window)
      << " tail_fraction=" << format_double(c.options.tail_fraction) << "\n";
  out << "mode,agent,count,min_gap,avg_gap,max_gap,tail_max_abs_e,"
         "ultimate_bound,pass,diverged_at\n";
  auto emit = [&](const ModeRun& r) {
    const std::string mode(trigger_mode_name(r.mode));
    const std::string div =
        r.trace.diverged() ? format_double(r.trace.divergence->t) : "";
    const std::string bound = format_double(c.ultimate_bound);
    for (std::size_t i = 0; i < r.window_stats.agents.size(); ++i) {
      const auto& a = r.window_stats.agents[i];
      out << mode << ',' << (i + 1) << ',' << a.count << ','
          << opt(a.min_gap) << ',' << opt(a.avg_gap) << ',' << opt(a.max_gap)
          << ',';
      if (r.tail_errors.empty()) {
        out << ',' << bound << ",false,";
      } else {
        out << format_double(r.tail_errors[i]) << ',' << bound << ','
            << (r.tail_errors[i] <= c.ultimate_bound ? "true" : "false")
            << ',';
      }
      out << div << "\n";
    }
    out << mode << ",total," << r.window_stats.total << ','
        << opt(r.window_stats.min_gap) << ",,,,," << (r.trace.diverged() ? "false" : "true")
        << ',' << div << "\n";
  };
  emit(c.dynamic);
  emit(c.static_mode);
  if (c.periodic) emit(*c.periodic);
  out << "check,dynamic_total_le_static_total," << c.dynamic.window_stats.total
      << ",,,,,," << (c.dynamic_not_more_than_static() ? "true" : "false")
      << ",\n";
}

void write_compare_files(const Comparison& c,
                         const std::filesystem::path& dir) {
  make_dir(dir);
  {
    auto out = open_out(dir / "compare.csv");
    write_compare_csv(c, out);
  }
  {
    auto out = open_out(dir / "compare.txt");
    out << compare_table(c);
  }
}

}  // namespace etcor
