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


#include "etcor/sim.hpp"

#include <algorithm>
#include <cmath>

#include "etcor/error.hpp"
#include "etcor/scenario_io.hpp"

namespace etcor {

StateLayout StateLayout::of(const Scenario& s) {
  StateLayout L;
  L.exo_dim = s.exosystem.dim();
  L.model_dim = s.internal_model.dim();
  std::size_t off = L.exo_dim;
  for (const auto& a : s.agents) {
    AgentSlots slot;
    slot.x = off;
    slot.order = a.plant.order();
    slot.eta = slot.x + slot.order;
    slot.psi = slot.eta + L.model_dim;
    slot.gain = slot.psi + L.model_dim;
    slot.trigger_var = slot.gain + 1;
    slot.end = slot.trigger_var + 1;
    off = slot.end;
    L.agents.push_back(slot);
  }
  L.size = off;
  return L;
}

std::size_t StateLayout::owner(std::size_t index) const {
  for (std::size_t i = 0; i < agents.size(); ++i) {
    if (index < agents[i].end) return index < agents[i].x ? 0 : i + 1;
  }
  return agents.size();
}

double Trace::y0(const TraceSample& s) const {
  double r = 0.0;
  for (std::size_t k = 0; k < layout.exo_dim; ++k) {
    r += output_map(0, k) * s.state[k];
  }
  return r;
}

double Trace::y(const TraceSample& s, std::size_t agent) const {
  const auto& a = layout.agents.at(agent - 1);
  return s.state[a.x + a.order - 1];
}

double Trace::e(const TraceSample& s, std::size_t agent) const {
  return y(s, agent) - y0(s);
}

double Trace::u(const TraceSample& s, std::size_t agent) const {
  return s.input.at(agent - 1);
}

double Trace::gain(const TraceSample& s, std::size_t agent) const {
  return s.state[layout.agents.at(agent - 1).gain];
}

double Trace::trigger_var(const TraceSample& s, std::size_t agent) const {
  return s.state[layout.agents.at(agent - 1).trigger_var];
}

double Trace::f(const TraceSample& s, std::size_t agent) const {
  return s.f.at(agent - 1);
}

std::span<const double> Trace::v(const TraceSample& s) const {
  return std::span<const double>(s.state).first(layout.exo_dim);
}

std::span<const double> Trace::x(const TraceSample& s,
                                 std::size_t agent) const {
  const auto& a = layout.agents.at(agent - 1);
  return std::span<const double>(s.state).subspan(a.x, a.order);
}

std::span<const double> Trace::eta(const TraceSample& s,
                                   std::size_t agent) const {
  const auto& a = layout.agents.at(agent - 1);
  return std::span<const double>(s.state).subspan(a.eta, layout.model_dim);
}

std::span<const double> Trace::psi_hat(const TraceSample& s,
                                       std::size_t agent) const {
  const auto& a = layout.agents.at(agent - 1);
  return std::span<const double>(s.state).subspan(a.psi, layout.model_dim);
}

std::vector<TriggerEvent> Trace::events_of(std::size_t agent) const {
  std::vector<TriggerEvent> out;
  for (const auto& ev : events) {
    if (ev.agent == agent) out.push_back(ev);
  }
  return out;
}

namespace {

// Per-agent hold: everything that stays constant between two events.
struct Hold {
  double u_term = 0.0;   // psi_hat(t_k) . eta(t_k)
  double fb_term = 0.0;  // K(t_k) e_v(t_k)
  double ev = 0.0;
  std::vector<double> eta;
  double last_time = 0.0;

  double input() const { return u_term - fb_term; }
};

class Engine {
 public:
  explicit Engine(const Scenario& s)
      : s_(s),
        L_(StateLayout::of(s)),
        n_(s.agent_count()),
        holds_(n_),
        outputs_(n_ + 1),
        ev_(n_) {
    for (auto& h : holds_) h.eta.assign(L_.model_dim, 0.0);
  }

  const StateLayout& layout() const { return L_; }

  std::vector<double> initial_state() const {
    std::vector<double> x(L_.size, 0.0);
    std::copy(s_.v0.begin(), s_.v0.end(), x.begin());
    for (std::size_t i = 0; i < n_; ++i) {
      const auto& a = s_.agents[i];
      const auto& slot = L_.agents[i];
      std::copy(a.init.x0.begin(), a.init.x0.end(), x.begin() + slot.x);
      std::copy(a.init.eta0.begin(), a.init.eta0.end(), x.begin() + slot.eta);
      std::copy(a.init.psi_hat0.begin(), a.init.psi_hat0.end(),
                x.begin() + slot.psi);
      x[slot.gain] = a.init.gain0;
      x[slot.trigger_var] = a.init.trigger_var0;
    }
    return x;
  }

  // Fills outputs_ and ev_ for a state.
  void relative_errors(std::span<const double> x) {
    double y0 = 0.0;
    for (std::size_t k = 0; k < L_.exo_dim; ++k) {
      y0 += s_.exosystem.F(0, k) * x[k];
    }
    outputs_[0] = y0;
    for (std::size_t i = 0; i < n_; ++i) {
      const auto& slot = L_.agents[i];
      outputs_[i + 1] = x[slot.x + slot.order - 1];
    }
    for (std::size_t i = 0; i < n_; ++i) {
      ev_[i] = compute_ev(outputs_, s_.topology, i + 1);
    }
  }

  double k_ev(std::span<const double> x, std::size_t i) const {
    return x[L_.agents[i].gain] * ev_[i];
  }

  double psi_eta(std::span<const double> x, std::size_t i) const {
    const auto& slot = L_.agents[i];
    return dot(x.subspan(slot.psi, L_.model_dim),
               x.subspan(slot.eta, L_.model_dim));
  }

  double trigger_f(std::span<const double> x, std::size_t i) const {
    const auto& h = holds_[i];
    const auto& p = s_.agents[i].params;
    return trigger_function(h.fb_term - k_ev(x, i), h.u_term - psi_eta(x, i),
                            ev_[i], p.kappa, p.beta);
  }

  void field(std::span<const double> x, std::span<double> dx) {
    relative_errors(x);
    const Matrix& S = s_.exosystem.S;
    const std::size_t q = L_.exo_dim;
    for (std::size_t r = 0; r < q; ++r) {
      double acc = 0.0;
      for (std::size_t c = 0; c < q; ++c) acc += S(r, c) * x[c];
      dx[r] = acc;
    }
    const auto v = x.first(q);
    for (std::size_t i = 0; i < n_; ++i) {
      const auto& a = s_.agents[i];
      const auto& slot = L_.agents[i];
      const auto& h = holds_[i];
      const double u = h.input();
      const Matrix& A = a.plant.A();
      const Matrix& B = a.plant.B();
      const Matrix& E = a.plant.E();
      for (std::size_t r = 0; r < slot.order; ++r) {
        double acc = B(r, 0) * u;
        for (std::size_t c = 0; c < slot.order; ++c) {
          acc += A(r, c) * x[slot.x + c];
        }
        for (std::size_t c = 0; c < q; ++c) acc += E(r, c) * v[c];
        dx[slot.x + r] = acc;
      }
      const bool sampled = a.params.mode == TriggerMode::kPeriodic &&
                           a.params.sampled_adaptation;
      const auto eta = x.subspan(slot.eta, L_.model_dim);
      const double f = trigger_f(x, i);
      controller_vector_field(
          eta, x[slot.trigger_var], u, sampled ? h.ev : ev_[i],
          sampled ? std::span<const double>(h.eta) : eta, f, a.params,
          s_.internal_model, dx.subspan(slot.eta, L_.model_dim),
          dx.subspan(slot.psi, L_.model_dim), dx[slot.gain],
          dx[slot.trigger_var]);
    }
  }

  void sample_hold(std::span<const double> x, std::size_t i, double t) {
    auto& h = holds_[i];
    const auto& slot = L_.agents[i];
    h.fb_term = k_ev(x, i);
    h.u_term = psi_eta(x, i);
    h.ev = ev_[i];
    std::copy_n(x.begin() + slot.eta, L_.model_dim, h.eta.begin());
    h.last_time = t;
  }

  ControllerState controller_state(std::span<const double> x,
                                   std::size_t i) const {
    const auto& slot = L_.agents[i];
    const auto& h = holds_[i];
    ControllerState c;
    c.eta.assign(x.begin() + slot.eta, x.begin() + slot.eta + L_.model_dim);
    c.psi_hat.assign(x.begin() + slot.psi,
                     x.begin() + slot.psi + L_.model_dim);
    c.gain = x[slot.gain];
    c.trigger_var = x[slot.trigger_var];
    c.held_u_term = h.u_term;
    c.held_fb_term = h.fb_term;
    c.held_ev = h.ev;
    c.held_eta = h.eta;
    c.last_trigger_time = h.last_time;
    return c;
  }

  double input(std::size_t i) const { return holds_[i].input(); }
  double ev(std::size_t i) const { return ev_[i]; }

 private:
  const Scenario& s_;
  StateLayout L_;
  std::size_t n_;
  std::vector<Hold> holds_;
  std::vector<double> outputs_;
  std::vector<double> ev_;
};

std::string mode_label(const Scenario& s) {
  const TriggerMode m = s.agents.front().params.mode;
  for (const auto& a : s.agents) {
    if (a.params.mode != m) return "mixed";
  }
  return std::string(trigger_mode_name(m));
}

}  // namespace

Trace simulate(const Scenario& s, const RunOptions& opts) {
  s.validate();
  if (!opts.unchecked) {
    const AssumptionReport r = check_scenario(s);
    if (!r.all()) {
      throw DomainError(
          "scenario fails the assumption checks (run with unchecked to "
          "override)");
    }
  }
  const std::size_t decimate = opts.decimate.value_or(s.integrator.decimate);
  if (decimate == 0) throw DomainError("decimate must be >= 1");

  Engine eng(s);
  const StateLayout& L = eng.layout();
  const std::size_t n = s.agent_count();
  const double dt = s.integrator.dt;
  const std::size_t steps = s.integrator.steps();

  Trace tr;
  tr.layout = L;
  tr.output_map = s.exosystem.F;
  tr.trigger_counts.assign(n, 0);
  tr.metadata.scenario_hash = scenario_hash(s);
  tr.metadata.dt = dt;
  tr.metadata.horizon = s.integrator.horizon;
  tr.metadata.decimate = decimate;
  tr.metadata.mode = mode_label(s);
  tr.metadata.unchecked = opts.unchecked;
  tr.samples.reserve(steps / decimate + 2);

  std::vector<double> x = eng.initial_state();
  std::vector<double> k1(L.size), k2(L.size), k3(L.size), k4(L.size),
      tmp(L.size);

  auto record = [&](double t) {
    TraceSample smp;
    smp.t = t;
    smp.state = x;
    smp.input.resize(n);
    smp.f.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      smp.input[i] = eng.input(i);
      smp.f[i] = eng.trigger_f(x, i);
    }
    tr.samples.push_back(std::move(smp));
  };

  // Every agent samples at t = 0.
  eng.relative_errors(x);
  for (std::size_t i = 0; i < n; ++i) {
    eng.sample_hold(x, i, 0.0);
    tr.events.push_back({i + 1, 0.0, 0.0, 0.0});
    ++tr.trigger_counts[i];
  }
  record(0.0);

  for (std::size_t k = 0; k < steps; ++k) {
    eng.field(x, k1);
    for (std::size_t j = 0; j < L.size; ++j) tmp[j] = x[j] + 0.5 * dt * k1[j];
    eng.field(tmp, k2);
    for (std::size_t j = 0; j < L.size; ++j) tmp[j] = x[j] + 0.5 * dt * k2[j];
    eng.field(tmp, k3);
    for (std::size_t j = 0; j < L.size; ++j) tmp[j] = x[j] + dt * k3[j];
    eng.field(tmp, k4);
    for (std::size_t j = 0; j < L.size; ++j) {
      x[j] += dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    }
    const double t = static_cast<double>(k + 1) * dt;

    std::size_t worst = 0;
    double worst_abs = 0.0;
    bool finite = true;
    for (std::size_t j = 0; j < L.size; ++j) {
      if (!std::isfinite(x[j])) {
        finite = false;
        worst = j;
        break;
      }
      if (std::abs(x[j]) > worst_abs) {
        worst_abs = std::abs(x[j]);
        worst = j;
      }
    }
    if (!finite || worst_abs >= kDivergenceLimit) {
      tr.divergence = Divergence{t, L.owner(worst), !finite};
      tr.end_time = t;
      if (finite) record(t);
      return tr;
    }

    eng.relative_errors(x);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& p = s.agents[i].params;
      const ControllerState cs = eng.controller_state(x, i);
      const TriggerDecision d = trigger_evaluate(cs, eng.k_ev(x, i),
                                                 eng.psi_eta(x, i), eng.ev(i),
                                                 p, t);
      if (d.fired) {
        eng.sample_hold(x, i, t);
        tr.events.push_back({i + 1, t, d.zeta1, d.zeta2});
        ++tr.trigger_counts[i];
      }
    }
    if ((k + 1) % decimate == 0) record(t);
  }
  tr.end_time = static_cast<double>(steps) * dt;
  return tr;
}

Trace run(const Scenario& s, const RunOptions& opts) {
  Trace tr = simulate(s, opts);
  if (tr.divergence) {
    if (tr.divergence->numeric) {
      throw NumericError("non-finite state at t=" +
                         std::to_string(tr.divergence->t) + " (agent " +
                         std::to_string(tr.divergence->agent) + ")");
    }
    throw DivergedError(tr.divergence->t, tr.divergence->agent);
  }
  return tr;
}

Trace run_baseline(const Scenario& s, std::span<const double> periods,
                   const RunOptions& opts) {
  Scenario copy = s;
  copy.set_periods(periods);
  return run(copy, opts);
}

}  // namespace etcor
