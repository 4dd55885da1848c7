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


#include "etcor/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "etcor/error.hpp"

namespace etcor {

double ultimate_bound(const Topology& t, std::span<const double> kappas,
                      std::span<const double> betas) {
  const std::size_t n = t.agent_count();
  if (kappas.size() != n || betas.size() != n) {
    throw DimensionError("ultimate_bound: one kappa and beta per agent");
  }
  const double kappa_max = *std::max_element(kappas.begin(), kappas.end());
  const double beta_max = *std::max_element(betas.begin(), betas.end());
  if (!(kappa_max < 1.0)) throw DomainError("kappa_max must be below 1");
  const Matrix h = compute_h_matrix(t);
  const double lambda = eigenvalues(h * h).min_real();
  if (!(lambda > 0.0)) throw DomainError("H is singular");
  return static_cast<double>(n) * beta_max / (lambda * (1.0 - kappa_max));
}

double ultimate_bound(const Scenario& s) {
  std::vector<double> kappas, betas;
  for (const auto& a : s.agents) {
    kappas.push_back(a.params.kappa);
    betas.push_back(a.params.beta);
  }
  return ultimate_bound(s.topology, kappas, betas);
}

EventStats event_stats(std::span<const TriggerEvent> events,
                       std::size_t agent_count,
                       std::optional<double> window_end) {
  EventStats st;
  st.agents.resize(agent_count);
  std::vector<std::optional<double>> last(agent_count);
  std::vector<double> gap_sum(agent_count, 0.0);
  for (const auto& ev : events) {
    if (window_end && ev.t > *window_end) continue;
    if (ev.agent == 0 || ev.agent > agent_count) {
      throw DimensionError("event for unknown agent");
    }
    const std::size_t i = ev.agent - 1;
    auto& a = st.agents[i];
    ++a.count;
    ++st.total;
    if (last[i]) {
      const double g = ev.t - *last[i];
      a.min_gap = a.min_gap ? std::min(*a.min_gap, g) : g;
      a.max_gap = a.max_gap ? std::max(*a.max_gap, g) : g;
      gap_sum[i] += g;
    }
    last[i] = ev.t;
  }
  for (std::size_t i = 0; i < agent_count; ++i) {
    auto& a = st.agents[i];
    if (a.count >= 2) {
      a.avg_gap = gap_sum[i] / static_cast<double>(a.count - 1);
      st.min_gap = st.min_gap ? std::min(*st.min_gap, *a.min_gap) : a.min_gap;
    }
  }
  return st;
}

EventStats event_stats(const Trace& tr, std::optional<double> window_end) {
  return event_stats(tr.events, tr.agent_count(), window_end);
}

std::vector<double> tracking_metrics(const Trace& tr, double tail_fraction) {
  if (!(tail_fraction > 0.0 && tail_fraction <= 1.0)) {
    throw DomainError("tail_fraction must lie in (0, 1]");
  }
  const double start = tr.metadata.horizon * (1.0 - tail_fraction) -
                       1e-9 * std::max(1.0, tr.metadata.horizon);
  std::vector<double> out(tr.agent_count(), 0.0);
  for (const auto& smp : tr.samples) {
    if (smp.t < start) continue;
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] = std::max(out[i], std::abs(tr.e(smp, i + 1)));
    }
  }
  return out;
}

std::vector<AugmentedCoordinates> augmented_transform(
    const Scenario& s, std::span<const double> state,
    std::span<const RegulatorSolution> reg) {
  const StateLayout L = StateLayout::of(s);
  if (state.size() != L.size) throw DimensionError("state size mismatch");
  if (reg.size() != s.agent_count()) {
    throw DimensionError("one regulator solution per agent expected");
  }
  const auto v = state.first(L.exo_dim);
  const std::vector<double> fv = multiply(s.exosystem.F, v);
  const Matrix& q = s.internal_model.Q();
  std::vector<AugmentedCoordinates> out(s.agent_count());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto& slot = L.agents[i];
    const auto& a = s.agents[i];
    auto& c = out[i];
    const std::vector<double> pv = multiply(reg[i].Pi, v);
    c.z_bar.resize(slot.order - 1);
    for (std::size_t r = 0; r + 1 < slot.order; ++r) {
      c.z_bar[r] = state[slot.x + r] - pv[r];
    }
    c.xi_bar = state[slot.x + slot.order - 1] - fv[0];
    const std::vector<double> uv = multiply(reg[i].Upsilon_bar, v);
    const double b = a.plant.input_gain();
    c.eta_bar.resize(L.model_dim);
    for (std::size_t r = 0; r < L.model_dim; ++r) {
      c.eta_bar[r] = state[slot.eta + r] - uv[r] - q(r, 0) * c.xi_bar / b;
    }
  }
  return out;
}

LyapunovCertificate build_certificate(const Scenario& s) {
  const AssumptionReport rep = check_scenario(s);
  if (!rep.synthesis) {
    throw CertificateError("regulator synthesis failed: " +
                           rep.synthesis_error);
  }
  if (!rep.all_minimum_phase()) {
    throw CertificateError("zero dynamics are not Hurwitz");
  }
  LyapunovCertificate c;
  c.synthesis = *rep.synthesis;
  c.Psi = c.synthesis.transform.Psi;
  c.H = compute_h_matrix(s.topology);
  if (!is_symmetric(c.H) || !is_positive_definite(c.H)) {
    throw CertificateError("H is not symmetric positive definite");
  }
  const Matrix& m = s.internal_model.M();
  const Matrix& q = s.internal_model.Q();
  const std::size_t l = s.internal_model.dim();

  std::vector<Matrix> p1, p2, a2, a3, a6, a7, a5, bpsi;
  for (const auto& a : s.agents) {
    const AgentPlant& pl = a.plant;
    const double b = pl.input_gain();
    c.b.push_back(b);
    p1.push_back(solve_lyapunov(pl.A1(), 2.0 * Matrix::identity(pl.order() - 1)));
    p2.push_back(solve_lyapunov(m, 2.0 * Matrix::identity(l)));
    a2.push_back(pl.A2());
    a3.push_back(pl.A3());
    const Matrix a5i = Matrix{{pl.A4()}} + c.Psi * q;
    a5.push_back(a5i);
    a6.push_back((-1.0 / b) * (q * pl.A3()));
    a7.push_back((1.0 / b) * (m * q + q * c.Psi * q - q * a5i));
    bpsi.push_back(b * c.Psi);
  }
  c.P1 = Matrix::block_diagonal(p1);
  c.P2 = Matrix::block_diagonal(p2);
  if (!is_positive_definite(c.P1) || !is_positive_definite(c.P2)) {
    throw CertificateError("Lyapunov solutions are not positive definite");
  }
  const Matrix A2 = Matrix::block_diagonal(a2);
  const Matrix A3 = Matrix::block_diagonal(a3);
  const Matrix A5 = Matrix::block_diagonal(a5);
  const Matrix A6 = Matrix::block_diagonal(a6);
  const Matrix A7 = Matrix::block_diagonal(a7);
  const Matrix BPsi = Matrix::block_diagonal(bpsi);
  const Matrix B = Matrix::diagonal(c.b);
  const Matrix Hinv = inverse(c.H);

  auto sq = [](double x) { return x * x; };
  c.mu0 = 2.0 * sq((c.P2 * A6).norm2()) + 2.0;
  // The cross term 2 xi^T H A5 xi equals 2 e_v^T A5 H^-1 e_v, hence the
  // factor 2 on the first norm.
  c.mu1 = 2.0 * (A5 * Hinv).norm2() + c.mu0 * sq((c.P1 * A2 * Hinv).norm2()) +
          4.0 * sq((c.P2 * A7 * Hinv).norm2()) + sq(A3.norm2()) +
          4.0 * sq(BPsi.norm2()) + 2.0 * sq(B.norm2());
  c.b_min = *std::min_element(c.b.begin(), c.b.end());
  c.K0 = (c.mu1 + 1.0) / (2.0 * c.b_min);
  return c;
}

LyapunovDiagnostic lyapunov_diagnostic(const Trace& tr, const Scenario& s,
                                       const LyapunovCertificate& cert,
                                       double rel_tol) {
  const std::size_t n = s.agent_count();
  if (tr.agent_count() != n) {
    throw DimensionError("trace does not belong to the scenario");
  }
  const StateLayout L = StateLayout::of(s);
  const std::size_t l = L.model_dim;

  LyapunovDiagnostic d;
  double kappa_max = 0.0, beta_max = 0.0;
  for (const auto& a : s.agents) {
    kappa_max = std::max(kappa_max, a.params.kappa);
    beta_max = std::max(beta_max, a.params.beta);
  }
  d.threshold = static_cast<double>(n) * beta_max / (1.0 - kappa_max);

  std::vector<double> zbar, etabar, xibar(n), ev(n);
  for (const auto& smp : tr.samples) {
    const auto aug = augmented_transform(s, smp.state, cert.synthesis.agents);
    zbar.clear();
    etabar.clear();
    for (std::size_t i = 0; i < n; ++i) {
      zbar.insert(zbar.end(), aug[i].z_bar.begin(), aug[i].z_bar.end());
      etabar.insert(etabar.end(), aug[i].eta_bar.begin(), aug[i].eta_bar.end());
      xibar[i] = aug[i].xi_bar;
    }
    const std::vector<double> ev_h = multiply(cert.H, xibar);
    std::vector<double> outputs(n + 1);
    outputs[0] = tr.y0(smp);
    for (std::size_t i = 0; i < n; ++i) outputs[i + 1] = tr.y(smp, i + 1);
    for (std::size_t i = 0; i < n; ++i) {
      ev[i] = compute_ev(outputs, s.topology, i + 1);
      d.max_identity_residual =
          std::max(d.max_identity_residual, std::abs(ev[i] - ev_h[i]));
    }

    const std::vector<double> p1z = multiply(cert.P1, zbar);
    const std::vector<double> p2e = multiply(cert.P2, etabar);
    double V = cert.mu0 * dot(zbar, p1z) + dot(etabar, p2e) + dot(xibar, ev_h);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& a = s.agents[i];
      const double b = cert.b[i];
      const auto psi = tr.psi_hat(smp, i + 1);
      double pt = 0.0;
      for (std::size_t k = 0; k < l; ++k) {
        const double diff = psi[k] - cert.Psi(0, k);
        pt += diff * diff;
      }
      const double kt = tr.gain(smp, i + 1) - cert.K0;
      V += b / a.params.gamma * pt + b / a.params.delta * kt * kt +
           tr.trigger_var(smp, i + 1);
    }
    d.t.push_back(smp.t);
    d.V.push_back(V);
    d.norm_sum.push_back(dot(zbar, zbar) + dot(etabar, etabar) + dot(ev, ev));
  }

  std::vector<double> times;
  times.reserve(tr.events.size());
  for (const auto& e : tr.events) times.push_back(e.t);
  std::sort(times.begin(), times.end());

  for (std::size_t k = 0; k + 1 < d.t.size(); ++k) {
    if (!(d.norm_sum[k] > d.threshold && d.norm_sum[k + 1] > d.threshold)) {
      continue;
    }
    const double t0 = d.t[k], t1 = d.t[k + 1];
    const double tol = 1e-9 * std::max(1.0, t1);
    auto it = std::upper_bound(times.begin(), times.end(), t0 + tol);
    if (it != times.end() && *it < t1 - tol) {
      ++d.intervals_skipped;
      continue;
    }
    ++d.intervals_checked;
    const double rate = (d.V[k + 1] - d.V[k]) / (t1 - t0);
    if (rate >= rel_tol * std::max(d.V[k], d.V[k + 1])) {
      d.violation_times.push_back(t0);
    }
  }
  return d;
}

}  // namespace etcor
