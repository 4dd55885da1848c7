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


#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "etcor/analysis.hpp"
#include "etcor/error.hpp"
#include "etcor/sim.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace etcor;

namespace {

const Trace& dense_example_trace() {
  static const Trace tr = [] {
    RunOptions o;
    o.decimate = 1;
    return run(build_example_scenario(), o);
  }();
  return tr;
}

// Trace with a single agent, e = 0 and every state entry zero except the
// given controller slots.
Trace flat_trace(const Scenario& s, std::size_t samples,
                 const std::vector<double>& state) {
  Trace tr;
  tr.layout = StateLayout::of(s);
  tr.output_map = s.exosystem.F;
  tr.metadata.horizon = static_cast<double>(samples - 1);
  tr.metadata.dt = 1.0;
  tr.metadata.decimate = 1;
  tr.trigger_counts.assign(s.agent_count(), 0);
  for (std::size_t k = 0; k < samples; ++k) {
    TraceSample smp;
    smp.t = static_cast<double>(k);
    smp.state = state;
    smp.input.assign(s.agent_count(), 0.0);
    smp.f.assign(s.agent_count(), 0.0);
    tr.samples.push_back(smp);
  }
  return tr;
}

}  // namespace

TEST_CASE("ultimate bound") {
  const Topology one(1, {{0, 1}});
  CHECK(ultimate_bound(one, std::vector<double>{0.5},
                       std::vector<double>{0.5}) == doctest::Approx(1.0));

  const Topology t = default_topology();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      test::to_eigen(compute_h_matrix(t)));
  const double lmin = es.eigenvalues()(0);
  const std::vector<double> kappa(4, 0.9), beta(4, 0.6);
  const double bound = ultimate_bound(t, kappa, beta);
  CHECK(bound == doctest::Approx(24.0 / (lmin * lmin)).epsilon(1e-10));
  CHECK(bound == doctest::Approx(1649.72).epsilon(1e-5));
  CHECK(ultimate_bound(build_example_scenario()) == doctest::Approx(bound));

  const std::vector<double> beta2(4, 1.2);
  CHECK(ultimate_bound(t, kappa, beta2) == doctest::Approx(2.0 * bound));

  const std::vector<double> k_mixed{0.1, 0.9, 0.3, 0.5};
  const std::vector<double> b_mixed{0.6, 0.2, 0.05, 0.3};
  CHECK(ultimate_bound(t, k_mixed, b_mixed) == doctest::Approx(bound));

  CHECK_THROWS_AS(ultimate_bound(t, std::vector<double>(4, 1.0), beta),
                  DomainError);
  CHECK_THROWS_AS(ultimate_bound(t, kappa, std::vector<double>(3, 0.6)),
                  DimensionError);
  const Topology isolated(2, {{0, 1}});
  CHECK_THROWS_AS(ultimate_bound(isolated, std::vector<double>(2, 0.5),
                                 std::vector<double>(2, 0.5)),
                  DomainError);
}

TEST_CASE("ultimate bound is invariant under relabelling") {
  // Chain 0 -> 1 <-> 2 <-> 3 <-> 4 relabelled by 1->3, 2->1, 3->4, 4->2.
  const std::vector<std::size_t> pi{0, 3, 1, 4, 2};
  const Topology base = default_topology();
  std::vector<Edge> edges;
  for (const Edge& e : base.edges()) {
    edges.push_back({pi[e.from], pi[e.to]});
  }
  const Topology relabelled(4, edges);
  const std::vector<double> kappa{0.9, 0.5, 0.2, 0.7};
  const std::vector<double> beta{0.1, 0.6, 0.3, 0.2};
  std::vector<double> kp(4), bp(4);
  for (std::size_t i = 1; i <= 4; ++i) {
    kp[pi[i] - 1] = kappa[i - 1];
    bp[pi[i] - 1] = beta[i - 1];
  }
  CHECK(ultimate_bound(relabelled, kp, bp) ==
        doctest::Approx(ultimate_bound(base, kappa, beta))
            .epsilon(1e-12));
}

TEST_CASE("event statistics") {
  SUBCASE("synthetic log") {
    const std::vector<TriggerEvent> ev{
        {1, 0.0, 0, 0}, {2, 0.0, 0, 0}, {1, 1.0, 0, 0},
        {2, 0.5, 0, 0}, {1, 2.0, 0, 0}, {2, 3.5, 0, 0}};
    const EventStats st = event_stats(ev, 3);
    CHECK(st.total == 6);
    CHECK(st.agents[0].count == 3);
    CHECK(*st.agents[0].min_gap == 1.0);
    CHECK(*st.agents[0].avg_gap == 1.0);
    CHECK(*st.agents[0].max_gap == 1.0);
    CHECK(*st.agents[1].min_gap == 0.5);
    CHECK(*st.agents[1].avg_gap == doctest::Approx(1.75));
    CHECK(*st.agents[1].max_gap == 3.0);
    CHECK(st.agents[2].count == 0);
    CHECK_FALSE(st.agents[2].min_gap.has_value());
    CHECK(*st.min_gap == 0.5);

    const EventStats early = event_stats(ev, 3, 1.0);
    CHECK(early.total == 4);
    CHECK(early.agents[1].count == 2);
  }
  SUBCASE("empty log") {
    const EventStats st = event_stats(std::vector<TriggerEvent>{}, 2);
    CHECK(st.total == 0);
    CHECK(st.agents.size() == 2);
    CHECK_FALSE(st.agents[0].avg_gap.has_value());
    CHECK_FALSE(st.min_gap.has_value());
  }
  SUBCASE("example run, first four seconds") {
    const Trace& tr = dense_example_trace();
    const EventStats st = event_stats(tr, 4.0);
    CHECK(st.total >= 300);
    CHECK(st.total <= 3000);
    std::size_t sum = 0;
    for (const auto& a : st.agents) sum += a.count;
    CHECK(sum == st.total);
    CHECK(*st.min_gap >= tr.metadata.dt * (1.0 - 1e-9));
    const EventStats all = event_stats(tr);
    CHECK(all.total == tr.events.size());
  }
}

TEST_CASE("tracking metrics") {
  const Scenario s = test::single_agent_scenario();
  const Trace zero = flat_trace(s, 11, std::vector<double>(
                                           StateLayout::of(s).size, 0.0));
  CHECK(tracking_metrics(zero, 0.5) == std::vector<double>{0.0});
  CHECK_THROWS_AS(tracking_metrics(zero, 0.0), DomainError);
  CHECK_THROWS_AS(tracking_metrics(zero, 1.5), DomainError);

  const Trace& tr = dense_example_trace();
  const auto tail = tracking_metrics(tr, 1.0 / 6.0);
  double expected = 0.0;
  for (const auto& smp : tr.samples) {
    if (smp.t >= 25.0 - 1e-9) expected = std::max(expected, std::abs(tr.e(smp, 2)));
  }
  CHECK(tail[1] == expected);
  for (double e : tail) CHECK(e <= ultimate_bound(build_example_scenario()));
}

TEST_CASE("augmented coordinates") {
  const Scenario s = build_example_scenario();
  const LyapunovCertificate cert = build_certificate(s);
  const auto& reg = cert.synthesis.agents;
  const StateLayout L = StateLayout::of(s);

  SUBCASE("origin") {
    const auto aug =
        augmented_transform(s, std::vector<double>(L.size, 0.0), reg);
    for (const auto& c : aug) {
      CHECK(c.xi_bar == 0.0);
      for (double z : c.z_bar) CHECK(z == 0.0);
      for (double e : c.eta_bar) CHECK(e == 0.0);
    }
  }
  SUBCASE("xi_bar is the tracking error and e_v = H xi_bar") {
    const Trace& tr = dense_example_trace();
    const Matrix H = compute_h_matrix(s.topology);
    for (std::size_t k = 0; k < tr.samples.size(); k += 997) {
      const auto& smp = tr.samples[k];
      const auto aug = augmented_transform(s, smp.state, reg);
      std::vector<double> y{tr.y0(smp)}, xi;
      for (std::size_t i = 1; i <= 4; ++i) {
        CHECK(aug[i - 1].xi_bar == tr.e(smp, i));
        y.push_back(tr.y(smp, i));
        xi.push_back(aug[i - 1].xi_bar);
      }
      const auto hx = multiply(H, xi);
      for (std::size_t i = 1; i <= 4; ++i) {
        CHECK(std::abs(compute_ev(y, s.topology, i) - hx[i - 1]) <= 1e-10);
      }
    }
  }
  SUBCASE("finite-difference rates match the augmented dynamics") {
    const Trace& tr = dense_example_trace();
    const Matrix& M = s.internal_model.M();
    const Matrix& Q = s.internal_model.Q();
    const Matrix& psi = cert.Psi;
    std::size_t checked = 0;
    for (std::size_t i = 1; i <= 4; ++i) {
      const AgentPlant& p = s.agents[i - 1].plant;
      const double b = p.input_gain();
      const double a5 = p.A4() + (psi * Q)(0, 0);
      const Matrix a6 = (-1.0 / b) * (Q * p.A3());
      const Matrix a7 = (1.0 / b) * (M * Q + Q * psi * Q - a5 * Q);
      const auto ev = tr.events_of(i);
      for (std::size_t k = 1; k + 1 < tr.samples.size(); k += 37) {
        const auto& s0 = tr.samples[k - 1];
        const auto& s1 = tr.samples[k];
        const auto& s2 = tr.samples[k + 1];
        const bool held = std::none_of(ev.begin(), ev.end(), [&](const auto& e) {
          return e.t > s0.t + 1e-12 && e.t <= s2.t + 1e-12;
        });
        if (!held) continue;
        const auto a0 = augmented_transform(s, s0.state, reg)[i - 1];
        const auto a1 = augmented_transform(s, s1.state, reg)[i - 1];
        const auto a2 = augmented_transform(s, s2.state, reg)[i - 1];
        const double h = s2.t - s0.t;
        const auto eta = tr.eta(s1, i);

        double xi_rate = (p.A3() * Matrix::column(a1.z_bar))(0, 0) +
                         a5 * a1.xi_bar + b * tr.u(s1, i);
        for (std::size_t r = 0; r < 2; ++r) {
          xi_rate += b * psi(0, r) * (a1.eta_bar[r] - eta[r]);
        }
        const double xi_fd = (a2.xi_bar - a0.xi_bar) / h;
        CHECK(std::abs(xi_fd - xi_rate) <=
              5e-2 * std::max(1.0, std::abs(xi_rate)));

        const auto eta_rate = multiply(M, a1.eta_bar);
        const auto z_term = multiply(a6, a1.z_bar);
        for (std::size_t r = 0; r < 2; ++r) {
          const double rate = eta_rate[r] + z_term[r] + a7(r, 0) * a1.xi_bar;
          const double fd = (a2.eta_bar[r] - a0.eta_bar[r]) / h;
          CHECK(std::abs(fd - rate) <= 5e-2 * std::max(1.0, std::abs(rate)));
        }
        ++checked;
      }
    }
    CHECK(checked > 1000);
  }
}

TEST_CASE("Lyapunov certificate") {
  const Scenario s = build_example_scenario();
  const LyapunovCertificate c = build_certificate(s);
  const Matrix I = Matrix::identity(2);
  std::size_t off = 0;
  for (const auto& a : s.agents) {
    const Matrix& a1 = a.plant.A1();
    const std::size_t m = a1.rows();
    const Eigen::MatrixXd p = test::to_eigen(c.P1.block(off, off, m, m));
    const Eigen::MatrixXd ea = test::to_eigen(a1);
    const Eigen::MatrixXd res =
        ea.transpose() * p + p * ea + 2.0 * Eigen::MatrixXd::Identity(m, m);
    CHECK(res.cwiseAbs().maxCoeff() < 1e-10);
    CHECK(Eigen::LLT<Eigen::MatrixXd>(p).info() == Eigen::Success);
    off += m;
  }
  CHECK(off == c.P1.rows());
  const Eigen::MatrixXd em = test::to_eigen(s.internal_model.M());
  const Eigen::MatrixXd p2 = test::to_eigen(c.P2.block(0, 0, 2, 2));
  CHECK((em.transpose() * p2 + p2 * em + 2.0 * test::to_eigen(I))
            .cwiseAbs()
            .maxCoeff() < 1e-10);
  CHECK(c.mu0 >= 2.0);
  CHECK(c.b_min == doctest::Approx(*std::min_element(c.b.begin(), c.b.end())));
  CHECK(c.K0 == doctest::Approx((c.mu1 + 1.0) / (2.0 * c.b_min)));
  CHECK(test::max_diff(c.Psi, Eigen::RowVector2d(21.0, 10.0)) < 1e-9);
}

TEST_CASE("Lyapunov function at the origin") {
  Scenario s = test::single_agent_scenario();
  const LyapunovCertificate c = build_certificate(s);
  const StateLayout L = StateLayout::of(s);
  std::vector<double> x(L.size, 0.0);
  x[L.agents[0].psi] = c.Psi(0, 0);
  x[L.agents[0].psi + 1] = c.Psi(0, 1);
  x[L.agents[0].gain] = c.K0;
  x[L.agents[0].trigger_var] = 0.75;
  const Trace tr = flat_trace(s, 3, x);
  const LyapunovDiagnostic d = lyapunov_diagnostic(tr, s, c);
  REQUIRE(d.V.size() == 3);
  CHECK(d.V[0] == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(d.norm_sum[0] == 0.0);
  CHECK(d.intervals_checked == 0);
}

TEST_CASE("Lyapunov diagnostic on the example run") {
  const Scenario s = build_example_scenario();
  const LyapunovCertificate c = build_certificate(s);
  const LyapunovDiagnostic d = lyapunov_diagnostic(dense_example_trace(), s, c);
  CHECK(d.threshold == doctest::Approx(24.0));
  CHECK(d.V.size() == dense_example_trace().samples.size());
  CHECK(std::all_of(d.V.begin(), d.V.end(), [](double v) { return v >= 0.0; }));
  CHECK(d.intervals_checked > 100);
  CHECK(d.violation_times.empty());
  CHECK(d.max_identity_residual <= 1e-10);
}

TEST_CASE("certificate errors") {
  Scenario s = test::single_agent_scenario();
  auto& a = s.agents[0];
  a.family->w = {2.5, 0.0, 0.0, 0.0};
  a.plant = make_family_agent(a.family->family, a.family->nominal,
                              a.family->w, 2);
  CHECK_THROWS_AS(build_certificate(s), CertificateError);
}
